#pragma once

#include <chrono>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace asnets {

enum class ErrKind {
  syntax,
  unsupported_feature,
  type_mismatch,
  grounding_explosion,
  cap_exceeded,
  inapplicable_action,
  no_enabled_actions,
  shape_mismatch,
  corrupt_checkpoint,
  tape_mismatch,
  empty_batch,
  teacher_unavailable,
  invalid_argument,
  io,
  verify,
};

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& msg) { throw Error(kind, msg); }

// Exact rational with normalised sign; probabilities stay exact until grounding.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);
  static Rational from_decimal_string(const std::string& s);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

// Fixed-width bitset used for states; width = |propositions| of the owning problem.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  int size() const { return nbits_; }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { words_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  bool contains_all(const std::vector<int>& ids) const {
    for (int i : ids)
      if (!test(i)) return false;
    return true;
  }
  bool intersects(const std::vector<int>& ids) const {
    for (int i : ids)
      if (test(i)) return true;
    return false;
  }

  bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }
  bool operator<(const Bitset& o) const { return words_ < o.words_; }

  size_t hash() const {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < nbits_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

 private:
  int nbits_ = 0;
  std::vector<uint64_t> words_;
};

struct BitsetHash {
  size_t operator()(const Bitset& b) const { return b.hash(); }
};

using Rng = std::mt19937_64;

// Stable seed derivation for per-rollout / per-state streams.
uint64_t mix_seed(uint64_t a, uint64_t b);
uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c);

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

class StopWatch {
 public:
  StopWatch() : start_(clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_;
};

// Wall-clock deadline; <=0 budget means unlimited.
class Deadline {
 public:
  explicit Deadline(double budget_sec) : budget_(budget_sec) {}
  bool expired() const { return budget_ > 0 && watch_.seconds() >= budget_; }
  double remaining() const { return budget_ <= 0 ? 1e18 : budget_ - watch_.seconds(); }

 private:
  double budget_;
  StopWatch watch_;
};

std::string base64_encode(const uint8_t* data, size_t n);
std::vector<uint8_t> base64_decode(const std::string& s);

std::string encode_doubles(const std::vector<double>& v);  // little-endian binary64, base64
std::vector<double> decode_doubles(const std::string& s);

std::string lowercase(std::string s);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace asnets
