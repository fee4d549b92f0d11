#include "core/util.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

namespace asnets {

static long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) fail(ErrKind::invalid_argument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = gcd_ll(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::from_decimal_string(const std::string& s) {
  // Accepts "0.5", "-3", "1/2".
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(s.substr(0, slash));
    long long d = std::stoll(s.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(s), 1);
  std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
  bool neg = !ip.empty() && ip[0] == '-';
  long long whole = ip.empty() || ip == "-" || ip == "+" ? 0 : std::stoll(ip);
  if (whole < 0) whole = -whole;
  long long den = 1;
  long long frac = 0;
  for (char c : fp) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(ErrKind::syntax, "bad number: " + s);
    if (den > 1000000000000000ll) fail(ErrKind::syntax, "number too precise: " + s);
    frac = frac * 10 + (c - '0');
    den *= 10;
  }
  long long num = whole * den + frac;
  return Rational(neg ? -num : num, den);
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}
bool Rational::operator<(const Rational& o) const {
  return num * o.den < o.num * den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

uint64_t mix_seed(uint64_t a, uint64_t b) {
  // splitmix64 over the combined word
  uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c) { return mix_seed(mix_seed(a, b), c); }

static const char* kB64 = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const uint8_t* data, size_t n) {
  std::string out;
  out.reserve((n + 2) / 3 * 4);
  for (size_t i = 0; i < n; i += 3) {
    uint32_t v = data[i] << 16;
    if (i + 1 < n) v |= data[i + 1] << 8;
    if (i + 2 < n) v |= data[i + 2];
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out.push_back(i + 1 < n ? kB64[(v >> 6) & 63] : '=');
    out.push_back(i + 2 < n ? kB64[v & 63] : '=');
  }
  return out;
}

std::vector<uint8_t> base64_decode(const std::string& s) {
  static int table[256];
  static bool init = [] {
    std::fill(std::begin(table), std::end(table), -1);
    for (int i = 0; i < 64; ++i) table[static_cast<unsigned char>(kB64[i])] = i;
    return true;
  }();
  (void)init;
  std::vector<uint8_t> out;
  uint32_t acc = 0;
  int bits = 0;
  for (char c : s) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    int v = table[static_cast<unsigned char>(c)];
    if (v < 0) fail(ErrKind::corrupt_checkpoint, "invalid base64 character");
    acc = (acc << 6) | v;
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<uint8_t>((acc >> bits) & 0xff));
    }
  }
  return out;
}

std::string encode_doubles(const std::vector<double>& v) {
  std::vector<uint8_t> bytes(v.size() * 8);
  for (size_t i = 0; i < v.size(); ++i) {
    uint64_t bits;
    static_assert(sizeof(double) == 8);
    std::memcpy(&bits, &v[i], 8);
    for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = static_cast<uint8_t>(bits >> (8 * b));
  }
  return base64_encode(bytes.data(), bytes.size());
}

std::vector<double> decode_doubles(const std::string& s) {
  std::vector<uint8_t> bytes = base64_decode(s);
  if (bytes.size() % 8 != 0) fail(ErrKind::corrupt_checkpoint, "tensor byte count not a multiple of 8");
  std::vector<double> out(bytes.size() / 8);
  for (size_t i = 0; i < out.size(); ++i) {
    uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= uint64_t(bytes[i * 8 + b]) << (8 * b);
    std::memcpy(&out[i], &bits, 8);
  }
  return out;
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrKind::io, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrKind::io, "cannot write file: " + path);
  out << content;
}

}  // namespace asnets
