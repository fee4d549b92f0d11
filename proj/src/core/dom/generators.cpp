#include "core/dom/generators.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <vector>

namespace asnets::dom {

namespace {

std::string loc(int row, int col) {
  return "l-" + std::to_string(row) + "-" + std::to_string(col);
}

}  // namespace

Generated gen_triangle_tireworld(int n) {
  if (n < 1) fail(ErrKind::invalid_argument, "triangle tireworld size must be >= 1");
  Generated out;
  out.domain = R"((define (domain triangle-tire)
  (:requirements :typing :strips :probabilistic-effects)
  (:types location)
  (:predicates (vehicle-at ?loc - location) (spare-in ?loc - location)
               (road ?from - location ?to - location) (not-flattire))
  (:action move-car
    :parameters (?from - location ?to - location)
    :precondition (and (vehicle-at ?from) (road ?from ?to) (not-flattire))
    :effect (and (vehicle-at ?to) (not (vehicle-at ?from))
                 (probabilistic 1/2 (not (not-flattire)))))
  (:action changetire
    :parameters (?loc - location)
    :precondition (and (vehicle-at ?loc) (spare-in ?loc))
    :effect (and (not (spare-in ?loc)) (not-flattire)))
)
)";

  // instance m at row offset o occupies global rows o+1 .. o+2m+1; the road
  // and spare pattern of larger instances wraps two new bottom rows around
  // the next smaller instance
  std::vector<std::pair<std::string, std::string>> roads;
  std::vector<std::pair<int, int>> spares;
  std::function<void(int, int)> build = [&](int m, int o) {
    if (m == 0) {
      spares.emplace_back(o + 1, 1);
      return;
    }
    for (int j = 1; j <= 2 * m; ++j) {
      roads.emplace_back(loc(o + 1, j), loc(o + 1, j + 1));
      roads.emplace_back(loc(o + 1, j), loc(o + 2, j));
      roads.emplace_back(loc(o + 2, j), loc(o + 1, j + 1));
    }
    for (int t = 1; t <= m; ++t) {
      roads.emplace_back(loc(o + 2, 2 * t - 1), loc(o + 3, 2 * t - 1));
      roads.emplace_back(loc(o + 3, 2 * t - 1), loc(o + 2, 2 * t));
    }
    for (int j = 1; j <= 2 * m; ++j) spares.emplace_back(o + 2, j);
    spares.emplace_back(o + 3, 1);
    if (2 * m - 1 >= 1) spares.emplace_back(o + 3, 2 * m - 1);
    build(m - 1, o + 2);
  };
  build(n, 0);
  std::sort(spares.begin(), spares.end());
  spares.erase(std::unique(spares.begin(), spares.end()), spares.end());

  std::ostringstream os;
  os << "(define (problem triangle-tire-" << n << ")\n  (:domain triangle-tire)\n  (:objects";
  for (int i = 1; i <= 2 * n + 1; ++i)
    for (int j = 1; j <= 2 * n + 2 - i; ++j) os << " " << loc(i, j);
  os << " - location)\n  (:init (vehicle-at " << loc(1, 1) << ") (not-flattire)";
  for (const auto& [a, b] : roads) os << "\n    (road " << a << " " << b << ")";
  os << "\n   ";
  for (const auto& [i, j] : spares) os << " (spare-in " << loc(i, j) << ")";
  os << ")\n  (:goal (vehicle-at " << loc(1, 2 * n + 1) << "))\n)\n";
  out.problem = os.str();
  return out;
}

Generated gen_cosanostra(int booths) {
  if (booths < 1) fail(ErrKind::invalid_argument, "cosanostra needs at least one toll booth");
  Generated out;
  out.domain = R"((define (domain cosanostra)
  (:requirements :typing :strips :probabilistic-effects :conditional-effects :negative-preconditions)
  (:types location - object toll-booth open-intersection - location)
  (:predicates (deliverator-at ?loc - location) (pizza-at ?loc - location)
               (have-pizza) (road ?from - location ?to - location)
               (open ?booth - toll-booth) (operator-angry ?booth - toll-booth)
               (tires-intact))
  (:action load-pizza
    :parameters (?loc - location)
    :precondition (and (deliverator-at ?loc) (pizza-at ?loc) (tires-intact))
    :effect (and (not (pizza-at ?loc)) (have-pizza)))
  (:action unload-pizza
    :parameters (?loc - location)
    :precondition (and (deliverator-at ?loc) (have-pizza) (tires-intact))
    :effect (and (pizza-at ?loc) (not (have-pizza))))
  (:action pay-operator
    :parameters (?booth - toll-booth)
    :precondition (and (deliverator-at ?booth) (tires-intact))
    :effect (open ?booth))
  (:action leave-toll-booth
    :parameters (?from - toll-booth ?to - location)
    :precondition (and (deliverator-at ?from) (road ?from ?to) (tires-intact))
    :effect (and
      (when (operator-angry ?from)
            (probabilistic 1/2 (and (not (deliverator-at ?from)) (deliverator-at ?to))
                           1/2 (not (tires-intact))))
      (when (and (not (operator-angry ?from)) (open ?from))
            (and (not (deliverator-at ?from)) (deliverator-at ?to)))
      (when (and (not (operator-angry ?from)) (not (open ?from)))
            (and (not (deliverator-at ?from)) (deliverator-at ?to) (operator-angry ?from)))))
  (:action leave-open-intersection
    :parameters (?from - open-intersection ?to - location)
    :precondition (and (deliverator-at ?from) (road ?from ?to) (tires-intact))
    :effect (and (not (deliverator-at ?from)) (deliverator-at ?to)))
)
)";
  int width = 1;
  for (int k = booths - 1; k >= 10; k /= 10) ++width;
  auto booth = [&](int i) {
    std::string num = std::to_string(i);
    while (static_cast<int>(num.size()) < width) num = "0" + num;
    return "b-" + num;
  };
  std::vector<std::string> chain{"shop"};
  for (int i = 0; i < booths; ++i) chain.push_back(booth(i));
  chain.push_back("home");

  std::ostringstream os;
  os << "(define (problem cosanostra-n" << booths << ")\n  (:domain cosanostra)\n  (:objects";
  for (int i = 0; i < booths; ++i) os << " " << booth(i);
  os << " - toll-booth shop home - open-intersection)\n  (:init (deliverator-at shop) "
     << "(pizza-at shop) (tires-intact)";
  for (size_t i = 0; i + 1 < chain.size(); ++i)
    os << "\n    (road " << chain[i] << " " << chain[i + 1] << ") (road " << chain[i + 1] << " "
       << chain[i] << ")";
  os << ")\n  (:goal (and (pizza-at home) (deliverator-at shop)))\n)\n";
  out.problem = os.str();
  return out;
}

Generated gen_two_chain(int K, bool goal_right) {
  if (K < 1) fail(ErrKind::invalid_argument, "two-chain length must be >= 1");
  Generated out;
  out.domain = R"((define (domain unreliable-robot)
  (:requirements :typing :strips :probabilistic-effects)
  (:types robot location)
  (:predicates (at ?r - robot ?loc - location) (path ?from - location ?to - location))
  (:action drive
    :parameters (?r - robot ?from - location ?to - location)
    :precondition (and (at ?r ?from) (path ?from ?to))
    :effect (probabilistic 9/10 (and (at ?r ?to) (not (at ?r ?from)))))
)
)";
  auto name = [&](char side, int i) { return std::string(1, side) + "-" + std::to_string(i); };
  std::ostringstream os;
  os << "(define (problem two-chain-" << K << (goal_right ? "r" : "l")
     << ")\n  (:domain unreliable-robot)\n  (:objects shakey - robot m";
  for (int i = 1; i <= K; ++i) os << " " << name('l', i);
  for (int i = 1; i <= K; ++i) os << " " << name('r', i);
  os << " - location)\n  (:init (at shakey m)\n    (path m " << name('l', 1) << ") (path m "
     << name('r', 1) << ")";
  for (int i = 1; i < K; ++i)
    os << "\n    (path " << name('l', i) << " " << name('l', i + 1) << ") (path " << name('r', i)
       << " " << name('r', i + 1) << ")";
  os << ")\n  (:goal (at shakey " << name(goal_right ? 'r' : 'l', K) << "))\n)\n";
  out.problem = os.str();
  return out;
}

namespace {

// random towers: each block goes on the table or on a current tower top
std::vector<int> random_towers(int n, Rng& rng) {
  std::vector<int> below(n, -1);  // -1 = on table
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> tops;
  for (int b : order) {
    int choice = std::uniform_int_distribution<int>(0, static_cast<int>(tops.size()))(rng);
    if (choice == static_cast<int>(tops.size())) {
      tops.push_back(b);
    } else {
      below[b] = tops[choice];
      tops[choice] = b;
    }
  }
  return below;
}

}  // namespace

Generated gen_blocksworld(int n_blocks, uint64_t seed, bool probabilistic) {
  if (n_blocks < 1) fail(ErrKind::invalid_argument, "blocksworld needs at least one block");
  Generated out;
  std::string header = probabilistic ? "prob-blocksworld" : "det-blocksworld";
  std::ostringstream dom;
  dom << "(define (domain " << header << ")\n"
      << "  (:requirements :typing :strips :equality"
      << (probabilistic ? " :probabilistic-effects" : "") << ")\n"
      << "  (:types block)\n"
      << "  (:predicates (on ?b1 - block ?b2 - block) (on-table ?b - block)\n"
      << "               (clear ?b - block) (holding ?b - block) (emptyhand))\n";
  auto wrap = [&](const std::string& body) {
    if (!probabilistic) return body;
    return "(probabilistic 3/4 " + body + ")";
  };
  dom << "  (:action pick-up\n"
      << "    :parameters (?b - block)\n"
      << "    :precondition (and (clear ?b) (on-table ?b) (emptyhand))\n"
      << "    :effect "
      << wrap("(and (holding ?b) (not (emptyhand)) (not (clear ?b)) (not (on-table ?b)))")
      << ")\n";
  dom << "  (:action put-down\n"
      << "    :parameters (?b - block)\n"
      << "    :precondition (holding ?b)\n"
      << "    :effect (and (on-table ?b) (clear ?b) (emptyhand) (not (holding ?b))))\n";
  if (probabilistic) {
    dom << "  (:action unstack\n"
        << "    :parameters (?b - block ?c - block)\n"
        << "    :precondition (and (clear ?b) (on ?b ?c) (emptyhand) (not (= ?b ?c)))\n"
        << "    :effect (probabilistic\n"
        << "      3/4 (and (holding ?b) (not (emptyhand)) (not (clear ?b)) (not (on ?b ?c)) "
           "(clear ?c))\n"
        << "      1/4 (and (on-table ?b) (not (on ?b ?c)) (clear ?c))))\n";
    dom << "  (:action stack\n"
        << "    :parameters (?b - block ?c - block)\n"
        << "    :precondition (and (holding ?b) (clear ?c) (not (= ?b ?c)))\n"
        << "    :effect (probabilistic\n"
        << "      3/4 (and (on ?b ?c) (not (holding ?b)) (clear ?b) (not (clear ?c)) "
           "(emptyhand))\n"
        << "      1/4 (and (on-table ?b) (clear ?b) (emptyhand) (not (holding ?b)))))\n";
  } else {
    dom << "  (:action unstack\n"
        << "    :parameters (?b - block ?c - block)\n"
        << "    :precondition (and (clear ?b) (on ?b ?c) (emptyhand) (not (= ?b ?c)))\n"
        << "    :effect (and (holding ?b) (not (emptyhand)) (not (clear ?b)) (not (on ?b ?c)) "
           "(clear ?c)))\n";
    dom << "  (:action stack\n"
        << "    :parameters (?b - block ?c - block)\n"
        << "    :precondition (and (holding ?b) (clear ?c) (not (= ?b ?c)))\n"
        << "    :effect (and (on ?b ?c) (not (holding ?b)) (clear ?b) (not (clear ?c)) "
           "(emptyhand)))\n";
  }
  dom << ")\n";
  out.domain = dom.str();

  Rng rng(mix_seed(seed, n_blocks));
  std::vector<int> init_below = random_towers(n_blocks, rng);
  std::vector<int> goal_below = random_towers(n_blocks, rng);
  auto block = [](int i) { return "b" + std::to_string(i + 1); };

  std::ostringstream os;
  os << "(define (problem " << header << "-" << n_blocks << "-" << seed << ")\n  (:domain "
     << header << ")\n  (:objects";
  for (int i = 0; i < n_blocks; ++i) os << " " << block(i);
  os << " - block)\n  (:init (emptyhand)";
  std::vector<char> covered(n_blocks, 0);
  for (int i = 0; i < n_blocks; ++i) {
    if (init_below[i] < 0)
      os << " (on-table " << block(i) << ")";
    else {
      os << " (on " << block(i) << " " << block(init_below[i]) << ")";
      covered[init_below[i]] = 1;
    }
  }
  for (int i = 0; i < n_blocks; ++i)
    if (!covered[i]) os << " (clear " << block(i) << ")";
  os << ")\n  (:goal (and";
  for (int i = 0; i < n_blocks; ++i) {
    if (goal_below[i] < 0)
      os << " (on-table " << block(i) << ")";
    else
      os << " (on " << block(i) << " " << block(goal_below[i]) << ")";
  }
  os << "))\n)\n";
  out.problem = os.str();
  return out;
}

Generated generate(const std::string& id, int size, uint64_t seed) {
  if (id == "ttw" || id == "triangle-tireworld") return gen_triangle_tireworld(size);
  if (id == "cosanostra" || id == "cn") return gen_cosanostra(size);
  if (id == "two-chain") return gen_two_chain(size, false);
  if (id == "two-chain-right") return gen_two_chain(size, true);
  if (id == "bw" || id == "blocksworld") return gen_blocksworld(size, seed, false);
  if (id == "pbw" || id == "prob-blocksworld") return gen_blocksworld(size, seed, true);
  fail(ErrKind::invalid_argument, "unknown generator id '" + id + "'");
}

}  // namespace asnets::dom
