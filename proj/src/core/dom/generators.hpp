#pragma once

#include <string>

#include "core/util.hpp"

namespace asnets::dom {

struct Generated {
  std::string domain;   // PPDDL text
  std::string problem;  // PPDDL text
};

// Triangular road network of size n: 50% flat-tire chance per move, spares
// along both outside edges and the recursive interior pattern, goal at the
// far corner of the base row.
Generated gen_triangle_tireworld(int n);

// Toll-booth chain shop - b0 - ... - b{K-1} - home; pizza delivery and
// return. Unpaid booths anger the operator; passing an angry booth crushes
// the vehicle half the time.
Generated gen_cosanostra(int booths);

// Unreliable-robot two-chain family: start at m, two unidirectional chains
// of K locations each, goal at the end of one of them; drive succeeds 90%.
Generated gen_two_chain(int K, bool goal_right);

// Single-block-move Blocksworld; probabilistic variant drops the held block
// onto the table 25% of the time on pick-up/unstack/stack. Random initial
// and goal tower configurations drawn from the seed.
Generated gen_blocksworld(int n_blocks, uint64_t seed, bool probabilistic);

// Dispatch by id: ttw | cosanostra | two-chain | two-chain-right | bw | pbw.
Generated generate(const std::string& id, int size, uint64_t seed);

}  // namespace asnets::dom
