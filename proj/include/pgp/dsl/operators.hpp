#pragma once

#include "pgp/dsl/chromosome.hpp"

#include <random>

namespace pgp::dsl {

using Rng = std::mt19937_64;

enum class InitMethod : std::uint8_t { Grow, Full };

// Crossover tuning.
inline constexpr double kCrossoverFunctionBias = 0.9;
inline constexpr int kCrossoverAttempts = 5;

/// Random well-typed tree returning `type`, at most `maxDepth` deep and
/// `maxNodes` large. Full places terminals only at maxDepth (unless the
/// node budget forces an earlier leaf); Grow picks uniformly among all genes
/// of the required type while depth remains.
Tree random_tree(Rng& rng, InitMethod method, int maxDepth, GeneType type,
                 int maxNodes = kMaxNodes);

Chromosome random_chromosome(Rng& rng, InitMethod method, int maxDepth);

/// Branch-typed subtree crossover. Picks a node in `a` (function nodes with
/// probability 0.9), swaps in a copy of a random same-typed subtree from
/// `b`. Retries up to five times when the child breaks the caps and falls
/// back to a copy of `a`.
Chromosome crossover(const Chromosome& a, const Chromosome& b, Rng& rng);

/// Single-point mutation: one node chosen uniformly is replaced by a fresh
/// grow tree of the same return type. The new subtree is no deeper than the
/// one it replaces, nor than the remaining global depth budget.
Chromosome mutate(const Chromosome& c, Rng& rng);

} // namespace pgp::dsl
