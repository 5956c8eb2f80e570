#pragma once

#include "pgp/dsl/chromosome.hpp"

#include <string>

namespace pgp::dsl {

/// Graphviz digraph: one box per tree node labelled with its gene name (or
/// constant value), edges parent -> child in argument order.
std::string to_dot(const Chromosome& chromosome);

/// Indented, human-editable rendering of the decision tree:
///
///     if is_enemy_at(1, 0)
///     then jump()
///     else seq {
///       right()
///       jump()
///     }
std::string to_pseudocode(const Chromosome& chromosome);

} // namespace pgp::dsl
