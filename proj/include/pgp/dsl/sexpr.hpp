#pragma once

#include "pgp/dsl/chromosome.hpp"

#include <string>
#include <string_view>

namespace pgp::dsl {

/// Canonical single-line S-expression, e.g.
/// `(IfElse (IsEnemyAt 1 0) (Jump) (Seq2 (Right) (Jump)))`.
/// Terminals are parenthesised; constants are bare integers.
std::string serialize(const Chromosome& chromosome);
std::string serialize(std::span<const Node> tree);

/// Inverse of serialize(). Accepts any whitespace between tokens and `;`
/// line comments. Throws ParseError with the line/column of the offending
/// token for unknown genes, arity and type mismatches, out-of-range
/// constants and cap violations.
Chromosome parse(std::string_view text);

} // namespace pgp::dsl
