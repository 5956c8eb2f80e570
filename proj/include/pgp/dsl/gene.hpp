#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace pgp::dsl {

enum class GeneType : std::uint8_t { Bool, Int, Act };

std::string_view to_string(GeneType t) noexcept;

/// The closed gene set. Functions first, then terminals.
enum class Gene : std::uint8_t {
    IfElse,
    And,
    Or,
    Not,
    Sub,
    IsCoinAt,
    IsEnemyAt,
    IsBreakableAt,
    Seq2,
    Seq3,
    Const,
    Left,
    Right,
    Up,
    Down,
    Jump,
    Shoot,
    Run,
    Wait,
    IsTall,
    CanJump,
    CanShoot,
};

inline constexpr std::size_t kGeneCount = 22;
/// Bumped whenever the table below changes shape.
inline constexpr int kGeneTableVersion = 1;

inline constexpr int kMinConst = -6;
inline constexpr int kMaxConst = 6;
inline constexpr int kMaxDepth = 12;
inline constexpr int kMaxNodes = 256;
inline constexpr int kMaxArity = 3;

struct GeneSignature {
    Gene gene;
    std::string_view name;
    GeneType returnType;
    std::uint8_t arity;
    std::array<GeneType, kMaxArity> args;

    bool terminal() const noexcept { return arity == 0; }
};

const GeneSignature& signature(Gene g) noexcept;
std::span<const GeneSignature> gene_table() noexcept;
std::optional<Gene> gene_from_name(std::string_view name) noexcept;

/// Genes returning `t`, split by arity.
std::span<const Gene> functions_of(GeneType t) noexcept;
std::span<const Gene> terminals_of(GeneType t) noexcept;

} // namespace pgp::dsl
