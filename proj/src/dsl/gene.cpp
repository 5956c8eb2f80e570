#include "pgp/dsl/gene.hpp"

namespace pgp::dsl {

namespace {

using enum GeneType;

constexpr std::array<GeneSignature, kGeneCount> kTable = {{
    {Gene::IfElse, "IfElse", Act, 3, {Bool, Act, Act}},
    {Gene::And, "And", Bool, 2, {Bool, Bool, Bool}},
    {Gene::Or, "Or", Bool, 2, {Bool, Bool, Bool}},
    {Gene::Not, "Not", Bool, 1, {Bool, Bool, Bool}},
    {Gene::Sub, "Sub", Int, 2, {Int, Int, Int}},
    {Gene::IsCoinAt, "IsCoinAt", Bool, 2, {Int, Int, Int}},
    {Gene::IsEnemyAt, "IsEnemyAt", Bool, 2, {Int, Int, Int}},
    {Gene::IsBreakableAt, "IsBreakableAt", Bool, 2, {Int, Int, Int}},
    {Gene::Seq2, "Seq2", Act, 2, {Act, Act, Act}},
    {Gene::Seq3, "Seq3", Act, 3, {Act, Act, Act}},
    {Gene::Const, "Const", Int, 0, {}},
    {Gene::Left, "Left", Act, 0, {}},
    {Gene::Right, "Right", Act, 0, {}},
    {Gene::Up, "Up", Act, 0, {}},
    {Gene::Down, "Down", Act, 0, {}},
    {Gene::Jump, "Jump", Act, 0, {}},
    {Gene::Shoot, "Shoot", Act, 0, {}},
    {Gene::Run, "Run", Act, 0, {}},
    {Gene::Wait, "Wait", Act, 0, {}},
    {Gene::IsTall, "IsTall", Bool, 0, {}},
    {Gene::CanJump, "CanJump", Bool, 0, {}},
    {Gene::CanShoot, "CanShoot", Bool, 0, {}},
}};

constexpr bool table_is_indexed()
{
    for (std::size_t i = 0; i < kTable.size(); ++i) {
        if (static_cast<std::size_t>(kTable[i].gene) != i) {
            return false;
        }
    }
    return true;
}
static_assert(table_is_indexed(), "gene table must be ordered by enum value");

constexpr std::array<Gene, 3> kActFunctions = {Gene::IfElse, Gene::Seq2, Gene::Seq3};
constexpr std::array<Gene, 6> kBoolFunctions = {Gene::And,      Gene::Or,        Gene::Not,
                                                Gene::IsCoinAt, Gene::IsEnemyAt, Gene::IsBreakableAt};
constexpr std::array<Gene, 1> kIntFunctions = {Gene::Sub};
constexpr std::array<Gene, 8> kActTerminals = {Gene::Left, Gene::Right, Gene::Up,  Gene::Down,
                                               Gene::Jump, Gene::Shoot, Gene::Run, Gene::Wait};
constexpr std::array<Gene, 3> kBoolTerminals = {Gene::IsTall, Gene::CanJump, Gene::CanShoot};
constexpr std::array<Gene, 1> kIntTerminals = {Gene::Const};

} // namespace

std::string_view to_string(GeneType t) noexcept
{
    switch (t) {
    case GeneType::Bool:
        return "Bool";
    case GeneType::Int:
        return "Int";
    default:
        return "Act";
    }
}

const GeneSignature& signature(Gene g) noexcept
{
    return kTable[static_cast<std::size_t>(g)];
}

std::span<const GeneSignature> gene_table() noexcept
{
    return kTable;
}

std::optional<Gene> gene_from_name(std::string_view name) noexcept
{
    for (const auto& s : kTable) {
        if (s.name == name) {
            return s.gene;
        }
    }
    return std::nullopt;
}

std::span<const Gene> functions_of(GeneType t) noexcept
{
    switch (t) {
    case GeneType::Bool:
        return kBoolFunctions;
    case GeneType::Int:
        return kIntFunctions;
    default:
        return kActFunctions;
    }
}

std::span<const Gene> terminals_of(GeneType t) noexcept
{
    switch (t) {
    case GeneType::Bool:
        return kBoolTerminals;
    case GeneType::Int:
        return kIntTerminals;
    default:
        return kActTerminals;
    }
}

} // namespace pgp::dsl
