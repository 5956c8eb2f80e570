#include "pgp/dsl/chromosome.hpp"

#include "pgp/dsl/sexpr.hpp"
#include "pgp/errors.hpp"

#include <fmt/format.h>

namespace pgp::dsl {

namespace {

std::uint64_t fnv1a(std::string_view text) noexcept
{
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

struct Checker {
    std::span<const Node> tree;
    int maxDepth;
    TreeShape shape;

    // Returns one past the end of the subtree rooted at `at`.
    std::size_t visit(std::size_t at, GeneType expected, int depth, const Node* parent,
                      int argIndex)
    {
        if (at >= tree.size()) {
            throw ValidationError(fmt::format("tree truncated: node {} missing", at));
        }
        if (depth > maxDepth) {
            throw ValidationError(fmt::format("tree depth exceeds {}", maxDepth));
        }
        const Node& n = tree[at];
        if (static_cast<std::size_t>(n.gene) >= kGeneCount) {
            throw ValidationError(fmt::format("node {} has an unknown gene", at));
        }
        const auto& sig = signature(n.gene);
        if (sig.returnType != expected) {
            if (parent) {
                throw ValidationError(fmt::format(
                    "type mismatch: {} argument {} expects {}, got {} ({})",
                    signature(parent->gene).name, argIndex + 1, to_string(expected),
                    to_string(sig.returnType), sig.name));
            }
            throw ValidationError(fmt::format("type mismatch: root must be {}, got {} ({})",
                                              to_string(expected), to_string(sig.returnType),
                                              sig.name));
        }
        if (n.gene == Gene::Const && (n.value < kMinConst || n.value > kMaxConst)) {
            throw ValidationError(
                fmt::format("constant {} outside [{}, {}]", n.value, kMinConst, kMaxConst));
        }
        shape.depths[at] = static_cast<std::uint8_t>(depth);
        shape.depth = std::max(shape.depth, depth);
        std::size_t next = at + 1;
        for (int i = 0; i < sig.arity; ++i) {
            next = visit(next, sig.args[static_cast<std::size_t>(i)], depth + 1, &n, i);
        }
        shape.subtreeSizes[at] = static_cast<std::uint16_t>(next - at);
        return next;
    }
};

} // namespace

GeneType return_type(const Node& n) noexcept
{
    return signature(n.gene).returnType;
}

TreeShape check_tree(std::span<const Node> tree, GeneType expected, int maxDepth, int maxNodes)
{
    if (tree.empty()) {
        throw ValidationError("empty tree");
    }
    if (tree.size() > static_cast<std::size_t>(maxNodes)) {
        throw ValidationError(fmt::format("tree has {} nodes, cap is {}", tree.size(), maxNodes));
    }
    Checker c{tree, maxDepth, {}};
    c.shape.subtreeSizes.resize(tree.size());
    c.shape.depths.resize(tree.size());
    const auto end = c.visit(0, expected, 1, nullptr, 0);
    if (end != tree.size()) {
        throw ValidationError(fmt::format("{} trailing nodes after the root subtree",
                                          tree.size() - end));
    }
    return std::move(c.shape);
}

Chromosome::Chromosome(Tree tree) : nodes_(std::move(tree))
{
    auto shape = check_tree(nodes_, GeneType::Act);
    sizes_ = std::move(shape.subtreeSizes);
    depths_ = std::move(shape.depths);
    depth_ = shape.depth;
    id_ = fnv1a(serialize(*this));
}

Tree Chromosome::subtree(std::size_t index) const
{
    const auto first = nodes_.begin() + static_cast<std::ptrdiff_t>(index);
    return Tree(first, first + static_cast<std::ptrdiff_t>(sizes_[index]));
}

Tree splice(std::span<const Node> tree, std::size_t index, std::size_t oldSize,
            std::span<const Node> replacement)
{
    Tree out;
    out.reserve(tree.size() - oldSize + replacement.size());
    out.insert(out.end(), tree.begin(), tree.begin() + static_cast<std::ptrdiff_t>(index));
    out.insert(out.end(), replacement.begin(), replacement.end());
    out.insert(out.end(), tree.begin() + static_cast<std::ptrdiff_t>(index + oldSize), tree.end());
    return out;
}

} // namespace pgp::dsl
