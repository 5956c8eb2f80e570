#pragma once

#include "pgp/dsl/gene.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pgp::dsl {

/// One tree node in prefix order. `value` is meaningful for Const only.
struct Node {
    Gene gene = Gene::Wait;
    std::int8_t value = 0;

    friend bool operator==(const Node&, const Node&) = default;
};

/// A prefix-ordered, not yet validated tree.
using Tree = std::vector<Node>;

/// Shape facts about a well-typed tree.
struct TreeShape {
    std::vector<std::uint16_t> subtreeSizes;
    std::vector<std::uint8_t> depths; // depth of each node, root = 1
    int depth = 0;
};

/// Type-checks `tree` against `expected`, the depth and node caps and the
/// constant range. Throws ValidationError describing the first problem.
TreeShape check_tree(std::span<const Node> tree, GeneType expected, int maxDepth = kMaxDepth,
                     int maxNodes = kMaxNodes);

/// Immutable, well-typed decision tree whose root returns Act.
class Chromosome {
public:
    /// Throws ValidationError when `tree` is not a well-typed Act tree
    /// within the caps.
    explicit Chromosome(Tree tree);

    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    int depth() const noexcept { return depth_; }
    /// Number of nodes in the subtree rooted at `index`.
    std::size_t subtree_size(std::size_t index) const noexcept { return sizes_[index]; }
    /// Depth of node `index` below the root (root = 1).
    int depth_at(std::size_t index) const noexcept { return depths_[index]; }
    /// FNV-1a hash of the canonical S-expression.
    std::uint64_t id() const noexcept { return id_; }

    Tree tree() const { return nodes_; }
    Tree subtree(std::size_t index) const;

    friend bool operator==(const Chromosome& a, const Chromosome& b) noexcept
    {
        return a.nodes_ == b.nodes_;
    }

private:
    Tree nodes_;
    std::vector<std::uint16_t> sizes_;
    std::vector<std::uint8_t> depths_;
    int depth_ = 0;
    std::uint64_t id_ = 0;
};

/// Copy of `tree` with the subtree at `index` (of `oldSize` nodes) swapped
/// for `replacement`.
Tree splice(std::span<const Node> tree, std::size_t index, std::size_t oldSize,
            std::span<const Node> replacement);

GeneType return_type(const Node& n) noexcept;

} // namespace pgp::dsl
