#include "pgp/dsl/operators.hpp"

#include "pgp/errors.hpp"

#include <algorithm>

namespace pgp::dsl {

namespace {

std::size_t pick(Rng& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

class TreeBuilder {
public:
    TreeBuilder(Rng& rng, InitMethod method) : rng_(rng), method_(method) {}

    Tree build(int maxDepth, GeneType type, int maxNodes)
    {
        node(maxDepth, type, maxNodes);
        return std::move(out_);
    }

private:
    // Emits one subtree of at most `budget` nodes; returns its size.
    int node(int depthLeft, GeneType type, int budget)
    {
        const auto functions = functions_of(type);
        const auto terminals = terminals_of(type);
        const Gene* chosen = nullptr;
        if (depthLeft > 1) {
            if (method_ == InitMethod::Full) {
                std::vector<Gene> feasible;
                for (const Gene g : functions) {
                    if (signature(g).arity + 1 <= budget) {
                        feasible.push_back(g);
                    }
                }
                if (!feasible.empty()) {
                    functionChoice_ = feasible[pick(rng_, feasible.size())];
                    chosen = &functionChoice_;
                }
            } else {
                const std::size_t k = pick(rng_, functions.size() + terminals.size());
                if (k < functions.size() && signature(functions[k]).arity + 1 <= budget) {
                    chosen = &functions[k];
                }
            }
        }

        if (!chosen) {
            const Gene g = terminals[pick(rng_, terminals.size())];
            Node n{g, 0};
            if (g == Gene::Const) {
                n.value = static_cast<std::int8_t>(
                    std::uniform_int_distribution<int>(kMinConst, kMaxConst)(rng_));
            }
            out_.push_back(n);
            return 1;
        }

        const auto& sig = signature(*chosen);
        out_.push_back({sig.gene, 0});
        int used = 1;
        for (int k = 0; k < sig.arity; ++k) {
            const int laterSiblings = sig.arity - k - 1;
            used += node(depthLeft - 1, sig.args[static_cast<std::size_t>(k)],
                         budget - used - laterSiblings);
        }
        return used;
    }

    Rng& rng_;
    InitMethod method_;
    Gene functionChoice_ = Gene::Wait;
    Tree out_;
};

int subtree_depth(const Chromosome& c, std::size_t index)
{
    int deepest = c.depth_at(index);
    for (std::size_t i = index; i < index + c.subtree_size(index); ++i) {
        deepest = std::max(deepest, c.depth_at(i));
    }
    return deepest - c.depth_at(index) + 1;
}

} // namespace

Tree random_tree(Rng& rng, InitMethod method, int maxDepth, GeneType type, int maxNodes)
{
    if (maxDepth < 1) {
        throw ContractViolation("random_tree needs maxDepth >= 1");
    }
    if (maxNodes < 1) {
        throw ContractViolation("random_tree needs a node budget >= 1");
    }
    return TreeBuilder(rng, method).build(std::min(maxDepth, kMaxDepth), type,
                                          std::min(maxNodes, kMaxNodes));
}

Chromosome random_chromosome(Rng& rng, InitMethod method, int maxDepth)
{
    return Chromosome(random_tree(rng, method, maxDepth, GeneType::Act));
}

Chromosome crossover(const Chromosome& a, const Chromosome& b, Rng& rng)
{
    std::vector<std::size_t> functions;
    std::vector<std::size_t> terminals;
    for (std::size_t i = 0; i < a.size(); ++i) {
        (signature(a.nodes()[i].gene).terminal() ? terminals : functions).push_back(i);
    }

    std::vector<std::size_t> candidates;
    for (int attempt = 0; attempt < kCrossoverAttempts; ++attempt) {
        const bool useFunction =
            !functions.empty() &&
            (terminals.empty() || std::bernoulli_distribution(kCrossoverFunctionBias)(rng));
        const auto& pool = useFunction ? functions : terminals;
        const std::size_t at = pool[pick(rng, pool.size())];
        const GeneType type = return_type(a.nodes()[at]);

        candidates.clear();
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (return_type(b.nodes()[i]) == type) {
                candidates.push_back(i);
            }
        }
        if (candidates.empty()) {
            return a;
        }
        const std::size_t from = candidates[pick(rng, candidates.size())];
        const std::size_t newSize = a.size() - a.subtree_size(at) + b.subtree_size(from);
        const int newDepth = a.depth_at(at) - 1 + subtree_depth(b, from);
        if (newSize > static_cast<std::size_t>(kMaxNodes) || newDepth > kMaxDepth) {
            continue;
        }
        const auto donor = b.nodes().subspan(from, b.subtree_size(from));
        return Chromosome(splice(a.nodes(), at, a.subtree_size(at), donor));
    }
    return a;
}

Chromosome mutate(const Chromosome& c, Rng& rng)
{
    const std::size_t at = pick(rng, c.size());
    const GeneType type = return_type(c.nodes()[at]);
    const int depthBudget =
        std::min(kMaxDepth - c.depth_at(at) + 1, subtree_depth(c, at));
    const int nodeBudget = kMaxNodes - static_cast<int>(c.size() - c.subtree_size(at));
    const Tree fresh = random_tree(rng, InitMethod::Grow, depthBudget, type, nodeBudget);
    return Chromosome(splice(c.nodes(), at, c.subtree_size(at), fresh));
}

} // namespace pgp::dsl
