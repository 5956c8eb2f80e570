#include "pgp/dsl/export.hpp"

#include <fmt/format.h>

#include <iterator>

namespace pgp::dsl {

namespace {

std::string node_label(const Node& n)
{
    if (n.gene == Gene::Const) {
        return std::to_string(n.value);
    }
    return std::string(signature(n.gene).name);
}

std::string_view dot_shape(const Node& n)
{
    switch (return_type(n)) {
    case GeneType::Bool:
        return "diamond";
    case GeneType::Int:
        return "plaintext";
    default:
        return signature(n.gene).terminal() ? "ellipse" : "box";
    }
}

std::string_view call_name(Gene g)
{
    switch (g) {
    case Gene::Left:
        return "left";
    case Gene::Right:
        return "right";
    case Gene::Up:
        return "up";
    case Gene::Down:
        return "down";
    case Gene::Jump:
        return "jump";
    case Gene::Shoot:
        return "shoot";
    case Gene::Run:
        return "run";
    case Gene::Wait:
        return "wait";
    case Gene::IsCoinAt:
        return "is_coin_at";
    case Gene::IsEnemyAt:
        return "is_enemy_at";
    case Gene::IsBreakableAt:
        return "is_breakable_at";
    case Gene::IsTall:
        return "is_tall";
    case Gene::CanJump:
        return "can_jump";
    case Gene::CanShoot:
        return "can_shoot";
    default:
        return "?";
    }
}

class PseudoWriter {
public:
    explicit PseudoWriter(const Chromosome& c) : nodes_(c.nodes()) {}

    std::string run()
    {
        act(0, 0, "");
        return std::move(out_);
    }

private:
    void line(int indent, std::string_view text)
    {
        out_.append(static_cast<std::size_t>(indent), ' ');
        out_.append(text);
        out_.push_back('\n');
    }

    std::size_t act(std::size_t i, int indent, std::string_view prefix)
    {
        const Node& n = nodes_[i];
        switch (n.gene) {
        case Gene::IfElse: {
            int inner = indent;
            if (!prefix.empty()) {
                // A conditional inside a branch opens its own block.
                line(indent, prefix.substr(0, prefix.size() - 1));
                inner += 2;
            }
            std::size_t next = i + 1;
            const std::string cond = expr(next);
            line(inner, fmt::format("if {}", cond));
            next = act(next, inner, "then ");
            return act(next, inner, "else ");
        }
        case Gene::Seq2:
        case Gene::Seq3: {
            line(indent, fmt::format("{}seq {{", prefix));
            std::size_t next = i + 1;
            for (int k = 0; k < signature(n.gene).arity; ++k) {
                next = act(next, indent + 2, "");
            }
            line(indent, "}");
            return next;
        }
        default:
            line(indent, fmt::format("{}{}()", prefix, call_name(n.gene)));
            return i + 1;
        }
    }

    // Renders the Bool/Int subtree at `i` inline and advances `i` past it.
    std::string expr(std::size_t& i)
    {
        const Node& n = nodes_[i++];
        switch (n.gene) {
        case Gene::And:
        case Gene::Or: {
            const std::string a = expr(i);
            const std::string b = expr(i);
            return fmt::format("({} {} {})", a, n.gene == Gene::And ? "and" : "or", b);
        }
        case Gene::Not:
            return fmt::format("not {}", expr(i));
        case Gene::Sub: {
            const std::string a = expr(i);
            const std::string b = expr(i);
            return fmt::format("({} - {})", a, b);
        }
        case Gene::IsCoinAt:
        case Gene::IsEnemyAt:
        case Gene::IsBreakableAt: {
            const std::string dx = expr(i);
            const std::string dy = expr(i);
            return fmt::format("{}({}, {})", call_name(n.gene), dx, dy);
        }
        case Gene::Const:
            return std::to_string(n.value);
        default:
            return fmt::format("{}()", call_name(n.gene));
        }
    }

    std::span<const Node> nodes_;
    std::string out_;
};

} // namespace

std::string to_dot(const Chromosome& chromosome)
{
    const auto nodes = chromosome.nodes();
    std::string out = "digraph agent {\n  node [fontname=\"Helvetica\"];\n";
    auto sink = std::back_inserter(out);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        fmt::format_to(sink, "  n{} [label=\"{}\", shape={}];\n", i, node_label(nodes[i]),
                       dot_shape(nodes[i]));
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::size_t child = i + 1;
        for (int k = 0; k < signature(nodes[i].gene).arity; ++k) {
            fmt::format_to(sink, "  n{} -> n{};\n", i, child);
            child += chromosome.subtree_size(child);
        }
    }
    out += "}\n";
    return out;
}

std::string to_pseudocode(const Chromosome& chromosome)
{
    return PseudoWriter(chromosome).run();
}

} // namespace pgp::dsl
