#include "pgp/dsl/sexpr.hpp"

#include "pgp/errors.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>

namespace pgp::dsl {

namespace {

void append_sexpr(std::string& out, std::span<const Node> tree, std::size_t& at)
{
    const Node& n = tree[at++];
    if (n.gene == Gene::Const) {
        fmt::format_to(std::back_inserter(out), "{}", static_cast<int>(n.value));
        return;
    }
    const auto& sig = signature(n.gene);
    out.push_back('(');
    out.append(sig.name);
    for (int i = 0; i < sig.arity; ++i) {
        out.push_back(' ');
        append_sexpr(out, tree, at);
    }
    out.push_back(')');
}

} // namespace

std::string serialize(std::span<const Node> tree)
{
    std::string out;
    out.reserve(tree.size() * 8);
    std::size_t at = 0;
    if (!tree.empty()) {
        append_sexpr(out, tree, at);
    }
    return out;
}

std::string serialize(const Chromosome& chromosome)
{
    return serialize(chromosome.nodes());
}

namespace {

struct Token {
    enum Kind { Open, Close, Name, Number, End } kind = End;
    std::string_view text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next()
    {
        skip_space();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) {
            return t;
        }
        const char c = text_[pos_];
        if (c == '(' || c == ')') {
            t.kind = c == '(' ? Token::Open : Token::Close;
            t.text = text_.substr(pos_, 1);
            advance(1);
            return t;
        }
        std::size_t end = pos_;
        while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) &&
               text_[end] != '(' && text_[end] != ')' && text_[end] != ';') {
            ++end;
        }
        t.text = text_.substr(pos_, end - pos_);
        const char first = t.text.front();
        t.kind = (std::isdigit(static_cast<unsigned char>(first)) || first == '-' || first == '+')
                     ? Token::Number
                     : Token::Name;
        advance(end - pos_);
        return t;
    }

private:
    void advance(std::size_t n)
    {
        for (std::size_t i = 0; i < n; ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
        }
    }

    void skip_space()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance(1);
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

[[noreturn]] void fail(const Token& at, const std::string& message)
{
    throw ParseError(message, at.line, at.column);
}

// Phase one reads the syntax (gene names, arity, constant range) into a
// prefix tree with token positions; phase two checks types and caps.
class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

    Tree parse_root()
    {
        expression();
        if (tok_.kind != Token::End) {
            fail(tok_, fmt::format("unexpected '{}' after the root expression", tok_.text));
        }
        std::size_t at = 0;
        check(at, GeneType::Act, 1, nullptr, 0);
        if (tree_.size() > static_cast<std::size_t>(kMaxNodes)) {
            fail(where_[kMaxNodes], fmt::format("tree larger than {} nodes", kMaxNodes));
        }
        return std::move(tree_);
    }

private:
    void expression()
    {
        const Token start = tok_;
        switch (start.kind) {
        case Token::Number: {
            int value = 0;
            const auto* first = start.text.data() + (start.text.front() == '+' ? 1 : 0);
            const auto* last = start.text.data() + start.text.size();
            const auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec == std::errc::result_out_of_range ||
                (ec == std::errc{} && ptr == last && (value < kMinConst || value > kMaxConst))) {
                fail(start, fmt::format("constant {} outside [{}, {}]", start.text, kMinConst,
                                        kMaxConst));
            }
            if (ec != std::errc{} || ptr != last) {
                fail(start, fmt::format("malformed integer '{}'", start.text));
            }
            push({Gene::Const, static_cast<std::int8_t>(value)}, start);
            tok_ = lex_.next();
            return;
        }
        case Token::Open:
            break;
        case Token::End:
            fail(start, "unexpected end of input");
        default:
            fail(start, fmt::format("unexpected '{}'", start.text));
        }

        tok_ = lex_.next();
        const Token nameTok = tok_;
        if (nameTok.kind != Token::Name) {
            fail(nameTok, "expected a gene name after '('");
        }
        const auto gene = gene_from_name(nameTok.text);
        if (!gene || *gene == Gene::Const) {
            fail(nameTok, fmt::format("unknown gene '{}'", nameTok.text));
        }
        const auto& sig = signature(*gene);
        push({*gene, 0}, nameTok);
        tok_ = lex_.next();
        for (int i = 0; i < sig.arity; ++i) {
            if (tok_.kind == Token::Close || tok_.kind == Token::End) {
                fail(tok_, fmt::format("arity mismatch: {} takes {} arguments, got {}", sig.name,
                                       sig.arity, i));
            }
            expression();
        }
        if (tok_.kind != Token::Close) {
            if (tok_.kind == Token::End) {
                fail(tok_, fmt::format("missing ')' for {}", sig.name));
            }
            fail(tok_, fmt::format("arity mismatch: {} takes {} arguments", sig.name, sig.arity));
        }
        tok_ = lex_.next();
    }

    void push(Node n, const Token& at)
    {
        // Bound memory on hostile input; the cap itself is reported later.
        if (tree_.size() > static_cast<std::size_t>(kMaxNodes)) {
            fail(at, fmt::format("tree larger than {} nodes", kMaxNodes));
        }
        tree_.push_back(n);
        where_.push_back(at);
    }

    void check(std::size_t& at, GeneType expected, int depth, const GeneSignature* parent,
               int arg)
    {
        const Node& n = tree_[at];
        const auto& sig = signature(n.gene);
        if (sig.returnType != expected) {
            const std::string slot =
                parent ? fmt::format("{} argument {}", parent->name, arg + 1) : "root";
            const std::string got =
                n.gene == Gene::Const ? std::to_string(n.value) : std::string(sig.name);
            fail(where_[at], fmt::format("type mismatch: {} expects {}, got {} ({})", slot,
                                         to_string(expected), to_string(sig.returnType), got));
        }
        if (depth > kMaxDepth) {
            fail(where_[at], fmt::format("tree deeper than {}", kMaxDepth));
        }
        ++at;
        for (int i = 0; i < sig.arity; ++i) {
            check(at, sig.args[static_cast<std::size_t>(i)], depth + 1, &sig, i);
        }
    }

    Lexer lex_;
    Token tok_;
    Tree tree_;
    std::vector<Token> where_;
};

} // namespace

Chromosome parse(std::string_view text)
{
    Parser p(text);
    return Chromosome(p.parse_root());
}

} // namespace pgp::dsl
