#include "pgp/dsl/export.hpp"
#include "pgp/dsl/interpreter.hpp"
#include "pgp/dsl/operators.hpp"
#include "pgp/dsl/sexpr.hpp"
#include "pgp/errors.hpp"
#include "support/dot_grammar.hpp"

#include <doctest.h>

#include <map>
#include <string>

using namespace pgp;
using namespace pgp::dsl;

namespace {

std::uint8_t run(std::string_view agent, const sim::Observation& o = {})
{
    return evaluate(parse(agent), o).encode();
}

std::string parse_error(std::string_view text)
{
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& haystack, std::string_view needle)
{
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("gene table is closed and consistent")
{
    const auto table = gene_table();
    CHECK(table.size() == 22);
    int functions = 0;
    for (const auto& sig : table) {
        CHECK(gene_from_name(sig.name) == sig.gene);
        functions += sig.terminal() ? 0 : 1;
    }
    CHECK(functions == 10);
    for (GeneType t : {GeneType::Bool, GeneType::Int, GeneType::Act}) {
        CHECK_FALSE(terminals_of(t).empty());
        for (Gene g : functions_of(t)) {
            CHECK(signature(g).returnType == t);
            CHECK_FALSE(signature(g).terminal());
        }
        for (Gene g : terminals_of(t)) {
            CHECK(signature(g).returnType == t);
            CHECK(signature(g).terminal());
        }
    }
    CHECK_FALSE(gene_from_name("Teleport"));
}

TEST_CASE("action genes set their bits")
{
    CHECK(run("(Seq2 (Right) (Jump))") == 0b010010);
    CHECK(run("(Wait)") == 0);
    CHECK(run("(Shoot)") == sim::bits::kFire);
    CHECK(run("(Run)") == sim::bits::kFire);
    CHECK(run("(Seq3 (Left) (Up) (Down))") == 0b001101);
    CHECK(run("(Seq3 (Right) (Right) (Wait))") == sim::bits::kRight);
}

TEST_CASE("IfElse takes exactly one branch")
{
    CHECK(run("(IfElse (IsEnemyAt 1 0) (Jump) (Right))") == sim::bits::kRight);

    sim::Observation enemyAhead;
    enemyAhead.enemies.set(1, 0, true);
    CHECK(run("(IfElse (IsEnemyAt 1 0) (Jump) (Right))", enemyAhead) == sim::bits::kJump);

    sim::Observation tall;
    tall.isTall = true;
    CHECK(run("(IfElse (IsTall) (Left) (Right))", tall) == sim::bits::kLeft);
}

TEST_CASE("ground-gated jump, enumerated over both observation cases")
{
    const auto agent = parse("(IfElse (Not (CanJump)) (Wait) (Seq2 (Right) (Jump)))");
    for (bool onGround : {true, false}) {
        sim::Observation o;
        o.canJump = onGround;
        const auto bits = evaluate(agent, o).encode();
        const std::uint8_t expected = onGround ? (sim::bits::kRight | sim::bits::kJump) : 0;
        CHECK(bits == expected);
    }
}

TEST_CASE("boolean operators and saturating Sub")
{
    sim::Observation o;
    o.coins.set(2, 0, true);
    o.canShoot = true;
    CHECK(run("(IfElse (IsCoinAt (Sub 4 2) 0) (Jump) (Wait))", o) == sim::bits::kJump);
    // 6 - (-6) saturates to 6, outside the window.
    CHECK(run("(IfElse (IsCoinAt (Sub 6 -6) 0) (Jump) (Wait))", o) == 0);
    CHECK(run("(IfElse (IsCoinAt (Sub -6 6) (Sub 0 0)) (Jump) (Wait))", o) == 0);
    CHECK(run("(IfElse (And (CanShoot) (IsCoinAt 2 0)) (Shoot) (Wait))", o) == sim::bits::kFire);
    CHECK(run("(IfElse (And (CanShoot) (IsTall)) (Shoot) (Wait))", o) == 0);
    CHECK(run("(IfElse (Or (IsTall) (CanShoot)) (Up) (Wait))", o) == sim::bits::kUp);
    CHECK(run("(IfElse (IsBreakableAt 0 -1) (Up) (Down))", o) == sim::bits::kDown);
}

TEST_CASE("evaluation is a pure function")
{
    Rng rng(17);
    sim::Observation o;
    o.coins.set(-1, 1, true);
    o.enemies.set(2, -3, true);
    o.canJump = true;
    for (int i = 0; i < 200; ++i) {
        const auto c = random_chromosome(rng, InitMethod::Grow, 6);
        CHECK(evaluate(c, o) == evaluate(c, o));
        CHECK(as_controller(c)(o) == evaluate(c, o).encode());
    }
}

TEST_CASE("random_tree at depth 1 yields a terminal")
{
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        const auto act = random_tree(rng, InitMethod::Grow, 1, GeneType::Act);
        REQUIRE(act.size() == 1);
        CHECK(signature(act[0].gene).terminal());
        CHECK(return_type(act[0]) == GeneType::Act);

        const auto num = random_tree(rng, InitMethod::Full, 1, GeneType::Int);
        REQUIRE(num.size() == 1);
        CHECK(num[0].gene == Gene::Const);
        CHECK(num[0].value >= kMinConst);
        CHECK(num[0].value <= kMaxConst);
    }
}

TEST_CASE("full trees place terminals only at the maximum depth")
{
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        const Chromosome c = random_chromosome(rng, InitMethod::Full, 3);
        CHECK(c.depth() == 3);
        for (std::size_t k = 0; k < c.size(); ++k) {
            const bool leaf = signature(c.nodes()[k].gene).terminal();
            CHECK(leaf == (c.depth_at(k) == 3));
        }
    }
}

TEST_CASE("10,000 grow trees at depth 7 are well typed")
{
    Rng rng(7);
    std::map<int, int> histogram;
    for (int i = 0; i < 10000; ++i) {
        const auto tree = random_tree(rng, InitMethod::Grow, 7, GeneType::Act);
        const auto shape = check_tree(tree, GeneType::Act);
        CHECK(shape.depth <= 7);
        ++histogram[shape.depth];
    }
    // A root terminal is drawn with probability 8/11.
    CHECK(histogram[1] > 7000);
    CHECK(histogram[1] < 7550);
    // Regression histogram for seed 7 (libstdc++ distributions).
    const std::map<int, int> expected = {{1, 7189}, {2, 1031}, {3, 442}, {4, 271},
                                         {5, 169},  {6, 120},  {7, 778}};
    CHECK(histogram == expected);
}

TEST_CASE("node budget caps large full trees")
{
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto tree = random_tree(rng, InitMethod::Full, 12, GeneType::Act);
        CHECK(tree.size() <= static_cast<std::size_t>(kMaxNodes));
        CHECK_NOTHROW(check_tree(tree, GeneType::Act));
    }
    const auto tiny = random_tree(rng, InitMethod::Full, 8, GeneType::Act, 3);
    CHECK(tiny.size() <= 3);
}

TEST_CASE("crossover of a terminal with itself is that terminal")
{
    Rng rng(4);
    const auto x = parse("(Jump)");
    for (int i = 0; i < 20; ++i) {
        CHECK(crossover(x, x, rng) == x);
    }
}

TEST_CASE("crossover with no same-typed donor node returns parent A")
{
    // B only offers Act nodes, so Bool crossover points fall back to A.
    const auto a = parse("(IfElse (And (IsTall) (CanJump)) (Left) (Right))");
    const auto b = parse("(Up)");
    Rng rng(5);
    int unchanged = 0;
    for (int i = 0; i < 400; ++i) {
        const auto child = crossover(a, b, rng);
        if (child == a) {
            ++unchanged;
            continue;
        }
        // Any actual change grafts (Up) over an Act position.
        const auto text = serialize(child);
        CHECK(contains(text, "(Up)"));
    }
    CHECK(unchanged > 0);
    CHECK(serialize(a) == "(IfElse (And (IsTall) (CanJump)) (Left) (Right))");
}

TEST_CASE("crossover and mutation keep trees typed and within caps")
{
    Rng rng(6);
    std::vector<Chromosome> pool;
    for (int i = 0; i < 40; ++i) {
        pool.push_back(random_chromosome(rng, i % 2 ? InitMethod::Grow : InitMethod::Full,
                                         3 + i % 5));
    }
    for (int i = 0; i < 3000; ++i) {
        const auto& a = pool[static_cast<std::size_t>(i * 7 % 40)];
        const auto& b = pool[static_cast<std::size_t>(i * 13 % 40)];
        auto child = crossover(a, b, rng);
        child = mutate(child, rng);
        CHECK(child.depth() <= kMaxDepth);
        CHECK(child.size() <= static_cast<std::size_t>(kMaxNodes));
        CHECK_NOTHROW(check_tree(child.nodes(), GeneType::Act));
        pool[static_cast<std::size_t>(i % 40)] = child;
    }
}

TEST_CASE("mutating a single terminal gives a terminal of the same type")
{
    Rng rng(8);
    const auto x = parse("(Wait)");
    for (int i = 0; i < 50; ++i) {
        const auto m = mutate(x, rng);
        REQUIRE(m.size() == 1);
        CHECK(signature(m.nodes()[0].gene).terminal());
        CHECK(return_type(m.nodes()[0]) == GeneType::Act);
    }
}

TEST_CASE("S-expression round trip")
{
    const std::string text = "(Seq2 (Right) (Jump))";
    CHECK(serialize(parse(text)) == text);
    const std::string nested = "(IfElse (IsEnemyAt 1 0) (Jump) (Seq2 (Right) (Jump)))";
    CHECK(serialize(parse(nested)) == nested);
    CHECK(serialize(parse("  (Seq2\n  (Right) ; go\n  (Jump))\n")) == text);
    CHECK(serialize(parse("(IfElse (IsCoinAt +2 -6) (Jump) (Wait))")) ==
          "(IfElse (IsCoinAt 2 -6) (Jump) (Wait))");

    Rng rng(9);
    for (int i = 0; i < 500; ++i) {
        const auto c = random_chromosome(rng, InitMethod::Grow, 8);
        const auto again = parse(serialize(c));
        CHECK(again == c);
        CHECK(again.id() == c.id());
    }
}

TEST_CASE("S-expression errors carry positions")
{
    const auto range = parse_error("(IsCoinAt 7 0)");
    CHECK(contains(range, "constant 7 outside [-6, 6]"));
    CHECK(contains(range, "1:11"));

    const auto type = parse_error("(IfElse (Jump) (Right) (Left))");
    CHECK(contains(type, "type mismatch"));
    CHECK(contains(type, "IfElse argument 1 expects Bool"));
    CHECK(contains(type, "1:10"));

    CHECK(contains(parse_error("(Seq2 (Right) (Jmp))"), "unknown gene 'Jmp'"));
    CHECK(contains(parse_error("(Seq2 (Right) (Jmp))"), "1:16"));
    CHECK(contains(parse_error("(Seq2 (Right))"), "arity mismatch"));
    CHECK(contains(parse_error("(Seq2 (Right) (Jump) (Left))"), "arity mismatch"));
    CHECK(contains(parse_error("(Not (IsTall))"), "root expects Act"));
    CHECK(contains(parse_error("(Seq2 (Right) (Jump)"), "missing ')'"));
    CHECK(contains(parse_error("(Jump) (Jump)"), "after the root"));
    CHECK(contains(parse_error("(Const)"), "unknown gene"));
    CHECK(contains(parse_error("(IfElse (IsTall) 3 (Left))"), "expects Act, got Int"));
    CHECK(contains(parse_error(""), "end of input"));

    // 13 nested Seq2 levels exceed the depth cap.
    std::string deep = "(Jump)";
    for (int i = 0; i < 12; ++i) {
        deep = "(Seq2 " + deep + " (Wait))";
    }
    CHECK(contains(parse_error(deep), "deeper than 12"));
}

TEST_CASE("chromosome rejects ill-typed trees")
{
    CHECK_THROWS_AS(Chromosome(Tree{{Gene::IsTall, 0}}), ValidationError);
    CHECK_THROWS_AS(Chromosome(Tree{{Gene::Seq2, 0}, {Gene::Jump, 0}}), ValidationError);
    CHECK_THROWS_AS(Chromosome(Tree{{Gene::Jump, 0}, {Gene::Jump, 0}}), ValidationError);
    CHECK_THROWS_AS(
        Chromosome(Tree{{Gene::IfElse, 0}, {Gene::IsCoinAt, 0}, {Gene::Const, 9}, {Gene::Const, 0},
                        {Gene::Jump, 0}, {Gene::Wait, 0}}),
        ValidationError);
    CHECK_THROWS_AS(Chromosome(Tree{}), ValidationError);
}

TEST_CASE("ids follow the canonical text")
{
    const auto a = parse("(Seq2 (Right) (Jump))");
    const auto b = parse("(Seq2 (Right)   (Jump))");
    const auto c = parse("(Seq2 (Jump) (Right))");
    CHECK(a.id() == b.id());
    CHECK(a.id() != c.id());
}

TEST_CASE("DOT export shape")
{
    const auto one = to_dot(parse("(Jump)"));
    const auto s1 = pgp::testing::check_dot(one);
    REQUIRE_MESSAGE(s1.ok, s1.error);
    CHECK(s1.directed);
    CHECK(s1.nodeStatements == 1);
    CHECK(s1.edges == 0);

    const auto three = pgp::testing::check_dot(to_dot(parse("(Seq2 (Right) (Jump))")));
    REQUIRE(three.ok);
    CHECK(three.nodeStatements == 3);
    CHECK(three.edges == 2);

    const auto withConst = to_dot(parse("(IfElse (IsCoinAt -2 1) (Jump) (Wait))"));
    CHECK(contains(withConst, "label=\"-2\""));
    CHECK(contains(withConst, "n0 -> n1;\n  n0 -> n4;\n  n0 -> n5;"));
    CHECK(contains(withConst, "n1 -> n2;\n  n1 -> n3;"));
}

TEST_CASE("DOT grammar checker rejects broken graphs")
{
    CHECK_FALSE(pgp::testing::check_dot("digraph { a -> }").ok);
    CHECK_FALSE(pgp::testing::check_dot("digraph { a -- b }").ok);
    CHECK_FALSE(pgp::testing::check_dot("digraph { a [label=\"x] }").ok);
    CHECK_FALSE(pgp::testing::check_dot("tree { a }").ok);
    CHECK(pgp::testing::check_dot("graph g { a -- b -- c; d [x=1, y=\"2\"]; }").ok);
}

TEST_CASE("random trees export to valid DOT with matching counts")
{
    Rng rng(10);
    for (int i = 0; i < 100; ++i) {
        const auto c = random_chromosome(rng, InitMethod::Grow, 9);
        const auto s = pgp::testing::check_dot(to_dot(c));
        REQUIRE_MESSAGE(s.ok, s.error);
        CHECK(s.declaredNodes.size() == c.size());
        CHECK(s.edges == c.size() - 1);
    }
}

TEST_CASE("pseudocode rendering")
{
    CHECK(to_pseudocode(parse("(Wait)")) == "wait()\n");
    CHECK(to_pseudocode(parse("(IfElse (IsTall) (Jump) (Right))")) ==
          "if is_tall()\n"
          "then jump()\n"
          "else right()\n");
    CHECK(to_pseudocode(parse("(IfElse (IsEnemyAt 1 0) (Jump) (Seq2 (Right) (Jump)))")) ==
          "if is_enemy_at(1, 0)\n"
          "then jump()\n"
          "else seq {\n"
          "  right()\n"
          "  jump()\n"
          "}\n");
    CHECK(to_pseudocode(parse("(Seq2 (IfElse (Not (And (CanJump) (IsCoinAt (Sub 1 2) 0))) "
                              "(IfElse (Or (IsTall) (CanShoot)) (Run) (Shoot)) (Wait)) (Left))")) ==
          "seq {\n"
          "  if not (can_jump() and is_coin_at((1 - 2), 0))\n"
          "  then\n"
          "    if (is_tall() or can_shoot())\n"
          "    then run()\n"
          "    else shoot()\n"
          "  else wait()\n"
          "  left()\n"
          "}\n");

    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const auto c = random_chromosome(rng, InitMethod::Grow, 7);
        CHECK(to_pseudocode(c) == to_pseudocode(parse(serialize(c))));
    }
}
