#include "pgp/dsl/sexpr.hpp"
#include "pgp/errors.hpp"
#include "pgp/evolution/episodes.hpp"
#include "pgp/evolution/evolution.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

using namespace pgp;
using namespace pgp::evo;

namespace {

// Cheap deterministic stand-in: rewards small trees.
Evaluation by_size(const Chromosome& c, std::size_t level)
{
    Evaluation e;
    e.fitness = 1.0 / static_cast<double>(c.size() + level);
    return e;
}

EvolutionConfig small_config()
{
    EvolutionConfig c;
    c.populationSize = 20;
    c.maxGenerations = 5;
    c.masterSeed = 3;
    c.levelSeeds = {1, 2};
    c.threads = 1;
    return c;
}

std::vector<std::string> texts(const Population& p)
{
    std::vector<std::string> out;
    for (const auto& i : p.individuals) {
        out.push_back(dsl::serialize(i.chromosome));
    }
    return out;
}

} // namespace

TEST_CASE("config validation")
{
    CHECK_NOTHROW(EvolutionConfig{}.validate());
    auto c = EvolutionConfig{};
    c.crossoverRate = 1.5;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = EvolutionConfig{};
    c.eliteCount = 80; // 80 + 20 fresh leaves no room
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = EvolutionConfig{};
    c.levelSeeds.clear();
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = EvolutionConfig{};
    c.minInitDepth = 8;
    c.maxInitDepth = 7;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = EvolutionConfig{};
    c.mutationRate = -0.1;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("ramped half-and-half initial population")
{
    EvolutionConfig config;
    Rng rng(1);
    const auto pop = init_population(config, rng);
    REQUIRE(pop.individuals.size() == 100);
    for (std::size_t i = 0; i < 100; ++i) {
        const int target = 3 + static_cast<int>(i / 20);
        const auto& c = pop.individuals[i].chromosome;
        CHECK(c.depth() <= target);
        if (i % 2 == 1) {
            // Full trees reach the target depth exactly.
            CHECK(c.depth() == target);
        }
        CHECK_NOTHROW(dsl::check_tree(c.nodes(), dsl::GeneType::Act));
    }

    Rng again(1);
    CHECK(texts(init_population(config, again)) == texts(pop));
    Rng other(2);
    CHECK(texts(init_population(config, other)) != texts(pop));
}

TEST_CASE("roulette probabilities")
{
    Rng rng(4);
    auto freq = [&](std::vector<double> w, int draws) {
        std::vector<double> f(w.size());
        for (int i = 0; i < draws; ++i) {
            f[roulette_select(w, rng)] += 1.0 / draws;
        }
        return f;
    };
    const auto even = freq({2, 2}, 20000);
    CHECK(even[0] == doctest::Approx(0.5).epsilon(0.03));
    const auto skew = freq({1, 3}, 20000);
    CHECK(skew[1] == doctest::Approx(0.75).epsilon(0.03));

    const RouletteWheel wheel(std::vector<double>{1, 2, 3, 4});
    std::vector<int> counts(4);
    for (int i = 0; i < 100000; ++i) {
        ++counts[wheel.spin(rng)];
    }
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(counts[i] / 1e5 - 0.1 * static_cast<double>(i + 1)) <= 0.02);
    }

    const auto zeros = freq({0, 0, 0}, 30000);
    for (const double f : zeros) {
        CHECK(f == doctest::Approx(1.0 / 3).epsilon(0.05));
    }
    const auto holes = freq({0, 1, 0, 1, 0}, 5000);
    CHECK(holes[0] == 0.0);
    CHECK(holes[2] == 0.0);
    CHECK(holes[4] == 0.0);

    CHECK_THROWS_AS(roulette_select(std::vector<double>{1, -1}, rng), ContractViolation);
    CHECK_THROWS_AS(roulette_select(std::vector<double>{}, rng), ContractViolation);
}

TEST_CASE("next generation slot layout")
{
    EvolutionConfig config;
    config.mutationRate = 0.0;
    config.crossoverRate = 0.0;
    Rng rng(5);
    auto pop = init_population(config, rng);
    evaluate_population(pop, by_size, 1, 1);
    const auto best = pop.individuals[best_index(pop)].chromosome;

    const auto next = next_generation(pop, config, rng);
    REQUIRE(next.individuals.size() == 100);
    CHECK(next.generation == 1);
    CHECK(next.individuals[0].chromosome == best);

    std::set<std::string> parents;
    for (const auto& t : texts(pop)) {
        parents.insert(t);
    }
    // Slots 1..20 are fresh, 21..99 are clones of roulette-picked parents.
    for (std::size_t i = 21; i < 100; ++i) {
        CHECK(parents.count(dsl::serialize(next.individuals[i].chromosome)) == 1);
    }
    CHECK(std::none_of(next.individuals.begin(), next.individuals.end(),
                       [](const Individual& i) { return i.evaluated; }));
}

TEST_CASE("elite ties prefer smaller trees, then lower ids")
{
    Population pop;
    for (const char* text : {"(Seq2 (Right) (Jump))", "(Jump)", "(Right)"}) {
        pop.individuals.push_back({dsl::parse(text), 0.5, {}, true});
    }
    const std::size_t b = best_index(pop);
    const auto& jump = pop.individuals[1].chromosome;
    const auto& right = pop.individuals[2].chromosome;
    CHECK(b == (jump.id() < right.id() ? 1u : 2u));
    pop.individuals[0].fitness = 0.6;
    CHECK(best_index(pop) == 0);
}

TEST_CASE("reproduction requires evaluated parents")
{
    auto config = small_config();
    Rng rng(6);
    const auto pop = init_population(config, rng);
    CHECK_THROWS_AS(next_generation(pop, config, rng), ContractViolation);
}

TEST_CASE("single generation evaluates each individual once per level")
{
    auto config = small_config();
    config.maxGenerations = 1;
    int calls = 0;
    const auto r = evolve(config, [&](const Chromosome& c, std::size_t l) {
        ++calls;
        return by_size(c, l);
    });
    CHECK(calls == 40);
    REQUIRE(r.history.size() == 1);
    CHECK(r.history[0].evaluations == 40);
    CHECK(r.history[0].generation == 0);
}

TEST_CASE("budget accounting and elitism on a real fitness")
{
    EvolutionConfig config;
    config.populationSize = 30;
    config.maxGenerations = 8;
    config.difficulty = 2;
    config.levelSeeds = {4, 9};
    config.courseLength = 96;
    config.masterSeed = 11;
    const auto fitness = make_fitness(config, {});
    const auto r = evolve(config, fitness);
    REQUIRE(r.history.size() == 8);
    std::size_t total = 0;
    for (std::size_t g = 0; g < r.history.size(); ++g) {
        total += r.history[g].evaluations;
        if (g > 0) {
            CHECK(r.history[g].bestFitness >= r.history[g - 1].bestFitness);
        }
        CHECK(r.history[g].bestFitness <= 1.0);
        CHECK(r.history[g].meanFitness <= r.history[g].bestFitness);
    }
    CHECK(total == 8u * 30u * 2u);
    CHECK(r.bestFitness == r.history.back().bestFitness);
}

TEST_CASE("results do not depend on the thread count")
{
    EvolutionConfig config;
    config.populationSize = 24;
    config.maxGenerations = 4;
    config.difficulty = 1;
    config.levelSeeds = {3};
    config.courseLength = 128;
    config.masterSeed = 21;
    const auto fitness = make_fitness(config, {});

    config.threads = 1;
    const auto one = evolve(config, fitness);
    config.threads = 8;
    const auto eight = evolve(config, fitness);
    REQUIRE(one.history.size() == eight.history.size());
    for (std::size_t g = 0; g < one.history.size(); ++g) {
        CHECK(one.history[g].same_result(eight.history[g]));
    }
    CHECK(one.best == eight.best);
}

TEST_CASE("early stop at the fitness threshold")
{
    auto config = small_config();
    config.maxGenerations = 50;
    config.stopFitness = 0.0;
    const auto r = evolve(config, by_size);
    CHECK(r.history.size() == 1);
    CHECK(r.stoppedEarly);
}

TEST_CASE("fitness errors propagate")
{
    auto config = small_config();
    config.threads = 4;
    CHECK_THROWS_AS(evolve(config,
                           [](const Chromosome&, std::size_t) -> Evaluation {
                               throw std::runtime_error("boom");
                           }),
                    std::runtime_error);
    CHECK_THROWS_AS(evolve(config,
                           [](const Chromosome&, std::size_t) {
                               Evaluation e;
                               e.fitness = -1;
                               return e;
                           }),
                    ContractViolation);
}

TEST_CASE("progress sink sees every generation")
{
    auto config = small_config();
    std::vector<int> seen;
    evolve(config, by_size,
           [&](const GenerationStats& s, const Individual& best) {
               seen.push_back(s.generation);
               CHECK(best.fitness == s.bestFitness);
           });
    CHECK(seen == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("trace mode needs reference traces for every level")
{
    EvolutionConfig config;
    config.fitnessMode = FitnessMode::Trace;
    config.levelSeeds = {1};
    CHECK_THROWS_AS(make_fitness(config, {}), ValidationError);

    const auto level = make_levels(config).front();
    auto human = sim::run_episode(level, [](const sim::Observation&) {
                     return sim::bits::kRight;
                 }).trace;
    human.header.source = sim::TraceSource::Human;
    std::vector<sim::PlayTrace> humans = {human};
    const auto fn = make_fitness(config, humans);
    const auto e = fn(dsl::parse("(Right)"), 0);
    CHECK(e.nearest == 0.0);
    CHECK(e.fitness >= 0.6);

    config.levelSeeds = {1, 2};
    CHECK_THROWS_AS(make_fitness(config, humans), ValidationError);
}
