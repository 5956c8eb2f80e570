// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass a criterion number to run just that one.

#include "pgp/dsl/export.hpp"
#include "pgp/dsl/operators.hpp"
#include "pgp/dsl/sexpr.hpp"
#include "pgp/evolution/episodes.hpp"
#include "pgp/evolution/evolution.hpp"
#include "pgp/fitness/fitness.hpp"
#include "pgp/fitness/metric.hpp"
#include "pgp/sim/episode.hpp"
#include "pgp/sim/level_gen.hpp"
#include "support/dot_grammar.hpp"
#include "support/edit_oracle.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

using namespace pgp;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::shared_ptr<const sim::Level> level(std::uint64_t seed, int difficulty, int length = 256)
{
    return std::make_shared<const sim::Level>(sim::generate_level(seed, difficulty, length));
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Runs f(i) for i in [0, n) on `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f)
{
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            f(i);
        }
    };
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) {
        pool.emplace_back(work);
    }
    work();
}

// 1. Replays of random input scripts are bit-identical across runs and
// across evaluation thread counts.
Verdict determinism()
{
    const auto start = Clock::now();
    struct Case {
        std::shared_ptr<const sim::Level> level;
        std::vector<std::uint8_t> inputs;
    };
    std::mt19937_64 rng(1);
    std::vector<Case> cases;
    for (int i = 0; i < 100; ++i) {
        Case c;
        c.level = level(rng() % 100000, static_cast<int>(rng() % 6));
        const std::size_t len = 1 + rng() % 2000;
        std::uint8_t bits = 0;
        for (std::size_t f = 0; f < len; ++f) {
            if (rng() % 12 == 0) {
                // Hold a random chord for a while; favour moving right.
                bits = static_cast<std::uint8_t>(rng() % 64);
                if (rng() % 3 != 0) {
                    bits = static_cast<std::uint8_t>((bits | sim::bits::kRight) & ~sim::bits::kLeft);
                }
            }
            c.inputs.push_back(bits);
        }
        cases.push_back(std::move(c));
    }
    auto play = [&](std::size_t i) {
        sim::EpisodeRecorder rec(cases[i].level, sim::kDefaultFrameBudget);
        for (const auto b : cases[i].inputs) {
            if (rec.done()) {
                break;
            }
            rec.advance(b);
        }
        return rec.finish().trace;
    };
    auto run_all = [&](int threads) {
        std::vector<sim::PlayTrace> out(cases.size());
        parallel_for(cases.size(), threads, [&](std::size_t i) { out[i] = play(i); });
        return out;
    };
    const auto a = run_all(1);
    const auto b = run_all(1);
    const auto c = run_all(8);
    int mismatches = 0;
    std::size_t events = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const bool same = a[i].events == b[i].events && a[i].finalScore == b[i].finalScore &&
                          a[i].events == c[i].events && a[i].finalScore == c[i].finalScore &&
                          a[i].outcome == c[i].outcome && a[i].maxX == c[i].maxX;
        mismatches += same ? 0 : 1;
        events += a[i].events.size();
    }

    // Population evaluation through the evolution engine, 1 vs 8 threads.
    evo::EvolutionConfig config;
    config.difficulty = 2;
    config.levelSeeds = {17, 18};
    dsl::Rng prng(5);
    auto pop1 = evo::init_population(config, prng);
    auto pop8 = pop1;
    const auto fitness = evo::make_fitness(config, {});
    evo::evaluate_population(pop1, fitness, 2, 1);
    evo::evaluate_population(pop8, fitness, 2, 8);
    int popMismatch = 0;
    for (std::size_t i = 0; i < pop1.individuals.size(); ++i) {
        popMismatch += pop1.individuals[i].fitness == pop8.individuals[i].fitness ? 0 : 1;
    }

    const double secs = seconds_since(start);
    return {mismatches == 0 && popMismatch == 0 && secs < 30.0,
            fmt::format("100 scripts ({} events): {} mismatches; 100x2 evaluations 1 vs 8 "
                        "threads: {} mismatches; {:.1f}s (< 30s)",
                        events, mismatches, popMismatch, secs)};
}

// 2. Operators keep trees typed and within caps; text round trip.
Verdict operator_soundness()
{
    const auto start = Clock::now();
    dsl::Rng rng(2);
    std::vector<dsl::Chromosome> pool;
    for (int i = 0; i < 200; ++i) {
        pool.push_back(dsl::random_chromosome(
            rng, i % 2 ? dsl::InitMethod::Grow : dsl::InitMethod::Full, 3 + i % 8));
    }
    auto sound = [](const dsl::Chromosome& c) {
        try {
            dsl::check_tree(c.nodes(), dsl::GeneType::Act);
            return c.depth() <= dsl::kMaxDepth && c.size() <= dsl::kMaxNodes;
        } catch (const std::exception&) {
            return false;
        }
    };
    int bad = 0;
    std::size_t maxDepth = 0;
    std::size_t maxNodes = 0;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 100000; ++i) {
        auto child = dsl::crossover(pool[pick(rng)], pool[pick(rng)], rng);
        bad += sound(child) ? 0 : 1;
        maxDepth = std::max<std::size_t>(maxDepth, static_cast<std::size_t>(child.depth()));
        maxNodes = std::max(maxNodes, child.size());
        pool[pick(rng)] = std::move(child);
    }
    for (int i = 0; i < 100000; ++i) {
        const std::size_t k = pick(rng);
        auto m = dsl::mutate(pool[k], rng);
        bad += sound(m) ? 0 : 1;
        maxDepth = std::max<std::size_t>(maxDepth, static_cast<std::size_t>(m.depth()));
        maxNodes = std::max(maxNodes, m.size());
        pool[k] = std::move(m);
    }
    int roundTrip = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto c = dsl::random_chromosome(
            rng, i % 2 ? dsl::InitMethod::Grow : dsl::InitMethod::Full, 1 + i % 12);
        const auto text = dsl::serialize(c);
        const auto back = dsl::parse(text);
        roundTrip += back == c && dsl::serialize(back) == text ? 0 : 1;
    }
    const double secs = seconds_since(start);
    return {bad == 0 && roundTrip == 0 && secs < 60.0,
            fmt::format("1e5 crossovers + 1e5 mutations: {} unsound (max depth {}, max nodes {}); "
                        "1e4 round trips: {} failures; {:.1f}s (< 60s)",
                        bad, maxDepth, maxNodes, roundTrip, secs)};
}

// 3. Roulette frequencies.
Verdict selection()
{
    dsl::Rng rng(3);
    const std::vector<double> weights = {1, 2, 3, 4};
    std::vector<int> counts(4);
    for (int i = 0; i < 100000; ++i) {
        ++counts[evo::roulette_select(weights, rng)];
    }
    double worst = 0;
    std::string freqs;
    for (std::size_t i = 0; i < 4; ++i) {
        const double f = counts[i] / 1e5;
        worst = std::max(worst, std::abs(f - 0.1 * static_cast<double>(i + 1)));
        freqs += fmt::format("{}{:.4f}", i ? " " : "", f);
    }
    return {worst <= 0.02,
            fmt::format("frequencies [{}], max deviation {:.4f} (<= 0.02)", freqs, worst)};
}

// 4. Elitism over 50 generations.
Verdict elitism()
{
    const auto start = Clock::now();
    evo::EvolutionConfig config;
    config.maxGenerations = 50;
    config.difficulty = 1;
    config.levelSeeds = {1};
    config.masterSeed = 4;
    const auto r = evo::evolve(config, evo::make_fitness(config, {}));
    int drops = 0;
    for (std::size_t g = 1; g < r.history.size(); ++g) {
        drops += r.history[g].bestFitness < r.history[g - 1].bestFitness ? 1 : 0;
    }
    const double secs = seconds_since(start);
    return {r.history.size() == 50 && drops == 0 && secs < 300.0,
            fmt::format("{} generations, best {:.4f} -> {:.4f}, {} decreases; {:.1f}s (< 300s)",
                        r.history.size(), r.history.front().bestFitness,
                        r.history.back().bestFitness, drops, secs)};
}

// Generation index of the first winning best individual, or -1.
int generations_to_win(std::uint64_t masterSeed, int difficulty, int length, int limit,
                       std::uint64_t levelSeed)
{
    evo::EvolutionConfig config;
    config.maxGenerations = limit;
    config.difficulty = difficulty;
    config.courseLength = length;
    config.levelSeeds = {levelSeed};
    config.masterSeed = masterSeed;
    config.stopFitness = fitness::kObjectiveWinThreshold;
    int won = -1;
    evo::evolve(config, evo::make_fitness(config, {}),
                [&](const evo::GenerationStats& s, const evo::Individual& best) {
                    if (won < 0 && best.summary.wins > 0) {
                        won = s.generation;
                    }
                });
    return won;
}

// 5. Convergence smoke runs.
Verdict convergence()
{
    const auto start = Clock::now();
    std::vector<std::string> shortRuns;
    int shortWins = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const int g = generations_to_win(seed, 0, 64, 100, 1);
        shortWins += g >= 0 ? 1 : 0;
        shortRuns.push_back(g >= 0 ? fmt::format("g{}", g) : "none");
    }
    std::vector<std::string> longRuns;
    int longWins = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const int g = generations_to_win(seed, 1, 256, 700, 1);
        longWins += g >= 0 ? 1 : 0;
        longRuns.push_back(g >= 0 ? fmt::format("g{}", g) : "none");
    }
    return {shortWins >= 4 && longWins >= 1,
            fmt::format("64-tile d0: {}/5 seeds won [{}] (>= 4); 256-tile d1: {}/3 won [{}] "
                        "(>= 1); {:.1f}s",
                        shortWins, fmt::join(shortRuns, " "), longWins, fmt::join(longRuns, " "),
                        seconds_since(start))};
}

// 6. Metric against exhaustive alignment enumeration.
Verdict metric_oracle()
{
    std::mt19937_64 rng(6);
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto a = pgp::testing::random_symbols(rng, 8);
        const auto b = pgp::testing::random_symbols(rng, 8);
        mismatches += fitness::trace_dissimilarity(a, b) ==
                              pgp::testing::brute_force_dissimilarity(a, b)
                          ? 0
                          : 1;
    }
    int axioms = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto a = pgp::testing::random_symbols(rng, 16);
        const auto b = pgp::testing::random_symbols(rng, 16);
        const double d = fitness::trace_dissimilarity(a, b);
        const bool ok = fitness::trace_dissimilarity(a, a) == 0.0 &&
                        fitness::trace_dissimilarity(b, a) == d && d >= 0.0 && d <= 1.0;
        axioms += ok ? 0 : 1;
    }
    return {mismatches == 0 && axioms == 0,
            fmt::format("1000 pairs vs brute force: {} mismatches; 1e4 pairs identity/symmetry/"
                        "range: {} violations",
                        mismatches, axioms)};
}

// Scripted stand-in for a recorded human: runs right hopping on a fixed
// rhythm, jumping and shooting at whatever is ahead. The rhythm that gets
// furthest on the level is kept, as a player would after a few attempts.
sim::PlayTrace scripted_human(const std::shared_ptr<const sim::Level>& lvl)
{
    std::optional<sim::EpisodeResult> best;
    for (int period = 8; period <= 48; period += 4) {
        for (int hold = 2; hold <= 8; hold += 2) {
            int frame = 0;
            auto r = sim::run_episode(lvl, [&](const sim::Observation& o) {
                std::uint8_t b = sim::bits::kRight;
                const bool ahead = o.enemies.at(1, 0) || o.enemies.at(2, 0) || o.breakables.at(1, 0);
                if (frame++ % period < hold || ahead) {
                    b |= sim::bits::kJump;
                }
                if (o.canShoot && o.enemies.at(2, 0)) {
                    b |= sim::bits::kFire;
                }
                return b;
            });
            const auto key = [](const sim::EpisodeResult& e) {
                return std::pair(e.outcome == sim::Outcome::Win, e.maxX);
            };
            if (!best || key(r) > key(*best)) {
                best = std::move(r);
            }
        }
    }
    auto trace = std::move(best->trace);
    trace.header.source = sim::TraceSource::Human;
    return trace;
}

// 7. Trace-mode evolution moves toward the reference style.
Verdict trace_effectiveness()
{
    const auto start = Clock::now();
    constexpr std::uint64_t kLevelSeed = 5;
    const auto lvl = level(kLevelSeed, 1);
    const auto human = scripted_human(lvl);
    const std::vector<sim::PlayTrace> humans = {human};

    evo::EvolutionConfig config;
    config.fitnessMode = evo::FitnessMode::Trace;
    config.difficulty = 1;
    config.levelSeeds = {kLevelSeed};
    config.maxGenerations = 30;
    const auto fitnessFn = evo::make_fitness(config, humans);

    std::vector<double> evolved;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        config.masterSeed = seed;
        const auto r = evo::evolve(config, fitnessFn);
        evolved.push_back(r.bestSummary.meanNearest);
    }

    // 100 random chromosomes from the same initializer.
    evo::EvolutionConfig initConfig = config;
    dsl::Rng rng(777);
    auto pop = evo::init_population(initConfig, rng);
    evo::evaluate_population(pop, fitnessFn, 1, 0);
    std::vector<double> random;
    for (const auto& ind : pop.individuals) {
        random.push_back(ind.summary.meanNearest);
    }

    const double me = median(evolved);
    const double mr = median(random);
    return {me < mr, fmt::format("human trace {} events over {} frames ({}); median d* evolved {:.4f} vs random "
                                 "{:.4f} (10 seeds x 30 generations); {:.1f}s",
                                 human.events.size(), human.inputs.size(), sim::to_string(human.outcome), me, mr, seconds_since(start))};
}

// 8. DOT export validity.
Verdict export_validity()
{
    dsl::Rng rng(8);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto c = dsl::random_chromosome(
            rng, i % 2 ? dsl::InitMethod::Grow : dsl::InitMethod::Full, 2 + i % 9);
        const auto s = pgp::testing::check_dot(dsl::to_dot(c));
        const bool ok = s.ok && s.declaredNodes.size() == c.size() &&
                        s.nodeStatements == c.size() && s.edges + 1 == c.size();
        bad += ok ? 0 : 1;
    }
    return {bad == 0, fmt::format("100 random trees: {} failed grammar or count checks", bad)};
}

} // namespace

int main(int argc, char** argv)
{
    const std::map<int, std::pair<const char*, Verdict (*)()>> criteria = {
        {1, {"determinism", determinism}},
        {2, {"operator soundness", operator_soundness}},
        {3, {"selection distribution", selection}},
        {4, {"elitism monotonicity", elitism}},
        {5, {"convergence smoke", convergence}},
        {6, {"metric oracle", metric_oracle}},
        {7, {"trace-fitness effectiveness", trace_effectiveness}},
        {8, {"export validity", export_validity}},
    };
    std::vector<int> chosen;
    for (int i = 1; i < argc; ++i) {
        chosen.push_back(std::atoi(argv[i]));
    }
    if (chosen.empty()) {
        for (const auto& [k, _] : criteria) {
            chosen.push_back(k);
        }
    }
    int failed = 0;
    for (const int k : chosen) {
        const auto it = criteria.find(k);
        if (it == criteria.end()) {
            fmt::print("FAIL [{}] unknown criterion\n", k);
            ++failed;
            continue;
        }
        Verdict v;
        try {
            v = it->second.second();
        } catch (const std::exception& e) {
            v = {false, fmt::format("threw: {}", e.what())};
        }
        fmt::print("{} [{}] {}: {}\n", v.pass ? "PASS" : "FAIL", k, it->second.first, v.detail);
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
