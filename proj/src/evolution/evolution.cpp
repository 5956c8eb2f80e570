#include "pgp/evolution/evolution.hpp"

#include "pgp/errors.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace pgp::evo {

namespace {

void require(bool ok, std::string_view what)
{
    if (!ok) {
        throw ValidationError(fmt::format("invalid evolution config: {}", what));
    }
}

bool is_rate(double v)
{
    return v >= 0.0 && v <= 1.0;
}

// Strict "fitter than" used for elites and the reported best.
bool fitter(const Individual& a, const Individual& b)
{
    if (a.fitness != b.fitness) {
        return a.fitness > b.fitness;
    }
    if (a.chromosome.size() != b.chromosome.size()) {
        return a.chromosome.size() < b.chromosome.size();
    }
    return a.chromosome.id() < b.chromosome.id();
}

Individual fresh_individual(Chromosome c)
{
    return Individual{std::move(c), 0.0, {}, false};
}

Chromosome maybe_mutate(Chromosome c, double rate, Rng& rng)
{
    if (std::bernoulli_distribution(rate)(rng)) {
        return dsl::mutate(c, rng);
    }
    return c;
}

} // namespace

int EvolutionConfig::fresh_count() const
{
    return static_cast<int>(std::lround(freshRate * populationSize));
}

void EvolutionConfig::validate() const
{
    require(populationSize >= 2, "populationSize must be at least 2");
    require(is_rate(crossoverRate), "crossoverRate must be within [0, 1]");
    require(is_rate(freshRate), "freshRate must be within [0, 1]");
    require(is_rate(mutationRate), "mutationRate must be within [0, 1]");
    require(eliteCount >= 0, "eliteCount must be nonnegative");
    require(eliteCount + fresh_count() < populationSize,
            "eliteCount + round(freshRate * populationSize) must be below populationSize");
    require(maxGenerations >= 1, "maxGenerations must be at least 1");
    require(minInitDepth >= 1 && minInitDepth <= maxInitDepth && maxInitDepth <= dsl::kMaxDepth,
            "initDepths must satisfy 1 <= min <= max <= 12");
    require(!levelSeeds.empty(), "levelSeeds must not be empty");
    require(difficulty >= 0, "difficulty must be nonnegative");
    require(courseLength >= 16 && courseLength <= sim::kLevelWidth,
            "courseLength must be within [16, 256]");
    require(frameBudget > 0, "frameBudget must be positive");
    require(threads >= 0, "threads must be nonnegative");
}

bool GenerationStats::same_result(const GenerationStats& o) const noexcept
{
    return generation == o.generation && bestFitness == o.bestFitness &&
           meanFitness == o.meanFitness && bestNodeCount == o.bestNodeCount &&
           meanNodeCount == o.meanNodeCount && evaluations == o.evaluations;
}

Population init_population(const EvolutionConfig& config, Rng& rng)
{
    if (config.populationSize < 2) {
        throw ContractViolation("population needs at least two individuals");
    }
    const int depths = config.maxInitDepth - config.minInitDepth + 1;
    const int n = config.populationSize;
    Population pop;
    pop.individuals.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Contiguous blocks per depth; N=100 over 3..7 gives 20 per depth.
        const int block = i * depths / n;
        const int firstInBlock = (block * n + depths - 1) / depths;
        const int depth = config.minInitDepth + block;
        const auto method = (i - firstInBlock) % 2 == 0 ? dsl::InitMethod::Grow
                                                         : dsl::InitMethod::Full;
        pop.individuals.push_back(fresh_individual(dsl::random_chromosome(rng, method, depth)));
    }
    return pop;
}

RouletteWheel::RouletteWheel(std::span<const double> weights)
{
    if (weights.empty()) {
        throw ContractViolation("roulette needs at least one weight");
    }
    cumulative_.reserve(weights.size());
    for (const double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ContractViolation("roulette weights must be finite and nonnegative");
        }
        total_ += w;
        cumulative_.push_back(total_);
    }
}

std::size_t RouletteWheel::spin(Rng& rng) const
{
    if (uniform()) {
        return std::uniform_int_distribution<std::size_t>(0, cumulative_.size() - 1)(rng);
    }
    const double r = std::uniform_real_distribution<double>(0.0, total_)(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    // upper_bound skips zero-width slots; clamp guards r == total_ rounding.
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 cumulative_.size() - 1);
}

std::size_t roulette_select(std::span<const double> weights, Rng& rng)
{
    const RouletteWheel wheel(weights);
    if (wheel.uniform()) {
        spdlog::debug("roulette: all weights zero, selecting uniformly");
    }
    return wheel.spin(rng);
}

std::size_t best_index(const Population& pop)
{
    if (pop.individuals.empty()) {
        throw ContractViolation("empty population");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.individuals.size(); ++i) {
        if (fitter(pop.individuals[i], pop.individuals[best])) {
            best = i;
        }
    }
    return best;
}

Population next_generation(const Population& pop, const EvolutionConfig& config, Rng& rng)
{
    const auto& parents = pop.individuals;
    const auto n = static_cast<std::size_t>(config.populationSize);
    if (parents.size() != n) {
        throw ContractViolation("population size differs from the config");
    }
    if (!std::all_of(parents.begin(), parents.end(),
                     [](const Individual& i) { return i.evaluated; })) {
        throw ContractViolation("every individual needs a fitness before reproduction");
    }

    Population next;
    next.generation = pop.generation + 1;
    next.individuals.reserve(n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fitter(parents[a], parents[b]); });
    for (int e = 0; e < config.eliteCount; ++e) {
        next.individuals.push_back(
            fresh_individual(parents[order[static_cast<std::size_t>(e)]].chromosome));
    }

    std::uniform_int_distribution<int> depth(config.minInitDepth, config.maxInitDepth);
    for (int f = 0; f < config.fresh_count(); ++f) {
        auto c = dsl::random_chromosome(rng, dsl::InitMethod::Grow, depth(rng));
        next.individuals.push_back(
            fresh_individual(maybe_mutate(std::move(c), config.mutationRate, rng)));
    }

    std::vector<double> weights(n);
    std::transform(parents.begin(), parents.end(), weights.begin(),
                   [](const Individual& i) { return i.fitness; });
    const RouletteWheel wheel(weights);
    if (wheel.uniform()) {
        spdlog::warn("generation {}: all fitness values are zero, selecting uniformly",
                     pop.generation);
    }
    std::bernoulli_distribution cross(config.crossoverRate);
    while (next.individuals.size() < n) {
        const Chromosome& a = parents[wheel.spin(rng)].chromosome;
        Chromosome child = a;
        if (cross(rng)) {
            const Chromosome& b = parents[wheel.spin(rng)].chromosome;
            child = dsl::crossover(a, b, rng);
        }
        next.individuals.push_back(
            fresh_individual(maybe_mutate(std::move(child), config.mutationRate, rng)));
    }
    return next;
}

std::size_t evaluate_population(Population& pop, const FitnessFn& fitness,
                                std::size_t levelCount, int threads)
{
    if (levelCount == 0) {
        throw ContractViolation("evaluation needs at least one level");
    }
    const std::size_t jobs = pop.individuals.size() * levelCount;
    std::vector<Evaluation> results(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t j = next++; j < jobs; j = next++) {
            try {
                results[j] = fitness(pop.individuals[j / levelCount].chromosome, j % levelCount);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>(threads > 0 ? static_cast<std::size_t>(threads) : hw, jobs);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
    }
    // Lowest failing job wins, so errors are independent of scheduling.
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    const auto levels = static_cast<double>(levelCount);
    for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
        Individual& ind = pop.individuals[i];
        double total = 0;
        EpisodeSummary s;
        s.meanNearest = 0;
        for (std::size_t l = 0; l < levelCount; ++l) {
            const Evaluation& r = results[i * levelCount + l];
            if (!(r.fitness >= 0.0) || !std::isfinite(r.fitness)) {
                throw ContractViolation("fitness must be finite and nonnegative");
            }
            total += r.fitness;
            s.wins += r.outcome == sim::Outcome::Win ? 1 : 0;
            s.meanScore += r.score;
            s.meanProgress += r.progress;
            s.meanNearest += r.nearest;
        }
        s.meanScore /= levels;
        s.meanProgress /= levels;
        s.meanNearest /= levels;
        ind.fitness = total / levels;
        ind.summary = s;
        ind.evaluated = true;
    }
    return jobs;
}

GenerationStats summarize(const Population& pop, std::size_t evaluations, double wallClockMs)
{
    GenerationStats s;
    s.generation = pop.generation;
    const Individual& best = pop.individuals[best_index(pop)];
    s.bestFitness = best.fitness;
    s.bestNodeCount = best.chromosome.size();
    double fit = 0;
    double nodes = 0;
    for (const auto& i : pop.individuals) {
        fit += i.fitness;
        nodes += static_cast<double>(i.chromosome.size());
    }
    const auto n = static_cast<double>(pop.individuals.size());
    s.meanFitness = fit / n;
    s.meanNodeCount = nodes / n;
    s.evaluations = evaluations;
    s.wallClockMs = wallClockMs;
    return s;
}

EvolutionResult evolve(const EvolutionConfig& config, const FitnessFn& fitness,
                       const ProgressSink& progress)
{
    config.validate();
    Rng rng(config.masterSeed);
    Population pop = init_population(config, rng);
    EvolutionResult result{pop.individuals.front().chromosome, 0.0, {}, {}, false};

    for (int g = 0; g < config.maxGenerations; ++g) {
        const auto start = std::chrono::steady_clock::now();
        const std::size_t evals =
            evaluate_population(pop, fitness, config.levelSeeds.size(), config.threads);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        const GenerationStats stats = summarize(pop, evals, ms);
        const Individual& best = pop.individuals[best_index(pop)];
        result.history.push_back(stats);
        result.best = best.chromosome;
        result.bestFitness = best.fitness;
        result.bestSummary = best.summary;
        if (progress) {
            progress(stats, best);
        }
        if (config.stopFitness && best.fitness >= *config.stopFitness) {
            result.stoppedEarly = g + 1 < config.maxGenerations;
            break;
        }
        if (g + 1 < config.maxGenerations) {
            pop = next_generation(pop, config, rng);
        }
    }
    return result;
}

} // namespace pgp::evo
