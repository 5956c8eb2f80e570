#pragma once

#include "pgp/dsl/chromosome.hpp"
#include "pgp/dsl/operators.hpp"
#include "pgp/sim/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pgp::evo {

using dsl::Chromosome;
using dsl::Rng;

enum class FitnessMode : std::uint8_t { Objective, Trace };

struct EvolutionConfig {
    int populationSize = 100;
    double crossoverRate = 0.6;
    double freshRate = 0.2;
    double mutationRate = 0.01; // per offspring
    int eliteCount = 1;
    int maxGenerations = 50;
    std::uint64_t masterSeed = 0;
    int minInitDepth = 3;
    int maxInitDepth = 7;
    FitnessMode fitnessMode = FitnessMode::Objective;
    std::vector<std::uint64_t> levelSeeds{0};
    int difficulty = 0;
    int courseLength = sim::kLevelWidth;
    int frameBudget = sim::kDefaultFrameBudget;
    /// Stop after the first generation whose best fitness reaches this.
    std::optional<double> stopFitness;
    /// Evaluation threads; 0 picks the hardware concurrency.
    int threads = 0;

    int fresh_count() const;
    /// Throws ValidationError naming the first bad field.
    void validate() const;
};

/// Per-level outcome of one chromosome.
struct Evaluation {
    double fitness = 0;
    sim::Outcome outcome = sim::Outcome::Timeout;
    int score = 0;
    int framesUsed = 0;
    double progress = 0;
    double nearest = 1; // trace mode: d* to the closest reference trace
};

/// Averages over the configured levels.
struct EpisodeSummary {
    int wins = 0;
    double meanScore = 0;
    double meanProgress = 0;
    double meanNearest = 1;
};

struct Individual {
    Chromosome chromosome;
    double fitness = 0;
    EpisodeSummary summary;
    bool evaluated = false;
};

struct Population {
    std::vector<Individual> individuals;
    int generation = 0;
};

struct GenerationStats {
    int generation = 0;
    double bestFitness = 0;
    double meanFitness = 0;
    std::size_t bestNodeCount = 0;
    double meanNodeCount = 0;
    std::size_t evaluations = 0;
    double wallClockMs = 0;

    /// Everything except wall-clock time, which is the only
    /// non-reproducible field.
    bool same_result(const GenerationStats& o) const noexcept;
};

/// Must be pure and thread-safe: called concurrently for different
/// (chromosome, level) pairs.
using FitnessFn = std::function<Evaluation(const Chromosome&, std::size_t levelIndex)>;
using ProgressSink = std::function<void(const GenerationStats&, const Individual& best)>;

/// Ramped half-and-half: depths cycle over [minInitDepth, maxInitDepth] in
/// blocks, alternating grow and full within each depth.
Population init_population(const EvolutionConfig& config, Rng& rng);

/// Fitness-proportional choice. All-zero weights fall back to uniform.
std::size_t roulette_select(std::span<const double> weights, Rng& rng);

class RouletteWheel {
public:
    explicit RouletteWheel(std::span<const double> weights);
    std::size_t spin(Rng& rng) const;
    bool uniform() const noexcept { return total_ <= 0; }

private:
    std::vector<double> cumulative_;
    double total_ = 0;
};

/// Index of the fittest individual: highest fitness, then fewest nodes,
/// then lowest id.
std::size_t best_index(const Population& pop);

/// Elites, then fresh grow trees, then crossover/copy offspring; fresh and
/// offspring are mutated with probability mutationRate.
Population next_generation(const Population& pop, const EvolutionConfig& config, Rng& rng);

/// Runs every (individual, level) pair through `fitness`, averages per
/// individual. Results do not depend on `threads`. Returns the number of
/// episodes run.
std::size_t evaluate_population(Population& pop, const FitnessFn& fitness,
                                std::size_t levelCount, int threads);

GenerationStats summarize(const Population& pop, std::size_t evaluations, double wallClockMs);

struct EvolutionResult {
    Chromosome best;
    double bestFitness = 0;
    EpisodeSummary bestSummary;
    std::vector<GenerationStats> history;
    bool stoppedEarly = false;
};

EvolutionResult evolve(const EvolutionConfig& config, const FitnessFn& fitness,
                       const ProgressSink& progress = {});

} // namespace pgp::evo
