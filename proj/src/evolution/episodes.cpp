#include "pgp/evolution/episodes.hpp"

#include "pgp/dsl/interpreter.hpp"
#include "pgp/errors.hpp"
#include "pgp/sim/level_gen.hpp"

#include <fmt/format.h>

namespace pgp::evo {

namespace {

Evaluation base(const sim::EpisodeResult& ep, const sim::Level& level)
{
    Evaluation e;
    e.outcome = ep.outcome;
    e.score = ep.score;
    e.framesUsed = ep.framesUsed;
    e.progress = sim::progress_fraction(ep.maxX, level);
    return e;
}

} // namespace

std::vector<std::shared_ptr<const sim::Level>> make_levels(const EvolutionConfig& config)
{
    std::vector<std::shared_ptr<const sim::Level>> levels;
    for (const auto seed : config.levelSeeds) {
        levels.push_back(std::make_shared<const sim::Level>(
            sim::generate_level(seed, config.difficulty, config.courseLength)));
    }
    return levels;
}

FitnessFn objective_fitness(std::vector<std::shared_ptr<const sim::Level>> levels,
                            int frameBudget, fitness::ObjectiveWeights weights)
{
    return [levels = std::move(levels), frameBudget, weights](const Chromosome& c,
                                                              std::size_t index) {
        const auto& level = levels.at(index);
        const auto ep = sim::run_episode(level, dsl::as_controller(c), frameBudget);
        Evaluation e = base(ep, *level);
        e.fitness = fitness::fitness_objective(ep, *level, weights).aggregate;
        return e;
    };
}

FitnessFn trace_fitness(std::vector<std::shared_ptr<const sim::Level>> levels, int frameBudget,
                        std::span<const sim::PlayTrace> humans, fitness::TraceWeights weights)
{
    std::vector<fitness::TraceReference> refs;
    for (const auto& level : levels) {
        std::vector<sim::PlayTrace> mine;
        for (const auto& t : humans) {
            if (t.header.levelSeed == level->seed() &&
                t.header.difficulty == level->difficulty() &&
                t.header.courseLength == level->length()) {
                mine.push_back(t);
            }
        }
        if (mine.empty()) {
            throw ValidationError(fmt::format(
                "no reference trace recorded on level seed {} difficulty {}", level->seed(),
                level->difficulty()));
        }
        refs.push_back(fitness::make_reference(mine));
    }
    return [levels = std::move(levels), refs = std::move(refs), frameBudget,
            weights](const Chromosome& c, std::size_t index) {
        const auto& level = levels.at(index);
        const auto ep = sim::run_episode(level, dsl::as_controller(c), frameBudget);
        const auto report = fitness::fitness_trace(ep, *level, refs.at(index), weights);
        Evaluation e = base(ep, *level);
        e.fitness = report.aggregate;
        e.nearest = report.nearest;
        return e;
    };
}

FitnessFn make_fitness(const EvolutionConfig& config, std::span<const sim::PlayTrace> humans)
{
    config.validate();
    auto levels = make_levels(config);
    if (config.fitnessMode == FitnessMode::Trace) {
        if (humans.empty()) {
            throw ValidationError("trace mode needs at least one reference trace");
        }
        return trace_fitness(std::move(levels), config.frameBudget, humans);
    }
    return objective_fitness(std::move(levels), config.frameBudget);
}

} // namespace pgp::evo
