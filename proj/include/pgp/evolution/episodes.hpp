#pragma once

#include "pgp/evolution/evolution.hpp"
#include "pgp/fitness/fitness.hpp"
#include "pgp/sim/level.hpp"

#include <memory>
#include <span>
#include <vector>

namespace pgp::evo {

/// Levels named by the config, in levelSeeds order.
std::vector<std::shared_ptr<const sim::Level>> make_levels(const EvolutionConfig& config);

/// Objective-mode fitness: one headless episode per level.
FitnessFn objective_fitness(std::vector<std::shared_ptr<const sim::Level>> levels,
                            int frameBudget, fitness::ObjectiveWeights weights = {});

/// Trace-mode fitness. Each level needs at least one reference trace
/// recorded on it (ValidationError otherwise).
FitnessFn trace_fitness(std::vector<std::shared_ptr<const sim::Level>> levels, int frameBudget,
                        std::span<const sim::PlayTrace> humans,
                        fitness::TraceWeights weights = {});

/// Picks the mode from the config.
FitnessFn make_fitness(const EvolutionConfig& config, std::span<const sim::PlayTrace> humans);

} // namespace pgp::evo
