#pragma once

#include "pgp/fitness/metric.hpp"
#include "pgp/sim/episode.hpp"
#include "pgp/sim/level.hpp"

#include <span>

namespace pgp::fitness {

struct TraceWeights {
    double similarity = 0.6;
    double progress = 0.3;
    double win = 0.1;
};

struct ObjectiveWeights {
    double progress = 0.5;
    double win = 0.3;
    double score = 0.15;
    double time = 0.05;
};

/// Objective fitness of at least this value implies a win (and vice versa
/// with the default weights).
inline constexpr double kObjectiveWinThreshold = 0.8;

/// Weighted components; aggregate is their sum. `nearest` is d*, the
/// dissimilarity to the closest reference trace (trace mode only).
struct FitnessReport {
    struct Components {
        double traceTerm = 0;
        double progressTerm = 0;
        double winTerm = 0;
        double scoreTerm = 0;
        double timeTerm = 0;
    } components;
    double aggregate = 0;
    double nearest = 1;
};

/// Reference play style: symbol sequences of the human traces for one level.
struct TraceReference {
    sim::TraceHeader header;
    std::vector<EventSequence> sequences;
};

/// Validates every trace and checks they share one level. Throws
/// ValidationError for an empty set or mixed levels.
TraceReference make_reference(std::span<const sim::PlayTrace> humans);

FitnessReport fitness_trace(const sim::EpisodeResult& episode, const sim::Level& level,
                            const TraceReference& humans, const TraceWeights& weights = {},
                            const DissimilarityParams& params = {});

FitnessReport fitness_trace(const sim::EpisodeResult& episode, const sim::Level& level,
                            std::span<const sim::PlayTrace> humans,
                            const TraceWeights& weights = {});

FitnessReport fitness_objective(const sim::EpisodeResult& episode, const sim::Level& level,
                                const ObjectiveWeights& weights = {});

} // namespace pgp::fitness
