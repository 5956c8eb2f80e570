#include "pgp/fitness/fitness.hpp"

#include "pgp/errors.hpp"
#include "pgp/fitness/trace_io.hpp"

#include <algorithm>

namespace pgp::fitness {

namespace {

double unit(double v)
{
    return std::clamp(v, 0.0, 1.0);
}

bool same_level(const sim::TraceHeader& a, const sim::TraceHeader& b)
{
    return a.levelSeed == b.levelSeed && a.difficulty == b.difficulty &&
           a.courseLength == b.courseLength;
}

} // namespace

TraceReference make_reference(std::span<const sim::PlayTrace> humans)
{
    if (humans.empty()) {
        throw ValidationError("trace fitness needs at least one reference trace");
    }
    TraceReference ref;
    ref.header = humans.front().header;
    const auto level = level_for(ref.header);
    for (const auto& t : humans) {
        if (!same_level(t.header, ref.header)) {
            throw ValidationError("reference traces were recorded on different levels");
        }
        ref.sequences.push_back(extract_events(t, level));
    }
    return ref;
}

FitnessReport fitness_trace(const sim::EpisodeResult& episode, const sim::Level& level,
                            const TraceReference& humans, const TraceWeights& weights,
                            const DissimilarityParams& params)
{
    if (humans.sequences.empty()) {
        throw ValidationError("trace fitness needs at least one reference trace");
    }
    if (humans.header.levelSeed != level.seed() || humans.header.difficulty != level.difficulty()) {
        throw ContractViolation("episode and reference traces are on different levels");
    }
    const EventSequence own = to_symbols(episode.trace.events);
    double nearest = 1.0;
    for (const auto& seq : humans.sequences) {
        nearest = std::min(nearest, trace_dissimilarity(own, seq, params));
    }

    FitnessReport r;
    r.nearest = nearest;
    r.components.traceTerm = weights.similarity * (1.0 - nearest);
    r.components.progressTerm = weights.progress * sim::progress_fraction(episode.maxX, level);
    r.components.winTerm = episode.outcome == sim::Outcome::Win ? weights.win : 0.0;
    r.aggregate = r.components.traceTerm + r.components.progressTerm + r.components.winTerm;
    return r;
}

FitnessReport fitness_trace(const sim::EpisodeResult& episode, const sim::Level& level,
                            std::span<const sim::PlayTrace> humans, const TraceWeights& weights)
{
    return fitness_trace(episode, level, make_reference(humans), weights);
}

FitnessReport fitness_objective(const sim::EpisodeResult& episode, const sim::Level& level,
                                const ObjectiveWeights& weights)
{
    FitnessReport r;
    r.components.progressTerm = weights.progress * sim::progress_fraction(episode.maxX, level);
    r.components.winTerm = episode.outcome == sim::Outcome::Win ? weights.win : 0.0;
    const int maxScore = level.max_score();
    r.components.scoreTerm =
        maxScore > 0 ? weights.score * unit(static_cast<double>(episode.score) / maxScore) : 0.0;
    const int budget = episode.trace.header.frameBudget;
    r.components.timeTerm =
        weights.time *
        unit(1.0 - static_cast<double>(episode.framesUsed) / std::max(budget, 1));
    r.aggregate = r.components.progressTerm + r.components.winTerm + r.components.scoreTerm +
                  r.components.timeTerm;
    return r;
}

} // namespace pgp::fitness
