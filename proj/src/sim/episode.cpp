#include "pgp/sim/episode.hpp"

#include "pgp/errors.hpp"

#include <algorithm>

namespace pgp::sim {

EpisodeRecorder::EpisodeRecorder(std::shared_ptr<const Level> level, int frameBudget,
                                 TraceSource source, std::int64_t createdAt)
    : world_(make_world(level, frameBudget))
{
    trace_.header.levelSeed = level->seed();
    trace_.header.difficulty = level->difficulty();
    trace_.header.courseLength = level->length();
    trace_.header.frameBudget = frameBudget;
    trace_.header.source = source;
    trace_.header.createdAt = createdAt;
    trace_.maxX = world_.maxX;
    trace_.inputs.reserve(static_cast<std::size_t>(frameBudget));
}

void EpisodeRecorder::advance(int bits)
{
    const ControlVector input = ControlVector::decode(bits);
    world_ = step(std::move(world_), input);
    trace_.inputs.push_back(static_cast<std::uint8_t>(bits));
    trace_.events.insert(trace_.events.end(), world_.events.begin(), world_.events.end());
    trace_.finalScore = world_.score;
    trace_.maxX = world_.maxX;
    trace_.outcome = world_.terminal.value_or(Outcome::Timeout);
}

EpisodeResult EpisodeRecorder::finish() const
{
    EpisodeResult r;
    r.outcome = world_.terminal.value_or(Outcome::Timeout);
    r.score = world_.score;
    r.framesUsed = world_.frame;
    r.maxX = world_.maxX;
    r.trace = trace_;
    r.trace.outcome = r.outcome;
    return r;
}

EpisodeResult run_episode(std::shared_ptr<const Level> level, const Controller& controller,
                          int frameBudget)
{
    if (frameBudget <= 0) {
        throw ContractViolation("run_episode needs a positive frame budget");
    }
    EpisodeRecorder rec(std::move(level), frameBudget);
    while (!rec.done()) {
        rec.advance(controller(observe(rec.world())));
    }
    return rec.finish();
}

EpisodeResult replay_inputs(std::shared_ptr<const Level> level,
                            std::span<const std::uint8_t> inputs, int frameBudget)
{
    EpisodeRecorder rec(std::move(level), frameBudget);
    for (const auto bits : inputs) {
        if (rec.done()) {
            throw ContractViolation("replay has inputs past the end of the episode");
        }
        rec.advance(bits);
    }
    return rec.finish();
}

double progress_fraction(Fixed maxX, const Level& level) noexcept
{
    const double goal = static_cast<double>(level.finish_x()) * kTile;
    return std::clamp(static_cast<double>(maxX) / goal, 0.0, 1.0);
}

} // namespace pgp::sim
