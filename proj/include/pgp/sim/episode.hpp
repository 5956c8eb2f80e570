#pragma once

#include "pgp/sim/observation.hpp"
#include "pgp/sim/world.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace pgp::sim {

enum class TraceSource : std::uint8_t { Human, Agent };

struct TraceHeader {
    int formatVersion = 1;
    std::uint64_t levelSeed = 0;
    int difficulty = 0;
    int courseLength = kLevelWidth;
    int frameBudget = kDefaultFrameBudget;
    TraceSource source = TraceSource::Agent;
    /// Unix seconds; 0 for headless runs so their files stay byte-stable.
    std::int64_t createdAt = 0;

    friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

/// One recorded episode. `inputs` is authoritative, everything else is
/// derivable by replaying it on the header's level.
struct PlayTrace {
    TraceHeader header;
    std::vector<std::uint8_t> inputs;
    std::vector<Event> events;
    int finalScore = 0;
    Outcome outcome = Outcome::Timeout;
    Fixed maxX = 0;

    friend bool operator==(const PlayTrace&, const PlayTrace&) = default;
};

struct EpisodeResult {
    Outcome outcome = Outcome::Timeout;
    int score = 0;
    int framesUsed = 0;
    Fixed maxX = 0;
    PlayTrace trace;
};

/// Per-frame policy; returns a 6-bit control encoding.
using Controller = std::function<std::uint8_t(const Observation&)>;

/// Incremental episode driver: steps a world one input at a time and
/// records the trace as it goes. Used directly by interactive sessions.
class EpisodeRecorder {
public:
    EpisodeRecorder(std::shared_ptr<const Level> level, int frameBudget,
                    TraceSource source = TraceSource::Agent, std::int64_t createdAt = 0);

    /// Throws ContractViolation for encodings outside 0..63 or when done().
    void advance(int bits);

    bool done() const noexcept { return world_.finished(); }
    const WorldState& world() const noexcept { return world_; }
    const PlayTrace& trace() const noexcept { return trace_; }

    /// Closes the episode. An unfinished episode ends as Timeout.
    EpisodeResult finish() const;

private:
    WorldState world_;
    PlayTrace trace_;
};

/// observe -> controller -> step until Win, Death or the frame budget.
EpisodeResult run_episode(std::shared_ptr<const Level> level, const Controller& controller,
                          int frameBudget = kDefaultFrameBudget);

/// Feeds a recorded input sequence back through the simulator. Inputs past
/// the end of the episode are a contract violation.
EpisodeResult replay_inputs(std::shared_ptr<const Level> level,
                            std::span<const std::uint8_t> inputs,
                            int frameBudget = kDefaultFrameBudget);

/// Fraction of the course covered, in [0, 1]; 1 exactly when the finish
/// column has been reached.
double progress_fraction(Fixed maxX, const Level& level) noexcept;

} // namespace pgp::sim
