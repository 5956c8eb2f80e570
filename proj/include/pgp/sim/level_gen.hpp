#pragma once

#include "pgp/sim/level.hpp"

#include <cstdint>

namespace pgp::sim {

inline constexpr int kMinCourseLength = 16;
inline constexpr int kGeneratorAttempts = 100;

/// Deterministic procedural level for (seed, difficulty, courseLength).
/// Difficulty 0 is flat ground with coins; higher difficulties add height
/// steps, gaps, enemies and brick platforms. `courseLength` moves the finish
/// column to courseLength - 1; columns past it are flat filler.
///
/// Every returned level passes finish_reachable(). Throws std::logic_error
/// if no candidate validates within kGeneratorAttempts tries.
Level generate_level(std::uint64_t seed, int difficulty, int courseLength = kLevelWidth);

} // namespace pgp::sim
