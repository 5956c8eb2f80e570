#pragma once

#include "pgp/sim/types.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pgp::sim {

struct TilePos {
    int x = 0;
    int y = 0;

    friend bool operator==(const TilePos&, const TilePos&) = default;
};

enum class EnemyKind : std::uint8_t { Walker };

struct EnemySpawn {
    EnemyKind kind = EnemyKind::Walker;
    int x = 0;
    int y = 0;

    friend bool operator==(const EnemySpawn&, const EnemySpawn&) = default;
};

/// Immutable tile world. Width and height are fixed; the course ends at
/// `finish_x()`, which is the last column for standard levels and may sit
/// earlier for short training courses.
class Level {
public:
    Level(std::vector<TileKind> tiles, TilePos spawn, int finishX,
          std::vector<EnemySpawn> enemies, std::uint64_t seed, int difficulty);

    static constexpr int width() noexcept { return kLevelWidth; }
    static constexpr int height() noexcept { return kLevelHeight; }

    /// Columns outside [0, width) read as Solid walls; rows outside the grid
    /// read as Empty (open sky above, a fatal drop below).
    TileKind tile(int x, int y) const noexcept;
    bool in_bounds(int x, int y) const noexcept
    {
        return x >= 0 && x < width() && y >= 0 && y < height();
    }

    const std::vector<TileKind>& tiles() const noexcept { return tiles_; }
    TilePos spawn() const noexcept { return spawn_; }
    int finish_x() const noexcept { return finishX_; }
    /// Course length in tiles (finish column inclusive).
    int length() const noexcept { return finishX_ + 1; }
    /// Row-major order (top row first), the order the file format lists them.
    const std::vector<EnemySpawn>& enemies() const noexcept { return enemies_; }
    std::uint64_t seed() const noexcept { return seed_; }
    int difficulty() const noexcept { return difficulty_; }

    /// Points available from every coin, brick and enemy in the level.
    int max_score() const noexcept;

    friend bool operator==(const Level&, const Level&) = default;

private:
    std::vector<TileKind> tiles_;
    TilePos spawn_;
    int finishX_;
    std::vector<EnemySpawn> enemies_;
    std::uint64_t seed_;
    int difficulty_;
};

/// Level file text: header `LVL1 <width> <height> <seed> <difficulty>` then
/// one row of glyphs per tile row, top row first.
std::string serialize_level(const Level& level);

/// Throws ParseError (with 1-based line/column) on malformed text.
Level parse_level(std::string_view text);

// Jump envelope used by the reachability check, in tiles.
inline constexpr int kMaxJumpColumns = 5;
inline constexpr int kMaxJumpRise = 3;
inline constexpr int kJumpHeadroom = 2;

/// Breadth-first search over standable cells connected by jumps inside the
/// envelope above. True when any standable cell at or beyond the finish
/// column is reachable from the spawn.
bool finish_reachable(const Level& level);

/// Throws ValidationError when the spawn or finish rules or the
/// reachability check fail.
void validate_level(const Level& level);

} // namespace pgp::sim
