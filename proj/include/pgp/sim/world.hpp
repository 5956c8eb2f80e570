#pragma once

#include "pgp/sim/level.hpp"
#include "pgp/sim/types.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace pgp::sim {

enum class AgentSize : std::uint8_t { Small, Tall };

/// Agent kinematics. (x, y) is the top-left corner of the bounding box in
/// fixed-point units; y grows downward.
struct AgentState {
    Fixed x = 0;
    Fixed y = 0;
    Fixed vx = 0;
    Fixed vy = 0;
    AgentSize size = AgentSize::Tall;
    bool onGround = false;
    int jumpHoldFrames = 0;
    int shootCooldown = 0;
    bool alive = true;
    int invulnerableFrames = 0;
    bool fireHeld = false;
    /// Last non-zero horizontal input direction (-1, +1), 0 before any.
    int lastDir = 0;

    Fixed height() const noexcept
    {
        return size == AgentSize::Tall ? physics::kTallHeight : physics::kSmallHeight;
    }
    Fixed center_x() const noexcept { return x + physics::kAgentWidth / 2; }
    int tile_x() const noexcept { return floor_div(center_x(), kTile); }
    /// Row of the lowest tile the body occupies.
    int tile_y() const noexcept { return floor_div(y + height() - 1, kTile); }
    int facing() const noexcept { return lastDir < 0 ? -1 : 1; }

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct EnemyState {
    Fixed x = 0;
    Fixed y = 0;
    Fixed vy = 0;
    int direction = -1;
    bool alive = true;
    bool onGround = false;

    int tile_x() const noexcept { return floor_div(x + physics::kEnemyWidth / 2, kTile); }
    int tile_y() const noexcept { return floor_div(y + physics::kEnemyHeight - 1, kTile); }

    friend bool operator==(const EnemyState&, const EnemyState&) = default;
};

struct Projectile {
    Fixed x = 0;
    Fixed y = 0;
    Fixed vx = 0;

    friend bool operator==(const Projectile&, const Projectile&) = default;
};

/// Full simulation state. A value: copying a world forks the episode.
struct WorldState {
    std::shared_ptr<const Level> level;
    /// Live tile grid; coins and bricks disappear as they are consumed.
    std::vector<TileKind> tiles;
    int frame = 0;
    int frameBudget = kDefaultFrameBudget;
    AgentState agent;
    std::vector<EnemyState> enemies;
    std::vector<Projectile> projectiles;
    int score = 0;
    /// Furthest agent centre x reached so far.
    Fixed maxX = 0;
    /// Set once the agent dies or reaches the finish column.
    std::optional<Outcome> terminal;
    /// Events emitted by the most recent step, ordered by kind.
    std::vector<Event> events;

    TileKind tile(int x, int y) const noexcept;

    bool finished() const noexcept { return terminal.has_value() || frame >= frameBudget; }

    friend bool operator==(const WorldState& a, const WorldState& b)
    {
        return *a.level == *b.level && a.tiles == b.tiles && a.frame == b.frame &&
               a.frameBudget == b.frameBudget && a.agent == b.agent && a.enemies == b.enemies &&
               a.projectiles == b.projectiles && a.score == b.score && a.maxX == b.maxX &&
               a.terminal == b.terminal && a.events == b.events;
    }
};

/// Agent placed on the spawn tile, standing Tall, enemies at their spawns.
WorldState make_world(std::shared_ptr<const Level> level, int frameBudget = kDefaultFrameBudget);

/// Advance exactly one frame. Update order:
///  1. horizontal acceleration (fire bit = run), friction with no input
///  2. jump impulse when on ground, hold counter for reduced gravity
///  3. gravity
///  4. collision, horizontal then vertical; Tall head-bumps break bricks
///  5. enemy patrol (reverse at walls and ledges)
///  6. coin pickup, stomp or damage on enemy contact
///  7. firing on the fire bit's rising edge, projectile motion and hits
///  8. death/win/milestone checks, events sorted, frame incremented
/// Throws ContractViolation when the world is already finished.
WorldState step(WorldState world, ControlVector input);

} // namespace pgp::sim
