#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace pgp::sim {

/// Fixed-point unit: one tile is 256 units.
using Fixed = std::int32_t;

inline constexpr Fixed kTile = 256;
inline constexpr int kLevelWidth = 256;
inline constexpr int kLevelHeight = 15;
inline constexpr int kDefaultFrameBudget = 2000;

// Physics constants, all in 1/256 tile units and frames.
namespace physics {
inline constexpr Fixed kWalkAccel = 4;
inline constexpr Fixed kRunAccel = 8;
inline constexpr Fixed kFriction = 2;
inline constexpr Fixed kMaxWalkSpeed = 40;
inline constexpr Fixed kMaxRunSpeed = 80;
inline constexpr Fixed kGravity = 8;
inline constexpr Fixed kHeldGravity = kGravity / 4;
inline constexpr Fixed kJumpImpulse = -120;
inline constexpr int kJumpHoldFrames = 8;
inline constexpr Fixed kMaxFallSpeed = 200;
inline constexpr Fixed kEnemySpeed = 16;
inline constexpr Fixed kStompBounce = -64;
inline constexpr Fixed kProjectileSpeed = 96;
inline constexpr int kShootCooldown = 24;
inline constexpr int kInvulnerableFrames = 32;

inline constexpr Fixed kAgentWidth = 192;
inline constexpr Fixed kSmallHeight = kTile;
inline constexpr Fixed kTallHeight = 2 * kTile;
inline constexpr Fixed kEnemyWidth = 224;
inline constexpr Fixed kEnemyHeight = kTile;
inline constexpr Fixed kProjectileSize = 64;
} // namespace physics

namespace points {
inline constexpr int kCoin = 100;
inline constexpr int kStomp = 80;
inline constexpr int kBrick = 50;
inline constexpr int kWin = 0;
} // namespace points

inline constexpr int kMilestoneColumns = 16;

enum class TileKind : std::uint8_t { Empty, Solid, Brick, Coin };

constexpr bool is_blocking(TileKind t) noexcept
{
    return t == TileKind::Solid || t == TileKind::Brick;
}

/// The per-frame 6-bit input. Bit layout: 0 left, 1 right, 2 up, 3 down,
/// 4 jump, 5 shoot|run.
struct ControlVector {
    bool left = false;
    bool right = false;
    bool up = false;
    bool down = false;
    bool jump = false;
    bool fire = false;

    constexpr std::uint8_t encode() const noexcept
    {
        return static_cast<std::uint8_t>(left | right << 1 | up << 2 | down << 3 | jump << 4 |
                                         fire << 5);
    }

    /// Throws ContractViolation for values outside 0..63.
    static ControlVector decode(int bits);

    friend constexpr bool operator==(const ControlVector&, const ControlVector&) = default;
};

namespace bits {
inline constexpr std::uint8_t kLeft = 1u << 0;
inline constexpr std::uint8_t kRight = 1u << 1;
inline constexpr std::uint8_t kUp = 1u << 2;
inline constexpr std::uint8_t kDown = 1u << 3;
inline constexpr std::uint8_t kJump = 1u << 4;
inline constexpr std::uint8_t kFire = 1u << 5;
} // namespace bits

/// Enumeration order doubles as the tie-break order of events within a frame.
enum class EventKind : std::uint8_t {
    JumpStart,
    Land,
    DirChange,
    CoinCollected,
    EnemyStomped,
    BrickBroken,
    ShotFired,
    Damaged,
    Death,
    Win,
    Milestone,
};

inline constexpr std::size_t kEventKindCount = 11;

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> event_kind_from_string(std::string_view name) noexcept;

/// Points credited for one event of the given kind.
int event_points(EventKind kind) noexcept;

struct Event {
    EventKind kind{};
    std::int32_t frame = 0;
    std::int32_t payload = 0;

    friend bool operator==(const Event&, const Event&) = default;
};

enum class Outcome : std::uint8_t { Win, Death, Timeout };

std::string_view to_string(Outcome outcome) noexcept;
std::optional<Outcome> outcome_from_string(std::string_view name) noexcept;

/// Floor division for the fixed-point grid (positions may be negative).
constexpr int floor_div(Fixed value, Fixed divisor) noexcept
{
    const Fixed q = value / divisor;
    return (value % divisor != 0 && (value < 0) != (divisor < 0)) ? q - 1 : q;
}

} // namespace pgp::sim
