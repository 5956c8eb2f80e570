#include "pgp/sim/types.hpp"

#include "pgp/errors.hpp"

#include <fmt/format.h>

namespace pgp {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(fmt::format("{}:{}: {}", line, column, message)), line_(line),
      column_(column)
{
}

TraceCorrupt::TraceCorrupt(const std::string& message, long long firstDivergentFrame)
    : std::runtime_error(message), frame_(firstDivergentFrame)
{
}

} // namespace pgp

namespace pgp::sim {

namespace {
constexpr std::array<std::string_view, kEventKindCount> kEventNames = {
    "JumpStart",    "Land",        "DirChange", "CoinCollected", "EnemyStomped", "BrickBroken",
    "ShotFired",    "Damaged",     "Death",     "Win",           "Milestone",
};

constexpr std::array<std::string_view, 3> kOutcomeNames = {"Win", "Death", "Timeout"};
} // namespace

ControlVector ControlVector::decode(int value)
{
    if (value < 0 || value > 63) {
        throw ContractViolation(fmt::format("control encoding {} outside 0..63", value));
    }
    ControlVector c;
    c.left = value & bits::kLeft;
    c.right = value & bits::kRight;
    c.up = value & bits::kUp;
    c.down = value & bits::kDown;
    c.jump = value & bits::kJump;
    c.fire = value & bits::kFire;
    return c;
}

std::string_view to_string(EventKind kind) noexcept
{
    return kEventNames[static_cast<std::size_t>(kind)];
}

std::optional<EventKind> event_kind_from_string(std::string_view name) noexcept
{
    for (std::size_t i = 0; i < kEventNames.size(); ++i) {
        if (kEventNames[i] == name) {
            return static_cast<EventKind>(i);
        }
    }
    return std::nullopt;
}

int event_points(EventKind kind) noexcept
{
    switch (kind) {
    case EventKind::CoinCollected:
        return points::kCoin;
    case EventKind::EnemyStomped:
        return points::kStomp;
    case EventKind::BrickBroken:
        return points::kBrick;
    case EventKind::Win:
        return points::kWin;
    default:
        return 0;
    }
}

std::string_view to_string(Outcome outcome) noexcept
{
    return kOutcomeNames[static_cast<std::size_t>(outcome)];
}

std::optional<Outcome> outcome_from_string(std::string_view name) noexcept
{
    for (std::size_t i = 0; i < kOutcomeNames.size(); ++i) {
        if (kOutcomeNames[i] == name) {
            return static_cast<Outcome>(i);
        }
    }
    return std::nullopt;
}

} // namespace pgp::sim
