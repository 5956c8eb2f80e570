#pragma once

#include "pgp/sim/world.hpp"

#include <array>

namespace pgp::sim {

/// 6x6 window of boolean cells around the agent's tile. Offsets run
/// dx, dy in [-3, 2]; dy grows downward like the tile rows.
class ObservationGrid {
public:
    static constexpr int kMinOffset = -3;
    static constexpr int kMaxOffset = 2;
    static constexpr int kSize = kMaxOffset - kMinOffset + 1;

    static constexpr bool contains(int dx, int dy) noexcept
    {
        return dx >= kMinOffset && dx <= kMaxOffset && dy >= kMinOffset && dy <= kMaxOffset;
    }

    /// False for offsets outside the window.
    bool at(int dx, int dy) const noexcept
    {
        return contains(dx, dy) && cells_[index(dx, dy)];
    }

    void set(int dx, int dy, bool value) noexcept
    {
        if (contains(dx, dy)) {
            cells_[index(dx, dy)] = value;
        }
    }

    bool any() const noexcept
    {
        for (bool c : cells_) {
            if (c) {
                return true;
            }
        }
        return false;
    }

    friend bool operator==(const ObservationGrid&, const ObservationGrid&) = default;

private:
    static constexpr std::size_t index(int dx, int dy) noexcept
    {
        return static_cast<std::size_t>((dy - kMinOffset) * kSize + (dx - kMinOffset));
    }

    std::array<bool, kSize * kSize> cells_{};
};

struct Observation {
    ObservationGrid coins;
    ObservationGrid enemies;
    ObservationGrid breakables;
    bool isTall = false;
    bool canJump = false;
    bool canShoot = false;

    friend bool operator==(const Observation&, const Observation&) = default;
};

/// Snapshot of what the agent senses. Cells off the level read false.
Observation observe(const WorldState& world);

} // namespace pgp::sim
