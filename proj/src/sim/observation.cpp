#include "pgp/sim/observation.hpp"

#include "pgp/errors.hpp"

namespace pgp::sim {

Observation observe(const WorldState& world)
{
    if (!world.agent.alive) {
        throw ContractViolation("observe() on a dead agent");
    }
    Observation o;
    const AgentState& a = world.agent;
    const int ax = a.tile_x();
    const int ay = a.tile_y();

    for (int dy = ObservationGrid::kMinOffset; dy <= ObservationGrid::kMaxOffset; ++dy) {
        for (int dx = ObservationGrid::kMinOffset; dx <= ObservationGrid::kMaxOffset; ++dx) {
            const int x = ax + dx;
            const int y = ay + dy;
            if (!world.level->in_bounds(x, y)) {
                continue;
            }
            const TileKind t = world.tile(x, y);
            o.coins.set(dx, dy, t == TileKind::Coin);
            o.breakables.set(dx, dy, t == TileKind::Brick);
        }
    }
    for (const auto& e : world.enemies) {
        if (!e.alive) {
            continue;
        }
        const int x = e.tile_x();
        const int y = e.tile_y();
        if (world.level->in_bounds(x, y)) {
            o.enemies.set(x - ax, y - ay, true);
        }
    }

    o.isTall = a.size == AgentSize::Tall;
    o.canJump = a.onGround && a.alive;
    o.canShoot = a.shootCooldown == 0;
    return o;
}

} // namespace pgp::sim
