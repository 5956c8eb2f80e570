#include "pgp/sim/world.hpp"

#include "pgp/errors.hpp"

#include <algorithm>

namespace pgp::sim {

using namespace physics;

namespace {

struct Box {
    Fixed x;
    Fixed y;
    Fixed w;
    Fixed h;
};

bool overlaps(const Box& a, const Box& b) noexcept
{
    return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
}

Box agent_box(const AgentState& a) noexcept
{
    return {a.x, a.y, kAgentWidth, a.height()};
}

Box enemy_box(const EnemyState& e) noexcept
{
    return {e.x, e.y, kEnemyWidth, kEnemyHeight};
}

bool blocking_at(const WorldState& w, int x, int y) noexcept
{
    return is_blocking(w.tile(x, y));
}

bool column_blocked(const WorldState& w, int col, Fixed top, Fixed height) noexcept
{
    for (int row = floor_div(top, kTile); row <= floor_div(top + height - 1, kTile); ++row) {
        if (blocking_at(w, col, row)) {
            return true;
        }
    }
    return false;
}

bool row_blocked(const WorldState& w, int row, Fixed left, Fixed width) noexcept
{
    for (int col = floor_div(left, kTile); col <= floor_div(left + width - 1, kTile); ++col) {
        if (blocking_at(w, col, row)) {
            return true;
        }
    }
    return false;
}

/// Moves a box horizontally by vx, stopping flush against blocking tiles.
/// Returns false when the move was cut short.
bool move_horizontal(const WorldState& w, Fixed& x, Fixed y, Fixed width, Fixed height, Fixed vx)
{
    const Fixed nx = x + vx;
    if (vx > 0) {
        const int col = floor_div(nx + width - 1, kTile);
        if (column_blocked(w, col, y, height)) {
            x = col * kTile - width;
            return false;
        }
    } else if (vx < 0) {
        const int col = floor_div(nx, kTile);
        if (column_blocked(w, col, y, height)) {
            x = (col + 1) * kTile;
            return false;
        }
    }
    x = nx;
    return true;
}

enum class VerticalHit { None, Floor, Ceiling };

VerticalHit move_vertical(const WorldState& w, Fixed x, Fixed& y, Fixed width, Fixed height,
                          Fixed vy, int& hitRow)
{
    const Fixed ny = y + vy;
    if (vy > 0) {
        const int row = floor_div(ny + height - 1, kTile);
        if (row_blocked(w, row, x, width)) {
            y = row * kTile - height;
            hitRow = row;
            return VerticalHit::Floor;
        }
    } else if (vy < 0) {
        const int row = floor_div(ny, kTile);
        if (row_blocked(w, row, x, width)) {
            y = (row + 1) * kTile;
            hitRow = row;
            return VerticalHit::Ceiling;
        }
    }
    y = ny;
    return VerticalHit::None;
}

std::size_t tile_index(int x, int y) noexcept
{
    return static_cast<std::size_t>(y) * kLevelWidth + static_cast<std::size_t>(x);
}

void set_tile(WorldState& w, int x, int y, TileKind t) noexcept
{
    if (x >= 0 && x < kLevelWidth && y >= 0 && y < kLevelHeight) {
        w.tiles[tile_index(x, y)] = t;
    }
}

void emit(WorldState& w, EventKind kind, int payload)
{
    w.events.push_back({kind, w.frame, payload});
    w.score += event_points(kind);
}

void update_horizontal(WorldState& w, const ControlVector& in)
{
    AgentState& a = w.agent;
    const int dir = static_cast<int>(in.right) - static_cast<int>(in.left);
    if (dir != 0 && dir != a.lastDir) {
        a.lastDir = dir;
        emit(w, EventKind::DirChange, dir);
    }
    const bool ducking = in.down && a.size == AgentSize::Tall && a.onGround;
    if (dir != 0 && !ducking) {
        const Fixed accel = in.fire ? kRunAccel : kWalkAccel;
        const Fixed limit = in.fire ? kMaxRunSpeed : kMaxWalkSpeed;
        a.vx = std::clamp(a.vx + dir * accel, -limit, limit);
    } else if (a.vx > 0) {
        a.vx = std::max(0, a.vx - kFriction);
    } else if (a.vx < 0) {
        a.vx = std::min(0, a.vx + kFriction);
    }
}

void update_vertical_velocity(WorldState& w, const ControlVector& in)
{
    AgentState& a = w.agent;
    if (in.jump && a.onGround) {
        a.vy = kJumpImpulse;
        a.jumpHoldFrames = kJumpHoldFrames;
        a.onGround = false;
        emit(w, EventKind::JumpStart, a.tile_x());
    }
    if (!in.jump) {
        a.jumpHoldFrames = 0;
    }
    if (in.jump && a.jumpHoldFrames > 0) {
        a.vy += kHeldGravity;
        --a.jumpHoldFrames;
    } else {
        a.vy += kGravity;
    }
    a.vy = std::min(a.vy, kMaxFallSpeed);
}

void resolve_agent_collisions(WorldState& w, bool wasOnGround)
{
    AgentState& a = w.agent;
    if (!move_horizontal(w, a.x, a.y, kAgentWidth, a.height(), a.vx)) {
        a.vx = 0;
    }
    int hitRow = 0;
    const auto hit = move_vertical(w, a.x, a.y, kAgentWidth, a.height(), a.vy, hitRow);
    a.onGround = hit == VerticalHit::Floor;
    if (hit == VerticalHit::None) {
        return;
    }
    a.vy = 0;
    if (hit == VerticalHit::Floor) {
        a.jumpHoldFrames = 0;
        if (!wasOnGround) {
            emit(w, EventKind::Land, a.tile_x());
        }
        return;
    }
    a.jumpHoldFrames = 0;
    if (a.size != AgentSize::Tall) {
        return;
    }
    for (int col = floor_div(a.x, kTile); col <= floor_div(a.x + kAgentWidth - 1, kTile); ++col) {
        if (w.tile(col, hitRow) == TileKind::Brick) {
            set_tile(w, col, hitRow, TileKind::Empty);
            emit(w, EventKind::BrickBroken, col);
        }
    }
}

void update_enemies(WorldState& w)
{
    for (auto& e : w.enemies) {
        if (!e.alive) {
            continue;
        }
        const Fixed step = e.direction * kEnemySpeed;
        Fixed x = e.x;
        bool turn = !move_horizontal(w, x, e.y, kEnemyWidth, kEnemyHeight, step);
        if (!turn && e.onGround) {
            const int lead = e.direction > 0 ? floor_div(x + kEnemyWidth - 1, kTile)
                                             : floor_div(x, kTile);
            const int below = floor_div(e.y + kEnemyHeight, kTile);
            turn = !blocking_at(w, lead, below);
        }
        if (turn) {
            e.direction = -e.direction;
        } else {
            e.x = x;
        }

        e.vy = std::min(e.vy + kGravity, kMaxFallSpeed);
        int hitRow = 0;
        const auto hit = move_vertical(w, e.x, e.y, kEnemyWidth, kEnemyHeight, e.vy, hitRow);
        e.onGround = hit == VerticalHit::Floor;
        if (hit != VerticalHit::None) {
            e.vy = 0;
        }
        if (e.y >= kLevelHeight * kTile) {
            e.alive = false;
        }
    }
}

void resolve_interactions(WorldState& w)
{
    AgentState& a = w.agent;
    const Box body = agent_box(a);
    for (int row = floor_div(body.y, kTile); row <= floor_div(body.y + body.h - 1, kTile); ++row) {
        for (int col = floor_div(body.x, kTile); col <= floor_div(body.x + body.w - 1, kTile);
             ++col) {
            if (w.tile(col, row) == TileKind::Coin) {
                set_tile(w, col, row, TileKind::Empty);
                emit(w, EventKind::CoinCollected, col);
            }
        }
    }

    bool bounced = false;
    for (auto& e : w.enemies) {
        if (!e.alive || !a.alive || !overlaps(agent_box(a), enemy_box(e))) {
            continue;
        }
        const Fixed bottom = a.y + a.height();
        const Fixed enemyMid = e.y + kEnemyHeight / 2;
        if (a.vy > 0 && bottom < enemyMid) {
            e.alive = false;
            emit(w, EventKind::EnemyStomped, e.tile_x());
            bounced = true;
        } else if (a.invulnerableFrames == 0) {
            if (a.size == AgentSize::Tall) {
                a.size = AgentSize::Small;
                a.y += kTallHeight - kSmallHeight;
                a.invulnerableFrames = kInvulnerableFrames;
                emit(w, EventKind::Damaged, a.tile_x());
            } else {
                a.alive = false;
            }
        }
    }
    if (bounced) {
        a.vy = kStompBounce;
        a.onGround = false;
    }
}

void update_projectiles(WorldState& w, const ControlVector& in)
{
    AgentState& a = w.agent;
    if (a.alive && in.fire && !a.fireHeld && a.shootCooldown == 0) {
        const Fixed px = a.center_x() - kProjectileSize / 2;
        const Fixed py = a.y + a.height() / 2 - kProjectileSize / 2;
        w.projectiles.push_back({px, py, a.facing() * kProjectileSpeed});
        a.shootCooldown = kShootCooldown;
        emit(w, EventKind::ShotFired, a.tile_x());
    }
    a.fireHeld = in.fire;

    std::vector<Projectile> live;
    live.reserve(w.projectiles.size());
    for (auto p : w.projectiles) {
        p.x += p.vx;
        const int col = floor_div(p.x + kProjectileSize / 2, kTile);
        const int row = floor_div(p.y + kProjectileSize / 2, kTile);
        if (blocking_at(w, col, row)) {
            continue;
        }
        const Box shot{p.x, p.y, kProjectileSize, kProjectileSize};
        bool hit = false;
        for (auto& e : w.enemies) {
            if (e.alive && overlaps(shot, enemy_box(e))) {
                e.alive = false;
                hit = true;
                break;
            }
        }
        if (!hit) {
            live.push_back(p);
        }
    }
    w.projectiles = std::move(live);
}

void finish_frame(WorldState& w)
{
    AgentState& a = w.agent;
    if (a.alive && a.y >= kLevelHeight * kTile) {
        a.alive = false;
    }
    if (!a.alive) {
        emit(w, EventKind::Death, a.tile_x());
        w.terminal = Outcome::Death;
    } else {
        const int before = floor_div(w.maxX, kTile);
        w.maxX = std::max(w.maxX, a.center_x());
        const int after = floor_div(w.maxX, kTile);
        for (int col = before + 1; col <= after; ++col) {
            if (col % kMilestoneColumns == 0) {
                emit(w, EventKind::Milestone, col);
            }
        }
        if (a.tile_x() >= w.level->finish_x()) {
            emit(w, EventKind::Win, a.tile_x());
            w.terminal = Outcome::Win;
        }
    }
    std::stable_sort(w.events.begin(), w.events.end(),
                     [](const Event& l, const Event& r) { return l.kind < r.kind; });
    ++w.frame;
}

} // namespace

TileKind WorldState::tile(int x, int y) const noexcept
{
    if (x < 0 || x >= kLevelWidth) {
        return TileKind::Solid;
    }
    if (y < 0 || y >= kLevelHeight) {
        return TileKind::Empty;
    }
    return tiles[tile_index(x, y)];
}

WorldState make_world(std::shared_ptr<const Level> level, int frameBudget)
{
    if (!level) {
        throw ContractViolation("make_world needs a level");
    }
    if (frameBudget <= 0) {
        throw ContractViolation("frame budget must be positive");
    }
    WorldState w;
    w.level = std::move(level);
    w.tiles = w.level->tiles();
    w.frameBudget = frameBudget;

    const TilePos spawn = w.level->spawn();
    AgentState& a = w.agent;
    a.size = AgentSize::Tall;
    a.x = spawn.x * kTile + (kTile - kAgentWidth) / 2;
    a.y = (spawn.y + 1) * kTile - a.height();
    a.onGround = row_blocked(w, spawn.y + 1, a.x, kAgentWidth);
    w.maxX = a.center_x();

    for (const auto& s : w.level->enemies()) {
        EnemyState e;
        e.x = s.x * kTile + (kTile - kEnemyWidth) / 2;
        e.y = s.y * kTile;
        e.onGround = row_blocked(w, s.y + 1, e.x, kEnemyWidth);
        w.enemies.push_back(e);
    }
    return w;
}

WorldState step(WorldState w, ControlVector input)
{
    if (w.terminal) {
        throw ContractViolation("step() on a finished world");
    }
    if (w.frame >= w.frameBudget) {
        throw ContractViolation("step() past the frame budget");
    }
    if (!w.agent.alive) {
        throw ContractViolation("step() with a dead agent");
    }
    w.events.clear();
    AgentState& a = w.agent;
    const bool wasOnGround = a.onGround;
    if (a.shootCooldown > 0) {
        --a.shootCooldown;
    }
    if (a.invulnerableFrames > 0) {
        --a.invulnerableFrames;
    }

    update_horizontal(w, input);
    update_vertical_velocity(w, input);
    resolve_agent_collisions(w, wasOnGround);
    update_enemies(w);
    resolve_interactions(w);
    update_projectiles(w, input);
    finish_frame(w);
    return w;
}

} // namespace pgp::sim
