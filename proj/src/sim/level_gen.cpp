#include "pgp/sim/level_gen.hpp"

#include "pgp/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <random>
#include <stdexcept>

namespace pgp::sim {

namespace {

constexpr int kBaseGround = 12;
constexpr int kHighestGround = 8;
constexpr int kSpawnColumn = 2;
constexpr int kSafeStart = 10;
constexpr int kSafeEnd = 8;
constexpr int kNoGround = -1;

std::uint64_t mix_seed(std::uint64_t seed, int difficulty, int courseLength, int attempt)
{
    // splitmix64 finaliser over the packed inputs.
    std::uint64_t z = seed ^ (static_cast<std::uint64_t>(difficulty) << 48) ^
                      (static_cast<std::uint64_t>(courseLength) << 32) ^
                      static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Builder {
public:
    Builder(std::uint64_t seed, int difficulty, int courseLength)
        : rng_(seed), difficulty_(difficulty), length_(courseLength),
          ground_(kLevelWidth, kBaseGround), tiles_(kLevelWidth * kLevelHeight, TileKind::Empty)
    {
    }

    Level build(std::uint64_t levelSeed)
    {
        if (difficulty_ > 0) {
            shape_terrain();
        }
        fill_ground();
        if (difficulty_ > 0) {
            place_platforms();
        }
        place_coins();
        std::vector<EnemySpawn> enemies;
        if (difficulty_ > 0) {
            enemies = place_enemies();
        }
        const TilePos spawn{kSpawnColumn, ground_[kSpawnColumn] - 1};
        return Level(std::move(tiles_), spawn, length_ - 1, std::move(enemies), levelSeed,
                     difficulty_);
    }

private:
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    TileKind& at(int x, int y) { return tiles_[static_cast<std::size_t>(y * kLevelWidth + x)]; }

    void shape_terrain()
    {
        const double stepChance = std::min(0.2 * difficulty_, 0.6);
        const double gapChance = std::min(0.12 * difficulty_, 0.45);
        const int maxRise = std::min(difficulty_, kMaxJumpRise);
        const int maxGap = std::min(1 + difficulty_, kMaxJumpColumns - 1);

        int height = kBaseGround;
        int x = kSafeStart;
        const int end = length_ - kSafeEnd;
        while (x < end) {
            const int segment = std::min(uniform(5, 12), end - x);
            for (int i = 0; i < segment; ++i) {
                ground_[static_cast<std::size_t>(x + i)] = height;
            }
            x += segment;
            if (x >= end) {
                break;
            }
            if (chance(gapChance) && x + maxGap < end) {
                const int gap = uniform(1, maxGap);
                for (int i = 0; i < gap; ++i) {
                    ground_[static_cast<std::size_t>(x + i)] = kNoGround;
                }
                x += gap;
                // Landing after a gap never rises by more than one tile.
                height = std::clamp(height + uniform(-1, 1), kHighestGround, kBaseGround);
            } else if (chance(stepChance)) {
                const int delta = uniform(1, maxRise) * (chance(0.5) ? -1 : 1);
                height = std::clamp(height + delta, kHighestGround, kBaseGround);
            }
        }
        for (int c = std::max(end, kSafeStart); c < kLevelWidth; ++c) {
            ground_[static_cast<std::size_t>(c)] = height;
        }
    }

    void fill_ground()
    {
        for (int x = 0; x < kLevelWidth; ++x) {
            const int top = ground_[static_cast<std::size_t>(x)];
            if (top == kNoGround) {
                continue;
            }
            for (int y = top; y < kLevelHeight; ++y) {
                at(x, y) = TileKind::Solid;
            }
        }
    }

    bool flat_run(int x, int width) const
    {
        if (x < kSafeStart || x + width > length_ - kSafeEnd) {
            return false;
        }
        const int h = ground_[static_cast<std::size_t>(x)];
        for (int i = 0; i < width; ++i) {
            if (ground_[static_cast<std::size_t>(x + i)] != h || h == kNoGround) {
                return false;
            }
        }
        return true;
    }

    void place_platforms()
    {
        const int count = std::min(difficulty_ * 2, 10);
        for (int i = 0; i < count; ++i) {
            const int width = uniform(3, 5);
            const int x = uniform(kSafeStart, std::max(kSafeStart, length_ - kSafeEnd - width));
            if (!flat_run(x, width)) {
                continue;
            }
            const int row = ground_[static_cast<std::size_t>(x)] - 5;
            for (int k = 0; k < width; ++k) {
                at(x + k, row) = TileKind::Brick;
                if (row - 1 >= 0 && chance(0.5)) {
                    at(x + k, row - 1) = TileKind::Coin;
                }
            }
        }
    }

    void place_coins()
    {
        const int clusters = 4 + difficulty_ + uniform(0, 3);
        for (int i = 0; i < clusters; ++i) {
            const int width = uniform(2, 5);
            const int x = uniform(kSpawnColumn + 2, std::max(kSpawnColumn + 2, length_ - 3 - width));
            const int lift = chance(0.5) ? 1 : 3;
            for (int k = 0; k < width && x + k < length_ - 1; ++k) {
                const int top = ground_[static_cast<std::size_t>(x + k)];
                const int row = (top == kNoGround ? kBaseGround : top) - lift;
                if (row >= 0 && at(x + k, row) == TileKind::Empty) {
                    at(x + k, row) = TileKind::Coin;
                }
            }
        }
    }

    std::vector<EnemySpawn> place_enemies()
    {
        std::vector<EnemySpawn> enemies;
        const int count = std::min(2 * difficulty_ + 1, 16);
        for (int i = 0; i < count * 4 && static_cast<int>(enemies.size()) < count; ++i) {
            const int x = uniform(kSafeStart + 6, std::max(kSafeStart + 6, length_ - kSafeEnd));
            if (!flat_run(x - 1, 3)) {
                continue;
            }
            const int y = ground_[static_cast<std::size_t>(x)] - 1;
            if (at(x, y) != TileKind::Empty) {
                continue;
            }
            const bool taken = std::any_of(enemies.begin(), enemies.end(),
                                           [&](const EnemySpawn& e) { return std::abs(e.x - x) < 3; });
            if (!taken) {
                enemies.push_back({EnemyKind::Walker, x, y});
            }
        }
        std::sort(enemies.begin(), enemies.end(),
                  [](const EnemySpawn& a, const EnemySpawn& b) { return a.x < b.x; });
        return enemies;
    }

    std::mt19937_64 rng_;
    int difficulty_;
    int length_;
    std::vector<int> ground_;
    std::vector<TileKind> tiles_;
};

} // namespace

Level generate_level(std::uint64_t seed, int difficulty, int courseLength)
{
    if (difficulty < 0) {
        throw ContractViolation("difficulty must be >= 0");
    }
    if (courseLength < kMinCourseLength || courseLength > kLevelWidth) {
        throw ContractViolation(fmt::format("course length must be in [{}, {}], got {}",
                                            kMinCourseLength, kLevelWidth, courseLength));
    }
    for (int attempt = 0; attempt < kGeneratorAttempts; ++attempt) {
        Builder b(mix_seed(seed, difficulty, courseLength, attempt), difficulty, courseLength);
        Level level = b.build(seed);
        if (finish_reachable(level)) {
            return level;
        }
    }
    throw std::logic_error(fmt::format("level generator failed validation {} times (seed {}, "
                                       "difficulty {})",
                                       kGeneratorAttempts, seed, difficulty));
}

} // namespace pgp::sim
