#pragma once

#include "pgp/sim/level.hpp"

#include <memory>
#include <string>
#include <vector>

namespace pgp::testing {

/// Editable level picture: flat ground from `groundRow` down, spawn at
/// (2, groundRow - 1), finish marker at column 255 unless moved.
class LevelSketch {
public:
    explicit LevelSketch(int groundRow = 12)
        : rows_(sim::kLevelHeight, std::string(sim::kLevelWidth, '.'))
    {
        for (int y = groundRow; y < sim::kLevelHeight; ++y) {
            rows_[static_cast<std::size_t>(y)].assign(sim::kLevelWidth, '#');
        }
        put(2, groundRow - 1, 'S');
        put(sim::kLevelWidth - 1, 0, 'F');
    }

    LevelSketch& put(int x, int y, char glyph)
    {
        rows_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = glyph;
        return *this;
    }

    LevelSketch& finish_at(int x)
    {
        for (auto& row : rows_) {
            for (auto& c : row) {
                if (c == 'F') {
                    c = '.';
                }
            }
        }
        return put(x, 0, 'F');
    }

    /// Removes ground in columns [x0, x1].
    LevelSketch& gap(int x0, int x1)
    {
        for (auto& row : rows_) {
            for (int x = x0; x <= x1; ++x) {
                if (row[static_cast<std::size_t>(x)] == '#') {
                    row[static_cast<std::size_t>(x)] = '.';
                }
            }
        }
        return *this;
    }

    std::string text(std::uint64_t seed = 0, int difficulty = 0) const
    {
        std::string out = "LVL1 256 15 " + std::to_string(seed) + " " +
                          std::to_string(difficulty) + "\n";
        for (const auto& r : rows_) {
            out += r;
            out += '\n';
        }
        return out;
    }

    std::shared_ptr<const sim::Level> build() const
    {
        return std::make_shared<const sim::Level>(sim::parse_level(text()));
    }

private:
    std::vector<std::string> rows_;
};

} // namespace pgp::testing
