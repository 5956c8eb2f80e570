#include "pgp/sim/level.hpp"

#include "pgp/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <deque>
#include <optional>

namespace pgp::sim {

namespace {

constexpr std::string_view kMagic = "LVL1";

std::size_t index_of(int x, int y) noexcept
{
    return static_cast<std::size_t>(y) * kLevelWidth + static_cast<std::size_t>(x);
}

char glyph_for(TileKind t) noexcept
{
    switch (t) {
    case TileKind::Solid:
        return '#';
    case TileKind::Brick:
        return 'B';
    case TileKind::Coin:
        return 'c';
    default:
        return '.';
    }
}

} // namespace

Level::Level(std::vector<TileKind> tiles, TilePos spawn, int finishX,
             std::vector<EnemySpawn> enemies, std::uint64_t seed, int difficulty)
    : tiles_(std::move(tiles)), spawn_(spawn), finishX_(finishX), enemies_(std::move(enemies)),
      seed_(seed), difficulty_(difficulty)
{
    std::sort(enemies_.begin(), enemies_.end(), [](const EnemySpawn& a, const EnemySpawn& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    });
    if (tiles_.size() != static_cast<std::size_t>(width() * height())) {
        throw ValidationError(fmt::format("level needs {}x{} tiles, got {}", width(), height(),
                                          tiles_.size()));
    }
    if (difficulty_ < 0) {
        throw ValidationError("level difficulty must be >= 0");
    }
    if (!in_bounds(spawn_.x, spawn_.y) || tile(spawn_.x, spawn_.y) != TileKind::Empty) {
        throw ValidationError(
            fmt::format("spawn ({}, {}) must be an Empty tile", spawn_.x, spawn_.y));
    }
    if (finishX_ <= spawn_.x || finishX_ >= width()) {
        throw ValidationError(fmt::format("finish column {} must lie in ({}, {})", finishX_,
                                          spawn_.x, width()));
    }
    bool finishOpen = false;
    for (int y = 0; y < height(); ++y) {
        finishOpen = finishOpen || tile(finishX_, y) == TileKind::Empty;
    }
    if (!finishOpen) {
        throw ValidationError(fmt::format("finish column {} has no Empty tile", finishX_));
    }
    for (const auto& e : enemies_) {
        if (!in_bounds(e.x, e.y) || tile(e.x, e.y) != TileKind::Empty) {
            throw ValidationError(fmt::format("enemy at ({}, {}) must be on Empty", e.x, e.y));
        }
        if (e.x == spawn_.x && e.y == spawn_.y) {
            throw ValidationError("enemy placed on the spawn tile");
        }
    }
}

TileKind Level::tile(int x, int y) const noexcept
{
    if (x < 0 || x >= width()) {
        return TileKind::Solid;
    }
    if (y < 0 || y >= height()) {
        return TileKind::Empty;
    }
    return tiles_[index_of(x, y)];
}

int Level::max_score() const noexcept
{
    int total = static_cast<int>(enemies_.size()) * points::kStomp;
    for (TileKind t : tiles_) {
        if (t == TileKind::Coin) {
            total += points::kCoin;
        } else if (t == TileKind::Brick) {
            total += points::kBrick;
        }
    }
    return total;
}

std::string serialize_level(const Level& level)
{
    std::vector<char> grid(level.tiles().size());
    for (int y = 0; y < level.height(); ++y) {
        for (int x = 0; x < level.width(); ++x) {
            grid[index_of(x, y)] = glyph_for(level.tile(x, y));
        }
    }
    for (const auto& e : level.enemies()) {
        grid[index_of(e.x, e.y)] = 'E';
    }
    grid[index_of(level.spawn().x, level.spawn().y)] = 'S';
    for (int y = 0; y < level.height(); ++y) {
        char& cell = grid[index_of(level.finish_x(), y)];
        if (cell == '.') {
            cell = 'F';
            break;
        }
    }

    std::string out = fmt::format("{} {} {} {} {}\n", kMagic, level.width(), level.height(),
                                  level.seed(), level.difficulty());
    out.reserve(out.size() + grid.size() + level.height());
    for (int y = 0; y < level.height(); ++y) {
        out.append(grid.data() + index_of(0, y), level.width());
        out.push_back('\n');
    }
    return out;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) {
                lines.push_back(text.substr(start));
            }
            break;
        }
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

template <typename T>
T parse_header_field(std::string_view token, std::size_t column, std::string_view what)
{
    T value{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(fmt::format("invalid {} '{}'", what, token), 1, column);
    }
    return value;
}

} // namespace

Level parse_level(std::string_view text)
{
    const auto lines = split_lines(text);
    if (lines.empty()) {
        throw ParseError("empty level text", 1, 1);
    }

    // Header tokens with their 1-based columns.
    std::vector<std::pair<std::string_view, std::size_t>> tokens;
    const std::string_view header = lines[0];
    for (std::size_t i = 0; i < header.size();) {
        if (header[i] == ' ') {
            ++i;
            continue;
        }
        const auto end = std::min(header.find(' ', i), header.size());
        tokens.emplace_back(header.substr(i, end - i), i + 1);
        i = end;
    }
    if (tokens.size() != 5 || tokens[0].first != kMagic) {
        throw ParseError("header must be 'LVL1 <width> <height> <seed> <difficulty>'", 1, 1);
    }
    const int w = parse_header_field<int>(tokens[1].first, tokens[1].second, "width");
    const int h = parse_header_field<int>(tokens[2].first, tokens[2].second, "height");
    const auto seed = parse_header_field<std::uint64_t>(tokens[3].first, tokens[3].second, "seed");
    const int difficulty =
        parse_header_field<int>(tokens[4].first, tokens[4].second, "difficulty");
    if (w != kLevelWidth) {
        throw ParseError(fmt::format("level width must be {}, got {}", kLevelWidth, w), 1,
                         tokens[1].second);
    }
    if (h != kLevelHeight) {
        throw ParseError(fmt::format("level height must be {}, got {}", kLevelHeight, h), 1,
                         tokens[2].second);
    }
    if (difficulty < 0) {
        throw ParseError("difficulty must be >= 0", 1, tokens[4].second);
    }

    std::size_t rows = lines.size() - 1;
    while (rows > 0 && lines[rows].empty()) {
        --rows;
    }
    if (rows != static_cast<std::size_t>(h)) {
        throw ParseError(fmt::format("expected {} tile rows, got {}", h, rows),
                         std::min(lines.size(), rows + 2), 1);
    }

    std::vector<TileKind> tiles(static_cast<std::size_t>(w * h), TileKind::Empty);
    std::vector<EnemySpawn> enemies;
    std::optional<TilePos> spawn;
    std::optional<TilePos> finish;

    for (int y = 0; y < h; ++y) {
        const auto row = lines[static_cast<std::size_t>(y) + 1];
        const std::size_t lineNo = static_cast<std::size_t>(y) + 2;
        if (row.size() != static_cast<std::size_t>(w)) {
            throw ParseError(fmt::format("row has {} glyphs, expected {}", row.size(), w), lineNo,
                             std::min(row.size(), static_cast<std::size_t>(w)) + 1);
        }
        for (int x = 0; x < w; ++x) {
            const char g = row[static_cast<std::size_t>(x)];
            const std::size_t col = static_cast<std::size_t>(x) + 1;
            TileKind t = TileKind::Empty;
            switch (g) {
            case '.':
                break;
            case '#':
                t = TileKind::Solid;
                break;
            case 'B':
                t = TileKind::Brick;
                break;
            case 'c':
                t = TileKind::Coin;
                break;
            case 'E':
                enemies.push_back({EnemyKind::Walker, x, y});
                break;
            case 'S':
                if (spawn) {
                    throw ParseError("second spawn marker 'S'", lineNo, col);
                }
                spawn = TilePos{x, y};
                break;
            case 'F':
                if (finish) {
                    throw ParseError("second finish marker 'F'", lineNo, col);
                }
                finish = TilePos{x, y};
                break;
            default:
                throw ParseError(fmt::format("unknown tile glyph '{}'", g), lineNo, col);
            }
            tiles[index_of(x, y)] = t;
        }
    }
    if (!spawn) {
        throw ParseError("missing spawn marker 'S'", 2, 1);
    }
    if (!finish) {
        throw ParseError("missing finish marker 'F'", 2, 1);
    }
    try {
        return Level(std::move(tiles), *spawn, finish->x, std::move(enemies), seed, difficulty);
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

namespace {

bool clear(const Level& level, int x, int y) noexcept
{
    return !is_blocking(level.tile(x, y));
}

bool standable(const Level& level, int x, int y) noexcept
{
    return level.in_bounds(x, y) && clear(level, x, y) && clear(level, x, y - 1) &&
           y + 1 < level.height() && is_blocking(level.tile(x, y + 1));
}

// Jump from (x0,y0) to (x1,y1): every column crossed must be open from the
// arc ceiling down to the higher endpoint, and each endpoint column down to
// its own row.
bool arc_clear(const Level& level, int x0, int y0, int x1, int y1) noexcept
{
    const int high = std::min(y0, y1);
    const int ceiling = high - kJumpHeadroom;
    for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x) {
        for (int y = ceiling; y <= high; ++y) {
            if (!clear(level, x, y)) {
                return false;
            }
        }
    }
    for (int y = ceiling; y <= y0; ++y) {
        if (!clear(level, x0, y)) {
            return false;
        }
    }
    for (int y = ceiling; y <= y1; ++y) {
        if (!clear(level, x1, y)) {
            return false;
        }
    }
    return true;
}

} // namespace

bool finish_reachable(const Level& level)
{
    const int w = level.width();
    const int h = level.height();
    std::vector<char> seen(static_cast<std::size_t>(w * h), 0);
    std::deque<TilePos> frontier;

    // The spawn may hover; drop it onto the ground below.
    TilePos start = level.spawn();
    while (start.y + 1 < h && !is_blocking(level.tile(start.x, start.y + 1))) {
        ++start.y;
    }
    if (!standable(level, start.x, start.y)) {
        return false;
    }
    seen[index_of(start.x, start.y)] = 1;
    frontier.push_back(start);

    while (!frontier.empty()) {
        const TilePos at = frontier.front();
        frontier.pop_front();
        if (at.x >= level.finish_x()) {
            return true;
        }
        for (int x = std::max(0, at.x - kMaxJumpColumns);
             x <= std::min(w - 1, at.x + kMaxJumpColumns); ++x) {
            for (int y = std::max(0, at.y - kMaxJumpRise); y < h; ++y) {
                if (seen[index_of(x, y)] || !standable(level, x, y) ||
                    !arc_clear(level, at.x, at.y, x, y)) {
                    continue;
                }
                seen[index_of(x, y)] = 1;
                frontier.push_back({x, y});
            }
        }
    }
    return false;
}

void validate_level(const Level& level)
{
    if (!finish_reachable(level)) {
        throw ValidationError(fmt::format("finish column {} is not reachable from spawn ({}, {})",
                                          level.finish_x(), level.spawn().x, level.spawn().y));
    }
}

} // namespace pgp::sim
