#include "pgp/service/config_file.hpp"

#include "pgp/errors.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace pgp::service {

namespace {

struct Value {
    // Scalars keep their source text; lists hold scalar texts.
    std::variant<std::string, std::vector<std::string>> v;
    bool quoted = false;
    int line = 0;
    int column = 0;
};

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view s)
{
    bool inString = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') {
            inString = !inString;
        } else if (s[i] == '#' && !inString) {
            return s.substr(0, i);
        }
    }
    return s;
}

std::string unquote(std::string_view s, int line, int col)
{
    if (s.size() < 2 || s.front() != '"' || s.back() != '"') {
        throw ParseError("unterminated string", line, col);
    }
    return std::string(s.substr(1, s.size() - 2));
}

class Reader {
public:
    explicit Reader(std::map<std::string, Value> values) : values_(std::move(values)) {}

    template <typename T>
    void number(const char* key, T& out)
    {
        const Value* v = find(key);
        if (!v) {
            return;
        }
        const auto* text = std::get_if<std::string>(&v->v);
        if (!text || v->quoted) {
            bad(*v, key, "expects a number");
        }
        const char* first = text->data();
        const char* last = first + text->size();
        if (*first == '+') {
            ++first;
        }
        const auto [ptr, ec] = std::from_chars(first, last, out);
        if (ec != std::errc{} || ptr != last) {
            bad(*v, key, fmt::format("expects a number, got '{}'", *text));
        }
    }

    void string(const char* key, std::string& out)
    {
        const Value* v = find(key);
        if (!v) {
            return;
        }
        const auto* text = std::get_if<std::string>(&v->v);
        if (!text || !v->quoted) {
            bad(*v, key, "expects a quoted string");
        }
        out = *text;
    }

    std::vector<std::string> list(const char* key, bool quoted)
    {
        const Value* v = find(key);
        if (!v) {
            return {};
        }
        const auto* items = std::get_if<std::vector<std::string>>(&v->v);
        if (!items || (quoted != v->quoted && !items->empty())) {
            bad(*v, key, quoted ? "expects a list of strings" : "expects a list of numbers");
        }
        return *items;
    }

    const Value* find(const char* key)
    {
        const auto it = values_.find(key);
        if (it == values_.end()) {
            return nullptr;
        }
        used_.insert(key);
        return &it->second;
    }

    void reject_unknown() const
    {
        for (const auto& [key, v] : values_) {
            if (!used_.contains(key)) {
                throw ParseError(fmt::format("unknown key '{}'", key), v.line, 1);
            }
        }
    }

    [[noreturn]] static void bad(const Value& v, std::string_view key, std::string_view what)
    {
        throw ParseError(fmt::format("'{}' {}", key, what), v.line, v.column);
    }

private:
    std::map<std::string, Value> values_;
    std::set<std::string> used_;
};

std::map<std::string, Value> tokenize(std::string_view text)
{
    std::map<std::string, Value> out;
    int lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineNo;
        const auto line = trim(strip_comment(raw));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", lineNo, 1);
        }
        const std::string key(trim(line.substr(0, eq)));
        const auto valueText = trim(line.substr(eq + 1));
        const int col = static_cast<int>(raw.find(valueText.empty() ? "=" : valueText)) + 1;
        if (key.empty() || valueText.empty()) {
            throw ParseError("expected 'key = value'", lineNo, col);
        }
        if (out.contains(key)) {
            throw ParseError(fmt::format("duplicate key '{}'", key), lineNo, 1);
        }
        Value v;
        v.line = lineNo;
        v.column = col;
        if (valueText.front() == '[') {
            if (valueText.back() != ']') {
                throw ParseError("unterminated list", lineNo, col);
            }
            std::vector<std::string> items;
            auto inner = trim(valueText.substr(1, valueText.size() - 2));
            bool anyQuoted = false;
            while (!inner.empty()) {
                const auto comma = inner.find(',');
                const auto item = trim(inner.substr(0, comma));
                if (item.empty()) {
                    throw ParseError("empty list item", lineNo, col);
                }
                if (item.front() == '"') {
                    anyQuoted = true;
                    items.push_back(unquote(item, lineNo, col));
                } else {
                    items.emplace_back(item);
                }
                inner = comma == std::string_view::npos ? std::string_view{}
                                                        : trim(inner.substr(comma + 1));
            }
            v.v = std::move(items);
            v.quoted = anyQuoted;
        } else if (valueText.front() == '"') {
            v.v = unquote(valueText, lineNo, col);
            v.quoted = true;
        } else {
            v.v = std::string(valueText);
        }
        out.emplace(key, std::move(v));
    }
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

} // namespace

EvolveSettings parse_config(std::string_view text, const std::filesystem::path& baseDir)
{
    Reader r(tokenize(text));
    EvolveSettings s;
    auto& c = s.evolution;
    r.number("population_size", c.populationSize);
    r.number("crossover_rate", c.crossoverRate);
    r.number("fresh_rate", c.freshRate);
    r.number("mutation_rate", c.mutationRate);
    r.number("elite_count", c.eliteCount);
    r.number("max_generations", c.maxGenerations);
    r.number("master_seed", c.masterSeed);
    if (const Value* v = r.find("init_depths")) {
        const auto* items = std::get_if<std::vector<std::string>>(&v->v);
        if (!items || items->size() != 2 || v->quoted) {
            Reader::bad(*v, "init_depths", "expects [min, max]");
        }
        std::map<std::string, Value> pair;
        pair["min"] = Value{(*items)[0], false, v->line, v->column};
        pair["max"] = Value{(*items)[1], false, v->line, v->column};
        Reader sub(std::move(pair));
        sub.number("min", c.minInitDepth);
        sub.number("max", c.maxInitDepth);
    }
    std::string mode = "objective";
    r.string("fitness_mode", mode);
    if (mode == "objective") {
        c.fitnessMode = evo::FitnessMode::Objective;
    } else if (mode == "trace") {
        c.fitnessMode = evo::FitnessMode::Trace;
    } else {
        throw ValidationError(fmt::format("fitness_mode must be objective or trace, got '{}'", mode));
    }
    if (r.find("level_seeds")) {
        c.levelSeeds.clear();
        for (const auto& item : r.list("level_seeds", false)) {
            std::uint64_t seed = 0;
            const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), seed);
            if (ec != std::errc{} || ptr != item.data() + item.size()) {
                throw ValidationError(fmt::format("level_seeds: '{}' is not a seed", item));
            }
            c.levelSeeds.push_back(seed);
        }
    }
    r.number("difficulty", c.difficulty);
    r.number("course_length", c.courseLength);
    r.number("frame_budget", c.frameBudget);
    if (r.find("stop_fitness")) {
        double v = 0;
        r.number("stop_fitness", v);
        c.stopFitness = v;
    }
    r.number("threads", c.threads);
    r.number("checkpoint_interval", s.checkpointInterval);
    for (const auto& t : r.list("traces", true)) {
        s.traces.push_back(resolve(baseDir, t));
    }
    std::string runsDir;
    r.string("runs_dir", runsDir);
    if (!runsDir.empty()) {
        s.runsDir = resolve(baseDir, runsDir);
    } else {
        s.runsDir = resolve(baseDir, "runs");
    }
    r.string("run_id", s.runId);
    r.reject_unknown();

    c.validate();
    if (s.checkpointInterval < 0) {
        throw ValidationError("checkpoint_interval must be nonnegative");
    }
    if (s.runId.find_first_of("/\\") != std::string::npos || s.runId == "." || s.runId == "..") {
        throw ValidationError("run_id must be a plain directory name");
    }
    if (c.fitnessMode == evo::FitnessMode::Trace && s.traces.empty()) {
        throw ValidationError("trace mode needs at least one entry in 'traces'");
    }
    return s;
}

EvolveSettings read_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot read {}", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

std::string format_config(const EvolveSettings& s)
{
    const auto& c = s.evolution;
    std::string out;
    auto line = [&out](std::string_view key, const auto& value) {
        out += fmt::format("{} = {}\n", key, value);
    };
    auto quoted = [](const std::string& v) { return fmt::format("\"{}\"", v); };
    line("population_size", c.populationSize);
    line("crossover_rate", c.crossoverRate);
    line("fresh_rate", c.freshRate);
    line("mutation_rate", c.mutationRate);
    line("elite_count", c.eliteCount);
    line("max_generations", c.maxGenerations);
    line("master_seed", c.masterSeed);
    line("init_depths", fmt::format("[{}, {}]", c.minInitDepth, c.maxInitDepth));
    line("fitness_mode", quoted(c.fitnessMode == evo::FitnessMode::Trace ? "trace" : "objective"));
    line("level_seeds", fmt::format("[{}]", fmt::join(c.levelSeeds, ", ")));
    line("difficulty", c.difficulty);
    line("course_length", c.courseLength);
    line("frame_budget", c.frameBudget);
    if (c.stopFitness) {
        line("stop_fitness", *c.stopFitness);
    }
    line("threads", c.threads);
    line("checkpoint_interval", s.checkpointInterval);
    std::vector<std::string> traces;
    for (const auto& t : s.traces) {
        traces.push_back(quoted(t.generic_string()));
    }
    line("traces", fmt::format("[{}]", fmt::join(traces, ", ")));
    line("runs_dir", quoted(s.runsDir.generic_string()));
    if (!s.runId.empty()) {
        line("run_id", quoted(s.runId));
    }
    return out;
}

} // namespace pgp::service
