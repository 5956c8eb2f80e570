#include "pgp/fitness/trace_io.hpp"

#include "pgp/errors.hpp"
#include "pgp/sim/level_gen.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pgp::fitness {

using nlohmann::json;

namespace {

int first_divergent_frame(const sim::PlayTrace& stored, const sim::PlayTrace& replayed)
{
    const auto& a = stored.events;
    const auto& b = replayed.events;
    const auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
    if (ia == a.end() && ib == b.end()) {
        return static_cast<int>(replayed.inputs.size()) - 1;
    }
    if (ia == a.end()) {
        return ib->frame;
    }
    if (ib == b.end()) {
        return ia->frame;
    }
    return std::min(ia->frame, ib->frame);
}

std::string_view source_name(sim::TraceSource s)
{
    return s == sim::TraceSource::Human ? "human" : "agent";
}

template <typename T>
T field(const json& j, const char* key)
{
    if (!j.contains(key)) {
        throw ValidationError(fmt::format("trace is missing '{}'", key));
    }
    return j.at(key).get<T>();
}

} // namespace

std::shared_ptr<const sim::Level> level_for(const sim::TraceHeader& header)
{
    return std::make_shared<const sim::Level>(
        sim::generate_level(header.levelSeed, header.difficulty, header.courseLength));
}

void validate_trace(const sim::PlayTrace& trace, std::shared_ptr<const sim::Level> level)
{
    sim::EpisodeRecorder rec(std::move(level), trace.header.frameBudget);
    for (std::size_t i = 0; i < trace.inputs.size(); ++i) {
        const int frame = static_cast<int>(i);
        if (rec.done()) {
            throw TraceCorrupt("input recorded after the episode ended", frame);
        }
        if (trace.inputs[i] > 63) {
            throw TraceCorrupt(fmt::format("input {} outside 0..63", trace.inputs[i]), frame);
        }
        rec.advance(trace.inputs[i]);
    }
    const sim::PlayTrace replayed = rec.finish().trace;
    if (replayed.events != trace.events) {
        throw TraceCorrupt("stored events disagree with replay",
                           first_divergent_frame(trace, replayed));
    }
    const int last = static_cast<int>(trace.inputs.size()) - 1;
    if (replayed.finalScore != trace.finalScore) {
        throw TraceCorrupt(fmt::format("stored score {} but replay scores {}", trace.finalScore,
                                       replayed.finalScore),
                           last);
    }
    if (replayed.outcome != trace.outcome) {
        throw TraceCorrupt(fmt::format("stored outcome {} but replay ends in {}",
                                       sim::to_string(trace.outcome),
                                       sim::to_string(replayed.outcome)),
                           last);
    }
    if (replayed.maxX != trace.maxX) {
        throw TraceCorrupt("stored maxX disagrees with replay", last);
    }
}

void validate_trace(const sim::PlayTrace& trace)
{
    validate_trace(trace, level_for(trace.header));
}

std::string trace_to_json(const sim::PlayTrace& trace)
{
    const auto& h = trace.header;
    json events = json::array();
    for (const auto& e : trace.events) {
        events.push_back({{"k", sim::to_string(e.kind)}, {"f", e.frame}, {"p", e.payload}});
    }
    const json doc = {
        {"header",
         {{"formatVersion", h.formatVersion},
          {"levelSeed", h.levelSeed},
          {"difficulty", h.difficulty},
          {"courseLength", h.courseLength},
          {"frameBudget", h.frameBudget},
          {"source", source_name(h.source)},
          {"createdAt", h.createdAt}}},
        {"inputs", trace.inputs},
        {"events", events},
        {"finalScore", trace.finalScore},
        {"outcome", sim::to_string(trace.outcome)},
        {"maxX", trace.maxX},
    };
    return doc.dump() + "\n";
}

sim::PlayTrace trace_from_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(fmt::format("trace is not valid JSON: {}", e.what()));
    }
    try {
        sim::PlayTrace t;
        const json& h = doc.at("header");
        t.header.formatVersion = field<int>(h, "formatVersion");
        if (t.header.formatVersion != 1) {
            throw ValidationError(
                fmt::format("unsupported trace format version {}", t.header.formatVersion));
        }
        t.header.levelSeed = field<std::uint64_t>(h, "levelSeed");
        t.header.difficulty = field<int>(h, "difficulty");
        t.header.courseLength = h.value("courseLength", sim::kLevelWidth);
        t.header.frameBudget = field<int>(h, "frameBudget");
        const auto source = field<std::string>(h, "source");
        if (source != "human" && source != "agent") {
            throw ValidationError(fmt::format("unknown trace source '{}'", source));
        }
        t.header.source = source == "human" ? sim::TraceSource::Human : sim::TraceSource::Agent;
        t.header.createdAt = h.value("createdAt", std::int64_t{0});

        for (const auto& v : field<json>(doc, "inputs")) {
            const int bits = v.get<int>();
            if (bits < 0 || bits > 63) {
                throw ValidationError(fmt::format("input {} outside 0..63", bits));
            }
            t.inputs.push_back(static_cast<std::uint8_t>(bits));
        }
        for (const auto& e : doc.value("events", json::array())) {
            const auto name = field<std::string>(e, "k");
            const auto kind = sim::event_kind_from_string(name);
            if (!kind) {
                throw ValidationError(fmt::format("unknown event kind '{}'", name));
            }
            t.events.push_back({*kind, field<int>(e, "f"), e.value("p", 0)});
        }
        t.finalScore = field<int>(doc, "finalScore");
        const auto outcome = sim::outcome_from_string(field<std::string>(doc, "outcome"));
        if (!outcome) {
            throw ValidationError("unknown outcome");
        }
        t.outcome = *outcome;
        t.maxX = field<sim::Fixed>(doc, "maxX");
        return t;
    } catch (const json::exception& e) {
        throw ValidationError(fmt::format("malformed trace: {}", e.what()));
    }
}

sim::PlayTrace read_trace_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot read {}", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    sim::PlayTrace t = trace_from_json(buf.str());
    validate_trace(t);
    return t;
}

void write_trace_file(const std::filesystem::path& path, const sim::PlayTrace& trace)
{
    std::ofstream out(path, std::ios::binary);
    out << trace_to_json(trace);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    }
}

std::string trace_id(const sim::PlayTrace& trace)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    const auto& hd = trace.header;
    mix(static_cast<std::uint64_t>(hd.formatVersion));
    mix(hd.levelSeed);
    mix(static_cast<std::uint64_t>(hd.difficulty));
    mix(static_cast<std::uint64_t>(hd.courseLength));
    mix(static_cast<std::uint64_t>(hd.frameBudget));
    mix(static_cast<std::uint64_t>(hd.source));
    mix(trace.inputs.size());
    for (const auto bits : trace.inputs) {
        h ^= bits;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

} // namespace pgp::fitness
