#include "pgp/service/session.hpp"

#include "pgp/dsl/interpreter.hpp"
#include "pgp/dsl/sexpr.hpp"
#include "pgp/errors.hpp"
#include "pgp/fitness/trace_io.hpp"
#include "pgp/sim/level_gen.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

namespace pgp::service {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

char glyph(sim::TileKind t)
{
    switch (t) {
    case sim::TileKind::Solid:
        return '#';
    case sim::TileKind::Brick:
        return 'B';
    case sim::TileKind::Coin:
        return 'c';
    default:
        return '.';
    }
}

json events_json(const std::vector<sim::Event>& events)
{
    json out = json::array();
    for (const auto& e : events) {
        out.push_back({{"k", sim::to_string(e.kind)}, {"f", e.frame}, {"p", e.payload}});
    }
    return out;
}

bool safe_id(const std::string& id)
{
    return !id.empty() && id.size() <= 128 &&
           std::all_of(id.begin(), id.end(), [](char c) {
               return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
                      c == '.';
           }) &&
           id.find("..") == std::string::npos;
}

} // namespace

std::optional<dsl::Chromosome> load_agent(const fs::path& agentsDir, const std::string& id)
{
    if (!safe_id(id) || agentsDir.empty()) {
        return std::nullopt;
    }
    std::ifstream in(agentsDir / (id + ".agent"));
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return dsl::parse(buf.str());
}

Session::Session(SessionDirs dirs) : dirs_(std::move(dirs)) {}

json Session::error(std::string_view code, std::string message)
{
    phase_ = Phase::Closed;
    return {{"type", "error"}, {"code", code}, {"message", std::move(message)}};
}

json Session::handle(const json& m)
{
    if (phase_ == Phase::Closed) {
        return error("closed", "session is closed");
    }
    if (!m.is_object() || !m.contains("type") || !m["type"].is_string()) {
        return error("bad_message", "message needs a string 'type'");
    }
    const auto type = m["type"].get<std::string>();
    try {
        if (type == "hello") {
            return on_hello(m);
        }
        if (type == "start") {
            return on_start(m);
        }
        if (type == "input") {
            return on_input(m);
        }
        if (type == "end") {
            return on_end();
        }
        return error("bad_message", fmt::format("unknown message type '{}'", type));
    } catch (const json::exception& e) {
        return error("bad_message", e.what());
    } catch (const ParseError& e) {
        return error("bad_agent", e.what());
    } catch (const ValidationError& e) {
        return error("bad_request", e.what());
    } catch (const ContractViolation& e) {
        return error("bad_request", e.what());
    }
}

json Session::on_hello(const json& m)
{
    if (phase_ != Phase::Greeting) {
        return error("unexpected", "hello was already received");
    }
    const auto version = m.value("protocolVersion", std::string{});
    if (version != kProtocolVersion) {
        return error("protocol_version", fmt::format("server speaks {}, client sent '{}'",
                                                     kProtocolVersion, version));
    }
    phase_ = Phase::Ready;
    return {{"type", "welcome"},
            {"protocolVersion", kProtocolVersion},
            {"tileLegend", {{".", "empty"}, {"#", "solid"}, {"B", "brick"}, {"c", "coin"}}}};
}

json Session::on_start(const json& m)
{
    if (phase_ != Phase::Ready) {
        return error("unexpected", "start needs a completed hello and no running episode");
    }
    const auto seed = m.at("levelSeed").get<std::uint64_t>();
    const int difficulty = m.at("difficulty").get<int>();
    const int courseLength = m.value("courseLength", sim::kLevelWidth);
    const int budget = m.value("frameBudget", sim::kDefaultFrameBudget);
    if (difficulty < 0 || budget <= 0) {
        return error("bad_request", "difficulty must be >= 0 and frameBudget > 0");
    }
    const auto mode = m.value("mode", std::string{"play"});
    if (mode == "watch") {
        const auto id = m.value("agentId", std::string{});
        agent_ = load_agent(dirs_.agents, id);
        if (!agent_) {
            return error("unknown_agent", fmt::format("no agent '{}'", id));
        }
        watch_ = true;
    } else if (mode != "play") {
        return error("bad_request", fmt::format("unknown mode '{}'", mode));
    }

    auto level =
        std::make_shared<const sim::Level>(sim::generate_level(seed, difficulty, courseLength));
    const auto createdAt = watch_ ? 0
                                  : std::chrono::duration_cast<std::chrono::seconds>(
                                        std::chrono::system_clock::now().time_since_epoch())
                                        .count();
    recorder_ = std::make_unique<sim::EpisodeRecorder>(
        std::move(level), budget, watch_ ? sim::TraceSource::Agent : sim::TraceSource::Human,
        createdAt);
    phase_ = Phase::Running;
    nextFrame_ = 0;
    json reply = state_message(-1, 0);
    reply["mode"] = mode;
    return reply;
}

json Session::on_input(const json& m)
{
    if (phase_ != Phase::Running) {
        return error("unexpected", "input before start");
    }
    const int frame = m.at("frame").get<int>();
    if (frame != nextFrame_) {
        return error("frame_order",
                     fmt::format("expected frame {}, got {}", nextFrame_, frame));
    }
    if (recorder_->done()) {
        return error("episode_over", "the episode has ended; send end");
    }
    std::uint8_t bits = 0;
    if (watch_) {
        // Ticks only; the agent chooses.
        bits = dsl::evaluate(*agent_, sim::observe(recorder_->world())).encode();
    } else {
        const int b = m.at("bits").get<int>();
        if (b < 0 || b > 63) {
            return error("bad_input", fmt::format("bits {} outside 0..63", b));
        }
        bits = static_cast<std::uint8_t>(b);
    }
    recorder_->advance(bits);
    ++nextFrame_;
    return state_message(frame, bits);
}

json Session::on_end()
{
    if (phase_ != Phase::Running) {
        return error("unexpected", "end before start");
    }
    const auto result = recorder_->finish();
    json traceId = nullptr;
    if (!watch_) {
        const auto id = fitness::trace_id(result.trace);
        if (!dirs_.traces.empty()) {
            fs::create_directories(dirs_.traces);
            fitness::write_trace_file(dirs_.traces / (id + ".trace.json"), result.trace);
        }
        traceId = id;
    }
    phase_ = Phase::Closed;
    return {{"type", "finished"},
            {"outcome", sim::to_string(result.outcome)},
            {"score", result.score},
            {"frames", result.framesUsed},
            {"traceId", traceId}};
}

json Session::state_message(int frame, std::uint8_t bits) const
{
    const auto& w = recorder_->world();
    const auto& a = w.agent;
    json enemies = json::array();
    for (const auto& e : w.enemies) {
        if (e.alive) {
            enemies.push_back({{"x", e.x}, {"y", e.y}});
        }
    }
    json shots = json::array();
    for (const auto& p : w.projectiles) {
        shots.push_back({{"x", p.x}, {"y", p.y}});
    }
    const int x0 = std::clamp(a.tile_x() - kViewportColumns / 3, 0,
                              sim::kLevelWidth - kViewportColumns);
    json rows = json::array();
    for (int y = 0; y < sim::kLevelHeight; ++y) {
        std::string row;
        for (int x = x0; x < x0 + kViewportColumns; ++x) {
            row.push_back(x == w.level->finish_x() && w.tile(x, y) == sim::TileKind::Empty
                              ? 'F'
                              : glyph(w.tile(x, y)));
        }
        rows.push_back(std::move(row));
    }
    json msg = {
        {"type", "state"},
        {"frame", frame},
        {"bits", bits},
        {"agent",
         {{"x", a.x},
          {"y", a.y},
          {"size", a.size == sim::AgentSize::Tall ? "tall" : "small"},
          {"onGround", a.onGround}}},
        {"enemies", enemies},
        {"projectiles", shots},
        {"score", w.score},
        {"framesLeft", w.frameBudget - w.frame},
        {"events", frame < 0 ? json::array() : events_json(w.events)},
        {"viewport", {{"x0", x0}, {"rows", rows}}},
    };
    if (w.terminal) {
        msg["terminal"] = sim::to_string(*w.terminal);
    }
    return msg;
}

SessionManager::SessionManager(SessionDirs dirs)
    : dirs_(std::move(dirs)), salt_(std::random_device{}())
{
}

std::string SessionManager::open()
{
    std::lock_guard g(lock_);
    const auto id = fmt::format("s{:x}-{}", salt_ & 0xffffff, ++counter_);
    sessions_.emplace(id, std::make_shared<Slot>(dirs_));
    return id;
}

json SessionManager::dispatch(const std::string& id, const json& message)
{
    std::shared_ptr<Slot> slot;
    {
        std::lock_guard g(lock_);
        const auto it = sessions_.find(id);
        if (it == sessions_.end()) {
            return {{"type", "error"}, {"code", "unknown_session"}, {"message", "no such session"}};
        }
        slot = it->second;
    }
    json reply;
    bool closed = false;
    {
        std::lock_guard g(slot->lock);
        reply = slot->session.handle(message);
        closed = slot->session.closed();
    }
    if (closed) {
        std::lock_guard g(lock_);
        sessions_.erase(id);
    }
    return reply;
}

std::size_t SessionManager::active() const
{
    std::lock_guard g(lock_);
    return sessions_.size();
}

} // namespace pgp::service
