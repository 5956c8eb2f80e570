#pragma once

#include "pgp/dsl/chromosome.hpp"
#include "pgp/sim/episode.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace pgp::service {

inline constexpr std::string_view kProtocolVersion = "pgp/1";

/// Columns of level shown in each state message.
inline constexpr int kViewportColumns = 24;

struct SessionDirs {
    std::filesystem::path traces;
    std::filesystem::path agents;
};

/// One lockstep conversation: hello -> start -> (input -> state)* -> end ->
/// finished. Every client message gets exactly one reply. An error reply
/// closes the session.
class Session {
public:
    explicit Session(SessionDirs dirs);

    nlohmann::json handle(const nlohmann::json& message);

    bool closed() const noexcept { return phase_ == Phase::Closed; }

private:
    enum class Phase { Greeting, Ready, Running, Closed };

    nlohmann::json on_hello(const nlohmann::json& m);
    nlohmann::json on_start(const nlohmann::json& m);
    nlohmann::json on_input(const nlohmann::json& m);
    nlohmann::json on_end();
    nlohmann::json error(std::string_view code, std::string message);
    nlohmann::json state_message(int frame, std::uint8_t bits) const;

    SessionDirs dirs_;
    Phase phase_ = Phase::Greeting;
    bool watch_ = false;
    std::optional<dsl::Chromosome> agent_;
    std::unique_ptr<sim::EpisodeRecorder> recorder_;
    int nextFrame_ = 0;
};

/// Thread-safe registry of concurrent sessions. Sessions share nothing
/// mutable; each is serialized by its own lock.
class SessionManager {
public:
    explicit SessionManager(SessionDirs dirs);

    std::string open();
    /// Routes one message; unknown ids get an error reply. Closed sessions
    /// are dropped after replying.
    nlohmann::json dispatch(const std::string& id, const nlohmann::json& message);
    std::size_t active() const;

    const SessionDirs& dirs() const noexcept { return dirs_; }

private:
    struct Slot {
        std::mutex lock;
        Session session;
        explicit Slot(SessionDirs d) : session(std::move(d)) {}
    };

    SessionDirs dirs_;
    mutable std::mutex lock_;
    std::map<std::string, std::shared_ptr<Slot>> sessions_;
    std::uint64_t counter_ = 0;
    std::uint64_t salt_;
};

/// Loads `<agents>/<id>.agent`; nullopt for unknown or unsafe ids.
std::optional<dsl::Chromosome> load_agent(const std::filesystem::path& agentsDir,
                                          const std::string& id);

} // namespace pgp::service
