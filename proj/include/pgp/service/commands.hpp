#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace pgp::service {

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitRuntime = 3 };

struct GenLevelArgs {
    std::uint64_t seed = 0;
    int difficulty = 0;
    int courseLength = 256;
    std::filesystem::path out;
    bool validate = false;
};

struct ReplayArgs {
    std::filesystem::path agent;
    std::uint64_t seed = 0;
    int difficulty = 0;
    int courseLength = 256;
    int frameBudget = 2000;
    std::filesystem::path out;
};

struct RateArgs {
    std::filesystem::path a;
    std::filesystem::path b;
    bool force = false;
};

struct ExportArgs {
    std::filesystem::path agent;
    std::string format; // dot | pseudo
    std::filesystem::path out; // empty: stdout
};

struct ServeArgs {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path tracesDir = "traces";
    std::filesystem::path agentsDir = "agents";
};

// Each command reports to `out`/`err` and returns an ExitCode; parse and
// validation failures map to 2, I/O and other runtime failures to 3.
int cmd_gen_level(const GenLevelArgs& args, std::ostream& out, std::ostream& err);
int cmd_evolve(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int cmd_replay(const ReplayArgs& args, std::ostream& out, std::ostream& err);
int cmd_rate(const RateArgs& args, std::ostream& out, std::ostream& err);
int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err);
int cmd_serve(const ServeArgs& args, std::ostream& out, std::ostream& err);

} // namespace pgp::service
