#pragma once

#include "pgp/evolution/evolution.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pgp::service {

/// Everything `evolve --config` reads: the evolution parameters plus where
/// reference traces live and where the run directory goes.
struct EvolveSettings {
    evo::EvolutionConfig evolution;
    std::vector<std::filesystem::path> traces;
    std::filesystem::path runsDir = "runs";
    std::string runId; // empty: derived from the config content
    int checkpointInterval = 10;
};

/// Parses `key = value` lines (`#` comments; integers, reals, "strings",
/// true/false and [lists]). Relative paths resolve against `baseDir`.
/// Throws ParseError for syntax and ValidationError for bad values.
EvolveSettings parse_config(std::string_view text, const std::filesystem::path& baseDir = {});
EvolveSettings read_config_file(const std::filesystem::path& path);

/// Canonical text with every key; parse_config(format_config(s)) == s.
std::string format_config(const EvolveSettings& settings);

} // namespace pgp::service
