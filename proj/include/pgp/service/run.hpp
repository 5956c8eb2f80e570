#pragma once

#include "pgp/evolution/evolution.hpp"
#include "pgp/service/config_file.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace pgp::service {

inline constexpr std::string_view kStatsHeader = "gen,best,mean,best_nodes,mean_nodes,evals,ms";

struct RunManifest {
    std::string runId;
    std::string configText;
    std::filesystem::path directory;
    std::vector<std::filesystem::path> files; // relative to directory
};

/// Run id used when the config does not name one: hash of the canonical
/// config text.
std::string derive_run_id(const EvolveSettings& settings);

std::string stats_row(const evo::GenerationStats& s);

/// Loads the reference traces, runs evolve() and writes the run directory:
/// config.toml, stats.csv (flushed each generation), best_gen<k>.agent
/// checkpoints, best.agent, best.dot, best.pseudo and manifest.json.
RunManifest run_evolution(const EvolveSettings& settings,
                          const evo::ProgressSink& progress = {});

} // namespace pgp::service
