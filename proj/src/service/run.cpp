#include "pgp/service/run.hpp"

#include "pgp/dsl/export.hpp"
#include "pgp/dsl/sexpr.hpp"
#include "pgp/evolution/episodes.hpp"
#include "pgp/fitness/trace_io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>

namespace pgp::service {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    }
}

} // namespace

std::string derive_run_id(const EvolveSettings& settings)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : format_config(settings)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return fmt::format("run-{:012x}", h & 0xffffffffffffULL);
}

std::string stats_row(const evo::GenerationStats& s)
{
    return fmt::format("{},{:.6f},{:.6f},{},{:.2f},{},{:.0f}", s.generation, s.bestFitness,
                       s.meanFitness, s.bestNodeCount, s.meanNodeCount, s.evaluations,
                       s.wallClockMs);
}

RunManifest run_evolution(const EvolveSettings& settings, const evo::ProgressSink& progress)
{
    std::vector<sim::PlayTrace> humans;
    for (const auto& path : settings.traces) {
        humans.push_back(fitness::read_trace_file(path));
    }
    const auto fitnessFn = evo::make_fitness(settings.evolution, humans);

    RunManifest m;
    m.runId = settings.runId.empty() ? derive_run_id(settings) : settings.runId;
    m.configText = format_config(settings);
    m.directory = settings.runsDir / m.runId;
    fs::create_directories(m.directory);

    write_file(m.directory / "config.toml", m.configText);
    m.files.emplace_back("config.toml");

    std::ofstream stats(m.directory / "stats.csv", std::ios::binary);
    if (!stats) {
        throw std::runtime_error(fmt::format("cannot write {}", (m.directory / "stats.csv").string()));
    }
    stats << kStatsHeader << '\n' << std::flush;
    m.files.emplace_back("stats.csv");

    const int every = settings.checkpointInterval;
    auto sink = [&](const evo::GenerationStats& s, const evo::Individual& best) {
        stats << stats_row(s) << '\n' << std::flush;
        if (every > 0 && s.generation % every == 0) {
            const auto name = fmt::format("best_gen{}.agent", s.generation);
            write_file(m.directory / name, dsl::serialize(best.chromosome) + "\n");
            m.files.emplace_back(name);
        }
        if (progress) {
            progress(s, best);
        }
    };
    const auto result = evo::evolve(settings.evolution, fitnessFn, sink);
    stats.close();

    write_file(m.directory / "best.agent", dsl::serialize(result.best) + "\n");
    write_file(m.directory / "best.dot", dsl::to_dot(result.best));
    write_file(m.directory / "best.pseudo", dsl::to_pseudocode(result.best));
    for (const char* f : {"best.agent", "best.dot", "best.pseudo", "manifest.json"}) {
        m.files.emplace_back(f);
    }

    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : m.files) {
        files.push_back(f.generic_string());
    }
    const nlohmann::json manifest = {
        {"runId", m.runId},
        {"config", m.configText},
        {"generations", result.history.size()},
        {"bestFitness", result.bestFitness},
        {"bestWins", result.bestSummary.wins},
        {"stoppedEarly", result.stoppedEarly},
        {"files", files},
    };
    write_file(m.directory / "manifest.json", manifest.dump(2) + "\n");
    return m;
}

} // namespace pgp::service
