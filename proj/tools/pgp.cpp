// pgp: command-line front end for level generation, evolution, replay,
// trace rating, agent export and the play/watch session server.

#include "pgp/service/commands.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <iostream>

using namespace pgp::service;

int main(int argc, char** argv)
{
    CLI::App app{"Platformer agents evolved by typed genetic programming"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Debug logging");

    GenLevelArgs gen;
    auto* genCmd = app.add_subcommand("gen-level", "Generate a level file");
    genCmd->add_option("--seed", gen.seed, "Level seed")->required();
    genCmd->add_option("--difficulty", gen.difficulty, "Difficulty (0 = flat)")->required()
        ->check(CLI::NonNegativeNumber);
    genCmd->add_option("--course-length", gen.courseLength, "Columns up to the finish")
        ->check(CLI::Range(16, 256));
    genCmd->add_option("--out", gen.out, "Output path")->required();
    genCmd->add_flag("--validate", gen.validate, "Check the finish is reachable");

    std::string configPath;
    auto* evolveCmd = app.add_subcommand("evolve", "Run an evolution from a config file");
    evolveCmd->add_option("--config", configPath, "Config file")->required()
        ->check(CLI::ExistingFile);

    ReplayArgs replay;
    auto* replayCmd = app.add_subcommand("replay", "Run an agent headless and save its trace");
    replayCmd->add_option("--agent", replay.agent, "Agent file")->required();
    replayCmd->add_option("--seed", replay.seed, "Level seed")->required();
    replayCmd->add_option("--difficulty", replay.difficulty, "Difficulty")->required()
        ->check(CLI::NonNegativeNumber);
    replayCmd->add_option("--course-length", replay.courseLength, "Columns up to the finish")
        ->check(CLI::Range(16, 256));
    replayCmd->add_option("--frame-budget", replay.frameBudget, "Frame budget")
        ->check(CLI::PositiveNumber);
    replayCmd->add_option("--out", replay.out, "Trace output path")->required();

    RateArgs rate;
    auto* rateCmd = app.add_subcommand("rate", "Dissimilarity of two traces");
    rateCmd->add_option("A", rate.a, "First trace")->required();
    rateCmd->add_option("B", rate.b, "Second trace")->required();
    rateCmd->add_flag("--force", rate.force, "Compare traces from different levels");

    ExportArgs exportArgs;
    auto* exportCmd = app.add_subcommand("export", "Render an agent as DOT or pseudocode");
    exportCmd->add_option("--agent", exportArgs.agent, "Agent file")->required();
    exportCmd->add_option("--format", exportArgs.format, "dot or pseudo")->required();
    exportCmd->add_option("--out", exportArgs.out, "Output path (default stdout)");

    ServeArgs serve;
    auto* serveCmd = app.add_subcommand("serve", "Run the session server");
    serveCmd->add_option("--host", serve.host, "Bind address");
    serveCmd->add_option("--port", serve.port, "Port")->check(CLI::Range(0, 65535));
    serveCmd->add_option("--traces-dir", serve.tracesDir, "Where play traces are stored");
    serveCmd->add_option("--agents-dir", serve.agentsDir, "Where watchable agents live");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }
    spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

    if (*genCmd) {
        return cmd_gen_level(gen, std::cout, std::cerr);
    }
    if (*evolveCmd) {
        return cmd_evolve(configPath, std::cout, std::cerr);
    }
    if (*replayCmd) {
        return cmd_replay(replay, std::cout, std::cerr);
    }
    if (*rateCmd) {
        return cmd_rate(rate, std::cout, std::cerr);
    }
    if (*exportCmd) {
        return cmd_export(exportArgs, std::cout, std::cerr);
    }
    return cmd_serve(serve, std::cout, std::cerr);
}
