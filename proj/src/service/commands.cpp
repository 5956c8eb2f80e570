#include "pgp/service/commands.hpp"

#include "pgp/dsl/export.hpp"
#include "pgp/dsl/interpreter.hpp"
#include "pgp/dsl/sexpr.hpp"
#include "pgp/errors.hpp"
#include "pgp/fitness/metric.hpp"
#include "pgp/fitness/trace_io.hpp"
#include "pgp/service/config_file.hpp"
#include "pgp/service/run.hpp"
#include "pgp/service/server.hpp"
#include "pgp/sim/level_gen.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <functional>
#include <sstream>

namespace pgp::service {

namespace fs = std::filesystem;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const ParseError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitValidation;
    } catch (const ValidationError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitValidation;
    } catch (const TraceCorrupt& e) {
        fmt::print(err, "error: {} (frame {})\n", e.what(), e.frame());
        return kExitValidation;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitRuntime;
    }
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot read {}", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    }
}

dsl::Chromosome read_agent(const fs::path& path)
{
    try {
        return dsl::parse(read_text(path));
    } catch (const ParseError& e) {
        // Compiler-style "file:line:col: message"; still a validation failure.
        throw ValidationError(fmt::format("{}:{}", path.string(), e.what()));
    }
}

} // namespace

int cmd_gen_level(const GenLevelArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto level = sim::generate_level(args.seed, args.difficulty, args.courseLength);
        if (args.validate) {
            sim::validate_level(level);
        }
        write_text(args.out, sim::serialize_level(level));
        fmt::print(out, "{}\n", args.out.string());
        return kExitOk;
    });
}

int cmd_evolve(const fs::path& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto settings = read_config_file(config);
        const auto manifest =
            run_evolution(settings, [&out](const evo::GenerationStats& s, const evo::Individual& b) {
                fmt::print(out, "gen {} best {:.4f} mean {:.4f} nodes {} wins {}\n",
                           s.generation, s.bestFitness, s.meanFitness, s.bestNodeCount,
                           b.summary.wins);
                out.flush();
            });
        fmt::print(out, "{}\n", manifest.directory.string());
        return kExitOk;
    });
}

int cmd_replay(const ReplayArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto agent = read_agent(args.agent);
        auto level = std::make_shared<const sim::Level>(
            sim::generate_level(args.seed, args.difficulty, args.courseLength));
        const auto result =
            sim::run_episode(std::move(level), dsl::as_controller(agent), args.frameBudget);
        fitness::write_trace_file(args.out, result.trace);
        fmt::print(out, "outcome={} score={} frames={} trace={}\n",
                   sim::to_string(result.outcome), result.score, result.framesUsed,
                   fitness::trace_id(result.trace));
        return kExitOk;
    });
}

int cmd_rate(const RateArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto a = fitness::read_trace_file(args.a);
        const auto b = fitness::read_trace_file(args.b);
        const auto& ha = a.header;
        const auto& hb = b.header;
        if (ha.levelSeed != hb.levelSeed || ha.difficulty != hb.difficulty ||
            ha.courseLength != hb.courseLength) {
            fmt::print(err,
                       "warning: traces were recorded on different levels "
                       "(seed {} d{} vs seed {} d{})\n",
                       ha.levelSeed, ha.difficulty, hb.levelSeed, hb.difficulty);
            if (!args.force) {
                fmt::print(err, "error: pass --force to compare them anyway\n");
                return static_cast<int>(kExitValidation);
            }
        }
        const double d = fitness::trace_dissimilarity(fitness::to_symbols(a.events),
                                                      fitness::to_symbols(b.events));
        fmt::print(out, "{:.4f}\n", d);
        return static_cast<int>(kExitOk);
    });
}

int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (args.format != "dot" && args.format != "pseudo") {
            throw ValidationError(
                fmt::format("unknown format '{}' (expected dot or pseudo)", args.format));
        }
        const auto agent = read_agent(args.agent);
        const auto text = args.format == "dot" ? dsl::to_dot(agent) : dsl::to_pseudocode(agent);
        if (args.out.empty()) {
            out << text;
        } else {
            write_text(args.out, text);
            fmt::print(out, "{}\n", args.out.string());
        }
        return kExitOk;
    });
}

int cmd_serve(const ServeArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        HttpServer server({args.tracesDir, args.agentsDir});
        const int port = server.bind(args.host, args.port);
        if (port < 0) {
            throw std::runtime_error(fmt::format("cannot bind {}:{}", args.host, args.port));
        }
        fmt::print(out, "serving {} on http://{}:{}\n", kProtocolVersion, args.host, port);
        out.flush();
        return server.run() ? kExitOk : kExitRuntime;
    });
}

} // namespace pgp::service
