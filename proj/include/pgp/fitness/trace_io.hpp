#pragma once

#include "pgp/sim/episode.hpp"
#include "pgp/sim/level.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace pgp::fitness {

/// Level a trace header refers to (regenerated from seed and difficulty).
std::shared_ptr<const sim::Level> level_for(const sim::TraceHeader& header);

/// Replays `trace.inputs` and checks the stored events, score, outcome and
/// maxX. Throws TraceCorrupt naming the first frame that disagrees.
void validate_trace(const sim::PlayTrace& trace, std::shared_ptr<const sim::Level> level);
void validate_trace(const sim::PlayTrace& trace);

/// `.trace.json` text. Inputs are authoritative; events are advisory.
std::string trace_to_json(const sim::PlayTrace& trace);

/// Structural parse only; throws ValidationError on malformed documents.
sim::PlayTrace trace_from_json(std::string_view text);

/// Reads and revalidates against the header's generated level.
sim::PlayTrace read_trace_file(const std::filesystem::path& path);
void write_trace_file(const std::filesystem::path& path, const sim::PlayTrace& trace);

/// Content address: FNV-1a over header fields and inputs, 16 hex digits.
std::string trace_id(const sim::PlayTrace& trace);

} // namespace pgp::fitness
