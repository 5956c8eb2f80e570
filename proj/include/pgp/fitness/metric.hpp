#pragma once

#include "pgp/sim/episode.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pgp::fitness {

/// Metric alphabet: an event kind, plus the course index for milestones
/// (milestone k marks column 16k).
struct EventSymbol {
    sim::EventKind kind{};
    int milestone = 0;

    friend bool operator==(const EventSymbol&, const EventSymbol&) = default;
};

using EventSequence = std::vector<EventSymbol>;

EventSequence to_symbols(std::span<const sim::Event> events);

/// Revalidates the trace by replay (TraceCorrupt on mismatch) and returns its
/// symbol sequence.
EventSequence extract_events(const sim::PlayTrace& trace);
EventSequence extract_events(const sim::PlayTrace& trace,
                             std::shared_ptr<const sim::Level> level);

struct DissimilarityParams {
    using KindTable = std::array<std::array<double, sim::kEventKindCount>, sim::kEventKindCount>;

    /// 0 on the diagonal, 1 elsewhere, 0.5 between JumpStart and Land.
    KindTable substitution = default_table();
    double indelCost = 1.0;
    std::size_t maxLen = 512;

    static KindTable default_table();

    /// Two milestones with different indices cost 1.
    double substitution_cost(const EventSymbol& a, const EventSymbol& b) const;

    /// Throws ContractViolation unless the table is symmetric, zero on the
    /// diagonal, within [0, 1], and indelCost is 1.
    void check() const;
};

/// Weighted edit distance after truncation to maxLen, divided by the longer
/// length. d(empty, empty) = 0.
double trace_dissimilarity(std::span<const EventSymbol> a, std::span<const EventSymbol> b,
                           const DissimilarityParams& params = {});

} // namespace pgp::fitness
