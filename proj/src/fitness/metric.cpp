#include "pgp/fitness/metric.hpp"

#include "pgp/errors.hpp"
#include "pgp/fitness/trace_io.hpp"

#include <algorithm>

namespace pgp::fitness {

EventSequence to_symbols(std::span<const sim::Event> events)
{
    EventSequence out;
    out.reserve(events.size());
    for (const auto& e : events) {
        const int index = e.kind == sim::EventKind::Milestone ? e.payload / sim::kMilestoneColumns : 0;
        out.push_back({e.kind, index});
    }
    return out;
}

EventSequence extract_events(const sim::PlayTrace& trace, std::shared_ptr<const sim::Level> level)
{
    validate_trace(trace, std::move(level));
    return to_symbols(trace.events);
}

EventSequence extract_events(const sim::PlayTrace& trace)
{
    return extract_events(trace, level_for(trace.header));
}

DissimilarityParams::KindTable DissimilarityParams::default_table()
{
    KindTable t{};
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = 0; j < t.size(); ++j) {
            t[i][j] = i == j ? 0.0 : 1.0;
        }
    }
    const auto jump = static_cast<std::size_t>(sim::EventKind::JumpStart);
    const auto land = static_cast<std::size_t>(sim::EventKind::Land);
    t[jump][land] = t[land][jump] = 0.5;
    return t;
}

double DissimilarityParams::substitution_cost(const EventSymbol& a, const EventSymbol& b) const
{
    if (a.kind == b.kind) {
        return a.milestone == b.milestone ? 0.0 : 1.0;
    }
    return substitution[static_cast<std::size_t>(a.kind)][static_cast<std::size_t>(b.kind)];
}

void DissimilarityParams::check() const
{
    if (indelCost != 1.0) {
        throw ContractViolation("indel cost must be 1");
    }
    for (std::size_t i = 0; i < substitution.size(); ++i) {
        if (substitution[i][i] != 0.0) {
            throw ContractViolation("substitution cost must be zero on the diagonal");
        }
        for (std::size_t j = 0; j < substitution.size(); ++j) {
            const double c = substitution[i][j];
            if (c < 0.0 || c > 1.0 || c != substitution[j][i]) {
                throw ContractViolation("substitution costs must be symmetric and within [0, 1]");
            }
        }
    }
}

double trace_dissimilarity(std::span<const EventSymbol> a, std::span<const EventSymbol> b,
                           const DissimilarityParams& params)
{
    a = a.first(std::min(a.size(), params.maxLen));
    b = b.first(std::min(b.size(), params.maxLen));
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) {
        return 0.0;
    }
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    // Rolling rows over the shorter sequence.
    std::vector<double> prev(b.size() + 1);
    std::vector<double> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        prev[j] = static_cast<double>(j) * params.indelCost;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<double>(i) * params.indelCost;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = std::min({prev[j] + params.indelCost, cur[j - 1] + params.indelCost,
                               prev[j - 1] + params.substitution_cost(a[i - 1], b[j - 1])});
        }
        std::swap(prev, cur);
    }
    return std::clamp(prev[b.size()] / static_cast<double>(longest), 0.0, 1.0);
}

} // namespace pgp::fitness
