#include "citesim/seedgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "citesim/error.hpp"
#include "citesim/rng.hpp"

namespace citesim {

TemporalDiGraph gen_erdos_renyi_gnm(const ErSpec& spec, const FitnessLawParams& fitness_law, std::uint64_t master_seed) {
    const std::uint64_t n = spec.n;
    if (n == 0) throw ConfigError("G(n,m) needs n >= 1");
    const std::uint64_t slots = spec.directed ? n * (n - 1) : n * (n - 1) / 2;
    if (spec.m > slots) {
        throw ConfigError("m = " + std::to_string(spec.m) + " exceeds the " + std::to_string(slots) +
                          " possible edges on " + std::to_string(n) + " nodes");
    }

    RngStream year_rng(master_seed, StreamTag::ErYears, 0);
    std::vector<Year> years(n);
    if (const auto* copy = std::get_if<CopyEmpiricalYears>(&spec.year_assignment)) {
        if (copy->years.empty()) throw ConfigError("empirical year list is empty");
        if (copy->years.size() == n) {
            years = copy->years;
            for (std::size_t i = n - 1; i > 0; --i) std::swap(years[i], years[year_rng.below(i + 1)]);
        } else {
            for (auto& y : years) y = copy->years[year_rng.below(copy->years.size())];
        }
    } else {
        const auto& range = std::get<UniformYearRange>(spec.year_assignment);
        if (range.hi < range.lo) throw ConfigError("year range must satisfy lo <= hi");
        for (auto& y : years) y = range.lo + static_cast<Year>(year_rng.below(static_cast<std::uint64_t>(range.hi - range.lo) + 1));
    }

    const FitnessLaw law(fitness_law);
    std::vector<NodeRecord> records(n);
    for (NodeId v = 0; v < n; ++v) {
        RngStream rng(master_seed, StreamTag::SeedFitness, v);
        records[v] = NodeRecord{v, years[v], law.sample(rng), NodeKind::Seed, std::nullopt, 0};
    }
    TemporalDiGraph graph;
    std::size_t start = 0;
    while (start < records.size()) {
        std::size_t end = start + 1;
        while (end < records.size() && records[end].pub_year == records[start].pub_year) ++end;
        graph.add_nodes_batch(std::span<const NodeRecord>(records).subspan(start, end - start));
        start = end;
    }

    // Floyd's algorithm: m distinct slot indices in [0, slots).
    RngStream edge_rng(master_seed, StreamTag::ErGraph, 0);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(spec.m * 2);
    for (std::uint64_t j = slots - spec.m; j < slots; ++j) {
        const std::uint64_t t = edge_rng.below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> sorted(chosen.begin(), chosen.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<Edge> edges;
    edges.reserve(sorted.size());
    for (std::uint64_t s : sorted) {
        NodeId u = 0;
        NodeId v = 0;
        if (spec.directed) {
            u = static_cast<NodeId>(s / (n - 1));
            const auto r = static_cast<NodeId>(s % (n - 1));
            v = r < u ? r : r + 1;
        } else {
            // Unordered pair index -> (u < v) in row-major upper-triangle order.
            const auto offset = [n](std::uint64_t row) { return row * (2 * n - row - 1) / 2; };
            const double b = 2.0 * static_cast<double>(n) - 1.0;
            auto row = static_cast<std::uint64_t>(std::max(0.0, std::floor((b - std::sqrt(b * b - 8.0 * static_cast<double>(s))) / 2.0)));
            while (row > 0 && offset(row) > s) --row;
            while (offset(row + 1) <= s) ++row;
            u = static_cast<NodeId>(row);
            v = static_cast<NodeId>(row + 1 + (s - offset(row)));
            if (edge_rng.below(2) == 1) std::swap(u, v);
        }
        edges.push_back({u, v, kSeedEdgeYear});
    }
    graph.commit_edges_batch(edges);
    return graph;
}

}  // namespace citesim
