#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citesim/graph.hpp"

namespace citesim {

// Simple undirected projection (no loops, no multi-edges) in CSR form.
class UndirectedGraph {
public:
    static UndirectedGraph from_digraph(const TemporalDiGraph& g);
    static UndirectedGraph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);

    std::size_t node_count() const noexcept { return offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return adj_.size() / 2; }
    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
    std::span<const NodeId> neighbors(NodeId v) const {
        return std::span<const NodeId>(adj_).subspan(offsets_[v], degree(v));
    }

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adj_;  // sorted within each node
};

// Number of triangles through each node.
std::vector<std::uint64_t> triangles_per_node(const UndirectedGraph& g);

// Transitivity 3 * triangles / connected triples; 0 without triples.
double global_clustering_coefficient(const UndirectedGraph& g);
double global_clustering_coefficient(const TemporalDiGraph& g);

// Mean local coefficient; nodes of degree < 2 contribute 0.
// Throws DataError for an empty graph.
double avg_local_clustering_coefficient(const UndirectedGraph& g);
double avg_local_clustering_coefficient(const TemporalDiGraph& g);

struct DegreeStats {
    std::int64_t min = 0;
    std::int64_t median = 0;
    std::int64_t q75 = 0;
    std::int64_t q90 = 0;
    std::int64_t q99 = 0;
    std::int64_t max = 0;
    std::size_t count = 0;

    friend bool operator==(const DegreeStats&, const DegreeStats&) = default;
};

// Nearest-rank quantile of ascending data: element ceil(p * n), 1-based,
// clamped to [1, n]. Throws DataError for empty input or p outside [0,1].
std::int64_t nearest_rank(std::span<const std::int64_t> sorted, double p);

// Sorts a copy of `values` and reports the positional statistics.
DegreeStats degree_stats(std::vector<std::int64_t> values);

enum class DegreeSubset { All, AgentsOnly, ExcludeZero };

DegreeStats in_degree_stats(const TemporalDiGraph& g, DegreeSubset subset);

// Fitness groups with right-closed bounds: f1=[1,10], f2=(10,100],
// f3=(100,1e3], f4=(1e3,1e4], f5=(1e4,1e5], f6=(1e5,inf).
inline constexpr int kFitnessGroups = 6;
int fitness_group(std::int64_t fitness);  // 1..6
std::string fitness_group_label(int group);

struct FitnessGroupSummary {
    int group = 1;
    std::size_t count = 0;
    double share = 0.0;
    std::size_t zero_in_degree = 0;
    std::optional<DegreeStats> in_degree;          // all members
    std::optional<DegreeStats> in_degree_nonzero;  // members with in_degree > 0
};

// Groups every node, or only nodes of `kind` when given.
std::vector<FitnessGroupSummary> fitness_group_summary(const TemporalDiGraph& g,
                                                       std::optional<NodeKind> kind = std::nullopt);

// Group shares of a plain list of fitness values.
std::array<double, kFitnessGroups> fitness_group_shares(std::span<const std::int64_t> fitness);

// k-core number of every node (Batagelj-Zaversnik bucket peeling) on the
// nodes with alive[v] set; others get 0.
std::vector<std::uint32_t> core_numbers(const UndirectedGraph& g, const std::vector<bool>& alive);

struct IkcCluster {
    std::vector<NodeId> members;  // ascending
    std::uint32_t k = 0;
};

struct IkcResult {
    std::vector<IkcCluster> clusters;
    double node_coverage = 0.0;  // percent of nodes in clusters of size >= 2
    std::size_t cluster_count = 0;
    std::vector<std::size_t> cluster_sizes;
};

// Iterative k-core clustering: repeatedly take the maximum k whose k-core
// is non-empty in the residual graph, emit each connected component of
// that core as a cluster, delete it, and stop once the maximum k drops
// below k_min. Throws ConfigError for k_min < 1.
IkcResult ikc_cluster(const UndirectedGraph& g, std::uint32_t k_min = 1);
IkcResult ikc_cluster(const TemporalDiGraph& g, std::uint32_t k_min = 1);

struct SpearmanResult {
    double rho = 0.0;
    double p_value = 1.0;  // two-sided, Student t approximation with n-2 dof
    std::size_t n = 0;
};

// Rank correlation with average ranks for ties.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

template <typename T>
double median_of(std::vector<T> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? static_cast<double>(values[n / 2])
                      : (static_cast<double>(values[n / 2 - 1]) + static_cast<double>(values[n / 2])) / 2.0;
}

}  // namespace citesim
