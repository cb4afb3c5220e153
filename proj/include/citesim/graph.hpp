#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "citesim/phenotype.hpp"

namespace citesim {

using NodeId = std::uint32_t;
using Year = int;

// Creation year recorded for edges that came from the input seed graph.
inline constexpr Year kSeedEdgeYear = -1;

enum class NodeKind : std::uint8_t { Seed, Agent };

struct NodeRecord {
    NodeId id = 0;
    Year pub_year = 0;
    std::int64_t fitness = 1;
    NodeKind kind = NodeKind::Seed;
    std::optional<Phenotype> phenotype;
    int out_quota = 0;

    friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct Edge {
    NodeId source = 0;
    NodeId target = 0;
    Year year = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Adjacency entry: the other endpoint and the edge's creation year.
struct AdjEntry {
    NodeId node = 0;
    Year year = 0;
};

enum class NeighborhoodMode : std::uint8_t { Union, OutOnly, InOnly };

// Append-only directed citation graph. Nodes carry dense ids in creation
// order; edges are committed in batches, one batch per simulated year.
class TemporalDiGraph {
public:
    // Appends records whose ids continue the dense sequence. All records
    // must share one pub_year and satisfy the NodeRecord invariants.
    void add_nodes_batch(std::span<const NodeRecord> records);

    // Validates the whole batch (endpoints, self-loops, duplicates within
    // the batch and against existing edges, years not older than the last
    // commit) before applying any of it.
    void commit_edges_batch(std::span<const Edge> edges);

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const NodeRecord& node(NodeId v) const;
    std::span<const NodeRecord> nodes() const noexcept { return nodes_; }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::uint32_t in_degree(NodeId v) const;
    std::span<const std::uint32_t> in_degrees() const noexcept { return in_degree_; }
    // Append order, so entry years are non-decreasing.
    std::span<const AdjEntry> out_neighbors(NodeId v) const;
    std::span<const AdjEntry> in_neighbors(NodeId v) const;

    // Distinct neighbors of v, excluding v, in ascending id order.
    std::vector<NodeId> neighborhood_1hop(NodeId v, NeighborhoodMode mode = NeighborhoodMode::Union) const;

    const std::map<Year, std::size_t>& year_counts() const noexcept { return year_counts_; }

    bool has_edge(NodeId source, NodeId target) const;

    // Full recount of in-degrees from the edge list, and the other
    // structural invariants. Throws DataError on the first violation.
    void check_invariants() const;

private:
    void require_node(NodeId v) const;

    std::vector<NodeRecord> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> in_degree_;
    std::vector<std::vector<AdjEntry>> out_adj_;
    std::vector<std::vector<AdjEntry>> in_adj_;
    std::optional<Year> last_commit_year_;
    std::map<Year, std::size_t> year_counts_;
};

// Read-only view of the graph for one simulated year. Nodes added for the
// current year (ids >= limit) are outside the view, and edges created in
// the current year or later are invisible to its queries.
class YearSnapshot {
public:
    YearSnapshot(const TemporalDiGraph& graph, Year current_year);

    const TemporalDiGraph& graph() const noexcept { return *graph_; }
    NodeId node_count() const noexcept { return limit_; }
    Year current_year() const noexcept { return current_year_; }
    bool contains(NodeId v) const noexcept { return v < limit_; }
    const std::map<Year, std::size_t>& year_counts() const noexcept { return year_counts_; }

    std::uint32_t in_degree(NodeId v) const;
    std::span<const std::uint32_t> in_degrees() const noexcept { return in_degree_; }
    std::vector<NodeId> neighborhood_1hop(NodeId v, NeighborhoodMode mode = NeighborhoodMode::Union) const;

    // Appends the neighborhood to out (cleared first). Same result as
    // neighborhood_1hop, reusing the caller's buffer.
    void neighborhood_1hop(NodeId v, NeighborhoodMode mode, std::vector<NodeId>& out) const;

private:
    const TemporalDiGraph* graph_;
    NodeId limit_;
    std::map<Year, std::size_t> year_counts_;
    std::vector<std::uint32_t> in_degree_;
    Year current_year_;
};

}  // namespace citesim
