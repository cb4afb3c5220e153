#include "citesim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <string>

#include "citesim/error.hpp"

namespace citesim {

void validate_phenotype(const Phenotype& p) {
    for (double w : {p.pw, p.rw, p.fw, p.alpha}) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw ConfigError("phenotype component outside [0,1]");
        }
    }
    if (std::abs(p.pw + p.rw + p.fw - 1.0) > kSimplexTolerance) {
        throw ConfigError("phenotype weights must sum to 1 (got " + std::to_string(p.pw + p.rw + p.fw) + ")");
    }
}

namespace {

void validate_record(const NodeRecord& r) {
    const std::string where = "node " + std::to_string(r.id) + ": ";
    if (r.fitness < 1) throw DataError(where + "fitness must be >= 1");
    if (r.kind == NodeKind::Seed) {
        if (r.phenotype) throw DataError(where + "seed nodes carry no phenotype");
        if (r.out_quota != 0) throw DataError(where + "seed nodes have out_quota 0");
    } else {
        if (!r.phenotype) throw DataError(where + "agent without phenotype");
        if (r.out_quota < 1) throw DataError(where + "agent out_quota must be >= 1");
    }
}

}  // namespace

void TemporalDiGraph::add_nodes_batch(std::span<const NodeRecord> records) {
    if (records.empty()) return;
    const Year year = records.front().pub_year;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const NodeRecord& r = records[i];
        const auto expected = static_cast<NodeId>(nodes_.size() + i);
        if (r.id != expected) {
            const bool dup = r.id < expected;
            throw DataError(std::string(dup ? "duplicate" : "non-contiguous") + " node id " + std::to_string(r.id) +
                            " (expected " + std::to_string(expected) + ")");
        }
        if (r.pub_year != year) throw DataError("pub_year differs within node batch");
        validate_record(r);
    }
    nodes_.insert(nodes_.end(), records.begin(), records.end());
    in_degree_.resize(nodes_.size(), 0);
    out_adj_.resize(nodes_.size());
    in_adj_.resize(nodes_.size());
    year_counts_[year] += records.size();
}

void TemporalDiGraph::commit_edges_batch(std::span<const Edge> edges) {
    if (edges.empty()) return;
    std::vector<Edge> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    const auto describe = [](const Edge& e) { return std::to_string(e.source) + "->" + std::to_string(e.target); };
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const Edge& e = sorted[i];
        if (e.source >= nodes_.size() || e.target >= nodes_.size()) {
            throw DataError("edge " + describe(e) + " has an unknown endpoint");
        }
        if (e.source == e.target) throw DataError("self-loop " + describe(e));
        if (last_commit_year_ && e.year < *last_commit_year_) {
            throw DataError("edge " + describe(e) + " is older than the last committed batch");
        }
        if (i > 0 && sorted[i - 1].source == e.source && sorted[i - 1].target == e.target) {
            throw DataError("duplicate edge " + describe(e) + " within batch");
        }
        if (has_edge(e.source, e.target)) throw DataError("duplicate edge " + describe(e));
    }
    // Apply in (stable) year order so every adjacency list stays sorted by year.
    std::vector<Edge> ordered(edges.begin(), edges.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const Edge& a, const Edge& b) { return a.year < b.year; });
    Year max_year = ordered.front().year;
    for (const Edge& e : ordered) {
        edges_.push_back(e);
        ++in_degree_[e.target];
        out_adj_[e.source].push_back({e.target, e.year});
        in_adj_[e.target].push_back({e.source, e.year});
        max_year = std::max(max_year, e.year);
    }
    last_commit_year_ = max_year;
}

void TemporalDiGraph::require_node(NodeId v) const {
    if (v >= nodes_.size()) throw DataError("unknown node " + std::to_string(v));
}

const NodeRecord& TemporalDiGraph::node(NodeId v) const {
    require_node(v);
    return nodes_[v];
}

std::uint32_t TemporalDiGraph::in_degree(NodeId v) const {
    require_node(v);
    return in_degree_[v];
}

std::span<const AdjEntry> TemporalDiGraph::out_neighbors(NodeId v) const {
    require_node(v);
    return out_adj_[v];
}

std::span<const AdjEntry> TemporalDiGraph::in_neighbors(NodeId v) const {
    require_node(v);
    return in_adj_[v];
}

bool TemporalDiGraph::has_edge(NodeId source, NodeId target) const {
    if (source >= nodes_.size() || target >= nodes_.size()) return false;
    // Scan the shorter of the two lists.
    const auto& out = out_adj_[source];
    const auto& in = in_adj_[target];
    if (out.size() <= in.size()) {
        return std::any_of(out.begin(), out.end(), [&](const AdjEntry& a) { return a.node == target; });
    }
    return std::any_of(in.begin(), in.end(), [&](const AdjEntry& a) { return a.node == source; });
}

namespace {

void collect_neighbors(std::span<const AdjEntry> out, std::span<const AdjEntry> in, NeighborhoodMode mode, NodeId self,
                       NodeId limit, Year before_year, std::vector<NodeId>& result) {
    result.clear();
    const auto take = [&](std::span<const AdjEntry> list) {
        for (const AdjEntry& a : list) {
            if (a.year >= before_year) break;  // lists are in year order
            if (a.node != self && a.node < limit) result.push_back(a.node);
        }
    };
    if (mode != NeighborhoodMode::InOnly) take(out);
    if (mode != NeighborhoodMode::OutOnly) take(in);
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
}

}  // namespace

std::vector<NodeId> TemporalDiGraph::neighborhood_1hop(NodeId v, NeighborhoodMode mode) const {
    require_node(v);
    std::vector<NodeId> result;
    collect_neighbors(out_adj_[v], in_adj_[v], mode, v, static_cast<NodeId>(nodes_.size()),
                      std::numeric_limits<Year>::max(), result);
    return result;
}

void TemporalDiGraph::check_invariants() const {
    std::vector<std::uint32_t> recount(nodes_.size(), 0);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(edges_.size());
    for (const Edge& e : edges_) {
        if (e.source >= nodes_.size() || e.target >= nodes_.size()) throw DataError("edge with unknown endpoint");
        if (e.source == e.target) throw DataError("self-loop in edge list");
        if (e.year != kSeedEdgeYear) {
            if (nodes_[e.source].kind == NodeKind::Seed) throw DataError("seed node is the source of a created edge");
            if (e.year < nodes_[e.source].pub_year) throw DataError("edge predates its source");
        }
        ++recount[e.target];
        pairs.emplace_back(e.source, e.target);
    }
    if (recount != in_degree_) throw DataError("in_degree array disagrees with edge list");
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) throw DataError("duplicate edge in edge list");
    std::size_t total = 0;
    for (const auto& [year, count] : year_counts_) total += count;
    if (total != nodes_.size()) throw DataError("year_counts do not sum to node count");
}

YearSnapshot::YearSnapshot(const TemporalDiGraph& graph, Year current_year)
    : graph_(&graph),
      limit_(static_cast<NodeId>(graph.node_count())),
      year_counts_(graph.year_counts()),
      in_degree_(graph.in_degrees().begin(), graph.in_degrees().end()),
      current_year_(current_year) {}

std::uint32_t YearSnapshot::in_degree(NodeId v) const {
    if (!contains(v)) throw DataError("node " + std::to_string(v) + " is not in the snapshot");
    return in_degree_[v];
}

std::vector<NodeId> YearSnapshot::neighborhood_1hop(NodeId v, NeighborhoodMode mode) const {
    std::vector<NodeId> result;
    neighborhood_1hop(v, mode, result);
    return result;
}

void YearSnapshot::neighborhood_1hop(NodeId v, NeighborhoodMode mode, std::vector<NodeId>& out) const {
    if (!contains(v)) throw DataError("node " + std::to_string(v) + " is not in the snapshot");
    collect_neighbors(graph_->out_neighbors(v), graph_->in_neighbors(v), mode, v, limit_, current_year_, out);
}

}  // namespace citesim
