#include "citesim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "citesim/error.hpp"

namespace citesim {

// ------------------------------------------------------------ projection

UndirectedGraph UndirectedGraph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
    std::vector<std::pair<NodeId, NodeId>> both;
    both.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n) throw DataError("edge endpoint out of range");
        if (a == b) continue;
        both.emplace_back(a, b);
        both.emplace_back(b, a);
    }
    std::sort(both.begin(), both.end());
    both.erase(std::unique(both.begin(), both.end()), both.end());
    UndirectedGraph g;
    g.offsets_.assign(n + 1, 0);
    for (const auto& [a, b] : both) ++g.offsets_[a + 1];
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adj_.reserve(both.size());
    for (const auto& [a, b] : both) g.adj_.push_back(b);
    return g;
}

UndirectedGraph UndirectedGraph::from_digraph(const TemporalDiGraph& g) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(g.edge_count());
    for (const Edge& e : g.edges()) pairs.emplace_back(e.source, e.target);
    return from_edges(g.node_count(), pairs);
}

// ------------------------------------------------------------ clustering

std::vector<std::uint64_t> triangles_per_node(const UndirectedGraph& g) {
    const std::size_t n = g.node_count();
    // Orient each edge toward the endpoint of higher (degree, id) so every
    // triangle is found exactly once from its lowest-ranked corner.
    const auto ranks_below = [&](NodeId a, NodeId b) {
        const auto da = g.degree(a);
        const auto db = g.degree(b);
        return da < db || (da == db && a < b);
    };
    std::vector<std::vector<NodeId>> forward(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : g.neighbors(u)) {
            if (ranks_below(u, v)) forward[u].push_back(v);
        }
    }
    std::vector<std::uint64_t> tri(n, 0);
    std::vector<NodeId> mark(n, static_cast<NodeId>(-1));
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : forward[u]) mark[v] = u;
        for (NodeId v : forward[u]) {
            for (NodeId w : forward[v]) {
                if (mark[w] == u) {
                    ++tri[u];
                    ++tri[v];
                    ++tri[w];
                }
            }
        }
    }
    return tri;
}

double global_clustering_coefficient(const UndirectedGraph& g) {
    const auto tri = triangles_per_node(g);
    long double closed = 0.0L;
    long double triples = 0.0L;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const long double d = static_cast<long double>(g.degree(v));
        closed += static_cast<long double>(tri[v]);
        triples += d * (d - 1.0L) / 2.0L;
    }
    return triples > 0.0L ? static_cast<double>(closed / triples) : 0.0;
}

double global_clustering_coefficient(const TemporalDiGraph& g) {
    return global_clustering_coefficient(UndirectedGraph::from_digraph(g));
}

double avg_local_clustering_coefficient(const UndirectedGraph& g) {
    if (g.node_count() == 0) throw DataError("local clustering of an empty graph is undefined");
    const auto tri = triangles_per_node(g);
    long double sum = 0.0L;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto d = static_cast<long double>(g.degree(v));
        if (d >= 2.0L) sum += static_cast<long double>(tri[v]) / (d * (d - 1.0L) / 2.0L);
    }
    return static_cast<double>(sum / static_cast<long double>(g.node_count()));
}

double avg_local_clustering_coefficient(const TemporalDiGraph& g) {
    return avg_local_clustering_coefficient(UndirectedGraph::from_digraph(g));
}

// ------------------------------------------------------------- quantiles

std::int64_t nearest_rank(std::span<const std::int64_t> sorted, double p) {
    if (sorted.empty()) throw DataError("quantile of an empty set");
    if (!(p >= 0.0 && p <= 1.0)) throw DataError("quantile level outside [0,1]");
    // ceil(p*n) with a guard against p*n landing a hair above an integer.
    const double scaled = p * static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(scaled - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

DegreeStats degree_stats(std::vector<std::int64_t> values) {
    if (values.empty()) throw DataError("degree statistics of an empty subset");
    std::sort(values.begin(), values.end());
    DegreeStats s;
    s.min = values.front();
    s.median = nearest_rank(values, 0.5);
    s.q75 = nearest_rank(values, 0.75);
    s.q90 = nearest_rank(values, 0.90);
    s.q99 = nearest_rank(values, 0.99);
    s.max = values.back();
    s.count = values.size();
    return s;
}

DegreeStats in_degree_stats(const TemporalDiGraph& g, DegreeSubset subset) {
    std::vector<std::int64_t> values;
    const auto in = g.in_degrees();
    for (const NodeRecord& r : g.nodes()) {
        if (subset == DegreeSubset::AgentsOnly && r.kind != NodeKind::Agent) continue;
        if (subset == DegreeSubset::ExcludeZero && in[r.id] == 0) continue;
        values.push_back(in[r.id]);
    }
    return degree_stats(std::move(values));
}

// --------------------------------------------------------- fitness groups

int fitness_group(std::int64_t fitness) {
    if (fitness < 1) throw DataError("fitness must be >= 1");
    int group = 1;
    std::int64_t upper = 10;
    while (group < kFitnessGroups && fitness > upper) {
        ++group;
        upper *= 10;
    }
    return group;
}

std::string fitness_group_label(int group) { return "f" + std::to_string(group); }

std::array<double, kFitnessGroups> fitness_group_shares(std::span<const std::int64_t> fitness) {
    std::array<double, kFitnessGroups> shares{};
    for (std::int64_t f : fitness) shares[static_cast<std::size_t>(fitness_group(f) - 1)] += 1.0;
    if (!fitness.empty()) {
        for (double& s : shares) s /= static_cast<double>(fitness.size());
    }
    return shares;
}

std::vector<FitnessGroupSummary> fitness_group_summary(const TemporalDiGraph& g, std::optional<NodeKind> kind) {
    std::array<std::vector<std::int64_t>, kFitnessGroups> members;
    std::size_t total = 0;
    const auto in = g.in_degrees();
    for (const NodeRecord& r : g.nodes()) {
        if (kind && r.kind != *kind) continue;
        members[static_cast<std::size_t>(fitness_group(r.fitness) - 1)].push_back(in[r.id]);
        ++total;
    }
    std::vector<FitnessGroupSummary> out;
    for (int grp = 1; grp <= kFitnessGroups; ++grp) {
        auto& values = members[static_cast<std::size_t>(grp - 1)];
        FitnessGroupSummary s;
        s.group = grp;
        s.count = values.size();
        s.share = total > 0 ? static_cast<double>(values.size()) / static_cast<double>(total) : 0.0;
        if (!values.empty()) {
            s.in_degree = degree_stats(values);
            std::vector<std::int64_t> nonzero;
            for (auto v : values) {
                if (v > 0) nonzero.push_back(v);
            }
            s.zero_in_degree = values.size() - nonzero.size();
            if (!nonzero.empty()) s.in_degree_nonzero = degree_stats(std::move(nonzero));
        }
        out.push_back(std::move(s));
    }
    return out;
}

// ------------------------------------------------------------------ IKC

std::vector<std::uint32_t> core_numbers(const UndirectedGraph& g, const std::vector<bool>& alive) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> deg(n, 0);
    std::uint32_t max_deg = 0;
    for (NodeId v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        for (NodeId w : g.neighbors(v)) deg[v] += alive[w] ? 1 : 0;
        max_deg = std::max(max_deg, deg[v]);
    }
    // Bucket sort by degree; pos/vert as in Batagelj-Zaversnik.
    std::vector<std::size_t> bin(max_deg + 2, 0);
    std::vector<NodeId> vert;
    std::vector<std::size_t> pos(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (alive[v]) ++bin[deg[v]];
    }
    std::size_t start = 0;
    for (std::uint32_t d = 0; d <= max_deg; ++d) {
        const std::size_t count = bin[d];
        bin[d] = start;
        start += count;
    }
    vert.resize(start);
    for (NodeId v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        pos[v] = bin[deg[v]]++;
        vert[pos[v]] = v;
    }
    for (std::uint32_t d = max_deg + 1; d > 0; --d) bin[d] = bin[d - 1];
    bin[0] = 0;
    for (std::size_t i = 0; i < vert.size(); ++i) {
        const NodeId v = vert[i];
        for (NodeId u : g.neighbors(v)) {
            if (!alive[u] || deg[u] <= deg[v]) continue;
            const std::uint32_t du = deg[u];
            const std::size_t pu = pos[u];
            const std::size_t pw = bin[du];
            const NodeId w = vert[pw];
            if (u != w) {
                pos[u] = pw;
                vert[pu] = w;
                pos[w] = pu;
                vert[pw] = u;
            }
            ++bin[du];
            --deg[u];
        }
    }
    std::vector<std::uint32_t> core(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (alive[v]) core[v] = deg[v];
    }
    return core;
}

IkcResult ikc_cluster(const UndirectedGraph& g, std::uint32_t k_min) {
    if (k_min < 1) throw ConfigError("IKC needs k_min >= 1");
    const std::size_t n = g.node_count();
    IkcResult result;
    std::vector<bool> alive(n, true);
    std::vector<bool> in_core(n, false);
    std::vector<NodeId> stack;
    while (true) {
        const auto core = core_numbers(g, alive);
        std::uint32_t kmax = 0;
        for (NodeId v = 0; v < n; ++v) {
            if (alive[v]) kmax = std::max(kmax, core[v]);
        }
        if (kmax < k_min) break;
        for (NodeId v = 0; v < n; ++v) in_core[v] = alive[v] && core[v] >= kmax;
        for (NodeId s = 0; s < n; ++s) {
            if (!in_core[s]) continue;
            IkcCluster cluster;
            cluster.k = kmax;
            in_core[s] = false;
            stack.assign(1, s);
            while (!stack.empty()) {
                const NodeId v = stack.back();
                stack.pop_back();
                cluster.members.push_back(v);
                for (NodeId w : g.neighbors(v)) {
                    if (in_core[w]) {
                        in_core[w] = false;
                        stack.push_back(w);
                    }
                }
            }
            std::sort(cluster.members.begin(), cluster.members.end());
            for (NodeId v : cluster.members) alive[v] = false;
            result.clusters.push_back(std::move(cluster));
        }
    }
    std::size_t covered = 0;
    for (const auto& c : result.clusters) {
        if (c.members.size() < 2) continue;
        covered += c.members.size();
        result.cluster_sizes.push_back(c.members.size());
    }
    result.cluster_count = result.cluster_sizes.size();
    result.node_coverage = n > 0 ? 100.0 * static_cast<double>(covered) / static_cast<double>(n) : 0.0;
    return result;
}

IkcResult ikc_cluster(const TemporalDiGraph& g, std::uint32_t k_min) {
    return ikc_cluster(UndirectedGraph::from_digraph(g), k_min);
}

// -------------------------------------------------------------- spearman

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

}  // namespace

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DataError("spearman inputs differ in length");
    SpearmanResult r;
    r.n = x.size();
    if (r.n < 3) return r;
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double mean = (static_cast<double>(r.n) + 1.0) / 2.0;
    long double sxy = 0.0L;
    long double sxx = 0.0L;
    long double syy = 0.0L;
    for (std::size_t i = 0; i < r.n; ++i) {
        const long double dx = rx[i] - mean;
        const long double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0L || syy == 0.0L) return r;
    r.rho = static_cast<double>(sxy / std::sqrt(sxx * syy));
    const double dof = static_cast<double>(r.n) - 2.0;
    const double denom = std::max(1e-300, 1.0 - r.rho * r.rho);
    const double t = r.rho * std::sqrt(dof / denom);
    const boost::math::students_t dist(dof);
    r.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
    return r;
}

}  // namespace citesim
