// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "citesim/distributions.hpp"
#include "citesim/engine.hpp"
#include "citesim/experiments.hpp"
#include "citesim/graph_io.hpp"
#include "citesim/metrics.hpp"
#include "citesim/sampling.hpp"
#include "citesim/seedgen.hpp"
#include "oracles.hpp"

using namespace citesim;
using namespace citesim::testing;

namespace {

struct Verdict {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) passed = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "FAILED ") + what;
    }
};

std::string fmt(const char* spec, double value) {
    char buf[96];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

double chi2_critical(double dof, double alpha = 0.001) {
    return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), alpha));
}

RecencyTable recency() { return load_recency_table(std::string(CITESIM_DATA_DIR) + "/recency_example.tsv"); }

// Desk-scale setup shared by criteria 5-8: G(5000, 9150) seeds (the
// reference graph's density), 10 years at 3%, 3 replicates.
ExperimentSetup desk_setup() {
    ExperimentSetup s;
    s.seed_nodes = 5'000;
    s.seed_edges = 9'150;
    s.years = 10;
    s.growth_rate = 0.03;
    s.replicates = 3;
    s.master_seed = 20240601;
    s.recency_table = recency();
    return s;
}

// ------------------------------------------------------------ criterion 1

Verdict quota_split() {
    Verdict v;
    bool example = true;
    for (std::size_t n = 14; n <= 300; ++n) example = example && split_quota(30, 0.5, n) == QuotaSplit{1, 14, 15};
    v.require(example, "split_quota(30, 0.5, >=14) = (1, 14, 15)");
    std::size_t checked = 0;
    bool conserved = true;
    for (int q = 1; q <= 249; ++q) {
        for (int a = 0; a <= 10; ++a) {
            for (std::size_t n = 0; n <= 300; ++n) {
                const QuotaSplit s = split_quota(q, a / 10.0, n);
                conserved = conserved && s.generator + s.intra + s.extra == q && s.intra >= 0 && s.extra >= 0;
                ++checked;
            }
        }
    }
    v.require(conserved, "slots sum to out_quota over " + std::to_string(checked) + " cases");
    return v;
}

// ------------------------------------------------------------ criterion 2

Verdict fitness_law() {
    Verdict v;
    const FitnessLaw law;
    RngStream rng(7, StreamTag::Test, 2);
    constexpr int kDraws = 1'000'000;
    std::vector<std::int64_t> draws(kDraws);
    for (auto& d : draws) d = law.sample(rng);

    std::array<double, 3> shares{};
    for (auto d : draws) {
        const int g = fitness_group(d);
        if (g <= 3) shares[static_cast<std::size_t>(g - 1)] += 1.0 / kDraws;
    }
    const double target[3] = {0.85, 0.12, 0.03};
    for (int g = 0; g < 3; ++g) {
        v.require(std::abs(shares[g] - target[g]) <= 0.01,
                  "f" + std::to_string(g + 1) + " " + fmt("%.2f%%", 100 * shares[g]) + " vs " +
                      fmt("%.0f%%", 100 * target[g]) + " +-1pp");
    }

    // Bins: each value 1..100, then (100,200], (200,400], (400, inf).
    const auto bin_of = [](std::int64_t x) -> std::size_t {
        if (x <= 100) return static_cast<std::size_t>(x - 1);
        if (x <= 200) return 100;
        if (x <= 400) return 101;
        return 102;
    };
    std::vector<double> expected(103, 0.0), observed(103, 0.0);
    for (std::int64_t x = 1; x <= 1000; ++x) {
        expected[bin_of(x)] += 6.37429 * 0.072 * std::pow(static_cast<double>(x), -1.634) * kDraws;
    }
    expected[102] += law.outlier_probability() * kDraws;
    for (auto d : draws) observed[bin_of(d)] += 1.0;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    const double crit = chi2_critical(static_cast<double>(expected.size() - 1));
    v.require(chi2 < crit, "chi2=" + fmt("%.1f", chi2) + " < " + fmt("%.1f", crit) + " (df=102, 0.001)");
    return v;
}

// ------------------------------------------------------------ criterion 3

Verdict ares() {
    Verdict v;
    RngStream rng(9, StreamTag::Test, 3);
    const std::vector<NodeId> items{0, 1, 2, 3};
    const std::vector<double> w{1.0, 2.0, 3.0, 4.0};
    constexpr int kTrials = 100'000;
    std::vector<double> hits(4, 0.0);
    for (int t = 0; t < kTrials; ++t) hits[ares_sample(items, w, 1, rng).front()] += 1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double p = w[i] / 10.0;
        const double sigma = std::sqrt(p * (1 - p) / kTrials);
        worst = std::max(worst, std::abs(hits[i] / kTrials - p) / sigma);
    }
    v.require(worst <= 3.0, "k=1 max deviation " + fmt("%.2f", worst) + " sigma <= 3");

    const std::vector<NodeId> five{0, 1, 2, 3, 4};
    const std::vector<double> equal(5, 1.0);
    std::map<std::pair<NodeId, NodeId>, double> subsets;
    for (int t = 0; t < kTrials; ++t) {
        const auto s = ares_sample(five, equal, 2, rng);
        subsets[{s[0], s[1]}] += 1.0;
    }
    double chi2 = 0.0;
    const double e = kTrials / 10.0;
    for (NodeId a = 0; a < 5; ++a) {
        for (NodeId b = a + 1; b < 5; ++b) chi2 += (subsets[{a, b}] - e) * (subsets[{a, b}] - e) / e;
    }
    v.require(subsets.size() == 10 && chi2 < chi2_critical(9),
              "k=2 subset chi2=" + fmt("%.2f", chi2) + " < " + fmt("%.2f", chi2_critical(9)));
    return v;
}

// ------------------------------------------------------------ criterion 4

Verdict growth() {
    Verdict v;
    // Hand-rolled compounding: floor(0.03 * size + 1/2), at least 1.
    long expected = 1000;
    for (int y = 0; y < 10; ++y) expected += std::max(1L, static_cast<long>(std::floor(0.03 * static_cast<double>(expected) + 0.5)));

    SimConfig config;
    config.years = 10;
    config.recency_table = recency();
    config.master_seed = 4;
    const auto seed = gen_erdos_renyi_gnm({1000, 1830}, config.fitness_law, 4);
    const RunOutput run = run_simulation(config, seed);
    v.require(static_cast<long>(run.graph.node_count()) == expected,
              "1000 nodes x 10 years -> " + std::to_string(run.graph.node_count()) + " (expected " +
                  std::to_string(expected) + ")");

    const long projected = projected_node_count(491'532, 0.03, 30);
    const double rel = std::abs(static_cast<double>(projected) - 1'193'102.0) / 1'193'102.0;
    v.require(rel < 0.001, "491,532 x 30 years -> " + std::to_string(projected) + " (" + fmt("%.3f%%", 100 * rel) +
                               " from 1,193,102)");
    return v;
}

// ------------------------------------------------------- criteria 5 and 6

struct AlphaRuns {
    // [bg][alpha index] -> per-replicate gcc / alcc, pooled degree pairs.
    std::map<std::pair<Background, int>, std::vector<double>> gcc, alcc;
    std::map<std::pair<Background, int>, std::pair<std::vector<double>, std::vector<double>>> degrees;
};

const AlphaRuns& alpha_runs() {
    static const AlphaRuns runs = [] {
        AlphaRuns r;
        const ExperimentSetup setup = desk_setup();
        const double alphas[3] = {0.0, 0.5, 1.0};
        for (int rep = 0; rep < setup.replicates; ++rep) {
            const TemporalDiGraph seed = er_seed(setup, rep);
            for (Background bg : {Background::Ra, Background::Sa}) {
                for (int a = 0; a < 3; ++a) {
                    const RunOutput run = run_arm(setup, {bg, alphas[a], false, std::nullopt}, rep, seed);
                    const auto u = UndirectedGraph::from_digraph(run.graph);
                    r.gcc[{bg, a}].push_back(global_clustering_coefficient(u));
                    r.alcc[{bg, a}].push_back(avg_local_clustering_coefficient(u));
                    auto& [out, in] = r.degrees[{bg, a}];
                    for (NodeId v = static_cast<NodeId>(run.seed_node_count); v < run.graph.node_count(); ++v) {
                        out.push_back(static_cast<double>(run.graph.out_neighbors(v).size()));
                        in.push_back(run.graph.in_degree(v));
                    }
                }
            }
        }
        return r;
    }();
    return runs;
}

Verdict alpha_clustering() {
    Verdict v;
    const AlphaRuns& r = alpha_runs();
    for (Background bg : {Background::Ra, Background::Sa}) {
        for (const auto& [name, table] : {std::pair{"gcc", &r.gcc}, std::pair{"alcc", &r.alcc}}) {
            double m[3];
            for (int a = 0; a < 3; ++a) m[a] = median_of(table->at({bg, a}));
            v.require(m[0] < m[1] && m[1] < m[2], to_string(bg) + " " + name + " " + fmt("%.5f", m[0]) +
                                                      (m[0] < m[1] ? " < " : " >= ") + fmt("%.5f", m[1]) +
                                                      (m[1] < m[2] ? " < " : " >= ") + fmt("%.5f", m[2]));
        }
    }
    return v;
}

Verdict out_degree_effect() {
    Verdict v;
    const AlphaRuns& r = alpha_runs();
    for (Background bg : {Background::Ra, Background::Sa}) {
        const auto& [out1, in1] = r.degrees.at({bg, 2});
        const SpearmanResult high = spearman(out1, in1);
        v.require(high.rho > 0 && high.p_value < 0.01,
                  to_string(bg) + " alpha=1 rho=" + fmt("%.3f", high.rho) + " p=" + fmt("%.2g", high.p_value));
        const auto& [out0, in0] = r.degrees.at({bg, 0});
        const SpearmanResult zero = spearman(out0, in0);
        v.require(std::abs(zero.rho) < 0.05, to_string(bg) + " alpha=0 |rho|=" + fmt("%.3f", std::abs(zero.rho)) + " < 0.05");
    }
    return v;
}

// ------------------------------------------------------------ criterion 7

Verdict superstars() {
    Verdict v;
    const ExperimentSetup setup = desk_setup();
    for (Background bg : {Background::Ra, Background::Sa}) {
        std::vector<std::int64_t> f3_with, f3_without;
        bool ordered = true, above = true;
        std::string worst;
        for (int rep = 0; rep < setup.replicates; ++rep) {
            const TemporalDiGraph seed = er_seed(setup, rep);
            const RunOutput with = run_arm(setup, {bg, std::nullopt, true, std::nullopt}, rep, seed);
            const RunOutput without = run_arm(setup, {bg, std::nullopt, false, std::nullopt}, rep, seed);
            std::vector<std::pair<std::int64_t, std::int64_t>> stars;  // (fitness, in_degree)
            std::vector<std::int64_t> others;
            for (NodeId n = static_cast<NodeId>(with.seed_node_count); n < with.graph.node_count(); ++n) {
                const auto& rec = with.graph.node(n);
                if (rec.fitness >= kMinSuperstarFitness) {
                    stars.emplace_back(rec.fitness, with.graph.in_degree(n));
                } else {
                    others.push_back(with.graph.in_degree(n));
                    if (fitness_group(rec.fitness) == 3) f3_with.push_back(with.graph.in_degree(n));
                }
            }
            for (NodeId n = static_cast<NodeId>(without.seed_node_count); n < without.graph.node_count(); ++n) {
                if (fitness_group(without.graph.node(n).fitness) == 3) f3_without.push_back(without.graph.in_degree(n));
            }
            std::sort(stars.begin(), stars.end());
            std::sort(others.begin(), others.end());
            const std::int64_t p999 = nearest_rank(others, 0.999);
            for (std::size_t i = 0; i < stars.size(); ++i) {
                if (i > 0 && stars[i].second <= stars[i - 1].second) ordered = false;
                if (stars[i].second <= p999) above = false;
            }
            if (rep == 0) {
                worst = "in_degree";
                for (auto [f, d] : stars) worst += " " + std::to_string(d);
                worst += " vs p99.9=" + std::to_string(p999);
            }
        }
        v.require(ordered, to_string(bg) + " superstars ordered by fitness (rep1 " + worst + ")");
        v.require(above, to_string(bg) + " every superstar above the 99.9th percentile of other agents");
        const double m_with = median_of(f3_with), m_without = median_of(f3_without);
        v.require(m_with < m_without, to_string(bg) + " f3 agent median in_degree " + fmt("%.1f", m_with) +
                                          " (ss) < " + fmt("%.1f", m_without) + " (no_ss)");
    }
    return v;
}

// ------------------------------------------------------------ criterion 8

Verdict determinism() {
    Verdict v;
    ExperimentSetup setup = desk_setup();
    const TemporalDiGraph seed = er_seed(setup, 0);
    std::string edges[2];
    int threads[2] = {1, 8};
    for (int i = 0; i < 2; ++i) {
        setup.threads = threads[i];
        SimConfig config = arm_config(setup, {Background::Ra, std::nullopt, true, std::nullopt}, 0);
        config.same_year_percentage = 0.1;
        std::ostringstream out;
        write_edges_tsv(run_simulation(config, seed).graph, out);
        edges[i] = out.str();
    }
    v.require(!edges[0].empty() && edges[0] == edges[1],
              "edge lists with 1 and 8 threads identical (" + std::to_string(edges[0].size()) + " bytes)");
    return v;
}

// ------------------------------------------------------------ criterion 9

bool metrics_agree(std::size_t n, const EdgeList& edges) {
    if (n == 0) return ikc_cluster(UndirectedGraph::from_edges(0, edges)).cluster_count == 0;
    const auto g = UndirectedGraph::from_edges(n, edges);
    const Matrix m = to_matrix(n, edges);
    const auto oracle = brute_clustering(m);
    if (std::abs(global_clustering_coefficient(g) - oracle.gcc) > 1e-12) return false;
    if (std::abs(avg_local_clustering_coefficient(g) - oracle.alcc) > 1e-12) return false;
    std::vector<std::int64_t> degrees;
    for (std::size_t v = 0; v < n; ++v) degrees.push_back(std::count(m[v].begin(), m[v].end(), true));
    {
        std::vector<std::int64_t> sorted = degrees;
        std::sort(sorted.begin(), sorted.end());
        const auto at = [&](double p) {
            const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
            return sorted[std::max<std::size_t>(rank, 1) - 1];
        };
        const DegreeStats s = degree_stats(degrees);
        if (s.min != sorted.front() || s.max != sorted.back() || s.median != at(0.5) || s.q75 != at(0.75) ||
            s.q90 != at(0.9) || s.q99 != at(0.99)) {
            return false;
        }
    }
    return sorted_members(ikc_cluster(g).clusters) == sorted_members(brute_ikc(m, 1));
}

// Representatives of every 6-node isomorphism class.
std::vector<std::uint32_t> six_node_classes() {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < 6; ++a) {
        for (int b = a + 1; b < 6; ++b) pairs.emplace_back(a, b);
    }
    int index[6][6];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        index[pairs[i].first][pairs[i].second] = index[pairs[i].second][pairs[i].first] = static_cast<int>(i);
    }
    std::vector<std::array<int, 6>> perms;
    std::array<int, 6> p{0, 1, 2, 3, 4, 5};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::set<std::uint32_t> classes;
    for (std::uint32_t mask = 0; mask < (1u << 15); ++mask) {
        std::uint32_t best = mask;
        for (const auto& perm : perms) {
            std::uint32_t image = 0;
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (mask >> i & 1) image |= 1u << index[perm[pairs[i].first]][perm[pairs[i].second]];
            }
            best = std::min(best, image);
        }
        classes.insert(best);
    }
    return {classes.begin(), classes.end()};
}

Verdict metrics_oracles() {
    Verdict v;
    std::size_t graphs = 0;
    bool ok = true;
    for (std::size_t n = 0; n <= 7 && ok; ++n) {
        for_each_graph(n, [&](const EdgeList& edges) {
            ok = ok && metrics_agree(n, edges);
            ++graphs;
        });
    }
    v.require(ok, "all " + std::to_string(graphs) + " labeled graphs on <= 7 nodes");

    // Every 8-node graph is a 6-node graph plus two vertices; extending one
    // representative per 6-node class covers all 8-node classes.
    const auto classes = six_node_classes();
    std::vector<std::pair<NodeId, NodeId>> six_pairs;
    for (NodeId a = 0; a < 6; ++a) {
        for (NodeId b = a + 1; b < 6; ++b) six_pairs.emplace_back(a, b);
    }
    std::size_t eight = 0;
    ok = classes.size() == 156;
    for (std::uint32_t mask : classes) {
        EdgeList base;
        for (std::size_t i = 0; i < six_pairs.size(); ++i) {
            if (mask >> i & 1) base.push_back(six_pairs[i]);
        }
        for (std::uint32_t n6 = 0; n6 < (1u << 6) && ok; ++n6) {
            for (std::uint32_t n7 = 0; n7 < (1u << 7) && ok; ++n7) {
                EdgeList edges = base;
                for (NodeId u = 0; u < 6; ++u) {
                    if (n6 >> u & 1) edges.push_back({u, 6});
                }
                for (NodeId u = 0; u < 7; ++u) {
                    if (n7 >> u & 1) edges.push_back({u, 7});
                }
                ok = metrics_agree(8, edges);
                ++eight;
            }
        }
    }
    v.require(ok, std::to_string(eight) + " 8-node graphs covering all isomorphism classes (156 six-node bases)");

    std::mt19937_64 gen(50);
    ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
        // Random 50-node digraph, projected the way the metrics see it.
        TemporalDiGraph g;
        std::vector<NodeRecord> nodes;
        for (NodeId i = 0; i < 50; ++i) nodes.push_back({i, 2000, 1, NodeKind::Seed, std::nullopt, 0});
        g.add_nodes_batch(nodes);
        std::vector<Edge> arcs;
        std::bernoulli_distribution coin(0.04 + 0.12 * (t % 5));
        EdgeList undirected;
        for (NodeId a = 0; a < 50; ++a) {
            for (NodeId b = 0; b < 50; ++b) {
                if (a != b && coin(gen)) {
                    arcs.push_back({a, b, kSeedEdgeYear});
                    undirected.push_back({std::min(a, b), std::max(a, b)});
                }
            }
        }
        g.commit_edges_batch(arcs);
        std::sort(undirected.begin(), undirected.end());
        undirected.erase(std::unique(undirected.begin(), undirected.end()), undirected.end());
        const auto projected = UndirectedGraph::from_digraph(g);
        const auto oracle = brute_clustering(to_matrix(50, undirected));
        ok = ok && projected.edge_count() == undirected.size() &&
             std::abs(global_clustering_coefficient(g) - oracle.gcc) < 1e-12 &&
             std::abs(avg_local_clustering_coefficient(g) - oracle.alcc) < 1e-12 && metrics_agree(50, undirected);
    }
    v.require(ok, "100 random 50-node digraphs");
    return v;
}

}  // namespace

// Usage: acceptance [--known-failures 5,7]
// Exit status is the number of failed criteria. With --known-failures the
// run succeeds only when exactly the listed criteria fail; every FAIL line
// is still printed.
int main(int argc, char** argv) {
    std::set<int> known_failures;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--known-failures" && i + 1 < argc) {
            std::stringstream list(argv[++i]);
            std::string item;
            while (std::getline(list, item, ',')) known_failures.insert(std::stoi(item));
        } else {
            std::fprintf(stderr, "usage: %s [--known-failures N,N,...]\n", argv[0]);
            return 64;
        }
    }

    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "quota split exactness", 1.0, quota_split},
        {2, "fitness law shares and chi-square", 5.0, fitness_law},
        {3, "A-res inclusion and subset uniformity", 10.0, ares},
        {4, "growth accounting", 60.0, growth},
        {5, "alpha vs clustering trend", 300.0, alpha_clustering},
        {6, "out_degree vs in_degree trend", 300.0, out_degree_effect},
        {7, "superstar capture and quenching", 300.0, superstars},
        {8, "determinism across thread counts", 120.0, determinism},
        {9, "metrics oracles", 60.0, metrics_oracles},
    };
    int failed = 0;
    std::set<int> failed_ids;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        v.require(seconds < c.budget_seconds, fmt("%.1fs", seconds) + " < " + fmt("%.0fs", c.budget_seconds));
        std::printf("criterion %d %s: %s  [%s]\n", c.id, v.passed ? "PASS" : "FAIL", c.name, v.detail.c_str());
        std::fflush(stdout);
        failed += v.passed ? 0 : 1;
        if (!v.passed) failed_ids.insert(c.id);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    if (argc == 1) return failed;

    const auto join = [](const std::set<int>& ids) {
        std::string out;
        for (int id : ids) out += (out.empty() ? "" : ",") + std::to_string(id);
        return out.empty() ? std::string("none") : out;
    };
    const bool as_known = failed_ids == known_failures;
    std::printf("known failures: expected {%s}, observed {%s}: %s\n", join(known_failures).c_str(),
                join(failed_ids).c_str(), as_known ? "as documented" : "MISMATCH");
    return as_known ? 0 : 1;
}
