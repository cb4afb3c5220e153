#include "citesim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include <json.hpp>

#include "citesim/error.hpp"
#include "citesim/graph_io.hpp"
#include "citesim/metrics.hpp"
#include "citesim/rng.hpp"

namespace citesim {

namespace {

constexpr double kAlphaGrid[] = {0.0, 0.5, 1.0};
constexpr Background kBackgrounds[] = {Background::Ra, Background::Sa};
constexpr int kOutDegreeBinWidth = 25;

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

std::string fixed(double value, int digits) { return fmt(("%." + std::to_string(digits) + "f").c_str(), value); }

std::string count(double value) { return fmt("%.0f", value); }

std::string alpha_label(double alpha) { return fixed(alpha, 1); }

std::string ss_label(bool superstars) { return superstars ? "ss" : "no_ss"; }

void report_progress(const ExperimentSetup& setup, const std::string& message) {
    if (setup.progress) setup.progress(message);
}

// Seed graphs are shared by every arm of a replicate.
class SeedCache {
public:
    explicit SeedCache(const ExperimentSetup& setup) : setup_(setup) {}

    const TemporalDiGraph& er(int replicate) {
        auto it = er_.find(replicate);
        if (it == er_.end()) it = er_.emplace(replicate, er_seed(setup_, replicate)).first;
        return it->second;
    }

    const TemporalDiGraph& real() {
        if (!real_) {
            LoadOptions options;
            options.fitness_law = setup_.fitness_law;
            options.master_seed = setup_.master_seed;
            real_ = load_graph(setup_.real_seed->first, setup_.real_seed->second, options).graph;
        }
        return *real_;
    }

private:
    const ExperimentSetup& setup_;
    std::map<int, TemporalDiGraph> er_;
    std::optional<TemporalDiGraph> real_;
};

RunOutput run_logged(const ExperimentSetup& setup, const Arm& arm, int replicate, const TemporalDiGraph& seed,
                     const std::string& dataset) {
    report_progress(setup, dataset + " replicate " + std::to_string(replicate + 1) + ": " + describe(arm));
    return run_arm(setup, arm, replicate, seed);
}

std::vector<std::int64_t> agent_in_degrees(const RunOutput& run) {
    std::vector<std::int64_t> out;
    for (NodeId v = static_cast<NodeId>(run.seed_node_count); v < run.graph.node_count(); ++v) {
        out.push_back(run.graph.in_degree(v));
    }
    return out;
}

std::vector<std::int64_t> agent_out_degrees(const RunOutput& run) {
    std::vector<std::int64_t> out;
    for (NodeId v = static_cast<NodeId>(run.seed_node_count); v < run.graph.node_count(); ++v) {
        out.push_back(static_cast<std::int64_t>(run.graph.out_neighbors(v).size()));
    }
    return out;
}

double median_stat(const std::vector<DegreeStats>& stats, std::int64_t DegreeStats::*field) {
    std::vector<double> values;
    for (const auto& s : stats) values.push_back(static_cast<double>(s.*field));
    return median_of(values);
}

// Pooled agent (out_degree, in_degree) pairs of several runs.
struct DegreePairs {
    std::vector<double> out;
    std::vector<double> in;

    void add(const RunOutput& run) {
        const auto o = agent_out_degrees(run);
        const auto i = agent_in_degrees(run);
        out.insert(out.end(), o.begin(), o.end());
        in.insert(in.end(), i.begin(), i.end());
    }
};

void add_binned_rows(Report& report, const std::vector<std::string>& prefix, const DegreePairs& pairs) {
    std::map<int, std::vector<std::int64_t>> bins;
    const int lo = static_cast<int>(*std::min_element(pairs.out.begin(), pairs.out.end()));
    for (std::size_t i = 0; i < pairs.out.size(); ++i) {
        const int bin = (static_cast<int>(pairs.out[i]) - lo) / kOutDegreeBinWidth;
        bins[bin].push_back(static_cast<std::int64_t>(pairs.in[i]));
    }
    for (auto& [bin, values] : bins) {
        const DegreeStats s = degree_stats(values);
        auto row = prefix;
        row.push_back(std::to_string(lo + bin * kOutDegreeBinWidth) + "-" +
                      std::to_string(lo + (bin + 1) * kOutDegreeBinWidth - 1));
        row.push_back(std::to_string(s.count));
        for (auto v : {s.median, s.q75, s.q90, s.q99}) row.push_back(std::to_string(v));
        report.rows.push_back(std::move(row));
    }
}

TrendCheck positive_correlation(const std::string& name, const DegreePairs& pairs) {
    const SpearmanResult r = spearman(pairs.out, pairs.in);
    return {name, r.rho > 0.0 && r.p_value < 0.01,
            "rho=" + fmt("%.4f", r.rho) + " p=" + fmt("%.3g", r.p_value) + " n=" + std::to_string(r.n)};
}

TrendCheck no_correlation(const std::string& name, const DegreePairs& pairs) {
    const SpearmanResult r = spearman(pairs.out, pairs.in);
    return {name, std::abs(r.rho) < 0.05,
            "rho=" + fmt("%.4f", r.rho) + " p=" + fmt("%.3g", r.p_value) + " n=" + std::to_string(r.n)};
}

// ------------------------------------------------------------- reports

Report report_t1(const ExperimentSetup& setup, SeedCache& seeds) {
    Report r{"T1", "Clustering coefficients (median of replicates)", {"dataset", "agent_bg", "gcc", "alcc"}, {}, {}};
    std::vector<std::string> datasets{"er"};
    if (setup.real_seed) datasets.push_back("sj");
    for (const auto& dataset : datasets) {
        std::map<Background, double> alcc_by_bg;
        for (Background bg : kBackgrounds) {
            std::vector<double> gcc, alcc;
            for (int rep = 0; rep < setup.replicates; ++rep) {
                const auto& seed = dataset == "er" ? seeds.er(rep) : seeds.real();
                const RunOutput run = run_logged(setup, {bg, std::nullopt, false, std::nullopt}, rep, seed, dataset);
                const auto u = UndirectedGraph::from_digraph(run.graph);
                gcc.push_back(global_clustering_coefficient(u));
                alcc.push_back(avg_local_clustering_coefficient(u));
            }
            alcc_by_bg[bg] = median_of(alcc);
            r.rows.push_back({dataset, to_string(bg), fixed(median_of(gcc), 7), fixed(median_of(alcc), 7)});
        }
        r.checks.push_back({dataset + ": alcc(sa) > alcc(ra)", alcc_by_bg[Background::Sa] > alcc_by_bg[Background::Ra],
                            "sa=" + fixed(alcc_by_bg[Background::Sa], 5) + " ra=" + fixed(alcc_by_bg[Background::Ra], 5)});
    }
    return r;
}

Report report_t2(const ExperimentSetup& setup, SeedCache& seeds) {
    Report r{"T2", "Positional statistics of in_degree, all nodes with in_degree > 0",
             {"tag", "min", "med", "q0.9", "q0.99", "max"}, {}, {}};
    const auto add = [&](const std::string& tag, const RunOutput& run) {
        const DegreeStats s = in_degree_stats(run.graph, DegreeSubset::ExcludeZero);
        r.rows.push_back({tag, std::to_string(s.min), std::to_string(s.median), std::to_string(s.q90),
                          std::to_string(s.q99), std::to_string(s.max)});
    };
    for (int rep = 0; rep < setup.replicates; ++rep) {
        for (Background bg : kBackgrounds) {
            add("er" + std::to_string(rep + 1) + "_" + to_string(bg),
                run_logged(setup, {bg, std::nullopt, false, std::nullopt}, rep, seeds.er(rep), "er"));
        }
    }
    if (setup.real_seed) {
        for (int rep = 0; rep < setup.replicates; ++rep) {
            for (Background bg : kBackgrounds) {
                add("sj_rep" + std::to_string(rep) + "_" + to_string(bg),
                    run_logged(setup, {bg, std::nullopt, false, std::nullopt}, rep, seeds.real(), "sj"));
            }
        }
    }
    return r;
}

// Per-network measurements of the alpha x background x superstar grid.
struct GridCell {
    std::vector<double> gcc, lcc;
    std::vector<double> nc, cc, cs, k;
    std::vector<DegreeStats> agent_in;
};

using GridKey = std::tuple<double, Background, bool>;

std::map<GridKey, GridCell> run_grid(const ExperimentSetup& setup, SeedCache& seeds, bool clustering, bool ikc,
                                     bool agent_stats) {
    std::map<GridKey, GridCell> grid;
    for (int rep = 0; rep < setup.replicates; ++rep) {
        for (double alpha : kAlphaGrid) {
            for (Background bg : kBackgrounds) {
                for (bool ss : {false, true}) {
                    const RunOutput run = run_logged(setup, {bg, alpha, ss, std::nullopt}, rep, seeds.er(rep), "er");
                    GridCell& cell = grid[{alpha, bg, ss}];
                    if (clustering || ikc) {
                        const auto u = UndirectedGraph::from_digraph(run.graph);
                        if (clustering) {
                            cell.gcc.push_back(global_clustering_coefficient(u));
                            cell.lcc.push_back(avg_local_clustering_coefficient(u));
                        }
                        if (ikc) {
                            const IkcResult res = ikc_cluster(u);
                            std::vector<double> sizes, ks;
                            for (const auto& c : res.clusters) {
                                if (c.members.size() < 2) continue;
                                sizes.push_back(static_cast<double>(c.members.size()));
                                ks.push_back(c.k);
                            }
                            cell.nc.push_back(res.node_coverage);
                            cell.cc.push_back(static_cast<double>(sizes.size()));
                            cell.cs.push_back(median_of(sizes));
                            cell.k.push_back(median_of(ks));
                        }
                    }
                    if (agent_stats) cell.agent_in.push_back(in_degree_stats(run.graph, DegreeSubset::AgentsOnly));
                }
            }
        }
    }
    return grid;
}

std::vector<std::string> grid_prefix(const GridKey& key) {
    const auto& [alpha, bg, ss] = key;
    return {alpha_label(alpha), to_string(bg), ss_label(ss)};
}

// Grid keys in table order: alpha, then background, then superstars.
std::vector<GridKey> grid_order() {
    std::vector<GridKey> keys;
    for (double alpha : kAlphaGrid) {
        for (Background bg : kBackgrounds) {
            for (bool ss : {false, true}) keys.emplace_back(alpha, bg, ss);
        }
    }
    return keys;
}

Report report_t3(const ExperimentSetup& setup, SeedCache& seeds) {
    Report r{"T3", "Global (gcc) and average local (lcc) clustering as alpha varies (median of replicates)",
             {"alpha", "bg", "ss", "gcc", "lcc"}, {}, {}};
    auto grid = run_grid(setup, seeds, true, false, false);
    for (const auto& key : grid_order()) {
        auto row = grid_prefix(key);
        row.push_back(fixed(median_of(grid[key].gcc), 6));
        row.push_back(fixed(median_of(grid[key].lcc), 6));
        r.rows.push_back(std::move(row));
    }
    for (Background bg : kBackgrounds) {
        for (bool ss : {false, true}) {
            for (const auto& [name, field] : {std::pair{"gcc", &GridCell::gcc}, std::pair{"lcc", &GridCell::lcc}}) {
                std::vector<double> m;
                for (double alpha : kAlphaGrid) m.push_back(median_of(grid[{alpha, bg, ss}].*field));
                r.checks.push_back({std::string(name) + " increases with alpha (" + to_string(bg) + ", " + ss_label(ss) + ")",
                                    m[0] < m[1] && m[1] < m[2],
                                    fmt("%.6f", m[0]) + (m[0] < m[1] ? " < " : " >= ") + fmt("%.6f", m[1]) +
                                        (m[1] < m[2] ? " < " : " >= ") + fmt("%.6f", m[2])});
            }
        }
    }
    return r;
}

Report report_t4(const ExperimentSetup& setup, SeedCache& seeds) {
    Report r{"T4", "IKC clustering; singleton clusters excluded (median of replicates)",
             {"alpha", "bg", "ss", "median(nc)", "median(cc)", "median(cs)", "median(k)"}, {}, {}};
    auto grid = run_grid(setup, seeds, false, true, false);
    double cc_ra = 0.0, cc_sa = 0.0;
    for (const auto& key : grid_order()) {
        const GridCell& c = grid[key];
        auto row = grid_prefix(key);
        row.push_back(fixed(median_of(c.nc), 2));
        row.push_back(fixed(median_of(c.cc), 2));
        row.push_back(fixed(median_of(c.cs), 2));
        row.push_back(fixed(median_of(c.k), 2));
        r.rows.push_back(std::move(row));
        (std::get<1>(key) == Background::Ra ? cc_ra : cc_sa) += median_of(c.cc);
    }
    r.checks.push_back({"cluster count: sa below ra (summed over the grid)", cc_sa < cc_ra,
                        "sa=" + count(cc_sa) + " ra=" + count(cc_ra)});
    return r;
}

Report report_t5(const ExperimentSetup& setup, SeedCache& seeds) {
    Report r{"T5", "Positional statistics of agent in_degree as alpha varies (median of replicates)",
             {"alpha", "bg", "ss", "min", "median", "q0.75", "q0.90", "q0.99", "max"}, {}, {}};
    auto grid = run_grid(setup, seeds, false, false, true);
    for (const auto& key : grid_order()) {
        const auto& s = grid[key].agent_in;
        auto row = grid_prefix(key);
        for (auto field : {&DegreeStats::min, &DegreeStats::median, &DegreeStats::q75, &DegreeStats::q90,
                           &DegreeStats::q99, &DegreeStats::max}) {
            row.push_back(count(median_stat(s, field)));
        }
        r.rows.push_back(std::move(row));
    }
    for (Background bg : kBackgrounds) {
        for (double alpha : kAlphaGrid) {
            const double with = median_stat(grid[{alpha, bg, true}].agent_in, &DegreeStats::max);
            const double without = median_stat(grid[{alpha, bg, false}].agent_in, &DegreeStats::max);
            r.checks.push_back({"max in_degree: ss above no_ss (alpha " + alpha_label(alpha) + ", " + to_string(bg) + ")",
                                with > without, "ss=" + count(with) + " no_ss=" + count(without)});
        }
        const double q0 = median_stat(grid[{0.0, bg, false}].agent_in, &DegreeStats::q90);
        const double q1 = median_stat(grid[{1.0, bg, false}].agent_in, &DegreeStats::q90);
        r.checks.push_back({"q0.90 at alpha 1 >= alpha 0 (" + to_string(bg) + ", no_ss)", q1 >= q0,
                            "alpha1=" + count(q1) + " alpha0=" + count(q0)});
    }
    return r;
}

Report report_f1(const ExperimentSetup& setup, SeedCache& seeds) {
    Report r{"F1", "in_degree by fitness group, nodes with in_degree > 0 (replicates pooled)",
             {"bg", "group", "nodes", "share%", "zero_in%", "median", "q0.75", "q0.90", "max"}, {}, {}};
    const FitnessLaw law(setup.fitness_law);
    const double expected[3] = {law.cdf(10), law.cdf(100) - law.cdf(10), law.cdf(1000) - law.cdf(100)};
    for (Background bg : kBackgrounds) {
        std::vector<std::vector<std::int64_t>> nonzero(kFitnessGroups);
        std::vector<std::size_t> members(kFitnessGroups, 0), zeros(kFitnessGroups, 0);
        std::size_t total = 0;
        for (int rep = 0; rep < setup.replicates; ++rep) {
            const RunOutput run = run_logged(setup, {bg, std::nullopt, false, std::nullopt}, rep, seeds.er(rep), "er");
            for (NodeId v = 0; v < run.graph.node_count(); ++v) {
                const auto g = static_cast<std::size_t>(fitness_group(run.graph.node(v).fitness) - 1);
                ++members[g];
                ++total;
                const auto d = run.graph.in_degree(v);
                if (d == 0) {
                    ++zeros[g];
                } else {
                    nonzero[g].push_back(d);
                }
            }
        }
        for (int g = 0; g < kFitnessGroups; ++g) {
            const auto i = static_cast<std::size_t>(g);
            std::vector<std::string> row{to_string(bg), fitness_group_label(g + 1), std::to_string(members[i]),
                                         fixed(100.0 * static_cast<double>(members[i]) / static_cast<double>(total), 3),
                                         members[i] ? fixed(100.0 * static_cast<double>(zeros[i]) / static_cast<double>(members[i]), 2) : "-"};
            if (nonzero[i].empty()) {
                row.insert(row.end(), {"-", "-", "-", "-"});
            } else {
                const DegreeStats s = degree_stats(nonzero[i]);
                for (auto v : {s.median, s.q75, s.q90, s.max}) row.push_back(std::to_string(v));
            }
            r.rows.push_back(std::move(row));
            if (g < 3) {
                const double share = static_cast<double>(members[i]) / static_cast<double>(total);
                r.checks.push_back({fitness_group_label(g + 1) + " share within 2pp of the fitness law (" + to_string(bg) + ")",
                                    std::abs(share - expected[g]) <= 0.02,
                                    "observed=" + fixed(100 * share, 2) + "% expected=" + fixed(100 * expected[g], 2) + "%"});
            }
        }
    }
    return r;
}

Report report_f3(const ExperimentSetup& setup, SeedCache& seeds) {
    Report r{"F3", "Agent in_degree percentiles by out_degree (replicates pooled)",
             {"distribution", "bg", "out_degree", "agents", "median", "q0.75", "q0.90", "q0.99"}, {}, {}};
    for (OutDegreeKind kind : {OutDegreeKind::PowerLaw, OutDegreeKind::Normal, OutDegreeKind::Uniform}) {
        for (Background bg : kBackgrounds) {
            DegreePairs pairs;
            for (int rep = 0; rep < setup.replicates; ++rep) {
                pairs.add(run_logged(setup, {bg, std::nullopt, false, kind}, rep, seeds.er(rep), "er"));
            }
            add_binned_rows(r, {to_string(kind), to_string(bg)}, pairs);
            r.checks.push_back(positive_correlation("out_degree vs in_degree positive (" + to_string(kind) + ", " +
                                                        to_string(bg) + ")",
                                                    pairs));
        }
    }
    return r;
}

Report report_f4(const ExperimentSetup& setup, SeedCache& seeds) {
    Report r{"F4", "Agent in_degree percentiles by out_degree as alpha varies (replicates pooled)",
             {"alpha", "bg", "out_degree", "agents", "median", "q0.75", "q0.90", "q0.99"}, {}, {}};
    for (double alpha : kAlphaGrid) {
        for (Background bg : kBackgrounds) {
            DegreePairs pairs;
            for (int rep = 0; rep < setup.replicates; ++rep) {
                pairs.add(run_logged(setup, {bg, alpha, false, std::nullopt}, rep, seeds.er(rep), "er"));
            }
            add_binned_rows(r, {alpha_label(alpha), to_string(bg)}, pairs);
            const std::string where = "(alpha " + alpha_label(alpha) + ", " + to_string(bg) + ")";
            r.checks.push_back(alpha == 0.0 ? no_correlation("out_degree vs in_degree uncorrelated " + where, pairs)
                                            : positive_correlation("out_degree vs in_degree positive " + where, pairs));
        }
    }
    return r;
}

}  // namespace

std::string to_string(Background bg) { return bg == Background::Ra ? "ra" : "sa"; }

PhenotypeMode background_mode(Background bg, std::optional<double> alpha) {
    if (bg == Background::Ra) {
        return alpha ? PhenotypeMode::hybrid_alpha(*alpha) : PhenotypeMode::random_mode();
    }
    Phenotype p;
    if (alpha) p.alpha = *alpha;
    return PhenotypeMode::static_mode(p);
}

ExperimentSetup scaled_setup(double scale, const RecencyTable& recency_table) {
    if (!(scale > 0.0 && scale <= 1.0)) throw ConfigError("scale must lie in (0, 1]");
    ExperimentSetup setup;
    setup.seed_nodes = static_cast<std::size_t>(round_half_up(scale * static_cast<double>(kReferenceSeedNodes)));
    setup.seed_edges = static_cast<std::size_t>(round_half_up(scale * static_cast<double>(kReferenceSeedEdges)));
    setup.years = 30;
    setup.recency_table = recency_table;
    const auto needed = static_cast<std::size_t>(setup.out_degree.max) + 1;
    if (setup.seed_nodes < needed) {
        throw ConfigError("scale " + fmt("%g", scale) + " gives a seed graph of " + std::to_string(setup.seed_nodes) +
                          " nodes; at least " + std::to_string(needed) + " are needed to place the largest reference lists");
    }
    return setup;
}

std::string describe(const Arm& arm) {
    std::string s = "bg=" + to_string(arm.bg);
    if (arm.alpha) s += " alpha=" + alpha_label(*arm.alpha);
    s += " " + ss_label(arm.superstars);
    if (arm.out_degree) s += " out_degree=" + to_string(*arm.out_degree);
    return s;
}

TemporalDiGraph er_seed(const ExperimentSetup& setup, int replicate) {
    ErSpec spec{setup.seed_nodes, setup.seed_edges, true, setup.seed_years};
    return gen_erdos_renyi_gnm(spec, setup.fitness_law,
                               derive_seed(setup.master_seed, {static_cast<std::uint64_t>(StreamTag::ErGraph),
                                                               static_cast<std::uint64_t>(replicate)}));
}

SimConfig arm_config(const ExperimentSetup& setup, const Arm& arm, int replicate) {
    SimConfig c;
    c.growth_rate = setup.growth_rate;
    c.years = setup.years;
    c.agent_background = background_mode(arm.bg, arm.alpha);
    c.out_degree = setup.out_degree;
    if (arm.out_degree) c.out_degree.kind = *arm.out_degree;
    c.fitness_law = setup.fitness_law;
    c.recency_table = setup.recency_table;
    if (arm.superstars) c.superstars = default_superstars();
    c.master_seed = derive_seed(setup.master_seed, {static_cast<std::uint64_t>(replicate)});
    c.threads = setup.threads;
    return c;
}

RunOutput run_arm(const ExperimentSetup& setup, const Arm& arm, int replicate, const TemporalDiGraph& seed) {
    return run_simulation(arm_config(setup, arm, replicate), seed);
}

bool Report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const TrendCheck& c) { return c.passed; });
}

void Report::write_text(std::ostream& out) const {
    out << id << ": " << title << "\n";
    std::vector<std::size_t> width(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) out << "  ";
            const std::string pad(width[c] - cells[c].size(), ' ');
            // Text columns left-aligned, numbers right-aligned.
            const bool numeric = !cells[c].empty() && (std::isdigit(static_cast<unsigned char>(cells[c][0])) || cells[c][0] == '-');
            out << (numeric ? pad + cells[c] : cells[c] + pad);
        }
        out << "\n";
    };
    line(columns);
    for (const auto& row : rows) line(row);
    for (const auto& check : checks) {
        out << (check.passed ? "PASS " : "FAIL ") << check.name << "  [" << check.detail << "]\n";
    }
}

void Report::write_tsv(std::ostream& out) const {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "\t" : "") << columns[c];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "\t" : "") << row[c];
        out << "\n";
    }
}

std::string Report::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["title"] = title;
    j["columns"] = columns;
    j["rows"] = rows;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["all_passed"] = all_passed();
    return j.dump(2);
}

bool is_report_id(const std::string& id) {
    for (const char* known : {"T1", "T2", "T3", "T4", "T5", "F1", "F3", "F4"}) {
        if (id == known) return true;
    }
    return false;
}

Report run_report(const std::string& id, const ExperimentSetup& setup) {
    if (!is_report_id(id)) throw ConfigError("unknown table id '" + id + "' (expected T1-T5, F1, F3 or F4)");
    if (setup.replicates < 1) throw ConfigError("replicates must be >= 1");
    SeedCache seeds(setup);
    if (id == "T1") return report_t1(setup, seeds);
    if (id == "T2") return report_t2(setup, seeds);
    if (id == "T3") return report_t3(setup, seeds);
    if (id == "T4") return report_t4(setup, seeds);
    if (id == "T5") return report_t5(setup, seeds);
    if (id == "F1") return report_f1(setup, seeds);
    if (id == "F3") return report_f3(setup, seeds);
    return report_f4(setup, seeds);
}

}  // namespace citesim
