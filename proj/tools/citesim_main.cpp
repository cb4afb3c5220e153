#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "citesim/config.hpp"
#include "citesim/error.hpp"
#include "citesim/experiments.hpp"
#include "citesim/graph_io.hpp"
#include "citesim/manifest.hpp"
#include "citesim/metrics.hpp"
#include "citesim/seedgen.hpp"
#include "citesim/tsv.hpp"

#ifndef CITESIM_DATA_DIR
#define CITESIM_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAssertion = 3;

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string config_path;
    std::vector<std::string> assignments;
    std::optional<std::uint64_t> seed;
    std::optional<int> years;
    std::optional<double> growth_rate;
    std::optional<std::string> background;
    std::optional<double> alpha;
    std::optional<std::string> superstars;
    std::optional<int> threads;
    std::optional<std::string> edges;
    std::optional<std::string> nodes;
    std::optional<std::string> recency;
    std::optional<std::string> out;
    std::string from_manifest;
};

void print_manifest_summary(const citesim::RunManifest& manifest) {
    for (const auto& [name, file] : manifest.outputs) {
        std::cout << name << "\t" << file.path << "\t" << file.sha256 << "\n";
    }
    std::cout << "config_hash\t" << manifest.config_hash << "\n";
}

int cmd_simulate(const SimulateArgs& args) {
    if (!args.from_manifest.empty()) {
        const auto manifest = citesim::RunManifest::load(args.from_manifest);
        std::optional<fs::path> out;
        if (args.out) out = fs::path(*args.out);
        const auto result = citesim::replay_manifest(manifest, out, args.threads);
        for (const std::string& m : result.mismatches) std::cerr << "mismatch: " << m << "\n";
        if (!result.ok()) return kExitData;
        print_manifest_summary(result.rerun);
        std::cout << "reproduced: all output digests match\n";
        return kExitOk;
    }

    citesim::ConfigFile config;
    if (!args.config_path.empty()) config = citesim::ConfigFile::load(args.config_path);
    for (const std::string& a : args.assignments) config.set_assignment(a);
    const auto set_if = [&](const char* key, const auto& value) {
        if (!value) return;
        if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, std::string>) {
            config.set(key, *value);
        } else if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, double>) {
            config.set(key, citesim::tsv::format_double(*value));
        } else {
            config.set(key, std::to_string(*value));
        }
    };
    set_if("engine.seed", args.seed);
    set_if("engine.years", args.years);
    set_if("engine.growth_rate", args.growth_rate);
    set_if("agents.background", args.background);
    set_if("agents.alpha", args.alpha);
    set_if("engine.superstars", args.superstars);
    set_if("engine.threads", args.threads);
    set_if("input.edges", args.edges);
    set_if("input.nodes", args.nodes);
    set_if("recency.table", args.recency);
    set_if("output.dir", args.out);

    const citesim::RunSettings settings = citesim::resolve_settings(config);
    const auto manifest = citesim::simulate_to_directory(settings);
    print_manifest_summary(manifest);
    return kExitOk;
}

// ---------------------------------------------------------------- gen-seed

struct GenSeedArgs {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    bool undirected = false;
    std::string years_from;
    std::string year_range = "1950:1982";
    std::uint64_t seed = 0;
    std::string out = "seed";
};

int cmd_gen_seed(const GenSeedArgs& args) {
    citesim::ErSpec spec;
    spec.n = args.nodes;
    spec.m = args.edges;
    spec.directed = !args.undirected;
    if (!args.years_from.empty()) {
        citesim::CopyEmpiricalYears copy;
        citesim::tsv::for_each_row(args.years_from, [&](std::size_t line, const auto& fields) {
            if (fields.size() < 2) throw citesim::DataError(args.years_from + ":" + std::to_string(line) +
                                                            ": expected node_id<TAB>year");
            copy.years.push_back(static_cast<citesim::Year>(citesim::tsv::parse_int(fields[1], args.years_from, line)));
        });
        spec.year_assignment = copy;
    } else {
        const auto colon = args.year_range.find(':');
        if (colon == std::string::npos) throw citesim::ConfigError("--year-range: expected lo:hi");
        citesim::UniformYearRange range;
        try {
            range.lo = std::stoi(args.year_range.substr(0, colon));
            range.hi = std::stoi(args.year_range.substr(colon + 1));
        } catch (const std::exception&) {
            throw citesim::ConfigError("--year-range: expected lo:hi, got '" + args.year_range + "'");
        }
        spec.year_assignment = range;
    }
    const auto graph = citesim::gen_erdos_renyi_gnm(spec, citesim::FitnessLawParams{}, args.seed);
    std::error_code ec;
    fs::create_directories(args.out, ec);
    if (ec) throw citesim::DataError("cannot create " + args.out + ": " + ec.message());
    citesim::write_edges_tsv(graph, fs::path(args.out) / "edges.tsv");
    citesim::write_nodes_tsv(graph, fs::path(args.out) / "nodes.tsv");
    std::cout << "nodes\t" << graph.node_count() << "\nedges\t" << graph.edge_count() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- metrics

struct MetricsArgs {
    std::string edges;
    std::string nodes;
    bool as_json = false;
    bool skip_ikc = false;
    std::uint32_t k_min = 1;
};

json stats_json(const citesim::DegreeStats& s) {
    return {{"count", s.count}, {"min", s.min}, {"median", s.median}, {"q75", s.q75},
            {"q90", s.q90},     {"q99", s.q99}, {"max", s.max}};
}

json metrics_report(const citesim::TemporalDiGraph& g, const MetricsArgs& args) {
    using namespace citesim;
    json report;
    report["nodes"] = g.node_count();
    report["edges"] = g.edge_count();
    const auto undirected = UndirectedGraph::from_digraph(g);
    report["gcc"] = global_clustering_coefficient(undirected);
    report["alcc"] = g.node_count() == 0 ? 0.0 : avg_local_clustering_coefficient(undirected);

    json in_degree;
    const std::pair<const char*, DegreeSubset> subsets[] = {
        {"all", DegreeSubset::All}, {"agents", DegreeSubset::AgentsOnly}, {"nonzero", DegreeSubset::ExcludeZero}};
    for (const auto& [name, subset] : subsets) {
        try {
            in_degree[name] = stats_json(in_degree_stats(g, subset));
        } catch (const DataError&) {
            in_degree[name] = nullptr;  // empty subset
        }
    }
    report["in_degree"] = in_degree;

    json groups = json::array();
    for (const auto& s : fitness_group_summary(g)) {
        json row = {{"group", fitness_group_label(s.group)},
                    {"count", s.count},
                    {"share", s.share},
                    {"zero_in_degree", s.zero_in_degree}};
        row["in_degree"] = s.in_degree ? stats_json(*s.in_degree) : json(nullptr);
        groups.push_back(row);
    }
    report["fitness_groups"] = groups;

    if (!args.skip_ikc) {
        const auto ikc = ikc_cluster(undirected, args.k_min);
        std::vector<std::size_t> ks;
        for (const auto& c : ikc.clusters) {
            if (c.members.size() >= 2) ks.push_back(c.k);
        }
        report["ikc"] = {{"k_min", args.k_min},
                         {"nc", ikc.node_coverage},
                         {"cc", ikc.cluster_count},
                         {"cs_median", median_of(ikc.cluster_sizes)},
                         {"k_median", median_of(ks)}};
    }
    return report;
}

void print_flat(const json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) print_flat(value, prefix.empty() ? key : prefix + "." + key);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            const json& item = j[i];
            const std::string label =
                item.is_object() && item.contains("group") ? item["group"].get<std::string>() : std::to_string(i);
            print_flat(item, prefix + "." + label);
        }
    } else if (j.is_number_float()) {
        std::cout << prefix << "\t" << citesim::tsv::format_double(j.get<double>()) << "\n";
    } else if (j.is_string()) {
        if (prefix.size() < 6 || prefix.substr(prefix.size() - 6) != ".group") {
            std::cout << prefix << "\t" << j.get<std::string>() << "\n";
        }
    } else {
        std::cout << prefix << "\t" << j.dump() << "\n";
    }
}

int cmd_metrics(const MetricsArgs& args) {
    const auto loaded = citesim::load_graph(args.edges, args.nodes);
    const json report = metrics_report(loaded.graph, args);
    if (args.as_json) {
        std::cout << report.dump(2) << "\n";
    } else {
        print_flat(report, "");
    }
    return kExitOk;
}

// ---------------------------------------------------------------- reproduce

struct ReproduceArgs {
    std::vector<std::string> tables;
    double scale = 0.01;
    std::optional<int> replicates;
    std::optional<int> years;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string recency = std::string(CITESIM_DATA_DIR) + "/recency_example.tsv";
    std::string sj_edges;
    std::string sj_nodes;
    std::string out_degree_table;
    std::string out;
    bool quiet = false;
};

int cmd_reproduce(const ReproduceArgs& args) {
    std::vector<std::string> ids;
    for (const std::string& t : args.tables) {
        if (t == "all") {
            ids = {"T1", "T2", "T3", "T4", "T5", "F1", "F3", "F4"};
            break;
        }
        if (!citesim::is_report_id(t)) throw citesim::ConfigError("unknown table id '" + t + "'");
        ids.push_back(t);
    }
    if (args.sj_edges.empty() != args.sj_nodes.empty()) {
        throw citesim::ConfigError("--sj-edges and --sj-nodes must be given together");
    }

    auto setup = citesim::scaled_setup(args.scale, citesim::load_recency_table(args.recency));
    if (args.replicates) setup.replicates = *args.replicates;
    if (args.years) setup.years = *args.years;
    setup.master_seed = args.seed;
    setup.threads = args.threads;
    if (!args.sj_edges.empty()) setup.real_seed = std::make_pair(fs::path(args.sj_edges), fs::path(args.sj_nodes));
    if (!args.out_degree_table.empty()) {
        setup.out_degree.kind = citesim::OutDegreeKind::Empirical;
        setup.out_degree.table = citesim::load_out_degree_table(args.out_degree_table);
    }
    if (!args.quiet) setup.progress = [](const std::string& msg) { std::cerr << "  " << msg << "\n"; };
    if (!args.out.empty()) {
        std::error_code ec;
        fs::create_directories(args.out, ec);
        if (ec) throw citesim::DataError("cannot create " + args.out + ": " + ec.message());
    }

    bool all_passed = true;
    for (const std::string& id : ids) {
        const citesim::Report report = citesim::run_report(id, setup);
        report.write_text(std::cout);
        std::cout << "\n";
        all_passed = all_passed && report.all_passed();
        if (!args.out.empty()) {
            std::ofstream tsv(fs::path(args.out) / (id + ".tsv"));
            report.write_tsv(tsv);
            std::ofstream js(fs::path(args.out) / (id + ".json"));
            js << report.to_json() << "\n";
            if (!tsv || !js) throw citesim::DataError("cannot write report files to " + args.out);
        }
    }
    return all_passed ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"citesim: agent-based citation network simulator"};
    app.set_version_flag("--version", citesim::tool_version());
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Grow a citation graph from a seed graph");
    simulate->add_option("-c,--config", sim.config_path, "key=value config file")->check(CLI::ExistingFile);
    simulate->add_option("--set", sim.assignments, "Override a config key (key=value); repeatable");
    simulate->add_option("--seed", sim.seed, "engine.seed");
    simulate->add_option("--years", sim.years, "engine.years");
    simulate->add_option("--growth-rate", sim.growth_rate, "engine.growth_rate");
    simulate->add_option("--background", sim.background, "agents.background (static|random|hybrid)")
        ->check(CLI::IsMember({"static", "random", "hybrid"}));
    simulate->add_option("--alpha", sim.alpha, "agents.alpha");
    simulate->add_option("--superstars", sim.superstars, "engine.superstars (none|default|year:fitness,...)");
    simulate->add_option("--threads", sim.threads, "engine.threads");
    simulate->add_option("--edges", sim.edges, "input.edges");
    simulate->add_option("--nodes", sim.nodes, "input.nodes");
    simulate->add_option("--recency", sim.recency, "recency.table");
    simulate->add_option("-o,--out", sim.out, "output.dir");
    simulate->add_option("--from-manifest", sim.from_manifest, "Rerun a recorded run and compare digests")
        ->check(CLI::ExistingFile)
        ->excludes("--config")
        ->excludes("--set");

    GenSeedArgs gen;
    auto* gen_seed = app.add_subcommand("gen-seed", "Generate a G(n, m) seed graph");
    gen_seed->add_option("-n,--nodes", gen.nodes, "Node count")->required();
    gen_seed->add_option("-m,--edges", gen.edges, "Edge count")->required();
    gen_seed->add_flag("--undirected", gen.undirected, "Draw unordered pairs and orient each by a coin flip");
    auto* years_from = gen_seed->add_option("--years-from", gen.years_from, "Node list whose years are copied")
                           ->check(CLI::ExistingFile);
    gen_seed->add_option("--year-range", gen.year_range, "Uniform year range lo:hi")
        ->capture_default_str()
        ->excludes(years_from);
    gen_seed->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
    gen_seed->add_option("-o,--out", gen.out, "Output directory")->capture_default_str();

    MetricsArgs met;
    auto* metrics = app.add_subcommand("metrics", "Report clustering, degree and cluster statistics");
    metrics->add_option("--edges", met.edges, "Edge list")->required()->check(CLI::ExistingFile);
    metrics->add_option("--nodes", met.nodes, "Node list")->required()->check(CLI::ExistingFile);
    metrics->add_flag("--json", met.as_json, "Emit JSON instead of key-value text");
    metrics->add_flag("--no-ikc", met.skip_ikc, "Skip iterative k-core clustering");
    metrics->add_option("--k-min", met.k_min, "Smallest k kept by iterative k-core clustering")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    ReproduceArgs rep;
    auto* reproduce = app.add_subcommand("reproduce", "Run a scaled experiment grid and check its trends");
    reproduce->add_option("--table", rep.tables, "T1..T5, F1, F3, F4 or all; repeatable")->required();
    reproduce->add_option("--scale", rep.scale, "Seed size relative to the reference graph")->capture_default_str();
    reproduce->add_option("--replicates", rep.replicates, "Replicates per arm (default 3)");
    reproduce->add_option("--years", rep.years, "Simulated years (default 30)");
    reproduce->add_option("--seed", rep.seed, "Master seed")->capture_default_str();
    reproduce->add_option("--threads", rep.threads, "Engine worker threads")->capture_default_str();
    reproduce->add_option("--recency", rep.recency, "Recency table")->capture_default_str()->check(CLI::ExistingFile);
    reproduce->add_option("--sj-edges", rep.sj_edges, "Real seed edge list")->check(CLI::ExistingFile);
    reproduce->add_option("--sj-nodes", rep.sj_nodes, "Real seed node list")->check(CLI::ExistingFile);
    reproduce->add_option("--out-degree-table", rep.out_degree_table, "Empirical out-degree table")
        ->check(CLI::ExistingFile);
    reproduce->add_option("--out", rep.out, "Directory for TSV and JSON copies of each table");
    reproduce->add_flag("-q,--quiet", rep.quiet, "No progress messages");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim);
        if (gen_seed->parsed()) return cmd_gen_seed(gen);
        if (metrics->parsed()) return cmd_metrics(met);
        if (reproduce->parsed()) return cmd_reproduce(rep);
    } catch (const citesim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const citesim::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
