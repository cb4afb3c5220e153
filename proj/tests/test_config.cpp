#include <doctest.h>

#include <sstream>
#include <string>

#include <json.hpp>

#include "citesim/config.hpp"
#include "citesim/error.hpp"
#include "citesim/manifest.hpp"
#include "test_support.hpp"

using namespace citesim;
using citesim::testing::TempDir;

namespace {

ConfigFile parse_text(const std::string& text, const std::filesystem::path& base = "/base") {
    std::istringstream in(text);
    return ConfigFile::parse(in, "test.cfg", base);
}

std::string error_of(const auto& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

// 30 seed nodes over 2000..2002 with a ring of citations to older nodes.
struct SmallRun {
    TempDir dir{"config"};
    std::filesystem::path edges, nodes, recency;

    SmallRun() {
        std::string node_text = "node_id\tyear\tfitness\n";
        std::string edge_text;
        for (int i = 0; i < 30; ++i) {
            node_text += std::to_string(i) + "\t" + std::to_string(2000 + i / 10) + "\t" + std::to_string(1 + i % 7) +
                         "\n";
            if (i >= 10) edge_text += std::to_string(i) + "\t" + std::to_string(i - 10) + "\n";
        }
        nodes = dir.file("nodes.tsv", node_text);
        edges = dir.file("edges.tsv", edge_text);
        recency = dir.file("recency.tsv", "age\tlikelihood\n0\t0.3\n1\t0.25\n2\t0.2\n3\t0.1\n4\t0.08\n5\t0.05\n"
                                          "6\t0.02\n");
    }

    ConfigFile config(const std::string& out_name, int threads = 1) const {
        ConfigFile c = parse_text("engine.years=3\n"
                                  "engine.seed=11\n"
                                  "engine.growth_rate=0.2\n"
                                  "engine.same_year_percentage=0.2\n"
                                  "agents.background=random\n"
                                  "out_degree.kind=uniform\n"
                                  "out_degree.min=2\n"
                                  "out_degree.max=5\n"
                                  "engine.superstars=2:10000\n",
                                  dir.path());
        c.set("input.edges", edges.string());
        c.set("input.nodes", nodes.string());
        c.set("recency.table", recency.string());
        c.set("output.dir", (dir.path() / out_name).string());
        c.set("engine.threads", std::to_string(threads));
        return c;
    }
};

}  // namespace

TEST_CASE("config file syntax") {
    const ConfigFile c = parse_text("# comment\n"
                                    "\n"
                                    "  engine.years = 12  \n"
                                    "engine.growth_rate=0.030\n"
                                    "score.recency_multiplicity=off\n"
                                    "engine.superstars=default\n"
                                    "recency.table=tables/r.tsv\n");
    CHECK(c.get("engine.years") == "12");
    CHECK(c.get("engine.growth_rate") == "0.03");
    CHECK(c.get("score.recency_multiplicity") == "false");
    CHECK(c.get("engine.superstars") == "1:10000,1:100000,1:1000000");
    CHECK(c.get("recency.table") == "/base/tables/r.tsv");
    CHECK_FALSE(c.get("engine.seed").has_value());

    CHECK(error_of([] { parse_text("engine.years=1\nengine.yaers=2\n"); }) ==
          "test.cfg:2: unknown config key 'engine.yaers'");
    CHECK(error_of([] { parse_text("engine.years\n"); }) == "test.cfg:1: expected key=value");
    CHECK(error_of([] { parse_text("engine.years=1\nengine.years=2\n"); }) ==
          "test.cfg:2: engine.years is set twice");
    CHECK(error_of([] { parse_text("engine.years=ten\n"); }) ==
          "test.cfg:1: engine.years: expected an integer, got 'ten'");
    CHECK(error_of([] { parse_text("engine.same_year_consumes_quota=maybe\n"); }).find("expected true/false") !=
          std::string::npos);
    CHECK_THROWS_AS(parse_text("engine.superstars=3\n"), ConfigError);

    ConfigFile overridden = c;
    overridden.set_assignment("engine.years=4");
    CHECK(overridden.get("engine.years") == "4");
    CHECK_THROWS_AS(overridden.set_assignment("engine.years"), ConfigError);
}

TEST_CASE("superstar list syntax") {
    CHECK(parse_superstars("none").empty());
    CHECK(parse_superstars("default") == default_superstars());
    CHECK(parse_superstars("2:20000, 5:1000000") == std::vector<Superstar>{{2, 20000}, {5, 1000000}});
    CHECK(format_superstars({{2, 20000}, {5, 1000000}}) == "2:20000,5:1000000");
    CHECK(format_superstars({}) == "none");
    CHECK_THROWS_AS(parse_superstars("2-20000"), ConfigError);
}

TEST_CASE("resolving settings") {
    SmallRun run;
    SUBCASE("defaults match the simulator defaults") {
        ConfigFile c;
        c.set("input.edges", run.edges.string());
        c.set("input.nodes", run.nodes.string());
        c.set("recency.table", run.recency.string());
        c.set("engine.years", "6");
        const RunSettings s = resolve_settings(c);
        const SimConfig d;
        CHECK(s.sim.growth_rate == d.growth_rate);
        CHECK(s.sim.years == 6);
        CHECK_FALSE(s.sim.start_year.has_value());
        CHECK(s.sim.same_year_percentage == d.same_year_percentage);
        CHECK(s.sim.same_year_consumes_quota == d.same_year_consumes_quota);
        CHECK(s.sim.agent_background.kind == BackgroundKind::Static);
        CHECK(s.sim.agent_background.fixed == Phenotype{});
        CHECK(s.sim.out_degree.kind == d.out_degree.kind);
        CHECK(s.sim.out_degree.min == d.out_degree.min);
        CHECK(s.sim.out_degree.max == d.out_degree.max);
        CHECK(s.sim.out_degree.mean == d.out_degree.mean);
        CHECK(s.sim.out_degree.sd == d.out_degree.sd);
        CHECK(s.sim.fitness_law.scale == d.fitness_law.scale);
        CHECK(s.sim.fitness_law.coeff == d.fitness_law.coeff);
        CHECK(s.sim.fitness_law.exponent == d.fitness_law.exponent);
        CHECK(s.sim.fitness_law.outlier_max == d.fitness_law.outlier_max);
        CHECK(s.sim.gamma == d.gamma);
        CHECK(s.sim.c == d.c);
        CHECK(s.sim.recency_multiplicity == d.recency_multiplicity);
        CHECK(s.sim.superstars.empty());
        CHECK(s.sim.neighborhood == NeighborhoodMode::Union);
        CHECK(s.sim.generator_from_all_nodes);
        CHECK(s.sim.always_cite_generator);
        CHECK(s.sim.recency_table.values().size() == 7);
        CHECK(s.canonical.at("output.dir") == (std::filesystem::current_path() / "citesim-out").string());
        CHECK(s.canonical.size() == known_config_keys().size() - 6);  // start_year, agents.*, out_degree.table
    }
    SUBCASE("missing required inputs are named") {
        ConfigFile c;
        c.set("input.edges", run.edges.string());
        c.set("input.nodes", run.nodes.string());
        CHECK(error_of([&] { resolve_settings(c); }) == "missing required input: recency.table");
        c.set("recency.table", run.recency.string());
        c.set("out_degree.kind", "empirical");
        CHECK(error_of([&] { resolve_settings(c); }).find("out_degree.table") != std::string::npos);
    }
    SUBCASE("phenotype backgrounds") {
        ConfigFile c = run.config("unused");
        c.set("agents.background", "static");
        c.set("agents.alpha", "0.25");
        c.set("agents.pw", "0.5");
        c.set("agents.rw", "0.25");
        c.set("agents.fw", "0.25");
        const auto fixed = resolve_settings(c).sim.agent_background;
        CHECK(fixed.kind == BackgroundKind::Static);
        CHECK(fixed.fixed == Phenotype{0.5, 0.25, 0.25, 0.25});

        c.set("agents.background", "hybrid");
        const auto hybrid = resolve_settings(c).sim.agent_background;
        CHECK(hybrid.kind == BackgroundKind::Hybrid);
        CHECK(hybrid.alpha == 0.25);
        CHECK(hybrid.pw == 0.5);

        c.set("agents.background", "random");
        CHECK(error_of([&] { resolve_settings(c); }).find("agents.alpha") != std::string::npos);
    }
    SUBCASE("switches") {
        ConfigFile c = run.config("unused");
        c.set("engine.neighborhood", "in");
        c.set("engine.generator_pool", "agents");
        c.set("engine.always_cite_generator", "no");
        c.set("engine.start_year", "2010");
        const RunSettings s = resolve_settings(c);
        CHECK(s.sim.neighborhood == NeighborhoodMode::InOnly);
        CHECK_FALSE(s.sim.generator_from_all_nodes);
        CHECK_FALSE(s.sim.always_cite_generator);
        CHECK(s.sim.start_year == 2010);
        c.set("engine.neighborhood", "sideways");
        CHECK_THROWS_AS(resolve_settings(c), ConfigError);
    }
    SUBCASE("unreadable table") {
        ConfigFile c = run.config("unused");
        c.set("recency.table", (run.dir.path() / "nope.tsv").string());
        CHECK_THROWS_AS(resolve_settings(c), DataError);
    }
}

TEST_CASE("relative paths resolve against the config file") {
    TempDir dir{"relpath"};
    std::filesystem::create_directories(dir.path() / "conf");
    const auto cfg = dir.file("conf/run.cfg", "recency.table=../r.tsv\noutput.dir=out\n");
    const ConfigFile c = ConfigFile::load(cfg);
    CHECK(c.get("recency.table") == (dir.path() / "r.tsv").string());
    CHECK(c.get("output.dir") == (dir.path() / "conf" / "out").string());
    CHECK_THROWS_AS(ConfigFile::load(dir.path() / "absent.cfg"), ConfigError);
}

TEST_CASE("sha256 test vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    TempDir dir{"sha"};
    // Larger than one read buffer.
    const auto big = dir.file("big.bin", std::string(200'000, 'a'));
    CHECK(sha256_file(big) == sha256_hex(std::string(200'000, 'a')));
    CHECK_THROWS_AS(sha256_file(dir.path() / "missing"), DataError);
}

TEST_CASE("config hash identifies the run, not where it is written") {
    std::map<std::string, std::string> a = {{"engine.seed", "1"}, {"engine.threads", "1"}, {"output.dir", "/x"}};
    auto b = a;
    b["engine.threads"] = "8";
    b["output.dir"] = "/y";
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) == sha256_hex("engine.seed=1\n"));
    b["engine.seed"] = "2";
    CHECK(config_hash(a) != config_hash(b));
    CHECK(canonical_text(a) == "engine.seed=1\nengine.threads=1\noutput.dir=/x\n");
}

TEST_CASE("event log lines") {
    const std::vector<Event> events = {{2001, EventType::YearStart, -1, 5, 30},
                                       {2001, EventType::Shortfall, 31, 2, 0}};
    std::ostringstream out;
    write_events_jsonl(events, out);
    CHECK(out.str() ==
          "{\"year\":2001,\"type\":\"year_start\",\"agent\":-1,\"value\":5,\"value2\":30}\n"
          "{\"year\":2001,\"type\":\"shortfall\",\"agent\":31,\"value\":2,\"value2\":0}\n");
}

TEST_CASE("simulate writes outputs and a manifest that replays") {
    SmallRun run;
    const RunManifest first = simulate_to_directory(resolve_settings(run.config("out1")));
    const auto out1 = run.dir.path() / "out1";
    for (const char* name : {"edges.tsv", "nodes.tsv", "events.jsonl", "manifest.json"}) {
        CHECK(std::filesystem::exists(out1 / name));
    }
    CHECK_FALSE(std::filesystem::exists(out1 / "id_map.tsv"));
    CHECK(first.outputs.size() == 3);
    CHECK(first.outputs.at("edges").sha256 == sha256_file(out1 / "edges.tsv"));
    CHECK(first.inputs.at("recency").sha256 == sha256_file(run.recency));
    CHECK(first.master_seed == 11);
    CHECK(first.tool_version == tool_version());
    CHECK(first.config_hash == config_hash(first.config));

    const RunManifest loaded = RunManifest::load(out1 / "manifest.json");
    CHECK(loaded.config == first.config);
    CHECK(loaded.inputs == first.inputs);
    CHECK(loaded.outputs == first.outputs);
    CHECK(loaded.wall_time_seconds == first.wall_time_seconds);

    SUBCASE("rerun with another thread count") {
        const RunManifest second = simulate_to_directory(resolve_settings(run.config("out2", 3)));
        CHECK(second.config_hash == first.config_hash);
        for (const auto& [name, file] : first.outputs) CHECK(second.outputs.at(name).sha256 == file.sha256);
    }
    SUBCASE("replay from the manifest") {
        const ReplayResult replay = replay_manifest(loaded, run.dir.path() / "replay", 2);
        CHECK(replay.ok());
        CHECK(replay.rerun.outputs.at("edges").path == (run.dir.path() / "replay" / "edges.tsv").string());
    }
    SUBCASE("replay notices changed inputs") {
        std::ofstream(run.recency, std::ios::app) << "7\t0.01\n";
        const ReplayResult replay = replay_manifest(loaded, run.dir.path() / "replay");
        REQUIRE(replay.mismatches.size() == 1);
        CHECK(replay.mismatches[0].find("input recency") != std::string::npos);
    }
    SUBCASE("replay notices different outputs") {
        RunManifest tampered = loaded;
        tampered.outputs.at("edges").sha256 = std::string(64, '0');
        const ReplayResult replay = replay_manifest(tampered, run.dir.path() / "replay");
        CHECK(replay.mismatches == std::vector<std::string>{"output edges digest differs"});
    }
    SUBCASE("malformed manifest") {
        CHECK_THROWS_AS(RunManifest::from_json("{\"tool_version\": 1}"), DataError);
    }
}

TEST_CASE("non-dense input ids get an id map") {
    TempDir dir{"idmap"};
    const auto nodes = dir.file("n.tsv", "node_id\tyear\tfitness\n10\t2000\t1\n20\t2000\t2\n30\t2001\t3\n");
    const auto edges = dir.file("e.tsv", "30\t10\n20\t10\n");
    const auto recency = dir.file("r.tsv", "0\t1\n1\t0.5\n2\t0.25\n");
    ConfigFile c;
    c.set("input.edges", edges.string());
    c.set("input.nodes", nodes.string());
    c.set("recency.table", recency.string());
    c.set("engine.years", "0");
    c.set("output.dir", (dir.path() / "out").string());
    const RunManifest m = simulate_to_directory(resolve_settings(c));
    REQUIRE(m.outputs.count("id_map") == 1);
    std::ifstream in(dir.path() / "out" / "id_map.tsv");
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == "node_id\tinput_id\n0\t10\n1\t20\n2\t30\n");
}
