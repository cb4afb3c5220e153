#include "citesim/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "citesim/error.hpp"
#include "citesim/graph_io.hpp"

#ifndef CITESIM_VERSION
#define CITESIM_VERSION "unknown"
#endif

namespace citesim {

namespace {

using json = nlohmann::json;

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
            throw std::runtime_error("SHA-256 initialization failed");
        }
    }

    void update(const void* data, std::size_t size) {
        if (EVP_DigestUpdate(ctx_.get(), data, size) != 1) throw std::runtime_error("SHA-256 update failed");
    }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
        unsigned int length = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), digest.data(), &length) != 1) {
            throw std::runtime_error("SHA-256 finalization failed");
        }
        static constexpr char kHex[] = "0123456789abcdef";
        std::string out;
        out.reserve(2 * length);
        for (unsigned int i = 0; i < length; ++i) {
            out += kHex[digest[i] >> 4];
            out += kHex[digest[i] & 0xF];
        }
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

json digests_to_json(const std::map<std::string, FileDigest>& files) {
    json out = json::object();
    for (const auto& [name, file] : files) out[name] = {{"path", file.path}, {"sha256", file.sha256}};
    return out;
}

std::map<std::string, FileDigest> digests_from_json(const json& j) {
    std::map<std::string, FileDigest> out;
    for (const auto& [name, file] : j.items()) {
        out[name] = FileDigest{file.at("path").get<std::string>(), file.at("sha256").get<std::string>()};
    }
    return out;
}

FileDigest digest_of(const std::filesystem::path& path) { return {path.string(), sha256_file(path)}; }

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    Sha256 h;
    h.update(data.data(), data.size());
    return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    Sha256 h;
    std::array<char, 1 << 16> buffer{};
    while (in) {
        in.read(buffer.data(), buffer.size());
        if (in.gcount() > 0) h.update(buffer.data(), static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

std::string tool_version() { return CITESIM_VERSION; }

std::string RunManifest::to_json() const {
    json j;
    j["tool_version"] = tool_version;
    j["config_hash"] = config_hash;
    j["master_seed"] = master_seed;
    j["inputs"] = digests_to_json(inputs);
    j["outputs"] = digests_to_json(outputs);
    j["config"] = config;
    j["wall_time_seconds"] = wall_time_seconds;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        RunManifest m;
        m.tool_version = j.at("tool_version").get<std::string>();
        m.config_hash = j.at("config_hash").get<std::string>();
        m.master_seed = j.at("master_seed").get<std::uint64_t>();
        m.inputs = digests_from_json(j.at("inputs"));
        m.outputs = digests_from_json(j.at("outputs"));
        m.config = j.at("config").get<std::map<std::string, std::string>>();
        m.wall_time_seconds = j.at("wall_time_seconds").get<double>();
        return m;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed manifest: ") + e.what());
    }
}

RunManifest RunManifest::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read manifest " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

std::string config_hash(const std::map<std::string, std::string>& canonical) {
    auto identity = canonical;
    identity.erase("output.dir");
    identity.erase("engine.threads");
    return sha256_hex(canonical_text(identity));
}

void write_events_jsonl(std::span<const Event> events, std::ostream& out) {
    for (const Event& e : events) {
        const nlohmann::ordered_json j = {{"year", e.year},
                                          {"type", to_string(e.type)},
                                          {"agent", e.agent},
                                          {"value", e.value},
                                          {"value2", e.value2}};
        out << j.dump() << '\n';
    }
}

RunManifest simulate_to_directory(const RunSettings& settings) {
    const auto started = std::chrono::steady_clock::now();

    RunManifest manifest;
    manifest.tool_version = tool_version();
    manifest.config = settings.canonical;
    manifest.config_hash = config_hash(settings.canonical);
    manifest.master_seed = settings.sim.master_seed;
    manifest.inputs["edges"] = digest_of(settings.input_edges);
    manifest.inputs["nodes"] = digest_of(settings.input_nodes);
    manifest.inputs["recency"] = digest_of(settings.recency_table);
    if (settings.out_degree_table) manifest.inputs["out_degree"] = digest_of(*settings.out_degree_table);

    LoadOptions load;
    load.fitness_law = settings.sim.fitness_law;
    load.master_seed = settings.sim.master_seed;
    LoadedGraph seed = load_seed(settings.input_edges, settings.input_nodes, load);
    const bool dense = seed.ids_are_dense();

    RunOutput run = run_simulation(settings.sim, std::move(seed.graph));

    const auto& dir = settings.output_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());

    write_edges_tsv(run.graph, dir / "edges.tsv");
    write_nodes_tsv(run.graph, dir / "nodes.tsv");
    {
        auto out = open_output(dir / "events.jsonl");
        write_events_jsonl(run.events, out);
    }
    manifest.outputs["edges"] = digest_of(dir / "edges.tsv");
    manifest.outputs["nodes"] = digest_of(dir / "nodes.tsv");
    manifest.outputs["events"] = digest_of(dir / "events.jsonl");
    if (!dense) {
        auto out = open_output(dir / "id_map.tsv");
        out << "node_id\tinput_id\n";
        for (std::size_t i = 0; i < seed.external_ids.size(); ++i) out << i << '\t' << seed.external_ids[i] << '\n';
        out.close();
        manifest.outputs["id_map"] = digest_of(dir / "id_map.tsv");
    }

    manifest.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    auto out = open_output(dir / "manifest.json");
    out << manifest.to_json();
    return manifest;
}

ReplayResult replay_manifest(const RunManifest& manifest, const std::optional<std::filesystem::path>& output_dir,
                             std::optional<int> threads) {
    ReplayResult result;
    ConfigFile config;
    for (const auto& [key, value] : manifest.config) config.set(key, value);
    if (output_dir) config.set("output.dir", std::filesystem::absolute(*output_dir).string());
    if (threads) config.set("engine.threads", std::to_string(*threads));
    const RunSettings settings = resolve_settings(config);

    if (config_hash(settings.canonical) != manifest.config_hash) {
        result.mismatches.push_back("config hash differs from the recorded one");
    }
    for (const auto& [name, file] : manifest.inputs) {
        const std::string actual = sha256_file(file.path);
        if (actual != file.sha256) result.mismatches.push_back("input " + name + " (" + file.path + ") changed");
    }
    if (!result.mismatches.empty()) return result;

    result.rerun = simulate_to_directory(settings);
    for (const auto& [name, file] : manifest.outputs) {
        const auto it = result.rerun.outputs.find(name);
        if (it == result.rerun.outputs.end()) {
            result.mismatches.push_back("output " + name + " was not produced");
        } else if (it->second.sha256 != file.sha256) {
            result.mismatches.push_back("output " + name + " digest differs");
        }
    }
    for (const auto& [name, file] : result.rerun.outputs) {
        if (manifest.outputs.count(name) == 0) result.mismatches.push_back("unexpected output " + name);
    }
    return result;
}

}  // namespace citesim
