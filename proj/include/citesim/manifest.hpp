#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citesim/config.hpp"
#include "citesim/engine.hpp"

namespace citesim {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
// Throws DataError if the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

std::string tool_version();

struct FileDigest {
    std::string path;
    std::string sha256;

    friend bool operator==(const FileDigest&, const FileDigest&) = default;
};

// Everything needed to rerun a simulation and check that it reproduced.
struct RunManifest {
    std::string tool_version;
    std::string config_hash;
    std::uint64_t master_seed = 0;
    std::map<std::string, FileDigest> inputs;   // edges, nodes, recency, [out_degree]
    std::map<std::string, FileDigest> outputs;  // edges, nodes, events, [id_map]
    std::map<std::string, std::string> config;  // canonical entries
    double wall_time_seconds = 0.0;

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
    static RunManifest load(const std::filesystem::path& path);
};

// Hash of the canonical entries that determine the output: everything
// except output.dir and engine.threads (output is thread-count invariant).
std::string config_hash(const std::map<std::string, std::string>& canonical);

// One JSON object per line: year, type, agent, value, value2.
void write_events_jsonl(std::span<const Event> events, std::ostream& out);

// Loads the seed graph, runs the simulation and writes edges.tsv,
// nodes.tsv, events.jsonl (plus id_map.tsv when the input node ids were
// not 0..n-1) and manifest.json into settings.output_dir.
RunManifest simulate_to_directory(const RunSettings& settings);

struct ReplayResult {
    RunManifest rerun;
    std::vector<std::string> mismatches;  // empty when everything matched

    bool ok() const noexcept { return mismatches.empty(); }
};

// Reruns the configuration recorded in a manifest, writing to `output_dir`
// (default: the recorded one), and compares input and output digests.
ReplayResult replay_manifest(const RunManifest& manifest,
                             const std::optional<std::filesystem::path>& output_dir = std::nullopt,
                             std::optional<int> threads = std::nullopt);

}  // namespace citesim
