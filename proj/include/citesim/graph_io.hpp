#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "citesim/distributions.hpp"
#include "citesim/graph.hpp"

namespace citesim {

// Edge list:  source<TAB>target<TAB>year   (input may omit the year column;
//             such edges get kSeedEdgeYear)
// Node list:  node_id<TAB>year[<TAB>fitness]                     seeds
//             node_id<TAB>year<TAB>fitness<TAB>out_quota<TAB>pw<TAB>rw<TAB>fw<TAB>alpha   agents
void write_edges_tsv(const TemporalDiGraph& graph, std::ostream& out);
void write_nodes_tsv(const TemporalDiGraph& graph, std::ostream& out);
void write_edges_tsv(const TemporalDiGraph& graph, const std::filesystem::path& path);
void write_nodes_tsv(const TemporalDiGraph& graph, const std::filesystem::path& path);

struct LoadedGraph {
    TemporalDiGraph graph;
    // External id of each dense node id, in file order.
    std::vector<std::int64_t> external_ids;

    bool ids_are_dense() const;
};

struct LoadOptions {
    // Fills missing fitness columns; stream key is the dense node id.
    FitnessLawParams fitness_law;
    std::uint64_t master_seed = 0;
};

// Reads a node list and an edge list. Node ids are mapped to dense ids in
// file order. Throws DataError for malformed lines, duplicate node ids and
// edges with an endpoint missing from the node list (naming file and line).
LoadedGraph load_graph(const std::filesystem::path& edge_list_path, const std::filesystem::path& node_list_path,
                       const LoadOptions& options = {});

inline LoadedGraph load_seed(const std::filesystem::path& edge_list_path, const std::filesystem::path& node_list_path,
                             const LoadOptions& options = {}) {
    return load_graph(edge_list_path, node_list_path, options);
}

}  // namespace citesim
