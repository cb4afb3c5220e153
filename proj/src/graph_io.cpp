#include "citesim/graph_io.hpp"

#include <fstream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "citesim/error.hpp"
#include "citesim/rng.hpp"
#include "citesim/tsv.hpp"

namespace citesim {

void write_edges_tsv(const TemporalDiGraph& graph, std::ostream& out) {
    for (const Edge& e : graph.edges()) out << e.source << '\t' << e.target << '\t' << e.year << '\n';
}

void write_nodes_tsv(const TemporalDiGraph& graph, std::ostream& out) {
    for (const NodeRecord& r : graph.nodes()) {
        out << r.id << '\t' << r.pub_year << '\t' << r.fitness;
        if (r.kind == NodeKind::Agent) {
            const Phenotype& p = *r.phenotype;
            out << '\t' << r.out_quota << '\t' << tsv::format_double(p.pw) << '\t' << tsv::format_double(p.rw) << '\t'
                << tsv::format_double(p.fw) << '\t' << tsv::format_double(p.alpha);
        }
        out << '\n';
    }
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

}  // namespace

void write_edges_tsv(const TemporalDiGraph& graph, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    write_edges_tsv(graph, out);
}

void write_nodes_tsv(const TemporalDiGraph& graph, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    write_nodes_tsv(graph, out);
}

bool LoadedGraph::ids_are_dense() const {
    for (std::size_t i = 0; i < external_ids.size(); ++i) {
        if (external_ids[i] != static_cast<std::int64_t>(i)) return false;
    }
    return true;
}

LoadedGraph load_graph(const std::filesystem::path& edge_list_path, const std::filesystem::path& node_list_path,
                       const LoadOptions& options) {
    LoadedGraph out;
    std::unordered_map<std::int64_t, NodeId> dense;
    std::vector<NodeRecord> records;
    std::vector<bool> needs_fitness;

    tsv::for_each_row(node_list_path, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        const auto where = node_list_path.string() + ":" + std::to_string(line_no);
        if (f.size() != 2 && f.size() != 3 && f.size() != 8) {
            throw DataError(where + ": expected 2, 3 or 8 columns, got " + std::to_string(f.size()));
        }
        const std::int64_t ext = tsv::parse_int(f[0], node_list_path, line_no);
        const auto id = static_cast<NodeId>(records.size());
        if (!dense.emplace(ext, id).second) throw DataError(where + ": duplicate node id " + std::to_string(ext));
        NodeRecord r;
        r.id = id;
        r.pub_year = static_cast<Year>(tsv::parse_int(f[1], node_list_path, line_no));
        needs_fitness.push_back(f.size() == 2);
        if (f.size() >= 3) r.fitness = tsv::parse_int(f[2], node_list_path, line_no);
        if (f.size() == 8) {
            r.kind = NodeKind::Agent;
            r.out_quota = static_cast<int>(tsv::parse_int(f[3], node_list_path, line_no));
            r.phenotype = Phenotype{tsv::parse_double(f[4], node_list_path, line_no),
                                    tsv::parse_double(f[5], node_list_path, line_no),
                                    tsv::parse_double(f[6], node_list_path, line_no),
                                    tsv::parse_double(f[7], node_list_path, line_no)};
        }
        out.external_ids.push_back(ext);
        records.push_back(r);
    });

    bool any_missing = false;
    for (bool b : needs_fitness) any_missing = any_missing || b;
    if (any_missing) {
        const FitnessLaw law(options.fitness_law);
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (!needs_fitness[i]) continue;
            RngStream rng(options.master_seed, StreamTag::SeedFitness, i);
            records[i].fitness = law.sample(rng);
        }
    }

    // Consecutive runs of equal pub_year form one batch.
    std::size_t start = 0;
    while (start < records.size()) {
        std::size_t end = start + 1;
        while (end < records.size() && records[end].pub_year == records[start].pub_year) ++end;
        out.graph.add_nodes_batch(std::span<const NodeRecord>(records).subspan(start, end - start));
        start = end;
    }

    std::vector<Edge> edges;
    tsv::for_each_row(edge_list_path, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        const auto where = edge_list_path.string() + ":" + std::to_string(line_no);
        if (f.size() != 2 && f.size() != 3) throw DataError(where + ": expected source<TAB>target[<TAB>year]");
        Edge e;
        const std::int64_t ids[2] = {tsv::parse_int(f[0], edge_list_path, line_no),
                                     tsv::parse_int(f[1], edge_list_path, line_no)};
        NodeId* ends[2] = {&e.source, &e.target};
        for (int k = 0; k < 2; ++k) {
            const auto it = dense.find(ids[k]);
            if (it == dense.end()) {
                throw DataError(where + ": edge endpoint " + std::to_string(ids[k]) + " is not in the node list");
            }
            *ends[k] = it->second;
        }
        e.year = f.size() == 3 ? static_cast<Year>(tsv::parse_int(f[2], edge_list_path, line_no)) : kSeedEdgeYear;
        if (e.source == e.target) throw DataError(where + ": self-loop");
        edges.push_back(e);
    });
    out.graph.commit_edges_batch(edges);
    out.graph.check_invariants();
    return out;
}

}  // namespace citesim
