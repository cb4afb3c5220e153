#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "citesim/distributions.hpp"
#include "citesim/graph.hpp"
#include "citesim/rng.hpp"
#include "citesim/scoring.hpp"

namespace citesim {

inline constexpr std::int64_t kMinSuperstarFitness = 10'000;

struct Superstar {
    int year = 1;  // 1-based simulation year
    std::int64_t fitness = kMinSuperstarFitness;

    friend bool operator==(const Superstar&, const Superstar&) = default;
};

// One superstar each of fitness 1e4, 1e5 and 1e6, planted in year 1.
std::vector<Superstar> default_superstars();

struct SimConfig {
    double growth_rate = 0.03;
    int years = 30;
    // First simulated year; defaults to one past the newest seed node.
    std::optional<Year> start_year;
    double same_year_percentage = 0.0;
    bool same_year_consumes_quota = true;
    PhenotypeMode agent_background = PhenotypeMode::static_mode();
    OutDegreeParams out_degree;
    FitnessLawParams fitness_law;
    double gamma = 3.0;
    double c = 1.0;
    bool recency_multiplicity = true;
    RecencyTable recency_table;
    std::vector<Superstar> superstars;
    std::uint64_t master_seed = 0;
    NeighborhoodMode neighborhood = NeighborhoodMode::Union;
    // Generators are drawn from every snapshot node; false restricts the
    // draw to agents once any exist.
    bool generator_from_all_nodes = true;
    // An agent cites its generator even at alpha = 0 (the slot then comes
    // out of the extra-neighborhood budget).
    bool always_cite_generator = true;
    int threads = 1;
};

// Throws ConfigError describing the first problem found.
void validate_config(const SimConfig& config);

struct QuotaSplit {
    int generator = 0;
    int intra = 0;
    int extra = 0;

    friend bool operator==(const QuotaSplit&, const QuotaSplit&) = default;
};

// floor(x + 1/2), tolerant of representation error just below a half.
long round_half_up(double x);

// round_half_up(growth_rate * current_size), at least 1.
long agents_for_year(long current_size, double growth_rate);

// Node count after `years` of compounding with agents_for_year.
long projected_node_count(long seed_size, double growth_rate, int years);

// intra_total = round_half_up(alpha * out_quota). The generator slot comes
// out of intra_total when it is at least 1, otherwise out of the extra
// budget; intra slots the neighborhood cannot absorb carry over to extra.
QuotaSplit split_quota(int out_quota, double alpha, std::size_t neighborhood_size, bool always_cite_generator = true);

// Uniform over the snapshot (or over its agents, see SimConfig).
NodeId select_generator(const YearSnapshot& snapshot, RngStream& rng, NodeId first_agent_id = 0,
                        bool from_all_nodes = true);

enum class EventType {
    YearStart,        // value = agents created, value2 = graph size before the year
    SuperstarPlanted, // agent, value = fitness
    SameYearEdges,    // value = edges created
    IntraCarryover,   // agent, value = slots moved from intra to extra
    Shortfall,        // agent, value = citations that could not be placed
    UniformFallback,  // agent, value = 0 intra pool / 1 extra pool
    QuotaOverrun,     // agent, value = citations beyond out_quota
    YearCommit,       // value = edges committed, value2 = node count after the year
};

std::string to_string(EventType type);

struct Event {
    Year year = 0;
    EventType type = EventType::YearStart;
    std::int64_t agent = -1;
    std::int64_t value = 0;
    std::int64_t value2 = 0;

    friend bool operator==(const Event&, const Event&) = default;
};

struct RunOutput {
    TemporalDiGraph graph;
    std::vector<Event> events;
    std::size_t seed_node_count = 0;
    Year first_year = 0;
    int years_simulated = 0;
};

// Fitness values of the superstars planted in simulation year
// `year_index` (1-based), in configuration order. Validates every entry.
std::vector<std::int64_t> plant_superstars(const SimConfig& config, int year_index);

// Agents as drawn at initialization, before they cite anything.
std::vector<NodeRecord> initialize_agents(const SimConfig& config, const FitnessLaw& fitness_law,
                                          const OutDegreeDist& out_degree, NodeId first_id, long count, Year year,
                                          int year_index);

// Citing agent -> target pairs among one year's agents. Exactly
// round_half_up(percentage * batch) distinct agents each cite one other,
// uniformly chosen, agent of the batch. A batch of one yields nothing.
std::vector<Edge> same_year_citations(std::span<const NodeRecord> batch, double same_year_percentage, RngStream& rng);

// Per-thread buffers for cite_for_agent.
struct CiteScratch {
    std::vector<NodeId> neighborhood;
    std::vector<NodeId> pool;
    std::vector<double> weights;
    std::vector<std::uint32_t> mark;
    std::uint32_t stamp = 0;
};

struct AgentCitations {
    NodeId generator = 0;
    QuotaSplit split;
    std::vector<Edge> edges;  // ascending target order
    std::vector<Event> events;
};

// All citations of one agent against the year's snapshot: the generator,
// an optional pre-assigned same-year target, A-res over the generator's
// neighborhood, then A-res over every other snapshot node.
AgentCitations cite_for_agent(const NodeRecord& agent, const YearSnapshot& snapshot, const FamilyScores& scores,
                              const SimConfig& config, std::optional<NodeId> same_year_target, NodeId first_agent_id,
                              RngStream& rng, CiteScratch& scratch);

RunOutput run_simulation(const SimConfig& config, TemporalDiGraph seed_graph);

}  // namespace citesim
