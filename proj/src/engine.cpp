#include "citesim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "citesim/error.hpp"
#include "citesim/sampling.hpp"

namespace citesim {

std::vector<Superstar> default_superstars() { return {{1, 10'000}, {1, 100'000}, {1, 1'000'000}}; }

std::string to_string(EventType type) {
    switch (type) {
        case EventType::YearStart: return "year_start";
        case EventType::SuperstarPlanted: return "superstar_planted";
        case EventType::SameYearEdges: return "same_year_edges";
        case EventType::IntraCarryover: return "intra_carryover";
        case EventType::Shortfall: return "shortfall";
        case EventType::UniformFallback: return "uniform_fallback";
        case EventType::QuotaOverrun: return "quota_overrun";
        case EventType::YearCommit: return "year_commit";
    }
    return "?";
}

long round_half_up(double x) { return static_cast<long>(std::floor(x + 0.5 + 1e-9)); }

long agents_for_year(long current_size, double growth_rate) {
    if (current_size < 1) throw ConfigError("graph must have at least one node to grow");
    return std::max(1L, round_half_up(growth_rate * static_cast<double>(current_size)));
}

long projected_node_count(long seed_size, double growth_rate, int years) {
    long size = seed_size;
    for (int y = 0; y < years; ++y) size += agents_for_year(size, growth_rate);
    return size;
}

QuotaSplit split_quota(int out_quota, double alpha, std::size_t neighborhood_size, bool always_cite_generator) {
    if (out_quota < 1) throw ConfigError("out_quota must be >= 1");
    const auto intra_total = static_cast<int>(std::clamp(round_half_up(alpha * out_quota), 0L, static_cast<long>(out_quota)));
    QuotaSplit s;
    int intra_budget = intra_total;
    if (intra_total >= 1) {
        s.generator = 1;
        intra_budget -= 1;
    } else if (always_cite_generator) {
        s.generator = 1;
    }
    s.intra = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(intra_budget), neighborhood_size));
    s.extra = out_quota - s.generator - s.intra;
    return s;
}

NodeId select_generator(const YearSnapshot& snapshot, RngStream& rng, NodeId first_agent_id, bool from_all_nodes) {
    const NodeId n = snapshot.node_count();
    if (n == 0) throw ConfigError("cannot select a generator from an empty graph");
    if (!from_all_nodes && first_agent_id < n) {
        return first_agent_id + static_cast<NodeId>(rng.below(n - first_agent_id));
    }
    return static_cast<NodeId>(rng.below(n));
}

void validate_config(const SimConfig& config) {
    if (!(config.growth_rate > 0.0) || !std::isfinite(config.growth_rate)) throw ConfigError("engine.growth_rate must be > 0");
    if (config.years < 0) throw ConfigError("engine.years must be >= 0");
    if (!(config.same_year_percentage >= 0.0 && config.same_year_percentage <= 1.0)) {
        throw ConfigError("engine.same_year_percentage must lie in [0,1]");
    }
    if (!std::isfinite(config.gamma) || !std::isfinite(config.c)) throw ConfigError("score.gamma and score.c must be finite");
    if (config.threads < 1) throw ConfigError("engine.threads must be >= 1");
    if (config.recency_table.empty()) throw ConfigError("missing required input: recency.table");
    // The table must cover every age an agent can reach within the run.
    if (config.years > config.recency_table.max_age()) {
        throw ConfigError("recency.table covers ages up to " + std::to_string(config.recency_table.max_age()) +
                          " but engine.years is " + std::to_string(config.years));
    }
    validate_phenotype_mode(config.agent_background);
    for (const Superstar& s : config.superstars) {
        if (s.fitness < kMinSuperstarFitness) {
            throw ConfigError("superstar fitness " + std::to_string(s.fitness) + " is below " +
                              std::to_string(kMinSuperstarFitness));
        }
        if (s.year < 1 || s.year > config.years) {
            throw ConfigError("superstar year " + std::to_string(s.year) + " is outside the " +
                              std::to_string(config.years) + "-year horizon");
        }
    }
    (void)FitnessLaw(config.fitness_law);
    (void)OutDegreeDist(config.out_degree);
}

std::vector<std::int64_t> plant_superstars(const SimConfig& config, int year_index) {
    std::vector<std::int64_t> out;
    for (const Superstar& s : config.superstars) {
        if (s.fitness < kMinSuperstarFitness) throw ConfigError("superstar fitness below 10000");
        if (s.year < 1 || s.year > config.years) throw ConfigError("superstar year outside the simulation horizon");
        if (s.year == year_index) out.push_back(s.fitness);
    }
    return out;
}

std::vector<NodeRecord> initialize_agents(const SimConfig& config, const FitnessLaw& fitness_law,
                                          const OutDegreeDist& out_degree, NodeId first_id, long count, Year year,
                                          int year_index) {
    const auto planted = plant_superstars(config, year_index);
    if (static_cast<long>(planted.size()) > count) {
        throw ConfigError("year " + std::to_string(year_index) + " plants " + std::to_string(planted.size()) +
                          " superstars but only creates " + std::to_string(count) + " agents");
    }
    std::vector<NodeRecord> batch(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        NodeRecord& r = batch[static_cast<std::size_t>(i)];
        r.id = first_id + static_cast<NodeId>(i);
        r.pub_year = year;
        r.kind = NodeKind::Agent;
        RngStream rng(config.master_seed, StreamTag::AgentInit, r.id);
        r.phenotype = sample_phenotype(rng, config.agent_background);
        r.out_quota = out_degree.sample(rng);
        r.fitness = fitness_law.sample(rng);
        if (static_cast<std::size_t>(i) < planted.size()) r.fitness = planted[static_cast<std::size_t>(i)];
    }
    return batch;
}

std::vector<Edge> same_year_citations(std::span<const NodeRecord> batch, double same_year_percentage, RngStream& rng) {
    std::vector<Edge> edges;
    const std::size_t n = batch.size();
    if (n < 2 || same_year_percentage <= 0.0) return edges;
    const auto citing = static_cast<std::size_t>(std::min<long>(round_half_up(same_year_percentage * static_cast<double>(n)), static_cast<long>(n)));
    // Partial Fisher-Yates picks the citing agents.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = 0; i < citing; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(order[i], order[j]);
    }
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(citing));
    for (std::size_t i = 0; i < citing; ++i) {
        const std::size_t src = order[i];
        std::size_t dst = static_cast<std::size_t>(rng.below(n - 1));
        if (dst >= src) ++dst;
        edges.push_back({batch[src].id, batch[dst].id, batch[src].pub_year});
    }
    return edges;
}

AgentCitations cite_for_agent(const NodeRecord& agent, const YearSnapshot& snapshot, const FamilyScores& scores,
                              const SimConfig& config, std::optional<NodeId> same_year_target, NodeId first_agent_id,
                              RngStream& rng, CiteScratch& scratch) {
    AgentCitations out;
    const Year year = agent.pub_year;
    const Phenotype& phenotype = *agent.phenotype;
    const auto log = [&](EventType type, std::int64_t value) { out.events.push_back({year, type, agent.id, value, 0}); };

    out.generator = select_generator(snapshot, rng, first_agent_id, config.generator_from_all_nodes);
    snapshot.neighborhood_1hop(out.generator, config.neighborhood, scratch.neighborhood);
    const auto& neighborhood = scratch.neighborhood;

    out.split = split_quota(agent.out_quota, phenotype.alpha, neighborhood.size(), config.always_cite_generator);
    QuotaSplit& split = out.split;
    {
        const int intra_total = static_cast<int>(std::clamp(round_half_up(phenotype.alpha * agent.out_quota), 0L,
                                                            static_cast<long>(agent.out_quota)));
        const int wanted_intra = std::max(0, intra_total - (intra_total >= 1 ? 1 : 0));
        if (wanted_intra > split.intra) log(EventType::IntraCarryover, wanted_intra - split.intra);
    }

    if (split.generator == 1) out.edges.push_back({agent.id, out.generator, year});
    if (same_year_target) {
        out.edges.push_back({agent.id, *same_year_target, year});
        if (config.same_year_consumes_quota) {
            if (split.extra > 0) {
                --split.extra;
            } else if (split.intra > 0) {
                --split.intra;
            } else {
                log(EventType::QuotaOverrun, 1);
            }
        }
    }

    // Intra-neighborhood step.
    int carry = 0;
    if (split.intra > 0) {
        if (pool_weights(scores, neighborhood, phenotype, scratch.weights)) log(EventType::UniformFallback, 0);
        const auto picks = ares_sample(neighborhood, scratch.weights, split.intra, rng);
        carry = split.intra - static_cast<int>(picks.size());
        for (NodeId t : picks) out.edges.push_back({agent.id, t, year});
    }

    // Extra-neighborhood step: every snapshot node outside the
    // neighborhood and other than the generator.
    const int extra_k = split.extra + carry;
    if (extra_k > 0) {
        const NodeId n = snapshot.node_count();
        if (scratch.mark.size() < n) scratch.mark.resize(n, 0);
        if (++scratch.stamp == 0) {
            std::fill(scratch.mark.begin(), scratch.mark.end(), 0);
            scratch.stamp = 1;
        }
        for (NodeId v : neighborhood) scratch.mark[v] = scratch.stamp;
        scratch.mark[out.generator] = scratch.stamp;
        scratch.pool.clear();
        for (NodeId v = 0; v < n; ++v) {
            if (scratch.mark[v] != scratch.stamp) scratch.pool.push_back(v);
        }
        std::size_t placed = 0;
        if (!scratch.pool.empty()) {
            if (pool_weights(scores, scratch.pool, phenotype, scratch.weights)) log(EventType::UniformFallback, 1);
            const auto picks = ares_sample(scratch.pool, scratch.weights, extra_k, rng);
            placed = picks.size();
            for (NodeId t : picks) out.edges.push_back({agent.id, t, year});
        }
        if (placed < static_cast<std::size_t>(extra_k)) log(EventType::Shortfall, extra_k - static_cast<int>(placed));
    }

    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& body) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i, w);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

RunOutput run_simulation(const SimConfig& config, TemporalDiGraph seed_graph) {
    validate_config(config);
    if (seed_graph.node_count() == 0) throw ConfigError("seed graph is empty");

    RunOutput out;
    out.seed_node_count = seed_graph.node_count();
    out.graph = std::move(seed_graph);
    TemporalDiGraph& graph = out.graph;

    Year newest = graph.nodes().front().pub_year;
    for (const NodeRecord& r : graph.nodes()) newest = std::max(newest, r.pub_year);
    out.first_year = config.start_year.value_or(newest + 1);
    if (out.first_year <= newest) throw ConfigError("engine.start_year must be after every seed node's year");

    const FitnessLaw fitness_law(config.fitness_law);
    const OutDegreeDist out_degree(config.out_degree);
    // Agents are the contiguous id range after the seeds.
    const auto first_agent_id = static_cast<NodeId>(out.seed_node_count);
    std::vector<CiteScratch> scratch(static_cast<std::size_t>(config.threads));

    for (int y = 1; y <= config.years; ++y) {
        const Year year = out.first_year + y - 1;
        const YearSnapshot snapshot(graph, year);
        const long size = static_cast<long>(graph.node_count());
        const long count = agents_for_year(size, config.growth_rate);
        out.events.push_back({year, EventType::YearStart, -1, count, size});

        auto batch = initialize_agents(config, fitness_law, out_degree, static_cast<NodeId>(size), count, year, y);
        const std::size_t planted = plant_superstars(config, y).size();
        for (std::size_t i = 0; i < planted; ++i) {
            out.events.push_back({year, EventType::SuperstarPlanted, batch[i].id, batch[i].fitness, 0});
        }
        graph.add_nodes_batch(batch);

        RngStream same_year_rng(config.master_seed, StreamTag::SameYear, static_cast<std::uint64_t>(year));
        const auto same_year = same_year_citations(batch, config.same_year_percentage, same_year_rng);
        std::vector<std::optional<NodeId>> same_year_target(batch.size());
        for (const Edge& e : same_year) same_year_target[e.source - static_cast<NodeId>(size)] = e.target;
        if (!same_year.empty()) {
            out.events.push_back({year, EventType::SameYearEdges, -1, static_cast<std::int64_t>(same_year.size()), 0});
        }

        ScoreParams params;
        params.gamma = config.gamma;
        params.c = config.c;
        params.current_year = year;
        params.recency_table = config.recency_table;
        params.year_counts = snapshot.year_counts();
        params.recency_multiplicity = config.recency_multiplicity;
        const ScoreCache cache(snapshot, params);
        const FamilyScores scores = cache.families();

        std::vector<AgentCitations> results(batch.size());
        parallel_for(batch.size(), config.threads, [&](std::size_t i, std::size_t worker) {
            RngStream rng(config.master_seed, StreamTag::Cite, batch[i].id);
            results[i] = cite_for_agent(batch[i], snapshot, scores, config, same_year_target[i], first_agent_id, rng,
                                        scratch[worker]);
        });

        std::vector<Edge> edges;
        for (auto& r : results) {
            edges.insert(edges.end(), r.edges.begin(), r.edges.end());
            out.events.insert(out.events.end(), r.events.begin(), r.events.end());
        }
        graph.commit_edges_batch(edges);
        out.events.push_back({year, EventType::YearCommit, -1, static_cast<std::int64_t>(edges.size()),
                              static_cast<std::int64_t>(graph.node_count())});
        ++out.years_simulated;
    }
    return out;
}

}  // namespace citesim
