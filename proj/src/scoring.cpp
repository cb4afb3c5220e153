#include "citesim/scoring.hpp"

#include <cmath>
#include <string>

#include "citesim/error.hpp"

namespace citesim {

double score_pref_raw(std::uint32_t in_deg, const ScoreParams& params) {
    return std::pow(static_cast<double>(in_deg), params.gamma) + params.c;
}

double score_fitness_raw(std::int64_t fitness, const ScoreParams& params) {
    if (fitness < 1) throw ConfigError("fitness must be >= 1");
    return std::pow(static_cast<double>(fitness), params.gamma) + params.c;
}

double score_recency_raw(Year node_year, const ScoreParams& params) {
    if (node_year > params.current_year) {
        throw ConfigError("node year " + std::to_string(node_year) + " is after the current year " +
                          std::to_string(params.current_year));
    }
    const double likelihood = params.recency_table.likelihood(params.current_year - node_year);
    if (!params.recency_multiplicity || likelihood == 0.0) return likelihood;
    const auto it = params.year_counts.find(node_year);
    const double count = it == params.year_counts.end() ? 0.0 : static_cast<double>(it->second);
    return likelihood * count;
}

bool pool_weights(const FamilyScores& families, std::span<const NodeId> pool, const Phenotype& phenotype,
                  std::vector<double>& weights) {
    weights.assign(pool.size(), 0.0);
    if (pool.empty()) return false;
    long double sum_p = 0.0L;
    long double sum_r = 0.0L;
    long double sum_f = 0.0L;
    for (NodeId v : pool) {
        sum_p += families.pref[v];
        sum_r += families.recency[v];
        sum_f += families.fitness[v];
    }
    // Fold each family weight into a per-family multiplier; zero-mass
    // families drop out.
    const double mp = sum_p > 0.0L ? static_cast<double>(phenotype.pw / sum_p) : 0.0;
    const double mr = sum_r > 0.0L ? static_cast<double>(phenotype.rw / sum_r) : 0.0;
    const double mf = sum_f > 0.0L ? static_cast<double>(phenotype.fw / sum_f) : 0.0;
    bool any_positive = false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const NodeId v = pool[i];
        const double w = mp * families.pref[v] + mr * families.recency[v] + mf * families.fitness[v];
        weights[i] = w;
        any_positive = any_positive || w > 0.0;
    }
    if (!any_positive) {
        weights.assign(pool.size(), 1.0 / static_cast<double>(pool.size()));
        return true;
    }
    return false;
}

CandidateScores composite_scores(std::span<const Candidate> candidates, const Phenotype& phenotype,
                                 const ScoreParams& params) {
    if (candidates.empty()) throw ConfigError("composite_scores needs a non-empty candidate pool");
    std::vector<double> pref;
    std::vector<double> recency;
    std::vector<double> fitness;
    std::vector<NodeId> local(candidates.size());
    CandidateScores out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Candidate& c = candidates[i];
        pref.push_back(score_pref_raw(c.in_deg, params));
        recency.push_back(score_recency_raw(c.year, params));
        fitness.push_back(score_fitness_raw(c.fitness, params));
        local[i] = static_cast<NodeId>(i);
        out.ids.push_back(c.id);
    }
    out.degenerate = pool_weights({pref, recency, fitness}, local, phenotype, out.weights);
    return out;
}

ScoreCache::ScoreCache(const YearSnapshot& snapshot, const ScoreParams& params) {
    const NodeId n = snapshot.node_count();
    const auto nodes = snapshot.graph().nodes();
    pref_.resize(n);
    recency_.resize(n);
    fitness_.resize(n);
    // Few distinct years and degrees; memoize the recency term per year.
    std::map<Year, double> recency_by_year;
    for (const auto& [year, count] : params.year_counts) {
        if (year <= params.current_year) recency_by_year[year] = score_recency_raw(year, params);
    }
    for (NodeId v = 0; v < n; ++v) {
        pref_[v] = score_pref_raw(snapshot.in_degree(v), params);
        fitness_[v] = score_fitness_raw(nodes[v].fitness, params);
        const auto it = recency_by_year.find(nodes[v].pub_year);
        recency_[v] = it != recency_by_year.end() ? it->second : score_recency_raw(nodes[v].pub_year, params);
    }
}

}  // namespace citesim
