#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "citesim/distributions.hpp"
#include "citesim/graph.hpp"
#include "citesim/phenotype.hpp"

namespace citesim {

struct ScoreParams {
    double gamma = 3.0;
    double c = 1.0;
    Year current_year = 0;
    RecencyTable recency_table;
    std::map<Year, std::size_t> year_counts;
    // Multiply the recency likelihood by the number of nodes sharing the
    // candidate's year (the formula as printed). Off: likelihood only.
    bool recency_multiplicity = true;
};

// Raw (unnormalized) family scores.
double score_pref_raw(std::uint32_t in_deg, const ScoreParams& params);
double score_fitness_raw(std::int64_t fitness, const ScoreParams& params);
double score_recency_raw(Year node_year, const ScoreParams& params);

struct Candidate {
    NodeId id = 0;
    std::uint32_t in_deg = 0;
    std::int64_t fitness = 1;
    Year year = 0;
};

struct CandidateScores {
    std::vector<NodeId> ids;
    std::vector<double> weights;
    // Every family had zero mass over the pool; weights fell back to uniform.
    bool degenerate = false;
};

// Per-node raw family scores, indexed by NodeId.
struct FamilyScores {
    std::span<const double> pref;
    std::span<const double> recency;
    std::span<const double> fitness;
};

// Sampling weights for `pool`: each family is normalized to sum to 1 over
// the pool (a family with zero mass contributes nothing), then combined as
// pw*P + rw*R + fw*F. Returns true when the combined mass is zero and the
// weights were replaced by a uniform distribution.
bool pool_weights(const FamilyScores& families, std::span<const NodeId> pool, const Phenotype& phenotype,
                  std::vector<double>& weights);

CandidateScores composite_scores(std::span<const Candidate> candidates, const Phenotype& phenotype,
                                 const ScoreParams& params);

// Raw family scores for every node of a snapshot. They depend only on
// snapshot state, so one cache serves all agents of a year.
class ScoreCache {
public:
    ScoreCache(const YearSnapshot& snapshot, const ScoreParams& params);

    FamilyScores families() const noexcept { return {pref_, recency_, fitness_}; }

private:
    std::vector<double> pref_;
    std::vector<double> recency_;
    std::vector<double> fitness_;
};

}  // namespace citesim
