#pragma once

#include <span>
#include <vector>

#include "citesim/graph.hpp"
#include "citesim/rng.hpp"

namespace citesim {

struct WeightedPool {
    std::vector<NodeId> items;
    std::vector<double> weights;
};

// Weighted sampling without replacement (A-res). Every item with positive
// weight w draws u ~ U(0,1) in pool order and gets key u^(1/w); the k
// largest keys win. Keys are compared as log(u)/w, which orders identically
// and does not underflow for tiny weights. Ties go to the smaller id.
// Zero-weight items are never selected. Returns the winners in ascending
// id order; throws ConfigError for negative k or mismatched lengths.
std::vector<NodeId> ares_sample(std::span<const NodeId> items, std::span<const double> weights, long k,
                                RngStream& rng);

inline std::vector<NodeId> ares_sample(const WeightedPool& pool, long k, RngStream& rng) {
    return ares_sample(pool.items, pool.weights, k, rng);
}

}  // namespace citesim
