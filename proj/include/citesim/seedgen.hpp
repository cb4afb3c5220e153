#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "citesim/distributions.hpp"
#include "citesim/graph.hpp"

namespace citesim {

// Years copied from an empirical node list: a random permutation when the
// list has exactly n entries, otherwise draws with replacement.
struct CopyEmpiricalYears {
    std::vector<Year> years;
};

struct UniformYearRange {
    Year lo = 1950;
    Year hi = 1982;
};

struct ErSpec {
    std::size_t n = 0;
    std::size_t m = 0;
    // Undirected mode draws m unordered pairs and orients each by a fair coin.
    bool directed = true;
    std::variant<CopyEmpiricalYears, UniformYearRange> year_assignment = UniformYearRange{};
};

// Uniform G(n, m): exactly m distinct edges without self-loops. Node
// fitness is drawn from `fitness_law`. All draws derive from master_seed.
TemporalDiGraph gen_erdos_renyi_gnm(const ErSpec& spec, const FitnessLawParams& fitness_law, std::uint64_t master_seed);

}  // namespace citesim
