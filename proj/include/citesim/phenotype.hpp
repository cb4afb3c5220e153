#pragma once

namespace citesim {

// An agent's citation personality: weights over preferential attachment,
// recency and fitness (summing to 1) plus the locality fraction alpha.
struct Phenotype {
    double pw = 1.0 / 3.0;
    double rw = 1.0 / 3.0;
    double fw = 1.0 / 3.0;
    double alpha = 0.5;

    friend bool operator==(const Phenotype&, const Phenotype&) = default;
};

inline constexpr double kSimplexTolerance = 1e-9;

// Throws ConfigError when a weight or alpha leaves [0,1] or the weights
// do not sum to 1 within kSimplexTolerance.
void validate_phenotype(const Phenotype& p);

}  // namespace citesim
