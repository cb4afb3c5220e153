#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citesim/phenotype.hpp"
#include "citesim/rng.hpp"

namespace citesim {

struct FitnessLawParams {
    double scale = 6.37429;
    double coeff = 0.072;
    double exponent = -1.634;
    std::int64_t min_fitness = 1;
    std::int64_t max_fitness = 1000;
    // Residual mass 1 - sum(pmf) produces a single draw from the extended
    // tail [max_fitness + 1, outlier_max]. When false the scale is
    // renormalized so the pmf over [min, max] sums to 1.
    bool allow_outlier = true;
    std::int64_t outlier_max = 1'000'000;
};

// Discrete power law p(x) = S * C * x^E on [min, max] with an optional
// ultra-high outlier tail.
class FitnessLaw {
public:
    explicit FitnessLaw(const FitnessLawParams& params = {});

    const FitnessLawParams& params() const noexcept { return params_; }

    // Effective scale (equal to params().scale unless the outlier is suppressed).
    double effective_scale() const noexcept { return effective_scale_; }

    double pmf(std::int64_t x) const;
    double outlier_probability() const noexcept { return outlier_probability_; }

    // P(X <= x) over the full support, outlier tail included.
    double cdf(std::int64_t x) const;

    std::int64_t sample(RngStream& rng) const;

private:
    FitnessLawParams params_;
    double effective_scale_ = 0.0;
    double outlier_probability_ = 0.0;
    struct OutlierTail {
        std::once_flag once;
        std::vector<double> cdf;  // normalized, over (max, outlier_max]
    };

    const std::vector<double>& outlier_cdf() const;

    std::vector<double> main_cdf_;  // cumulative pmf over [min, max]
    std::shared_ptr<OutlierTail> outlier_;
};

enum class OutDegreeKind { Empirical, Normal, PowerLaw, Uniform };

struct OutDegreeParams {
    OutDegreeKind kind = OutDegreeKind::Normal;
    int min = 5;
    int max = 249;
    double mean = 127.0;
    double sd = 40.0;
    double shape = 3.0;
    // Empirical only: (value, probability) rows.
    std::vector<std::pair<int, double>> table;
};

// Integer-valued reference-count distribution on [min, max].
//  Normal:   round(N(mean, sd)) clipped into [min, max]
//  PowerLaw: min + round(u^(1/shape) * (max - min)), density ~ x^(shape-1)
//  Uniform:  1 / (max - min + 1) each
//  Empirical: tabulated, renormalized when the total is within 1e-3 of 1
class OutDegreeDist {
public:
    explicit OutDegreeDist(OutDegreeParams params = {});

    const OutDegreeParams& params() const noexcept { return params_; }
    int min() const noexcept { return params_.min; }
    int max() const noexcept { return params_.max; }

    // Exact probability of drawing x under the realization above.
    double probability(int x) const;
    int sample(RngStream& rng) const;

private:
    OutDegreeParams params_;
    std::vector<int> values_;   // empirical support
    std::vector<double> cdf_;   // empirical cumulative
};

std::string to_string(OutDegreeKind kind);
OutDegreeKind parse_out_degree_kind(const std::string& name);

// Likelihood of citing a node of a given age in years; ages 0..max_age.
class RecencyTable {
public:
    RecencyTable() = default;
    explicit RecencyTable(std::vector<double> likelihood_by_age);

    // Zero for ages past the table; throws ConfigError for negative ages.
    double likelihood(int age) const;
    int max_age() const noexcept { return static_cast<int>(values_.size()) - 1; }
    bool empty() const noexcept { return values_.empty(); }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

enum class BackgroundKind { Static, Random, Hybrid };

// How agents receive phenotypes. Static hands out `fixed`; Random draws
// alpha ~ U[0,1] and (pw, rw, fw) uniform on the 2-simplex; Hybrid keeps
// the fields that are set and randomizes the rest on the remaining mass.
struct PhenotypeMode {
    BackgroundKind kind = BackgroundKind::Static;
    Phenotype fixed{};
    std::optional<double> alpha;
    std::optional<double> pw;
    std::optional<double> rw;
    std::optional<double> fw;

    static PhenotypeMode static_mode(Phenotype p = {}) { return {BackgroundKind::Static, p, {}, {}, {}, {}}; }
    static PhenotypeMode random_mode() { return {BackgroundKind::Random, {}, {}, {}, {}, {}}; }
    static PhenotypeMode hybrid_alpha(double alpha) { return {BackgroundKind::Hybrid, {}, alpha, {}, {}, {}}; }
};

std::string to_string(BackgroundKind kind);
BackgroundKind parse_background(const std::string& name);

// Throws ConfigError when the mode cannot produce a valid phenotype.
void validate_phenotype_mode(const PhenotypeMode& mode);

double fitness_pmf(const FitnessLaw& law, std::int64_t x);
std::int64_t sample_fitness(RngStream& rng, const FitnessLaw& law);
int sample_out_degree(RngStream& rng, const OutDegreeDist& dist);
Phenotype sample_phenotype(RngStream& rng, const PhenotypeMode& mode);
double recency_likelihood(const RecencyTable& table, int age);

// TSV loaders: `age<TAB>likelihood` and `out_degree<TAB>probability`.
RecencyTable load_recency_table(const std::filesystem::path& path);
std::vector<std::pair<int, double>> load_out_degree_table(const std::filesystem::path& path);

}  // namespace citesim
