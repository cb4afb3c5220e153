#include "citesim/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "citesim/error.hpp"
#include "citesim/tsv.hpp"

namespace citesim {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Index of the first cumulative value strictly greater than u.
std::size_t search_cdf(const std::vector<double>& cdf, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
}

}  // namespace

// ---------------------------------------------------------------- fitness

FitnessLaw::FitnessLaw(const FitnessLawParams& params) : params_(params) {
    if (params.min_fitness < 1 || params.max_fitness < params.min_fitness) {
        throw ConfigError("fitness range must satisfy 1 <= min <= max");
    }
    if (!(params.scale > 0.0) || !(params.coeff > 0.0) || !std::isfinite(params.exponent)) {
        throw ConfigError("fitness law needs positive scale and coefficient and a finite exponent");
    }
    const auto span = static_cast<std::size_t>(params.max_fitness - params.min_fitness + 1);
    std::vector<double> raw(span);
    long double total = 0.0L;
    for (std::size_t i = 0; i < span; ++i) {
        raw[i] = params.scale * params.coeff * std::pow(static_cast<double>(params.min_fitness + i), params.exponent);
        total += raw[i];
    }
    if (params.allow_outlier) {
        if (total > 1.0L + 1e-12L) {
            throw ConfigError("fitness pmf sums above 1 over its range; no mass is left for the outlier");
        }
        if (params.outlier_max <= params.max_fitness) throw ConfigError("outlier_max must exceed max fitness");
        effective_scale_ = params.scale;
        outlier_probability_ = std::max(0.0, static_cast<double>(1.0L - total));
    } else {
        effective_scale_ = static_cast<double>(params.scale / total);
        outlier_probability_ = 0.0;
    }
    const double factor = effective_scale_ / params.scale;
    main_cdf_.resize(span);
    long double running = 0.0L;
    for (std::size_t i = 0; i < span; ++i) {
        running += raw[i] * factor;
        main_cdf_[i] = static_cast<double>(running);
    }
    if (outlier_probability_ > 0.0) outlier_ = std::make_shared<OutlierTail>();
}

const std::vector<double>& FitnessLaw::outlier_cdf() const {
    // The tail table has ~1e6 entries; build it only when a draw or query
    // actually reaches the tail.
    std::call_once(outlier_->once, [&] {
        const auto tail = static_cast<std::size_t>(params_.outlier_max - params_.max_fitness);
        auto& cdf = outlier_->cdf;
        cdf.resize(tail);
        long double acc = 0.0L;
        for (std::size_t i = 0; i < tail; ++i) {
            acc += std::pow(static_cast<double>(params_.max_fitness + 1 + static_cast<std::int64_t>(i)), params_.exponent);
            cdf[i] = static_cast<double>(acc);
        }
        for (double& c : cdf) c = static_cast<double>(c / acc);
    });
    return outlier_->cdf;
}

double FitnessLaw::pmf(std::int64_t x) const {
    if (x < params_.min_fitness || x > params_.max_fitness) {
        throw ConfigError("fitness value " + std::to_string(x) + " outside the law's range");
    }
    return effective_scale_ * params_.coeff * std::pow(static_cast<double>(x), params_.exponent);
}

double FitnessLaw::cdf(std::int64_t x) const {
    if (x < params_.min_fitness) return 0.0;
    if (x <= params_.max_fitness) return main_cdf_[static_cast<std::size_t>(x - params_.min_fitness)];
    if (!outlier_) return 1.0;
    if (x >= params_.outlier_max) return 1.0;
    const double base = main_cdf_.back();
    return base + outlier_probability_ * outlier_cdf()[static_cast<std::size_t>(x - params_.max_fitness - 1)];
}

std::int64_t FitnessLaw::sample(RngStream& rng) const {
    const double u = rng.uniform01();
    if (outlier_ && u >= main_cdf_.back()) {
        const double v = rng.uniform01();
        return params_.max_fitness + 1 + static_cast<std::int64_t>(search_cdf(outlier_cdf(), v));
    }
    // Without an outlier the cumulative total is 1 up to rounding; scale u
    // into it so the last bucket is never over-weighted.
    return params_.min_fitness + static_cast<std::int64_t>(search_cdf(main_cdf_, outlier_ ? u : u * main_cdf_.back()));
}

double fitness_pmf(const FitnessLaw& law, std::int64_t x) { return law.pmf(x); }

std::int64_t sample_fitness(RngStream& rng, const FitnessLaw& law) { return law.sample(rng); }

// ------------------------------------------------------------- out-degree

std::string to_string(OutDegreeKind kind) {
    switch (kind) {
        case OutDegreeKind::Empirical: return "empirical";
        case OutDegreeKind::Normal: return "normal";
        case OutDegreeKind::PowerLaw: return "powerlaw";
        case OutDegreeKind::Uniform: return "uniform";
    }
    return "?";
}

OutDegreeKind parse_out_degree_kind(const std::string& name) {
    if (name == "empirical") return OutDegreeKind::Empirical;
    if (name == "normal") return OutDegreeKind::Normal;
    if (name == "powerlaw" || name == "power_law") return OutDegreeKind::PowerLaw;
    if (name == "uniform") return OutDegreeKind::Uniform;
    throw ConfigError("unknown out-degree distribution '" + name + "'");
}

OutDegreeDist::OutDegreeDist(OutDegreeParams params) : params_(std::move(params)) {
    if (params_.kind == OutDegreeKind::Empirical) {
        if (params_.table.empty()) throw ConfigError("empirical out-degree table is empty");
        auto rows = params_.table;
        std::sort(rows.begin(), rows.end());
        double total = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].first < 1) throw ConfigError("empirical out-degree values must be >= 1");
            if (!(rows[i].second >= 0.0)) throw ConfigError("empirical out-degree probabilities must be >= 0");
            if (i > 0 && rows[i].first == rows[i - 1].first) throw ConfigError("duplicate empirical out-degree value");
            total += rows[i].second;
        }
        if (std::abs(total - 1.0) > 1e-3) {
            throw ConfigError("empirical out-degree probabilities sum to " + std::to_string(total) + ", not 1");
        }
        double running = 0.0;
        for (auto& [value, p] : rows) {
            p /= total;
            running += p;
            values_.push_back(value);
            cdf_.push_back(running);
        }
        params_.table = rows;
        params_.min = rows.front().first;
        params_.max = rows.back().first;
        return;
    }
    if (params_.min < 1 || params_.max < params_.min) throw ConfigError("out-degree range must satisfy 1 <= min <= max");
    if (params_.kind == OutDegreeKind::Normal && !(params_.sd >= 0.0)) throw ConfigError("normal sd must be >= 0");
    if (params_.kind == OutDegreeKind::PowerLaw && !(params_.shape > 0.0)) throw ConfigError("power-law shape must be > 0");
}

double OutDegreeDist::probability(int x) const {
    const int lo = params_.min;
    const int hi = params_.max;
    if (x < lo || x > hi) return 0.0;
    if (lo == hi) return 1.0;
    switch (params_.kind) {
        case OutDegreeKind::Uniform: return 1.0 / (hi - lo + 1);
        case OutDegreeKind::Empirical: {
            const auto it = std::lower_bound(values_.begin(), values_.end(), x);
            if (it == values_.end() || *it != x) return 0.0;
            return params_.table[static_cast<std::size_t>(it - values_.begin())].second;
        }
        case OutDegreeKind::Normal: {
            if (params_.sd == 0.0) {
                const int mode = static_cast<int>(std::clamp(std::lround(params_.mean), static_cast<long>(lo), static_cast<long>(hi)));
                return x == mode ? 1.0 : 0.0;
            }
            const auto z = [&](double v) { return normal_cdf((v - params_.mean) / params_.sd); };
            const double upper = x == hi ? 1.0 : z(x + 0.5);
            const double lower = x == lo ? 0.0 : z(x - 0.5);
            return upper - lower;
        }
        case OutDegreeKind::PowerLaw: {
            const double width = hi - lo;
            const auto f = [&](double y) { return std::pow(std::clamp(y / width, 0.0, 1.0), params_.shape); };
            const double j = x - lo;
            return f(j + 0.5) - f(j - 0.5);
        }
    }
    return 0.0;
}

int OutDegreeDist::sample(RngStream& rng) const {
    const int lo = params_.min;
    const int hi = params_.max;
    switch (params_.kind) {
        case OutDegreeKind::Uniform:
            return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
        case OutDegreeKind::Empirical:
            return values_[search_cdf(cdf_, rng.uniform01() * cdf_.back())];
        case OutDegreeKind::Normal: {
            const double draw = params_.mean + params_.sd * rng.standard_normal();
            return static_cast<int>(std::clamp(std::round(draw), static_cast<double>(lo), static_cast<double>(hi)));
        }
        case OutDegreeKind::PowerLaw: {
            const double y = std::pow(rng.uniform01(), 1.0 / params_.shape) * (hi - lo);
            return std::min(hi, lo + static_cast<int>(std::round(y)));
        }
    }
    return lo;
}

int sample_out_degree(RngStream& rng, const OutDegreeDist& dist) { return dist.sample(rng); }

// ---------------------------------------------------------------- recency

RecencyTable::RecencyTable(std::vector<double> likelihood_by_age) : values_(std::move(likelihood_by_age)) {
    if (values_.empty()) throw ConfigError("recency table is empty");
    bool any_positive = false;
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("recency likelihoods must be finite and >= 0");
        any_positive = any_positive || v > 0.0;
    }
    if (!any_positive) throw ConfigError("recency table has no positive entry");
}

double RecencyTable::likelihood(int age) const {
    if (age < 0) throw ConfigError("negative citation age " + std::to_string(age));
    if (age > max_age()) return 0.0;
    return values_[static_cast<std::size_t>(age)];
}

double recency_likelihood(const RecencyTable& table, int age) { return table.likelihood(age); }

RecencyTable load_recency_table(const std::filesystem::path& path) {
    std::vector<std::pair<std::int64_t, double>> rows;
    tsv::for_each_row(path, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() < 2) throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected age<TAB>likelihood");
        rows.emplace_back(tsv::parse_int(f[0], path, line_no), tsv::parse_double(f[1], path, line_no));
    });
    std::sort(rows.begin(), rows.end());
    std::vector<double> values;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != static_cast<std::int64_t>(i)) {
            throw DataError(path.string() + ": recency ages must be contiguous from 0 (missing age " + std::to_string(i) + ")");
        }
        values.push_back(rows[i].second);
    }
    try {
        return RecencyTable(std::move(values));
    } catch (const ConfigError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

std::vector<std::pair<int, double>> load_out_degree_table(const std::filesystem::path& path) {
    std::vector<std::pair<int, double>> rows;
    tsv::for_each_row(path, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() < 2) throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected out_degree<TAB>probability");
        rows.emplace_back(static_cast<int>(tsv::parse_int(f[0], path, line_no)), tsv::parse_double(f[1], path, line_no));
    });
    return rows;
}

// -------------------------------------------------------------- phenotype

std::string to_string(BackgroundKind kind) {
    switch (kind) {
        case BackgroundKind::Static: return "static";
        case BackgroundKind::Random: return "random";
        case BackgroundKind::Hybrid: return "hybrid";
    }
    return "?";
}

BackgroundKind parse_background(const std::string& name) {
    if (name == "static" || name == "sa") return BackgroundKind::Static;
    if (name == "random" || name == "ra") return BackgroundKind::Random;
    if (name == "hybrid") return BackgroundKind::Hybrid;
    throw ConfigError("unknown agent background '" + name + "'");
}

void validate_phenotype_mode(const PhenotypeMode& mode) {
    if (mode.kind == BackgroundKind::Static) {
        validate_phenotype(mode.fixed);
        return;
    }
    if (mode.kind == BackgroundKind::Random) return;
    double fixed_mass = 0.0;
    int free = 0;
    for (const auto& w : {mode.pw, mode.rw, mode.fw}) {
        if (w) {
            if (!(*w >= 0.0 && *w <= 1.0)) throw ConfigError("hybrid weight outside [0,1]");
            fixed_mass += *w;
        } else {
            ++free;
        }
    }
    if (mode.alpha && !(*mode.alpha >= 0.0 && *mode.alpha <= 1.0)) throw ConfigError("hybrid alpha outside [0,1]");
    if (fixed_mass > 1.0 + kSimplexTolerance) throw ConfigError("hybrid fixed weights exceed 1");
    if (free == 0 && std::abs(fixed_mass - 1.0) > kSimplexTolerance) throw ConfigError("hybrid weights must sum to 1");
}

Phenotype sample_phenotype(RngStream& rng, const PhenotypeMode& mode) {
    if (mode.kind == BackgroundKind::Static) {
        validate_phenotype(mode.fixed);
        return mode.fixed;
    }
    const bool hybrid = mode.kind == BackgroundKind::Hybrid;
    Phenotype p;
    p.alpha = hybrid && mode.alpha ? *mode.alpha : rng.uniform01();

    std::optional<double> fixed[3] = {};
    if (hybrid) {
        fixed[0] = mode.pw;
        fixed[1] = mode.rw;
        fixed[2] = mode.fw;
    }
    double remaining = 1.0;
    int free = 0;
    for (const auto& f : fixed) {
        if (f) remaining -= *f; else ++free;
    }
    remaining = std::max(0.0, remaining);
    // Uniform point on the simplex of the free weights, scaled to the
    // remaining mass: spacings of sorted uniforms.
    std::vector<double> cuts;
    for (int i = 0; i + 1 < free; ++i) cuts.push_back(rng.uniform01());
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(1.0);
    double prev = 0.0;
    double out[3];
    std::size_t next = 0;
    for (int i = 0; i < 3; ++i) {
        if (fixed[i]) {
            out[i] = *fixed[i];
        } else {
            out[i] = (cuts[next] - prev) * remaining;
            prev = cuts[next++];
        }
    }
    p.pw = out[0];
    p.rw = out[1];
    p.fw = out[2];
    return p;
}

}  // namespace citesim
