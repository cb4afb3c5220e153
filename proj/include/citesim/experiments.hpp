#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "citesim/distributions.hpp"
#include "citesim/engine.hpp"
#include "citesim/graph.hpp"
#include "citesim/seedgen.hpp"

namespace citesim {

// Agent background of an experiment arm. `ra`: weights (and, unless an
// alpha grid fixes it, alpha) drawn per agent. `sa`: every agent uses
// equal weights with alpha 0.5 or the grid value.
enum class Background { Ra, Sa };

std::string to_string(Background bg);
PhenotypeMode background_mode(Background bg, std::optional<double> alpha);

// Sizes of the reference experiment, scaled for desk runs.
inline constexpr std::size_t kReferenceSeedNodes = 491'532;
inline constexpr std::size_t kReferenceSeedEdges = 899'050;

struct ExperimentSetup {
    std::size_t seed_nodes = 5'000;
    std::size_t seed_edges = 9'150;
    int years = 10;
    double growth_rate = 0.03;
    int replicates = 3;
    std::uint64_t master_seed = 1;
    int threads = 1;
    RecencyTable recency_table;
    OutDegreeParams out_degree;
    FitnessLawParams fitness_law;
    UniformYearRange seed_years;
    // Optional real seed graph (edge list, node list) for the sj rows.
    std::optional<std::pair<std::filesystem::path, std::filesystem::path>> real_seed;
    // Progress messages; may be empty.
    std::function<void(const std::string&)> progress;
};

// seed_nodes = round(scale * 491,532), seed_edges = round(scale * 899,050).
// Throws ConfigError for scale outside (0, 1] or a seed graph smaller than
// the largest out-degree.
ExperimentSetup scaled_setup(double scale, const RecencyTable& recency_table);

struct Arm {
    Background bg = Background::Sa;
    std::optional<double> alpha;
    bool superstars = false;
    std::optional<OutDegreeKind> out_degree;  // overrides the setup's kind
};

std::string describe(const Arm& arm);

// Seed graph of one replicate: G(n, m) with the setup's sizes.
TemporalDiGraph er_seed(const ExperimentSetup& setup, int replicate);

SimConfig arm_config(const ExperimentSetup& setup, const Arm& arm, int replicate);

// Runs one arm on a replicate's seed graph. Arms of the same replicate
// share the master seed, so they form matched comparisons.
RunOutput run_arm(const ExperimentSetup& setup, const Arm& arm, int replicate, const TemporalDiGraph& seed);

struct TrendCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::string id;
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<TrendCheck> checks;

    bool all_passed() const;
    void write_text(std::ostream& out) const;
    void write_tsv(std::ostream& out) const;
    std::string to_json() const;
};

// Table ids: T1..T5, F1, F3, F4. Throws ConfigError for an unknown id.
bool is_report_id(const std::string& id);
Report run_report(const std::string& id, const ExperimentSetup& setup);

}  // namespace citesim
