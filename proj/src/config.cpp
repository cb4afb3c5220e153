#include "citesim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "citesim/error.hpp"
#include "citesim/tsv.hpp"

namespace citesim {

namespace {

enum class ValueType { Double, Int, Bool, Word, Path, Superstars };

struct KeySpec {
    const char* key;
    ValueType type;
    const char* fallback;  // nullptr: no default (optional or required)
};

// Defaults mirror SimConfig, FitnessLawParams, OutDegreeParams and Phenotype.
const std::vector<KeySpec>& key_specs() {
    static const std::vector<KeySpec> specs = {
        {"engine.growth_rate", ValueType::Double, "0.03"},
        {"engine.years", ValueType::Int, "30"},
        {"engine.start_year", ValueType::Int, nullptr},
        {"engine.same_year_percentage", ValueType::Double, "0"},
        {"engine.same_year_consumes_quota", ValueType::Bool, "true"},
        {"engine.threads", ValueType::Int, "1"},
        {"engine.seed", ValueType::Int, "0"},
        {"engine.neighborhood", ValueType::Word, "union"},
        {"engine.generator_pool", ValueType::Word, "all"},
        {"engine.always_cite_generator", ValueType::Bool, "true"},
        {"engine.superstars", ValueType::Superstars, "none"},
        {"agents.background", ValueType::Word, "static"},
        {"agents.alpha", ValueType::Double, nullptr},
        {"agents.pw", ValueType::Double, nullptr},
        {"agents.rw", ValueType::Double, nullptr},
        {"agents.fw", ValueType::Double, nullptr},
        {"out_degree.kind", ValueType::Word, "normal"},
        {"out_degree.min", ValueType::Int, "5"},
        {"out_degree.max", ValueType::Int, "249"},
        {"out_degree.mean", ValueType::Double, "127"},
        {"out_degree.sd", ValueType::Double, "40"},
        {"out_degree.shape", ValueType::Double, "3"},
        {"out_degree.table", ValueType::Path, nullptr},
        {"fitness.scale", ValueType::Double, "6.37429"},
        {"fitness.coeff", ValueType::Double, "0.072"},
        {"fitness.exponent", ValueType::Double, "-1.634"},
        {"fitness.min", ValueType::Int, "1"},
        {"fitness.max", ValueType::Int, "1000"},
        {"fitness.allow_outlier", ValueType::Bool, "true"},
        {"fitness.outlier_max", ValueType::Int, "1000000"},
        {"score.gamma", ValueType::Double, "3"},
        {"score.c", ValueType::Double, "1"},
        {"score.recency_multiplicity", ValueType::Bool, "true"},
        {"recency.table", ValueType::Path, nullptr},
        {"input.edges", ValueType::Path, nullptr},
        {"input.nodes", ValueType::Path, nullptr},
        {"output.dir", ValueType::Path, "citesim-out"},
    };
    return specs;
}

const KeySpec* find_spec(const std::string& key) {
    for (const KeySpec& spec : key_specs()) {
        if (key == spec.key) return &spec;
    }
    return nullptr;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
    return value;
}

std::int64_t to_int(const std::string& key, const std::string& text) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    }
    return value;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "on" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "off" || text == "no" || text == "0") return false;
    throw ConfigError(key + ": expected true/false (or on/off), got '" + text + "'");
}

// Rewrites a value in its canonical spelling so equivalent configurations
// hash identically.
std::string normalize(const KeySpec& spec, const std::string& text) {
    const std::string key = spec.key;
    switch (spec.type) {
        case ValueType::Double: return tsv::format_double(to_double(key, text));
        case ValueType::Int: return std::to_string(to_int(key, text));
        case ValueType::Bool: return to_bool(key, text) ? "true" : "false";
        case ValueType::Superstars: return format_superstars(parse_superstars(text));
        case ValueType::Path:
        case ValueType::Word: return text;
    }
    return text;
}

NeighborhoodMode parse_neighborhood(const std::string& text) {
    if (text == "union") return NeighborhoodMode::Union;
    if (text == "out") return NeighborhoodMode::OutOnly;
    if (text == "in") return NeighborhoodMode::InOnly;
    throw ConfigError("engine.neighborhood: expected union, out or in, got '" + text + "'");
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const KeySpec& spec : key_specs()) out.emplace_back(spec.key);
        return out;
    }();
    return keys;
}

bool is_path_key(const std::string& key) {
    const KeySpec* spec = find_spec(key);
    return spec != nullptr && spec->type == ValueType::Path;
}

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source_name, const std::filesystem::path& base_dir) {
    ConfigFile config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        const std::string where = source_name + ":" + std::to_string(line_no);
        const auto eq = content.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
        const std::string key = trim(std::string_view(content).substr(0, eq));
        if (config.entries_.count(key) != 0) throw ConfigError(where + ": " + key + " is set twice");
        try {
            config.set(key, trim(std::string_view(content).substr(eq + 1)), base_dir);
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    return config;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    const auto base = std::filesystem::absolute(path).parent_path();
    return parse(in, path.string(), base);
}

void ConfigFile::set(const std::string& key, const std::string& value, const std::filesystem::path& base_dir) {
    const KeySpec* spec = find_spec(key);
    if (spec == nullptr) throw ConfigError("unknown config key '" + key + "'");
    if (value.empty()) throw ConfigError(key + ": empty value");
    if (spec->type == ValueType::Path) {
        std::filesystem::path p(value);
        if (p.is_relative()) p = std::filesystem::absolute(base_dir) / p;
        entries_[key] = p.lexically_normal().string();
        return;
    }
    entries_[key] = normalize(*spec, value);
}

void ConfigFile::set_assignment(const std::string& assignment, const std::filesystem::path& base_dir) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
    set(trim(std::string_view(assignment).substr(0, eq)), trim(std::string_view(assignment).substr(eq + 1)), base_dir);
}

std::optional<std::string> ConfigFile::get(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::vector<Superstar> parse_superstars(const std::string& text) {
    if (text == "none") return {};
    if (text == "default") return default_superstars();
    std::vector<Superstar> out;
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        item = trim(item);
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("engine.superstars: expected year:fitness, got '" + item + "'");
        }
        Superstar s;
        s.year = static_cast<int>(to_int("engine.superstars", trim(std::string_view(item).substr(0, colon))));
        s.fitness = to_int("engine.superstars", trim(std::string_view(item).substr(colon + 1)));
        out.push_back(s);
    }
    if (out.empty()) throw ConfigError("engine.superstars: empty list");
    return out;
}

std::string format_superstars(const std::vector<Superstar>& superstars) {
    if (superstars.empty()) return "none";
    std::string out;
    for (const Superstar& s : superstars) {
        if (!out.empty()) out += ',';
        out += std::to_string(s.year) + ":" + std::to_string(s.fitness);
    }
    return out;
}

RunSettings resolve_settings(const ConfigFile& config) {
    RunSettings settings;
    auto& canonical = settings.canonical;
    for (const KeySpec& spec : key_specs()) {
        if (auto value = config.get(spec.key)) {
            canonical[spec.key] = *value;
        } else if (spec.fallback != nullptr) {
            ConfigFile defaults;
            defaults.set(spec.key, spec.fallback);
            canonical[spec.key] = *defaults.get(spec.key);
        }
    }
    for (const char* required : {"recency.table", "input.edges", "input.nodes"}) {
        if (canonical.count(required) == 0) throw ConfigError(std::string("missing required input: ") + required);
    }

    const auto str = [&](const std::string& key) { return canonical.at(key); };
    const auto dbl = [&](const std::string& key) { return to_double(key, canonical.at(key)); };
    const auto opt_dbl = [&](const std::string& key) -> std::optional<double> {
        if (canonical.count(key) == 0) return std::nullopt;
        return dbl(key);
    };
    const auto integer = [&](const std::string& key) { return to_int(key, canonical.at(key)); };
    const auto boolean = [&](const std::string& key) { return to_bool(key, canonical.at(key)); };

    SimConfig& sim = settings.sim;
    sim.growth_rate = dbl("engine.growth_rate");
    sim.years = static_cast<int>(integer("engine.years"));
    if (canonical.count("engine.start_year") != 0) sim.start_year = static_cast<Year>(integer("engine.start_year"));
    sim.same_year_percentage = dbl("engine.same_year_percentage");
    sim.same_year_consumes_quota = boolean("engine.same_year_consumes_quota");
    sim.threads = static_cast<int>(integer("engine.threads"));
    const std::int64_t seed = integer("engine.seed");
    if (seed < 0) throw ConfigError("engine.seed must be non-negative");
    sim.master_seed = static_cast<std::uint64_t>(seed);
    sim.neighborhood = parse_neighborhood(str("engine.neighborhood"));
    const std::string pool = str("engine.generator_pool");
    if (pool != "all" && pool != "agents") {
        throw ConfigError("engine.generator_pool: expected all or agents, got '" + pool + "'");
    }
    sim.generator_from_all_nodes = pool == "all";
    sim.always_cite_generator = boolean("engine.always_cite_generator");
    sim.superstars = parse_superstars(str("engine.superstars"));

    PhenotypeMode mode;
    mode.kind = parse_background(str("agents.background"));
    if (mode.kind == BackgroundKind::Static) {
        Phenotype p;
        p.alpha = opt_dbl("agents.alpha").value_or(p.alpha);
        p.pw = opt_dbl("agents.pw").value_or(p.pw);
        p.rw = opt_dbl("agents.rw").value_or(p.rw);
        p.fw = opt_dbl("agents.fw").value_or(p.fw);
        mode.fixed = p;
    } else if (mode.kind == BackgroundKind::Hybrid) {
        mode.alpha = opt_dbl("agents.alpha");
        mode.pw = opt_dbl("agents.pw");
        mode.rw = opt_dbl("agents.rw");
        mode.fw = opt_dbl("agents.fw");
    } else {
        for (const char* key : {"agents.alpha", "agents.pw", "agents.rw", "agents.fw"}) {
            if (canonical.count(key) != 0) {
                throw ConfigError(std::string(key) + " cannot be set with agents.background=random");
            }
        }
    }
    sim.agent_background = mode;

    OutDegreeParams& od = sim.out_degree;
    od.kind = parse_out_degree_kind(str("out_degree.kind"));
    od.min = static_cast<int>(integer("out_degree.min"));
    od.max = static_cast<int>(integer("out_degree.max"));
    od.mean = dbl("out_degree.mean");
    od.sd = dbl("out_degree.sd");
    od.shape = dbl("out_degree.shape");
    if (od.kind == OutDegreeKind::Empirical) {
        if (canonical.count("out_degree.table") == 0) {
            throw ConfigError("missing required input: out_degree.table (out_degree.kind=empirical)");
        }
        settings.out_degree_table = str("out_degree.table");
        od.table = load_out_degree_table(*settings.out_degree_table);
    } else if (canonical.count("out_degree.table") != 0) {
        throw ConfigError("out_degree.table is only used with out_degree.kind=empirical");
    }

    FitnessLawParams& fl = sim.fitness_law;
    fl.scale = dbl("fitness.scale");
    fl.coeff = dbl("fitness.coeff");
    fl.exponent = dbl("fitness.exponent");
    fl.min_fitness = integer("fitness.min");
    fl.max_fitness = integer("fitness.max");
    fl.allow_outlier = boolean("fitness.allow_outlier");
    fl.outlier_max = integer("fitness.outlier_max");

    sim.gamma = dbl("score.gamma");
    sim.c = dbl("score.c");
    sim.recency_multiplicity = boolean("score.recency_multiplicity");

    settings.recency_table = str("recency.table");
    settings.input_edges = str("input.edges");
    settings.input_nodes = str("input.nodes");
    settings.output_dir = str("output.dir");
    sim.recency_table = load_recency_table(settings.recency_table);
    return settings;
}

std::string canonical_text(const std::map<std::string, std::string>& canonical) {
    std::string out;
    for (const auto& [key, value] : canonical) out += key + "=" + value + "\n";
    return out;
}

}  // namespace citesim
