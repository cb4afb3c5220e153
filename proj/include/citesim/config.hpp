#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "citesim/engine.hpp"

namespace citesim {

// Flat `key=value` configuration with dotted keys, one entry per line.
// Blank lines and lines starting with '#' are ignored. Relative paths are
// resolved against the directory of the file that set them.
//
// Precedence, lowest to highest: built-in defaults, the config file,
// command-line overrides.
class ConfigFile {
public:
    ConfigFile() = default;

    static ConfigFile parse(std::istream& in, const std::string& source_name,
                            const std::filesystem::path& base_dir = std::filesystem::current_path());
    static ConfigFile load(const std::filesystem::path& path);

    // Sets or replaces a value. Paths in `value` resolve against `base_dir`.
    // Throws ConfigError for an unknown key.
    void set(const std::string& key, const std::string& value,
             const std::filesystem::path& base_dir = std::filesystem::current_path());
    // Parses "key=value" and calls set().
    void set_assignment(const std::string& assignment,
                        const std::filesystem::path& base_dir = std::filesystem::current_path());

    std::optional<std::string> get(const std::string& key) const;
    const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

// Every key the simulator understands.
const std::vector<std::string>& known_config_keys();
bool is_path_key(const std::string& key);

struct RunSettings {
    SimConfig sim;
    std::filesystem::path input_edges;
    std::filesystem::path input_nodes;
    std::filesystem::path output_dir;
    std::filesystem::path recency_table;
    std::optional<std::filesystem::path> out_degree_table;
    // Fully resolved configuration (defaults filled in, absolute paths);
    // hashing it identifies the run.
    std::map<std::string, std::string> canonical;
};

// Builds simulator settings from a config, loading the referenced tables.
// Throws ConfigError naming the offending key (missing required input,
// malformed value) and DataError for unreadable tables.
RunSettings resolve_settings(const ConfigFile& config);

// Sorted `key=value` lines of a canonical configuration.
std::string canonical_text(const std::map<std::string, std::string>& canonical);

// Superstar list syntax: "none", "default" or "year:fitness,year:fitness".
std::vector<Superstar> parse_superstars(const std::string& text);
std::string format_superstars(const std::vector<Superstar>& superstars);

}  // namespace citesim
