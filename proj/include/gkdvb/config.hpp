#pragma once

// Structured-text run configuration: flat `dotted.key = value` lines, `#`
// comments, fail-fast on unknown keys. Presets provide complete key sets
// that a config file may then override.

#include "gkdvb/solver.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkdvb {

struct ConfigError : std::runtime_error {
    std::string key;
    ConfigError(const std::string& k, const std::string& msg)
        : std::runtime_error(msg), key(k) {}
};

class ParamMap {
public:
    static ParamMap from_file(const std::string& path);
    static ParamMap from_string(const std::string& text);

    // Values from `other` win over existing entries.
    void merge(const ParamMap& other);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& dflt);
    double get_double(const std::string& key, double dflt);
    int get_int(const std::string& key, int dflt);
    std::uint64_t get_u64(const std::string& key, std::uint64_t dflt);
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& dflt);

    // Throws ConfigError naming the first key never requested by a getter.
    void reject_unknown() const;

    const std::map<std::string, std::string>& entries() const { return map_; }

private:
    std::map<std::string, std::string> map_;
    mutable std::set<std::string> seen_;
};

// Builds a SimConfig from grid.*, time.*, nonlinearity.*, damping.*, ic.*,
// tail.threshold and solver.blowup_guard keys.
SimConfig sim_config_from_params(ParamMap& p);

// Named preset parameter sets (see README): zero, linear-mode,
// burgers-gaussian, indefinite, localized-p2, large-p4, picard-default,
// carleman-default.
ParamMap preset_params(const std::string& name);
std::vector<std::string> preset_names();

} // namespace gkdvb
