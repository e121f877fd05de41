#include "gkdvb/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gkdvb {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

ParamMap ParamMap::from_string(const std::string& text) {
    ParamMap p;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(key, "config line " + std::to_string(lineno) +
                                       ": empty key");
        p.map_[key] = value;
    }
    return p;
}

ParamMap ParamMap::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

void ParamMap::merge(const ParamMap& other) {
    for (const auto& [k, v] : other.map_) map_[k] = v;
}

bool ParamMap::has(const std::string& key) const {
    return map_.count(key) > 0;
}

std::string ParamMap::get_string(const std::string& key,
                                 const std::string& dflt) {
    seen_.insert(key);
    auto it = map_.find(key);
    return it == map_.end() ? dflt : it->second;
}

double ParamMap::get_double(const std::string& key, double dflt) {
    seen_.insert(key);
    auto it = map_.find(key);
    if (it == map_.end()) return dflt;
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
        throw ConfigError(key, "key '" + key + "': not a number: '" +
                                   it->second + "'");
    return v;
}

int ParamMap::get_int(const std::string& key, int dflt) {
    const double v = get_double(key, static_cast<double>(dflt));
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError(key, "key '" + key + "': not an integer");
    return i;
}

std::uint64_t ParamMap::get_u64(const std::string& key, std::uint64_t dflt) {
    seen_.insert(key);
    auto it = map_.find(key);
    if (it == map_.end()) return dflt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0')
        throw ConfigError(key, "key '" + key + "': not an unsigned integer");
    return v;
}

std::vector<double> ParamMap::get_double_list(const std::string& key,
                                              const std::vector<double>& dflt) {
    seen_.insert(key);
    auto it = map_.find(key);
    if (it == map_.end()) return dflt;
    std::vector<double> out;
    std::string item;
    std::istringstream in(it->second);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError(key, "key '" + key + "': bad list entry '" +
                                       item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw ConfigError(key, "key '" + key + "': empty list");
    return out;
}

void ParamMap::reject_unknown() const {
    for (const auto& [k, v] : map_) {
        (void)v;
        if (!seen_.count(k))
            throw ConfigError(k, "unknown config key '" + k + "'");
    }
}

SimConfig sim_config_from_params(ParamMap& p) {
    SimConfig cfg;
    cfg.half_length = p.get_double("grid.half_length", cfg.half_length);
    cfg.n_points = p.get_int("grid.n", cfg.n_points);
    cfg.dt = p.get_double("time.dt", cfg.dt);
    cfg.horizon = p.get_double("time.horizon", cfg.horizon);
    cfg.snapshot_every = p.get_int("time.snapshot_every", cfg.snapshot_every);

    cfg.nonlinearity.form =
        form_from_name(p.get_string("nonlinearity.form", "identity"));
    cfg.nonlinearity.p = p.get_double("nonlinearity.p", 1.0);
    cfg.nonlinearity.growth_constant = p.get_double(
        "nonlinearity.c",
        min_growth_constant(cfg.nonlinearity.form, cfg.nonlinearity.p));

    cfg.damping_kind =
        damping_kind_from_name(p.get_string("damping.kind", "zero"));
    cfg.damping_params.lambda0 = p.get_double("damping.lambda0", 0.0);
    cfg.damping_params.bump_amplitude = p.get_double("damping.amp", 0.0);
    cfg.damping_params.alpha = p.get_double("damping.alpha", 0.0);
    cfg.damping_params.beta = p.get_double("damping.beta", 0.0);
    cfg.damping_params.width = p.get_double("damping.width", 0.0);

    cfg.ic.kind = ic_kind_from_name(p.get_string("ic.kind", "zero"));
    cfg.ic.amplitude = p.get_double("ic.amplitude", 1.0);
    cfg.ic.width = p.get_double("ic.width", 1.0);
    cfg.ic.center = p.get_double("ic.center", 0.0);
    cfg.ic.mode_k = p.get_int("ic.k", 1);
    cfg.ic.seed = p.get_u64("ic.seed", 1);
    cfg.ic.cutoff = p.get_int("ic.cutoff", 0);

    cfg.tail_threshold = p.get_double("tail.threshold", cfg.tail_threshold);
    cfg.blowup_guard = p.get_double("solver.blowup_guard", cfg.blowup_guard);
    return cfg;
}

ParamMap preset_params(const std::string& name) {
    // Every preset is a complete, runnable key set; config files override.
    static const std::map<std::string, const char*> presets = {
        {"zero", R"(
grid.half_length = 32
grid.n = 256
time.dt = 1e-2
time.horizon = 1
nonlinearity.form = identity
nonlinearity.p = 1
damping.kind = zero
ic.kind = zero
)"},
        {"linear-mode", R"(
grid.half_length = 3.14159265358979323846
grid.n = 256
time.dt = 1e-3
time.horizon = 4
nonlinearity.form = none
nonlinearity.p = 1
damping.kind = constant
damping.lambda0 = 0.5
ic.kind = single_mode
ic.k = 1
ic.amplitude = 1
tail.threshold = 1
)"},
        {"burgers-gaussian", R"(
grid.half_length = 32
grid.n = 512
time.dt = 1e-3
time.horizon = 5
nonlinearity.form = identity
nonlinearity.p = 1
damping.kind = zero
ic.kind = gaussian
ic.amplitude = 1
ic.width = 2
)"},
        {"indefinite", R"(
grid.half_length = 32
grid.n = 512
time.dt = 1e-3
time.horizon = 5
nonlinearity.form = identity
nonlinearity.p = 1
damping.kind = indefinite
damping.lambda0 = 0.2
damping.amp = 0.22
ic.kind = gaussian
ic.amplitude = 1
ic.width = 2
)"},
        {"localized-p2", R"(
grid.half_length = 32
grid.n = 512
time.dt = 1e-3
time.horizon = 5
nonlinearity.form = signed_power
nonlinearity.p = 2
damping.kind = localized
damping.lambda0 = 1
damping.alpha = -5
damping.beta = 5
damping.width = 1
ic.kind = gaussian
ic.amplitude = 0.5
ic.width = 2
)"},
        {"large-p4", R"(
grid.half_length = 32
grid.n = 512
time.dt = 1e-3
time.horizon = 2
nonlinearity.form = abs_power
nonlinearity.p = 4
damping.kind = zero
ic.kind = gaussian
ic.amplitude = 4
ic.width = 1
)"},
        {"picard-default", R"(
grid.half_length = 32
grid.n = 256
time.dt = 1e-3
time.horizon = 0.2
nonlinearity.form = identity
nonlinearity.p = 1
damping.kind = zero
ic.kind = gaussian
ic.amplitude = 0.1
ic.width = 2
picard.t_loc = 0.2
picard.iterations = 10
picard.substeps = 64
)"},
        {"carleman-default", R"(
carleman.L = 1
carleman.x0 = 2
carleman.epsilon = 0.5
carleman.T = 2
carleman.s_values = 1,2,4,8,16,32,64,128,256
carleman.grid_n = 512
carleman.time_n = 512
)"},
    };
    auto it = presets.find(name);
    if (it == presets.end())
        throw ConfigError("preset", "unknown preset '" + name + "'");
    return ParamMap::from_string(it->second);
}

std::vector<std::string> preset_names() {
    return {"zero",        "linear-mode",    "burgers-gaussian",
            "indefinite",  "localized-p2",   "large-p4",
            "picard-default", "carleman-default"};
}

} // namespace gkdvb
