#include "dhopf/report/config.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dhopf::report {

namespace {

const std::map<std::string, Value>& defaults() {
    static const std::map<std::string, Value> d = {
        {"model.kappa1", 3.0},
        {"model.kappa2", 4.0},
        {"model.gamma1", 0.25},
        {"model.gamma2", 0.5},
        {"model.theta1", 4.0},
        {"model.theta2", 3.0},
        {"model.lambda", 3.0},
        {"model.tau1", 0.0},
        {"model.tau2", 0.0},

        {"ngene.N", std::int64_t{3}},
        {"ngene.kappa", std::vector<double>{2.0, 2.0, 2.0}},
        {"ngene.gamma", std::vector<double>{0.5, 0.5, 0.5}},
        {"ngene.theta", std::vector<double>{2.0, 2.0, 2.0}},
        {"ngene.tau", std::vector<double>{0.0, 0.0, 0.0}},
        {"ngene.eps", std::vector<double>{-1.0, 1.0, 1.0}},
        {"ngene.lambda", 1.5},
        {"ngene.branches", std::int64_t{2}},

        {"solver.rtol", 1e-9},
        {"solver.atol", 1e-12},

        {"sweep.tau_lo", 0.05},
        {"sweep.tau_hi", 0.6},
        {"sweep.tau_n", std::int64_t{25}},
        {"sweep.t_end", 400.0},
        {"sweep.window_lo", 300.0},
        {"sweep.window_hi", 400.0},
        {"sweep.offset", 0.05},

        {"onset.taus", std::vector<double>{0.135, 0.140, 0.145, 0.150, 0.165, 0.188, 0.200, 0.300}},
        {"onset.t_end", 600.0},
        {"onset.window_lo", 400.0},
        {"onset.window_hi", 600.0},
        {"onset.rtol", 1e-10},

        {"tables.lambdas",
         std::vector<double>{0.1, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 2.5, 3.0, 5.0, 10.0}},
        {"symmetry.tau", 0.2},
        {"symmetry.tau1", std::vector<double>{0.10, 0.05, 0.02}},
        {"relaxation.taus", std::vector<double>{10.0, 20.0}},

        {"integrate.tau", 0.2},
        {"integrate.split", 0.5},
        {"integrate.t_end", 400.0},
        {"integrate.dt", 0.01},

        {"trace.tau_lo", 0.01},
        {"trace.tau_hi", 0.5},
        {"trace.step", 0.005},

        {"lyapunov.splits", std::vector<double>{0.2, 0.35, 0.5, 0.65, 0.8}},
        {"montecarlo.n_samples", std::int64_t{4000}},

        {"p53.half_life", 1.0},
        {"p53.delay", 1.0},
        {"p53.observed_period", 5.5},
        {"hill.lambdas", std::vector<double>{3.0, 1.5}},

        {"figures.regime_taus", std::vector<double>{0.10, 0.20, 0.60}},
        {"figures.regime_t_end", 120.0},
        {"figures.period_tau_lo", 0.2},
        {"figures.period_tau_hi", 1.5},
        {"figures.period_tau_n", std::int64_t{27}},

        {"run.seed", std::int64_t{20240601}},
        {"run.threads", std::int64_t{0}},
        {"run.out_dir", std::string{}},
    };
    return d;
}

const char* kind_name(const Value& v) {
    switch (v.index()) {
        case 0: return "number";
        case 1: return "integer";
        case 2: return "string";
        default: return "number list";
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
    }
    return v;
}

std::int64_t parse_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
    }
    return v;
}

std::string parse_string(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t.size() >= 2 && t.front() == '"' && t.back() == '"') {
        return t.substr(1, t.size() - 2);
    }
    if (t.find_first_of("\"=[]") != std::string::npos) {
        throw ConfigError("config key '" + key + "': malformed string '" + text + "'");
    }
    return t;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
        throw ConfigError("config key '" + key + "': expected a list like [1, 2], got '" + text +
                          "'");
    }
    t = t.substr(1, t.size() - 2);
    std::vector<double> out;
    if (trim(t).empty()) {
        return out;
    }
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_number(key, item));
    }
    return out;
}

void flatten(const nlohmann::json& j, const std::string& prefix, RunConfig& cfg,
             const std::string& origin) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        const auto& v = it.value();
        if (v.is_object()) {
            flatten(v, key, cfg, origin);
        } else if (v.is_array()) {
            std::vector<double> xs;
            for (const auto& e : v) {
                if (!e.is_number()) {
                    throw ConfigError(origin + ": key '" + key + "' must be a list of numbers");
                }
                xs.push_back(e.get<double>());
            }
            cfg.set(key, Value{xs});
        } else if (v.is_number_integer()) {
            cfg.set(key, std::to_string(v.get<std::int64_t>()));
        } else if (v.is_number()) {
            cfg.set(key, Value{v.get<double>()});
        } else if (v.is_string()) {
            cfg.set(key, Value{v.get<std::string>()});
        } else {
            throw ConfigError(origin + ": key '" + key + "' has an unsupported value type");
        }
    }
}

}  // namespace

RunConfig::RunConfig() : values_(defaults()) {}

bool RunConfig::known(const std::string& key) { return defaults().count(key) != 0; }

void RunConfig::set(const std::string& key, const std::string& text) {
    const auto it = defaults().find(key);
    if (it == defaults().end()) {
        throw ConfigError("unknown config key '" + key + "'");
    }
    switch (it->second.index()) {
        case 0: values_[key] = parse_number(key, text); break;
        case 1: values_[key] = parse_integer(key, text); break;
        case 2: values_[key] = parse_string(key, text); break;
        default: values_[key] = parse_list(key, text); break;
    }
}

void RunConfig::set(const std::string& key, const Value& v) {
    const auto it = defaults().find(key);
    if (it == defaults().end()) {
        throw ConfigError("unknown config key '" + key + "'");
    }
    if (it->second.index() == 0 && v.index() == 1) {
        values_[key] = static_cast<double>(std::get<std::int64_t>(v));
        return;
    }
    if (it->second.index() != v.index()) {
        throw ConfigError("config key '" + key + "': expected " + kind_name(it->second) +
                          ", got " + kind_name(v));
    }
    values_[key] = v;
}

double RunConfig::num(const std::string& key) const { return std::get<double>(values_.at(key)); }

std::int64_t RunConfig::integer(const std::string& key) const {
    return std::get<std::int64_t>(values_.at(key));
}

const std::string& RunConfig::str(const std::string& key) const {
    return std::get<std::string>(values_.at(key));
}

const std::vector<double>& RunConfig::list(const std::string& key) const {
    return std::get<std::vector<double>>(values_.at(key));
}

RunConfig RunConfig::parse_toml(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(lineno);
        if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos) {
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError(where + ": empty section header");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value'");
        }
        const std::string name = trim(line.substr(0, eq));
        const std::string key = section.empty() ? name : section + "." + name;
        try {
            cfg.set(key, line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    return cfg;
}

RunConfig RunConfig::parse_json(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError(origin + ": top-level JSON value must be an object");
    }
    RunConfig cfg;
    flatten(j, "", cfg, origin);
    return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.extension() == ".json") {
        return parse_json(buf.str(), path.string());
    }
    return parse_toml(buf.str(), path.string());
}

std::string format_value(const Value& v) {
    char buf[64];
    switch (v.index()) {
        case 0:
            std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(v));
            return buf;
        case 1: return std::to_string(std::get<std::int64_t>(v));
        case 2: return "\"" + std::get<std::string>(v) + "\"";
        default: {
            std::string s = "[";
            const auto& xs = std::get<std::vector<double>>(v);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", xs[i]);
                s += (i ? ", " : "") + std::string(buf);
            }
            return s + "]";
        }
    }
}

std::vector<std::string> RunConfig::resolved_lines() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) {
        out.push_back(k + " = " + format_value(v));
    }
    return out;
}

TwoGeneParams RunConfig::two_gene() const {
    TwoGeneParams p;
    p.kappa1 = num("model.kappa1");
    p.kappa2 = num("model.kappa2");
    p.gamma1 = num("model.gamma1");
    p.gamma2 = num("model.gamma2");
    p.theta1 = num("model.theta1");
    p.theta2 = num("model.theta2");
    p.lambda = num("model.lambda");
    p.tau1 = num("model.tau1");
    p.tau2 = num("model.tau2");
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    return p;
}

CyclicLoopParams RunConfig::ngene() const {
    const auto n = static_cast<std::size_t>(integer("ngene.N"));
    const auto take = [&](const char* key) {
        const auto& xs = list(key);
        if (xs.size() != n) {
            throw ConfigError(std::string("config key '") + key + "': expected " +
                              std::to_string(n) + " entries (ngene.N), got " +
                              std::to_string(xs.size()));
        }
        return xs;
    };
    CyclicLoopParams c;
    c.kappa = take("ngene.kappa");
    c.gamma = take("ngene.gamma");
    c.theta = take("ngene.theta");
    c.tau = take("ngene.tau");
    for (double e : take("ngene.eps")) {
        c.eps.push_back(e > 0.0 ? 1 : -1);
        if (std::abs(std::abs(e) - 1.0) > 0.0) {
            throw ConfigError("config key 'ngene.eps': entries must be +1 or -1");
        }
    }
    c.lambda = num("ngene.lambda");
    try {
        c.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("ngene: ") + e.what());
    }
    return c;
}

MeasureOptions RunConfig::sweep_options() const {
    MeasureOptions o;
    o.t_end = num("sweep.t_end");
    o.window_lo = num("sweep.window_lo");
    o.window_hi = num("sweep.window_hi");
    o.rtol = num("solver.rtol");
    o.atol = num("solver.atol");
    o.offset = num("sweep.offset");
    return o;
}

MeasureOptions RunConfig::onset_options() const {
    MeasureOptions o = sweep_options();
    o.t_end = num("onset.t_end");
    o.window_lo = num("onset.window_lo");
    o.window_hi = num("onset.window_hi");
    o.rtol = num("onset.rtol");
    return o;
}

std::vector<double> RunConfig::sweep_grid() const {
    const std::int64_t n = integer("sweep.tau_n");
    const double lo = num("sweep.tau_lo");
    const double hi = num("sweep.tau_hi");
    if (n < 2 || !(hi > lo)) {
        throw ConfigError("sweep grid needs tau_n >= 2 and tau_hi > tau_lo");
    }
    std::vector<double> g(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return g;
}

}  // namespace dhopf::report
