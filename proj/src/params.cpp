#include "aptring/params.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace aptring {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParamDomainError(std::string(name) + " must be strictly positive, got " +
                               std::to_string(value));
    }
}

} // namespace

PhysicalParams PhysicalParams::from_si(double D_m2_per_s, double rho_kg_per_m3,
                                       double c_J_per_kgK, double k_i_W_per_mK,
                                       double d_m, double b_m) {
    // SI -> mm-kg-s-K: m^2 -> mm^2 (1e6), kg/m^3 -> kg/mm^3 (1e-9),
    // J/(kg K) = m^2/(s^2 K) -> mm^2/(s^2 K) (1e6),
    // W/(m K) = kg m/(s^3 K) -> kg mm/(s^3 K) (1e3), m -> mm (1e3).
    PhysicalParams p{D_m2_per_s * 1e6,  rho_kg_per_m3 * 1e-9, c_J_per_kgK * 1e6,
                     k_i_W_per_mK * 1e3, d_m * 1e3,            b_m * 1e3};
    p.validate();
    return p;
}

void PhysicalParams::validate() const {
    require_positive(D, "D");
    require_positive(rho, "rho");
    require_positive(c, "c");
    require_positive(k_i, "k_i");
    require_positive(d, "d");
    require_positive(b, "b");
}

double RingGeometry::circumference() const { return 2.0 * std::numbers::pi * R; }

RingGeometry RingGeometry::from_si(double R_m, double deltaR_m) {
    RingGeometry g{R_m * 1e3, deltaR_m * 1e3};
    g.validate();
    return g;
}

void RingGeometry::validate() const {
    require_positive(R, "R");
    if (deltaR < 0.0 || !std::isfinite(deltaR)) {
        throw ParamDomainError("deltaR must be non-negative");
    }
}

ModeSpec make_mode(int n, const RingGeometry& geom) {
    if (n == 0) throw ParamDomainError("mode number n must be nonzero");
    geom.validate();
    return ModeSpec{n, static_cast<double>(n) / geom.R};
}

double derive_h(const PhysicalParams& p) {
    p.validate();
    return p.k_i / p.d;
}

double derive_hc(const PhysicalParams& p) {
    p.validate();
    return p.k_i / (p.d * p.rho * p.c * p.b);
}

double v_ep(double h_c, double kappa) {
    require_positive(h_c, "h_c");
    if (kappa == 0.0) {
        throw ParamDomainError("the uniform mode (kappa = 0) has no eigenvector coalescence point");
    }
    return h_c / std::abs(kappa);
}

double epsilon_of(const PhysicalParams& p, double R, int n) {
    if (n == 0) throw ParamDomainError("mode number n must be nonzero");
    require_positive(R, "R");
    const double h_c = derive_hc(p);
    return h_c * R * R / (p.D * static_cast<double>(n) * static_cast<double>(n));
}

double lambda_of(const PhysicalParams& p, double R, int n) {
    return 1.0 + 1.0 / epsilon_of(p, R, n);
}

std::pair<double, double> nondimensionalize(double x, double t,
                                            const PhysicalParams& p,
                                            double lambda) {
    if (!(lambda > 1.0)) {
        throw ParamDomainError("lambda must exceed 1, got " + std::to_string(lambda));
    }
    const double h_c = derive_hc(p);
    const double z = std::sqrt(h_c * (lambda - 1.0) / p.D) * x;
    return {z, h_c * t};
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

} // namespace

KeyValues parse_key_value_text(const std::string& text, const std::string& origin) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected `key = value`, got `" + stripped + "`");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": empty key or value");
        }
        if (kv.count(key)) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": duplicate key `" + key + "`");
        }
        kv[key] = value;
    }
    return kv;
}

KeyValues parse_key_value_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file `" + path + "`");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_key_value_text(buf.str(), path);
}

double get_double(const KeyValues& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("missing required key `" + key + "`");
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key `" + key + "`: cannot parse `" + it->second + "` as a number");
    }
}

double get_double_or(const KeyValues& kv, const std::string& key, double fallback) {
    return kv.count(key) ? get_double(kv, key) : fallback;
}

long get_long(const KeyValues& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("missing required key `" + key + "`");
    try {
        std::size_t pos = 0;
        const long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key `" + key + "`: cannot parse `" + it->second + "` as an integer");
    }
}

PhysicalParams physical_params_from_config(const KeyValues& kv) {
    return PhysicalParams::from_si(get_double(kv, "D"), get_double(kv, "rho"),
                                   get_double(kv, "c"), get_double(kv, "k_i"),
                                   get_double(kv, "d"), get_double(kv, "b"));
}

void validate_keys(const KeyValues& kv, const std::map<std::string, int>& allowed,
                   const std::string& what) {
    for (const auto& [key, value] : kv) {
        (void)value;
        if (!allowed.count(key)) {
            throw ConfigError(what + ": unknown key `" + key + "`");
        }
    }
}

} // namespace aptring
