// Scenario configuration and random problem instances for UAV relay
// deployment. Units are SI throughout; dBm only appears in the raw config.
#ifndef URDOP_SCENARIO_HPP
#define URDOP_SCENARIO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace urdop {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 2-D ground-plane vector in meters. Doubles as hover-point coordinate
/// (altitude implied by the scenario) and as the DE search vector.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    static constexpr std::size_t size() { return 2; }
    double& operator[](std::size_t j) { return j == 0 ? x : y; }
    double operator[](std::size_t j) const { return j == 0 ? x : y; }

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

using HoverPoint = Vec2;

/// Rotary-wing propulsion model parameters.
struct PropulsionParams {
    double p_B = 79.8563;     // blade profile power (W)
    double p_I = 88.6279;     // induced power (W)
    double v_tip = 120.0;     // rotor tip speed (m/s)
    double v_0 = 4.03;        // mean rotor induced velocity in hover (m/s)
    double d_0_drag = 0.6;    // fuselage drag ratio
    double rho = 1.225;       // air density (kg/m^3)
    double s_solidity = 0.05; // rotor solidity
    double A_disc = 0.503;    // rotor disc area (m^2)
};

struct ScenarioConfig {
    int K = 100;
    int N = 20;
    double H = 100.0;
    double r_u = 450.0; // stored, not used by the objective
    double rc_outer = 1500.0;
    double rb_inner = 750.0;

    double B = 1e6;
    double f_c = 2e9;
    double c_light = 2.998e8;
    double N0_dBm_per_Hz = -174.0;
    double P_bs_uav = 1.0;
    double P_uav_ue = 0.1;

    double D_min = 8e6;   // 1 MB
    double D_max = 8e9;   // 1000 MB
    double phi = 1000.0;
    long long MaxFE = 100000;

    PropulsionParams propulsion{};

    // Derived by finalize().
    double beta0 = 0.0;
    double sigma2 = 0.0;
    double hover_power = 0.0;
    int M_min = 0;
    int M_max = 0;
    double search_lo = 0.0;
    double search_hi = 0.0;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
}

} // namespace detail

/// Computes the derived fields and validates every invariant.
/// K = 0 is accepted (empty scenario, M bounds both 0); solvers reject it.
inline ScenarioConfig finalize(ScenarioConfig cfg) {
    using detail::require;
    require(cfg.K >= 0, "K >= 0");
    require(cfg.N >= 1, "N >= 1");
    require(cfg.H > 0.0, "H > 0");
    require(cfg.rb_inner > 0.0, "rb_inner > 0");
    require(cfg.rb_inner < cfg.rc_outer, "rb_inner < rc_outer");
    require(cfg.B > 0.0, "B > 0");
    require(cfg.f_c > 0.0, "f_c > 0");
    require(cfg.c_light > 0.0, "c_light > 0");
    require(cfg.P_bs_uav > 0.0, "P_bs_uav > 0");
    require(cfg.P_uav_ue > 0.0, "P_uav_ue > 0");
    require(cfg.D_min >= 1.0, "D_min >= 1 bit");
    require(cfg.D_min <= cfg.D_max, "D_min <= D_max");
    require(cfg.phi >= 0.0, "phi >= 0");
    require(cfg.MaxFE >= 1, "MaxFE >= 1");
    const auto& pp = cfg.propulsion;
    require(pp.p_B > 0 && pp.p_I > 0 && pp.v_tip > 0 && pp.v_0 > 0 && pp.d_0_drag > 0 &&
                pp.rho > 0 && pp.s_solidity > 0 && pp.A_disc > 0,
            "propulsion parameters > 0");

    cfg.beta0 = std::pow(4.0 * std::numbers::pi * cfg.f_c / cfg.c_light, -2.0);
    cfg.sigma2 = std::pow(10.0, (cfg.N0_dBm_per_Hz - 30.0) / 10.0) * cfg.B;
    // P(0) of the propulsion model collapses to p_B + p_I.
    cfg.hover_power = pp.p_B + pp.p_I;
    cfg.M_min = (cfg.K + cfg.N - 1) / cfg.N;
    cfg.M_max = cfg.K;
    if (cfg.K > 0) require(1 <= cfg.M_min && cfg.M_min <= cfg.M_max, "1 <= M_min <= M_max");
    cfg.search_lo = -cfg.rc_outer / 2.0;
    cfg.search_hi = cfg.rc_outer / 2.0;
    require(cfg.search_lo < cfg.search_hi, "search_lo < search_hi");
    return cfg;
}

using RawParams = std::map<std::string, std::string>;

namespace detail {

inline double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("invalid config: '" + key + "' is not a number: '" + v + "'");
    }
}

inline long long to_int(const std::string& key, const std::string& v) {
    double d = to_double(key, v);
    if (d != std::floor(d) || std::abs(d) > 9e15)
        throw ConfigError("invalid config: '" + key + "' is not an integer: '" + v + "'");
    return static_cast<long long>(d);
}

template <typename F>
inline void for_each_field(ScenarioConfig& c, F&& f) {
    f("K", c.K);
    f("N", c.N);
    f("H", c.H);
    f("r_u", c.r_u);
    f("rc_outer", c.rc_outer);
    f("rb_inner", c.rb_inner);
    f("B", c.B);
    f("f_c", c.f_c);
    f("c_light", c.c_light);
    f("N0_dBm_per_Hz", c.N0_dBm_per_Hz);
    f("P_bs_uav", c.P_bs_uav);
    f("P_uav_ue", c.P_uav_ue);
    f("D_min", c.D_min);
    f("D_max", c.D_max);
    f("phi", c.phi);
    f("MaxFE", c.MaxFE);
    f("p_B", c.propulsion.p_B);
    f("p_I", c.propulsion.p_I);
    f("v_tip", c.propulsion.v_tip);
    f("v_0", c.propulsion.v_0);
    f("d_0_drag", c.propulsion.d_0_drag);
    f("rho", c.propulsion.rho);
    f("s_solidity", c.propulsion.s_solidity);
    f("A_disc", c.propulsion.A_disc);
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// True if `key` names a raw (non-derived) config field.
inline bool is_config_key(const std::string& key) {
    ScenarioConfig c;
    bool found = false;
    detail::for_each_field(c, [&](const char* name, auto&) { found = found || key == name; });
    return found;
}

/// Builds a validated config from raw key/value pairs over the defaults.
/// Unknown keys are rejected.
inline ScenarioConfig build_config(const RawParams& raw = {}) {
    ScenarioConfig cfg;
    std::size_t consumed = 0;
    detail::for_each_field(cfg, [&](const char* name, auto& field) {
        auto it = raw.find(name);
        if (it == raw.end()) return;
        ++consumed;
        using T = std::remove_reference_t<decltype(field)>;
        if constexpr (std::is_floating_point_v<T>) {
            field = detail::to_double(name, it->second);
        } else {
            long long v = detail::to_int(name, it->second);
            if (v < std::numeric_limits<T>::min() || v > std::numeric_limits<T>::max())
                throw ConfigError(std::string("invalid config: '") + name + "' out of range");
            field = static_cast<T>(v);
        }
    });
    if (consumed != raw.size()) {
        for (const auto& [k, v] : raw)
            if (!is_config_key(k)) throw ConfigError("invalid config: unknown key '" + k + "'");
    }
    return finalize(cfg);
}

/// Raw (non-derived) fields as key/value text, in a fixed order.
inline RawParams to_raw(const ScenarioConfig& cfg) {
    RawParams out;
    ScenarioConfig copy = cfg;
    detail::for_each_field(copy, [&](const char* name, auto& field) {
        using T = std::remove_reference_t<decltype(field)>;
        if constexpr (std::is_floating_point_v<T>)
            out[name] = detail::format_double(field);
        else
            out[name] = std::to_string(field);
    });
    return out;
}

/// Parses flat `key = value` text. '#' starts a comment; blank lines ignored.
inline RawParams parse_key_values(std::istream& in, const std::string& source = "<input>") {
    RawParams out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string{};
        auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
        if (!out.emplace(key, value).second)
            throw ConfigError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    return out;
}

inline RawParams read_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return parse_key_values(in, path);
}

/// Stable 64-bit FNV-1a digest of the raw config, rendered as hex.
inline std::string config_hash(const ScenarioConfig& cfg) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& [k, v] : to_raw(cfg)) {
        for (char ch : k + "=" + v + ";") {
            h ^= static_cast<unsigned char>(ch);
            h *= 1099511628211ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Instance {
    // The base station is fixed at the origin (0, 0, 0).
    std::vector<Vec2> ues;
    std::vector<double> demands; // bits
    std::uint64_t seed = 0;

    std::size_t size() const { return ues.size(); }
    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Chebyshev radius of a ground point; the UE region is
/// rb_inner/2 < max(|x|,|y|) <= rc_outer/2.
inline double chebyshev_radius(Vec2 p) { return std::max(std::abs(p.x), std::abs(p.y)); }

inline bool in_annulus(Vec2 p, const ScenarioConfig& cfg) {
    double r = chebyshev_radius(p);
    return r > cfg.rb_inner / 2.0 && r <= cfg.rc_outer / 2.0;
}

/// Throws ConfigError describing the first violated instance invariant.
inline void validate_instance(const Instance& inst, const ScenarioConfig& cfg) {
    if (inst.ues.size() != inst.demands.size())
        throw ConfigError("invalid instance: ues and demands differ in length");
    if (static_cast<long long>(inst.ues.size()) != cfg.K)
        throw ConfigError("invalid instance: expected " + std::to_string(cfg.K) + " UEs, got " +
                          std::to_string(inst.ues.size()));
    for (std::size_t k = 0; k < inst.ues.size(); ++k) {
        if (!std::isfinite(inst.ues[k].x) || !std::isfinite(inst.ues[k].y) ||
            !in_annulus(inst.ues[k], cfg))
            throw ConfigError("invalid instance: UE " + std::to_string(k) + " outside the annulus");
        double d = inst.demands[k];
        if (!(d >= cfg.D_min && d <= cfg.D_max))
            throw ConfigError("invalid instance: demand " + std::to_string(k) + " outside [D_min, D_max]");
    }
}

/// Samples K UEs uniformly over the square annulus (rejection from the
/// outer square) and continuous-uniform demands in [D_min, D_max].
inline Instance generate_instance(const ScenarioConfig& cfg, std::uint64_t seed) {
    constexpr int kMaxResamples = 1'000'000;
    std::mt19937_64 rng(seed);
    const double half = cfg.rc_outer / 2.0;
    std::uniform_real_distribution<double> coord(-half, half);
    std::uniform_real_distribution<double> demand(cfg.D_min, cfg.D_max);

    Instance inst;
    inst.seed = seed;
    inst.ues.reserve(cfg.K);
    inst.demands.reserve(cfg.K);
    for (int k = 0; k < cfg.K; ++k) {
        int tries = 0;
        Vec2 p;
        do {
            if (++tries > kMaxResamples)
                throw GenerationError("UE sampling exceeded " + std::to_string(kMaxResamples) + " resamples");
            p = {coord(rng), coord(rng)};
        } while (!in_annulus(p, cfg));
        inst.ues.push_back(p);
    }
    for (int k = 0; k < cfg.K; ++k) inst.demands.push_back(demand(rng));
    return inst;
}

} // namespace urdop

#endif // URDOP_SCENARIO_HPP
