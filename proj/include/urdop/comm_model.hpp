// Link physics: free-space channel gains, Shannon rate, transmission time,
// and the rotary-wing propulsion power model.
#ifndef URDOP_COMM_MODEL_HPP
#define URDOP_COMM_MODEL_HPP

#include <cmath>
#include <stdexcept>

#include "urdop/scenario.hpp"

namespace urdop {

struct LinkBudget {
    double gain = 0.0;     // channel power gain h
    double cnr = 0.0;      // h / sigma^2
    double rate_bps = 0.0; // bit/s
};

/// Squared 3-D distance between a ground point and a hover point at altitude H.
inline double distance_sq(Vec2 ue, HoverPoint hp, double H) {
    const double dx = ue.x - hp.x;
    const double dy = ue.y - hp.y;
    return dx * dx + dy * dy + H * H;
}

inline double distance(Vec2 ue, HoverPoint hp, double H) { return std::sqrt(distance_sq(ue, hp, H)); }

/// BS (at the origin) to UAV gain.
inline double gain_bs_uav(HoverPoint hp, const ScenarioConfig& cfg) {
    return cfg.beta0 / distance_sq({0.0, 0.0}, hp, cfg.H);
}

inline double gain_uav_ue(Vec2 ue, HoverPoint hp, const ScenarioConfig& cfg) {
    return cfg.beta0 / distance_sq(ue, hp, cfg.H);
}

inline double data_rate(double p_tx, double gain, const ScenarioConfig& cfg) {
    return cfg.B * std::log2(1.0 + p_tx * gain / cfg.sigma2);
}

inline LinkBudget link_budget(double p_tx, double gain, const ScenarioConfig& cfg) {
    return {gain, gain / cfg.sigma2, data_rate(p_tx, gain, cfg)};
}

inline double transmission_time(double bits, double rate_bps) {
    if (!(rate_bps > 0.0)) throw std::domain_error("transmission_time: rate must be positive");
    return bits / rate_bps;
}

/// Propulsion power of level flight at speed v (blade profile + induced + parasite).
inline double propulsion_power(double v, const PropulsionParams& pp) {
    const double v2 = v * v;
    const double v0_2 = pp.v_0 * pp.v_0;
    const double blade = pp.p_B * (1.0 + 3.0 * v2 / (pp.v_tip * pp.v_tip));
    const double induced =
        pp.p_I * std::sqrt(std::sqrt(1.0 + v2 * v2 / (4.0 * v0_2 * v0_2)) - v2 / (2.0 * v0_2));
    const double parasite = 0.5 * pp.d_0_drag * pp.rho * pp.s_solidity * pp.A_disc * v2 * v;
    return blade + induced + parasite;
}

inline double hover_power(const PropulsionParams& pp) { return propulsion_power(0.0, pp); }

} // namespace urdop

#endif // URDOP_COMM_MODEL_HPP
