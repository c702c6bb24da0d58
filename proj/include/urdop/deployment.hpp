// Deployment evaluation: nearest-point association, feasibility, hover
// times, energies and the weighted objective E_hover + phi * E_transmit.
#ifndef URDOP_DEPLOYMENT_HPP
#define URDOP_DEPLOYMENT_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "urdop/comm_model.hpp"
#include "urdop/scenario.hpp"

namespace urdop {

/// Ordered hover points. The variable-size DE population and the
/// candidate solution are the same object.
struct Deployment {
    std::vector<HoverPoint> points;

    std::size_t size() const { return points.size(); }
    friend bool operator==(const Deployment&, const Deployment&) = default;
};

struct Association {
    std::vector<int> assign; // assign[k] = serving hover point of UE k
    std::vector<int> load;   // load[m] = number of UEs served by m
};

struct EnergyBreakdown {
    double e_hover = 0.0;
    double e_transmit = 0.0;
    double objective = 0.0;
    std::vector<double> hover_times;
};

enum class Violation {
    capacity, // some hover point serves more than N UEs
    m_bounds, // M outside [M_min, M_max]
    // Reserved for a policy that forbids idle hover points. Idle points are
    // feasible here, so this tag is never produced.
    empty_point_policy,
};

inline std::string_view to_string(Violation v) {
    switch (v) {
    case Violation::capacity: return "capacity";
    case Violation::m_bounds: return "m_bounds";
    case Violation::empty_point_policy: return "empty_point_policy";
    }
    return "unknown";
}

struct Verdict {
    bool feasible = false;
    std::optional<Violation> violation;
};

struct Evaluation {
    Verdict verdict;
    std::optional<EnergyBreakdown> breakdown;

    bool feasible() const { return verdict.feasible; }
};

/// Each UE picks the nearest hover point; ties go to the lowest index.
inline Association associate(const Instance& inst, const Deployment& dep, const ScenarioConfig& cfg) {
    if (dep.points.empty()) throw std::invalid_argument("associate: deployment has no hover points");
    Association a;
    a.assign.resize(inst.size());
    a.load.assign(dep.size(), 0);
    for (std::size_t k = 0; k < inst.size(); ++k) {
        int best = 0;
        double best_d = distance_sq(inst.ues[k], dep.points[0], cfg.H);
        for (std::size_t m = 1; m < dep.size(); ++m) {
            const double d = distance_sq(inst.ues[k], dep.points[m], cfg.H);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(m);
            }
        }
        a.assign[k] = best;
        ++a.load[best];
    }
    return a;
}

/// M bounds are checked before capacity, so a deployment violating both
/// reports m_bounds.
inline Verdict check_feasible(const Instance&, const Deployment& dep, const ScenarioConfig& cfg,
                              const Association& assoc) {
    const auto M = static_cast<long long>(dep.size());
    if (M < cfg.M_min || M > cfg.M_max) return {false, Violation::m_bounds};
    for (int l : assoc.load)
        if (l > cfg.N) return {false, Violation::capacity};
    return {true, std::nullopt};
}

namespace detail {

/// Phase-2 (UAV -> UE) transmission time of UE k from its serving point.
inline double ue_time(const Instance& inst, const Deployment& dep, const ScenarioConfig& cfg,
                      const Association& assoc, std::size_t k) {
    const HoverPoint& hp = dep.points[assoc.assign[k]];
    return transmission_time(inst.demands[k], data_rate(cfg.P_uav_ue, gain_uav_ue(inst.ues[k], hp, cfg), cfg));
}

} // namespace detail

/// Hover time of every point: max receive time from the BS over the UEs it
/// serves plus max transmit time to those UEs. Idle points hover 0 s.
inline std::vector<double> hover_times(const Instance& inst, const Deployment& dep, const ScenarioConfig& cfg,
                                       const Association& assoc) {
    const std::size_t M = dep.size();
    std::vector<double> max_demand(M, 0.0);
    std::vector<double> max_ue_time(M, 0.0);
    for (std::size_t k = 0; k < inst.size(); ++k) {
        const auto m = static_cast<std::size_t>(assoc.assign[k]);
        max_demand[m] = std::max(max_demand[m], inst.demands[k]);
        max_ue_time[m] = std::max(max_ue_time[m], detail::ue_time(inst, dep, cfg, assoc, k));
    }
    std::vector<double> t(M, 0.0);
    for (std::size_t m = 0; m < M; ++m) {
        if (assoc.load[m] == 0) continue;
        // The BS rate is shared by every UE at m, so max_k D_k / R equals
        // (max_k D_k) / R.
        const double r_bs = data_rate(cfg.P_bs_uav, gain_bs_uav(dep.points[m], cfg), cfg);
        t[m] = transmission_time(max_demand[m], r_bs) + max_ue_time[m];
    }
    return t;
}

inline double hover_time(const Instance& inst, const Deployment& dep, const ScenarioConfig& cfg,
                         const Association& assoc, std::size_t m) {
    if (m >= dep.size()) throw std::out_of_range("hover_time: point index out of range");
    return hover_times(inst, dep, cfg, assoc)[m];
}

inline double transmit_energy(const Instance& inst, const Deployment& dep, const ScenarioConfig& cfg,
                              const Association& assoc) {
    double e = 0.0;
    for (std::size_t k = 0; k < inst.size(); ++k) e += cfg.P_uav_ue * detail::ue_time(inst, dep, cfg, assoc, k);
    return e;
}

inline double hover_energy(const Instance& inst, const Deployment& dep, const ScenarioConfig& cfg,
                           const Association& assoc) {
    double total = 0.0;
    for (double t : hover_times(inst, dep, cfg, assoc)) total += t;
    return cfg.hover_power * total;
}

/// Full evaluation. The breakdown is present iff the deployment is feasible.
inline Evaluation evaluate(const Instance& inst, const Deployment& dep, const ScenarioConfig& cfg) {
    if (dep.points.empty()) return {{false, Violation::m_bounds}, std::nullopt};
    const Association assoc = associate(inst, dep, cfg);
    Evaluation ev;
    ev.verdict = check_feasible(inst, dep, cfg, assoc);
    if (!ev.verdict.feasible) return ev;

    EnergyBreakdown b;
    b.hover_times = hover_times(inst, dep, cfg, assoc);
    double total = 0.0;
    for (double t : b.hover_times) total += t;
    b.e_hover = cfg.hover_power * total;
    b.e_transmit = transmit_energy(inst, dep, cfg, assoc);
    b.objective = b.e_hover + cfg.phi * b.e_transmit;
    ev.breakdown = std::move(b);
    return ev;
}

/// Objective of a feasible deployment, or nullopt when infeasible.
inline std::optional<double> objective(const Instance& inst, const Deployment& dep, const ScenarioConfig& cfg) {
    auto ev = evaluate(inst, dep, cfg);
    if (!ev.breakdown) return std::nullopt;
    return ev.breakdown->objective;
}

} // namespace urdop

#endif // URDOP_DEPLOYMENT_HPP
