// Types shared by every solver: evaluation budget, convergence trace and
// the per-run record, plus the random feasible initialization.
#ifndef URDOP_RUN_RECORD_HPP
#define URDOP_RUN_RECORD_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "urdop/deployment.hpp"
#include "urdop/scenario.hpp"

namespace urdop {

enum class Algorithm { sadevps, devips, fixed_m_de };

inline std::string_view to_string(Algorithm a) {
    switch (a) {
    case Algorithm::sadevps: return "sadevps";
    case Algorithm::devips: return "devips";
    case Algorithm::fixed_m_de: return "fixed_m_de";
    }
    return "unknown";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
    if (s == "sadevps") return Algorithm::sadevps;
    if (s == "devips") return Algorithm::devips;
    if (s == "fixed_m_de" || s == "fixed-m-de") return Algorithm::fixed_m_de;
    return std::nullopt;
}

/// Fitness-evaluation counter. The main loop runs while fe <= max_fe.
struct EvalBudget {
    long long fe = 0;
    long long max_fe = 0;

    bool has_budget() const { return fe <= max_fe; }
};

struct TracePoint {
    long long fe = 0;
    double best = 0.0;
    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

enum class RunStatus { ok, init_failed };

inline std::string_view to_string(RunStatus s) { return s == RunStatus::ok ? "ok" : "init_failed"; }

struct RunRecord {
    Algorithm algorithm = Algorithm::sadevps;
    RunStatus status = RunStatus::ok;
    std::uint64_t seed = 0;
    std::uint64_t instance_seed = 0;
    std::string config_hash;
    long long max_fe = 0;
    long long fe_used = 0;
    std::size_t generations = 0;
    std::size_t last_generation_size = 0; // |P| when the final generation began
    std::vector<TracePoint> trace;        // one sample after init, then one per generation
    Deployment final_deployment;
    EnergyBreakdown final_breakdown;
    double wall_time_s = 0.0; // not serialized; varies between identical runs
};

/// A population together with its cached objective.
struct Incumbent {
    Deployment dep;
    double objective = 0.0;
};

/// Draws `count` uniform points in the search box until the deployment is
/// feasible. Every attempt costs one evaluation. Gives up once fe >= max_fe.
template <typename Rng>
std::optional<Incumbent> initialize_population(const Instance& inst, const ScenarioConfig& cfg, Rng& rng,
                                               EvalBudget& budget, std::size_t count) {
    std::uniform_real_distribution<double> coord(cfg.search_lo, cfg.search_hi);
    do {
        Deployment dep;
        dep.points.reserve(count);
        for (std::size_t m = 0; m < count; ++m) {
            const double x = coord(rng);
            const double y = coord(rng);
            dep.points.push_back({x, y});
        }
        ++budget.fe;
        if (auto obj = objective(inst, dep, cfg)) return Incumbent{std::move(dep), *obj};
    } while (budget.fe < budget.max_fe);
    return std::nullopt;
}

inline void finish_record(RunRecord& rec, const Instance& inst, const ScenarioConfig& cfg, const Incumbent& best) {
    rec.final_deployment = best.dep;
    if (auto ev = evaluate(inst, best.dep, cfg); ev.breakdown) rec.final_breakdown = *ev.breakdown;
}

} // namespace urdop

#endif // URDOP_RUN_RECORD_HPP
