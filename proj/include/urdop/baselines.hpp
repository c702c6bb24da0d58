// Comparison solvers.
//
// DEVIPS-style: the variable-population framework with constant F = 0.6,
// CR = 0.5 and rand/1 only.
//
// Fixed-M DE (DEEM-style): the population is a deployment of exactly M
// points. Each trial (rand/1, F = 0.9, CR = 0.9) substitutes a random member
// when the result is feasible and strictly better. One evaluation per
// candidate.
#ifndef URDOP_BASELINES_HPP
#define URDOP_BASELINES_HPP

#include <chrono>
#include <random>
#include <stdexcept>

#include "urdop/de_ops.hpp"
#include "urdop/run_record.hpp"
#include "urdop/sadevps.hpp"

namespace urdop {

inline RunRecord run_devips(const Instance& inst, const ScenarioConfig& cfg, std::uint64_t seed, long long max_fe,
                            const GenerationObserver& observer = {}) {
    return run_variable_population(inst, cfg, seed, max_fe, FixedControl{0.6, 0.5}, Algorithm::devips, observer);
}

/// M = floor((M_min + M_max) / 2) with the usual bounds; for N | K this is
/// floor(K (N + 1) / (2 N)).
inline int mid_point_count(const ScenarioConfig& cfg) { return (cfg.M_min + cfg.M_max) / 2; }

struct FixedMOptions {
    double F = 0.9;
    double CR = 0.9;
};

inline RunRecord run_fixed_m_de(const Instance& inst, const ScenarioConfig& cfg, int M, std::uint64_t seed,
                                long long max_fe, const FixedMOptions& opt = {}) {
    if (M < cfg.M_min || M > cfg.M_max || M < 1)
        throw std::invalid_argument("run_fixed_m_de: M must lie in [M_min, M_max]");
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    EvalBudget budget{0, max_fe};

    RunRecord rec;
    rec.algorithm = Algorithm::fixed_m_de;
    rec.seed = seed;
    rec.instance_seed = inst.seed;
    rec.config_hash = config_hash(cfg);
    rec.max_fe = max_fe;

    auto P = initialize_population(inst, cfg, rng, budget, static_cast<std::size_t>(M));
    if (!P) {
        rec.status = RunStatus::init_failed;
        rec.fe_used = budget.fe;
        return rec;
    }
    rec.trace.push_back({budget.fe, P->objective});

    const auto size = static_cast<std::size_t>(M);
    std::uniform_int_distribution<std::size_t> pick(0, size - 1);
    while (budget.has_budget()) {
        std::vector<HoverPoint> Q;
        Q.reserve(size);
        const std::vector<HoverPoint> pool = donor_pool(P->dep.points, cfg, rng);
        const std::span<const HoverPoint> pop(pool);
        for (std::size_t i = 0; i < size; ++i) {
            const HoverPoint v = de::mutate_rand1(pop, i, opt.F, rng);
            const HoverPoint u = de::binomial_crossover(P->dep.points[i], v, opt.CR, rng);
            Q.push_back(de::repair_bounds(u, cfg.search_lo, cfg.search_hi));
        }
        rec.last_generation_size = size;
        for (const HoverPoint& u : Q) {
            Deployment cand = P->dep;
            cand.points[pick(rng)] = u;
            ++budget.fe;
            if (auto obj = objective(inst, cand, cfg); obj && *obj < P->objective)
                *P = {std::move(cand), *obj};
        }
        ++rec.generations;
        rec.trace.push_back({budget.fe, P->objective});
    }

    rec.fe_used = budget.fe;
    finish_record(rec, inst, cfg, *P);
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

} // namespace urdop

#endif // URDOP_BASELINES_HPP
