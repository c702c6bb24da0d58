// Self-adaptive differential evolution with a variable population size.
//
// The whole population is one deployment: each member is a hover point and
// |P| = M. Every generation produces one trial point per member, then each
// trial is tried in three ways against the current deployment:
//   P1 = P plus the trial          (M + 1)
//   P2 = P with a random member replaced by the trial
//   P3 = P minus a random member   (M - 1)
// The best strictly improving feasible candidate replaces P. Without an
// improvement, P3 still replaces P if it is feasible and exactly as good,
// which prunes hover points that serve nobody. Each trial costs three
// evaluations.
//
// Strategy choice (rand/1 vs rand/2) and the CR mean adapt every `lp`
// generations from per-strategy success/failure counts.
#ifndef URDOP_SADEVPS_HPP
#define URDOP_SADEVPS_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "urdop/de_ops.hpp"
#include "urdop/deployment.hpp"
#include "urdop/run_record.hpp"

namespace urdop {

enum class Strategy { rand1, rand2 };

struct AdaptiveState {
    double p1 = 0.5;
    double p2 = 0.5;
    long long s1 = 0, f1 = 0, s2 = 0, f2 = 0;
    std::vector<double> cr_memory; // CRs of trials that entered the population
    double cr_mean = 0.5;
    int lp = 50;
    int gen_in_period = 0;
};

/// rand1 iff a uniform draw is <= p1.
template <typename Rng>
Strategy choose_strategy(const AdaptiveState& state, Rng& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    return u01(rng) <= state.p1 ? Strategy::rand1 : Strategy::rand2;
}

/// Advances the learning-period clock by one generation. At the end of a
/// period, recomputes p1/p2 and the CR mean and clears the counters.
inline void update_adaptive_state(AdaptiveState& st) {
    if (++st.gen_in_period < st.lp) return;
    st.gen_in_period = 0;
    const double s1 = static_cast<double>(st.s1), f1 = static_cast<double>(st.f1);
    const double s2 = static_cast<double>(st.s2), f2 = static_cast<double>(st.f2);
    const double denom = s2 * (s1 + f1) + s1 * (s2 + f2);
    if (denom > 0.0) {
        st.p1 = s1 * (s2 + f2) / denom;
        st.p2 = 1.0 - st.p1;
    }
    if (!st.cr_memory.empty())
        st.cr_mean = std::accumulate(st.cr_memory.begin(), st.cr_memory.end(), 0.0) /
                     static_cast<double>(st.cr_memory.size());
    st.s1 = st.f1 = st.s2 = st.f2 = 0;
    st.cr_memory.clear();
}

struct Trial {
    HoverPoint point;
    Strategy strategy = Strategy::rand1; // strategy actually applied
    double cr = 0.0;
};

/// Self-adaptive offspring control: strategy by probability, F ~ N(0.5, 0.3),
/// CR ~ N(CR mean, 0.1), both clamped.
struct AdaptiveControl {
    AdaptiveState state;
    de::DEParams params;

    template <typename Rng>
    Strategy strategy(Rng& rng) { return choose_strategy(state, rng); }
    template <typename Rng>
    double F(Rng& rng) { return de::sample_F(params, rng); }
    template <typename Rng>
    double CR(Rng& rng) { return de::sample_CR(state.cr_mean, params, rng); }

    void success(Strategy s, double cr) {
        (s == Strategy::rand1 ? state.s1 : state.s2) += 1;
        state.cr_memory.push_back(cr);
    }
    void failure(Strategy s) { (s == Strategy::rand1 ? state.f1 : state.f2) += 1; }
    void end_generation() { update_adaptive_state(state); }
    const AdaptiveState* adaptive() const { return &state; }
};

/// Constant F and CR with rand/1 only; no adaptation.
struct FixedControl {
    double f = 0.6;
    double cr = 0.5;

    template <typename Rng>
    Strategy strategy(Rng&) { return Strategy::rand1; }
    template <typename Rng>
    double F(Rng&) { return f; }
    template <typename Rng>
    double CR(Rng&) { return cr; }
    void success(Strategy, double) {}
    void failure(Strategy) {}
    void end_generation() {}
    const AdaptiveState* adaptive() const { return nullptr; }
};

/// Mutation donors: the population itself, padded with uniform random
/// points from the search box up to four entries so that rand/1 always has
/// three donors besides the target.
template <typename Rng>
std::vector<HoverPoint> donor_pool(const std::vector<HoverPoint>& members, const ScenarioConfig& cfg, Rng& rng) {
    std::vector<HoverPoint> pool = members;
    std::uniform_real_distribution<double> coord(cfg.search_lo, cfg.search_hi);
    while (pool.size() < 4) {
        const double x = coord(rng);
        const double y = coord(rng);
        pool.push_back({x, y});
    }
    return pool;
}

/// One trial per member of P. rand/2 falls back to rand/1 below six members.
template <typename Control, typename Rng>
std::vector<Trial> generate_offspring(const Deployment& P, Control& control, const ScenarioConfig& cfg,
                                      Rng& rng) {
    std::vector<Trial> Q;
    if (P.points.empty()) return Q;
    Q.reserve(P.size());
    const std::vector<HoverPoint> pool = donor_pool(P.points, cfg, rng);
    const std::span<const HoverPoint> donors(pool);
    for (std::size_t i = 0; i < P.size(); ++i) {
        Strategy s = control.strategy(rng);
        if (s == Strategy::rand2 && P.size() < 6) s = Strategy::rand1;
        const double F = control.F(rng);
        const double CR = control.CR(rng);
        const HoverPoint mutant =
            s == Strategy::rand1 ? de::mutate_rand1(donors, i, F, rng) : de::mutate_rand2(donors, i, F, rng);
        HoverPoint u = de::binomial_crossover(P.points[i], mutant, CR, rng);
        Q.push_back({de::repair_bounds(u, cfg.search_lo, cfg.search_hi), s, CR});
    }
    return Q;
}

/// How a single trial changed the population.
enum class UpdateOutcome { added, replaced, removed_improving, removed_neutral, rejected };

/// Applies the P1/P2/P3 update for each trial in order. Always charges 3
/// evaluations per trial. Success (s counter, CR memory) is credited only
/// when the accepted candidate contains the trial; every other outcome,
/// including a P3 removal, counts as a failure of the trial's strategy.
template <typename Control, typename Rng>
std::vector<UpdateOutcome> update_population(Incumbent& P, std::span<const Trial> Q, const Instance& inst,
                                             const ScenarioConfig& cfg, Control& control, EvalBudget& budget,
                                             Rng& rng) {
    std::vector<UpdateOutcome> outcomes;
    outcomes.reserve(Q.size());
    for (const Trial& trial : Q) {
        const std::size_t M = P.dep.size();
        std::uniform_int_distribution<std::size_t> pick(0, M - 1);

        Deployment p1 = P.dep;
        p1.points.push_back(trial.point);
        Deployment p2 = P.dep;
        p2.points[pick(rng)] = trial.point;
        Deployment p3 = P.dep;
        p3.points.erase(p3.points.begin() + static_cast<std::ptrdiff_t>(pick(rng)));

        // infeasible -> +inf
        const double o1 = objective(inst, p1, cfg).value_or(INFINITY);
        const double o2 = objective(inst, p2, cfg).value_or(INFINITY);
        const double o3 = p3.points.empty() ? INFINITY : objective(inst, p3, cfg).value_or(INFINITY);
        budget.fe += 3;

        int best = 0;
        double best_obj = P.objective;
        if (o1 < best_obj) best = 1, best_obj = o1;
        if (o2 < best_obj) best = 2, best_obj = o2;
        if (o3 < best_obj) best = 3, best_obj = o3;

        switch (best) {
        case 1:
            P = {std::move(p1), best_obj};
            control.success(trial.strategy, trial.cr);
            outcomes.push_back(UpdateOutcome::added);
            break;
        case 2:
            P = {std::move(p2), best_obj};
            control.success(trial.strategy, trial.cr);
            outcomes.push_back(UpdateOutcome::replaced);
            break;
        case 3:
            P = {std::move(p3), best_obj};
            control.failure(trial.strategy);
            outcomes.push_back(UpdateOutcome::removed_improving);
            break;
        default:
            control.failure(trial.strategy);
            if (o3 == P.objective) {
                P.dep = std::move(p3);
                outcomes.push_back(UpdateOutcome::removed_neutral);
            } else {
                outcomes.push_back(UpdateOutcome::rejected);
            }
        }
    }
    return outcomes;
}

/// Snapshot handed to an optional per-generation observer.
struct GenerationInfo {
    std::size_t generation = 0;
    long long fe = 0;
    std::size_t population_before = 0;
    std::size_t population_after = 0;
    double best = 0.0;
    const AdaptiveState* adaptive = nullptr; // null for non-adaptive controls
    std::span<const UpdateOutcome> outcomes;
};

using GenerationObserver = std::function<void(const GenerationInfo&)>;

/// Variable-population DE main loop, shared by SaDEVPS and DEVIPS.
template <typename Control>
RunRecord run_variable_population(const Instance& inst, const ScenarioConfig& cfg, std::uint64_t seed,
                                  long long max_fe, Control control, Algorithm tag,
                                  const GenerationObserver& observer = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    EvalBudget budget{0, max_fe};

    RunRecord rec;
    rec.algorithm = tag;
    rec.seed = seed;
    rec.instance_seed = inst.seed;
    rec.config_hash = config_hash(cfg);
    rec.max_fe = max_fe;

    std::optional<Incumbent> P;
    if (cfg.K > 0 && cfg.M_max >= 1)
        P = initialize_population(inst, cfg, rng, budget, static_cast<std::size_t>(cfg.M_max));
    if (!P) {
        rec.status = RunStatus::init_failed;
        rec.fe_used = budget.fe;
        return rec;
    }
    rec.trace.push_back({budget.fe, P->objective});

    while (budget.has_budget()) {
        std::vector<Trial> Q = generate_offspring(P->dep, control, cfg, rng);
        const std::size_t before = P->dep.size();
        rec.last_generation_size = before;
        const auto outcomes = update_population(*P, std::span<const Trial>(Q), inst, cfg, control, budget, rng);
        control.end_generation();
        ++rec.generations;
        rec.trace.push_back({budget.fe, P->objective});
        if (observer)
            observer({rec.generations, budget.fe, before, P->dep.size(), P->objective, control.adaptive(),
                      outcomes});
    }

    rec.fe_used = budget.fe;
    finish_record(rec, inst, cfg, *P);
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

struct SadevpsOptions {
    de::DEParams params{};
    double p1 = 0.5;
    double cr_mean = 0.5;
    int lp = 50;
};

inline RunRecord run_sadevps(const Instance& inst, const ScenarioConfig& cfg, std::uint64_t seed, long long max_fe,
                             const SadevpsOptions& opt = {}, const GenerationObserver& observer = {}) {
    AdaptiveControl control;
    control.params = opt.params;
    control.state.p1 = opt.p1;
    control.state.p2 = 1.0 - opt.p1;
    control.state.cr_mean = opt.cr_mean;
    control.state.lp = opt.lp;
    return run_variable_population(inst, cfg, seed, max_fe, std::move(control), Algorithm::sadevps, observer);
}

} // namespace urdop

#endif // URDOP_SADEVPS_HPP
