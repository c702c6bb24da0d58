// Differential evolution primitives over small fixed-dimension vectors:
// rand/1 and rand/2 mutation, binomial crossover, greedy selection,
// F/CR sampling and box repair.
#ifndef URDOP_DE_OPS_HPP
#define URDOP_DE_OPS_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>

namespace urdop::de {

struct DEParams {
    double f_mean = 0.5;
    double f_std = 0.3;
    double cr_std = 0.1;
    double f_lo = 0.05, f_hi = 1.0;
    double cr_lo = 0.0, cr_hi = 1.0;
};

/// Vector types usable by the operators: fixed size, indexable, with
/// + - and scalar *.
template <typename V>
concept SearchVector = requires(V a, const V b, double s, std::size_t j) {
    { V::size() } -> std::convertible_to<std::size_t>;
    { a[j] } -> std::convertible_to<double&>;
    { b + b } -> std::convertible_to<V>;
    { b - b } -> std::convertible_to<V>;
    { s * b } -> std::convertible_to<V>;
};

/// Draws `Count` distinct indices from [0, n) excluding `i`.
template <std::size_t Count, typename Rng>
std::array<std::size_t, Count> distinct_indices(std::size_t n, std::size_t i, Rng& rng) {
    if (n < Count + 1) throw std::length_error("population too small for mutation");
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::array<std::size_t, Count> r{};
    for (std::size_t c = 0; c < Count; ++c) {
        std::size_t cand;
        bool clash;
        do {
            cand = pick(rng);
            clash = cand == i || std::find(r.begin(), r.begin() + c, cand) != r.begin() + c;
        } while (clash);
        r[c] = cand;
    }
    return r;
}

/// DE/rand/1: v = x_r0 + F (x_r1 - x_r2). Needs |pop| >= 4.
template <SearchVector V, typename Rng>
V mutate_rand1(std::span<const V> pop, std::size_t i, double F, Rng& rng) {
    const auto r = distinct_indices<3>(pop.size(), i, rng);
    return pop[r[0]] + F * (pop[r[1]] - pop[r[2]]);
}

/// DE/rand/2: v = x_r0 + F (x_r1 - x_r2) + F (x_r3 - x_r4). Needs |pop| >= 6.
template <SearchVector V, typename Rng>
V mutate_rand2(std::span<const V> pop, std::size_t i, double F, Rng& rng) {
    const auto r = distinct_indices<5>(pop.size(), i, rng);
    return pop[r[0]] + F * (pop[r[1]] - pop[r[2]]) + F * (pop[r[3]] - pop[r[4]]);
}

/// Binomial crossover; dimension j_rand always comes from the mutant.
template <SearchVector V, typename Rng>
V binomial_crossover(const V& target, const V& mutant, double CR, Rng& rng) {
    std::uniform_int_distribution<std::size_t> dim(0, V::size() - 1);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const std::size_t j_rand = dim(rng);
    V trial = target;
    for (std::size_t j = 0; j < V::size(); ++j)
        if (u01(rng) <= CR || j == j_rand) trial[j] = mutant[j];
    return trial;
}

enum class Choice { trial, target };

/// Minimization with ties going to the trial.
inline Choice greedy_select(double target_fitness, double trial_fitness) {
    return trial_fitness <= target_fitness ? Choice::trial : Choice::target;
}

template <typename Rng>
double sample_F(const DEParams& p, Rng& rng) {
    if (!(p.f_std > 0.0)) return std::clamp(p.f_mean, p.f_lo, p.f_hi);
    std::normal_distribution<double> n(p.f_mean, p.f_std);
    return std::clamp(n(rng), p.f_lo, p.f_hi);
}

template <typename Rng>
double sample_CR(double cr_mean, const DEParams& p, Rng& rng) {
    if (!(p.cr_std > 0.0)) return std::clamp(cr_mean, p.cr_lo, p.cr_hi);
    std::normal_distribution<double> n(cr_mean, p.cr_std);
    return std::clamp(n(rng), p.cr_lo, p.cr_hi);
}

template <SearchVector V>
V repair_bounds(V v, double lo, double hi) {
    for (std::size_t j = 0; j < V::size(); ++j) v[j] = std::clamp(v[j], lo, hi);
    return v;
}

} // namespace urdop::de

#endif // URDOP_DE_OPS_HPP
