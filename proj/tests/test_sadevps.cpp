#include <gtest/gtest.h>

#include <random>

#include "urdop/sadevps.hpp"

using namespace urdop;

namespace {

ScenarioConfig config_kn(int K, int N) { return build_config({{"K", std::to_string(K)}, {"N", std::to_string(N)}}); }

Incumbent incumbent(const Instance& inst, Deployment dep, const ScenarioConfig& cfg) {
    const auto obj = objective(inst, dep, cfg);
    EXPECT_TRUE(obj.has_value());
    return {std::move(dep), obj.value_or(0.0)};
}

} // namespace

TEST(ChooseStrategy, Extremes) {
    std::mt19937_64 rng(1);
    AdaptiveState st;
    st.p1 = 1.0;
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(choose_strategy(st, rng), Strategy::rand1);
    st.p1 = 0.0;
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(choose_strategy(st, rng), Strategy::rand2);
}

TEST(ChooseStrategy, EvenOddsFrequency) {
    std::mt19937_64 rng(2);
    AdaptiveState st;
    int rand1 = 0;
    for (int i = 0; i < 100000; ++i) rand1 += choose_strategy(st, rng) == Strategy::rand1;
    EXPECT_NEAR(rand1 / 100000.0, 0.5, 0.01);
}

TEST(UpdateAdaptiveState, LearningPeriodFormula) {
    AdaptiveState st;
    st.lp = 1;
    st.s1 = 10, st.f1 = 5, st.s2 = 5, st.f2 = 10;
    st.cr_memory = {0.2, 0.4, 0.9};
    update_adaptive_state(st);
    // 10 * 15 / (5 * 15 + 10 * 15)
    EXPECT_EQ(st.p1, 2.0 / 3.0);
    EXPECT_EQ(st.p1 + st.p2, 1.0);
    EXPECT_NEAR(st.cr_mean, 0.5, 1e-15);
    EXPECT_EQ(st.s1 + st.f1 + st.s2 + st.f2, 0);
    EXPECT_TRUE(st.cr_memory.empty());
    EXPECT_EQ(st.gen_in_period, 0);
}

TEST(UpdateAdaptiveState, SymmetricCountsGiveHalf) {
    AdaptiveState st;
    st.lp = 1;
    st.p1 = 0.9, st.p2 = 0.1;
    st.s1 = st.s2 = 7, st.f1 = st.f2 = 3;
    update_adaptive_state(st);
    EXPECT_EQ(st.p1, 0.5);
}

TEST(UpdateAdaptiveState, DegenerateCountsKeepProbabilities) {
    AdaptiveState st;
    st.lp = 1;
    st.p1 = 0.7, st.p2 = 0.3;
    st.f1 = 4, st.f2 = 9;
    st.cr_mean = 0.42;
    update_adaptive_state(st);
    EXPECT_EQ(st.p1, 0.7);
    EXPECT_EQ(st.cr_mean, 0.42);
    EXPECT_EQ(st.f1 + st.f2, 0);
}

TEST(UpdateAdaptiveState, ActsOnlyAtPeriodEnd) {
    AdaptiveState st; // lp = 50
    st.s1 = 10, st.f1 = 5, st.s2 = 5, st.f2 = 10;
    for (int g = 0; g < 49; ++g) {
        update_adaptive_state(st);
        EXPECT_EQ(st.p1, 0.5);
        EXPECT_EQ(st.gen_in_period, g + 1);
    }
    update_adaptive_state(st);
    EXPECT_EQ(st.p1, 2.0 / 3.0);
    EXPECT_EQ(st.gen_in_period, 0);
}

TEST(GenerateOffspring, OneTrialPerMemberInsideBounds) {
    const auto cfg = build_config();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-750, 750);
    Deployment P;
    for (int m = 0; m < 30; ++m) P.points.push_back({u(rng), u(rng)});
    AdaptiveControl control;
    const auto Q = generate_offspring(P, control, cfg, rng);
    ASSERT_EQ(Q.size(), P.size());
    for (const auto& t : Q) {
        EXPECT_GE(t.point.x, cfg.search_lo);
        EXPECT_LE(t.point.x, cfg.search_hi);
        EXPECT_GE(t.point.y, cfg.search_lo);
        EXPECT_LE(t.point.y, cfg.search_hi);
        EXPECT_GE(t.cr, 0.0);
        EXPECT_LE(t.cr, 1.0);
    }
}

TEST(GenerateOffspring, StrategyTags) {
    const auto cfg = build_config();
    std::mt19937_64 rng(4);
    Deployment P;
    for (int m = 0; m < 10; ++m) P.points.push_back({10.0 * m, -5.0 * m});
    AdaptiveControl control;
    control.state.p1 = 1.0;
    for (const auto& t : generate_offspring(P, control, cfg, rng)) EXPECT_EQ(t.strategy, Strategy::rand1);

    control.state.p1 = 0.0;
    for (const auto& t : generate_offspring(P, control, cfg, rng)) EXPECT_EQ(t.strategy, Strategy::rand2);

    // Below six members rand/2 falls back to rand/1.
    P.points.resize(5);
    for (const auto& t : generate_offspring(P, control, cfg, rng)) EXPECT_EQ(t.strategy, Strategy::rand1);
}

TEST(GenerateOffspring, TinyPopulationStillProducesTrials) {
    const auto cfg = build_config();
    std::mt19937_64 rng(5);
    AdaptiveControl control;
    for (std::size_t n : {1u, 2u, 3u}) {
        Deployment P;
        for (std::size_t m = 0; m < n; ++m) P.points.push_back({100.0 * m, 0.0});
        EXPECT_EQ(generate_offspring(P, control, cfg, rng).size(), n);
    }
    EXPECT_TRUE(generate_offspring(Deployment{}, control, cfg, rng).empty());
    EXPECT_EQ(donor_pool({{1, 1}}, cfg, rng).size(), 4u);
    EXPECT_EQ(donor_pool(std::vector<HoverPoint>(7), cfg, rng).size(), 7u);
}

TEST(UpdatePopulation, AllCandidatesInfeasibleLeavesPopulation) {
    // M_min = M_max = 3. P1 and P3 break the M bounds; whichever member the
    // trial replaces, two UEs end up on one point.
    const auto cfg = config_kn(3, 1);
    const Instance inst{{{-600, 0}, {-590, 0}, {600, 600}}, {1e8, 2e8, 3e8}, 0};
    Incumbent P = incumbent(inst, Deployment{inst.ues}, cfg);
    const Incumbent before = P;
    AdaptiveControl control;
    EvalBudget budget{0, 1000};
    std::mt19937_64 rng(6);
    const std::vector<Trial> Q{{{-595, 0}, Strategy::rand2, 0.3}};
    const auto out = update_population(P, std::span<const Trial>(Q), inst, cfg, control, budget, rng);
    EXPECT_EQ(out, std::vector<UpdateOutcome>{UpdateOutcome::rejected});
    EXPECT_EQ(P.dep, before.dep);
    EXPECT_EQ(P.objective, before.objective);
    EXPECT_EQ(budget.fe, 3);
    EXPECT_EQ(control.state.f2, 1);
    EXPECT_EQ(control.state.s1 + control.state.s2 + control.state.f1, 0);
}

TEST(UpdatePopulation, NeutralRemovalOfIdlePoint) {
    // M in [1, 2]; the second point serves nobody. A trial duplicating it
    // cannot improve, and removing the idle point keeps the objective.
    const auto cfg = config_kn(2, 2);
    const Instance inst{{{-600, 0}, {-590, 0}}, {1e8, 2e8}, 0};
    bool saw_neutral = false;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Incumbent P = incumbent(inst, Deployment{{{-595, 0}, {700, 700}}}, cfg);
        const double obj = P.objective;
        AdaptiveControl control;
        EvalBudget budget{0, 1000};
        std::mt19937_64 rng(seed);
        const std::vector<Trial> Q{{{700, 700}, Strategy::rand1, 0.5}};
        const auto out = update_population(P, std::span<const Trial>(Q), inst, cfg, control, budget, rng);
        EXPECT_EQ(budget.fe, 3);
        EXPECT_EQ(P.objective, obj);
        EXPECT_EQ(control.state.f1, 1);
        EXPECT_TRUE(control.state.cr_memory.empty());
        if (out[0] == UpdateOutcome::removed_neutral) {
            saw_neutral = true;
            EXPECT_EQ(P.dep.size(), 1u);
            EXPECT_EQ(P.dep.points[0], (Vec2{-595, 0}));
        } else {
            EXPECT_EQ(out[0], UpdateOutcome::rejected);
            EXPECT_EQ(P.dep.size(), 2u);
        }
    }
    EXPECT_TRUE(saw_neutral);
}

TEST(UpdatePopulation, ImprovingTrialIsCreditedWithItsCr) {
    // One point far from both UEs; a trial right above them improves via P1
    // or P2 and must be credited.
    const auto cfg = config_kn(2, 2);
    const Instance inst{{{-600, 0}, {-590, 0}}, {1e8, 2e8}, 0};
    Incumbent P = incumbent(inst, Deployment{{{700, 700}}}, cfg);
    const double before = P.objective;
    AdaptiveControl control;
    EvalBudget budget{0, 1000};
    std::mt19937_64 rng(7);
    const std::vector<Trial> Q{{{-595, 0}, Strategy::rand2, 0.61}};
    const auto out = update_population(P, std::span<const Trial>(Q), inst, cfg, control, budget, rng);
    EXPECT_TRUE(out[0] == UpdateOutcome::added || out[0] == UpdateOutcome::replaced);
    EXPECT_LT(P.objective, before);
    EXPECT_EQ(control.state.s2, 1);
    EXPECT_EQ(control.state.cr_memory, std::vector<double>{0.61});
    EXPECT_EQ(P.objective, objective(inst, P.dep, cfg).value());
}

TEST(InitializePopulation, SinglePointSingleUe) {
    const auto cfg = config_kn(1, 1);
    const Instance inst{{{500, 500}}, {1e9}, 0};
    std::mt19937_64 rng(8);
    EvalBudget budget{0, 100};
    const auto P = initialize_population(inst, cfg, rng, budget, 1);
    ASSERT_TRUE(P);
    EXPECT_EQ(budget.fe, 1);
    EXPECT_EQ(P->dep.size(), 1u);
    EXPECT_TRUE(evaluate(inst, P->dep, cfg).feasible());
}

TEST(InitializePopulation, EachAttemptCostsOneEvaluation) {
    // One point can never serve three UEs with N = 1.
    const auto cfg = config_kn(3, 1);
    const Instance inst{{{-600, 0}, {-590, 0}, {600, 600}}, {1e8, 2e8, 3e8}, 0};
    std::mt19937_64 rng(9);
    EvalBudget budget{0, 17};
    EXPECT_FALSE(initialize_population(inst, cfg, rng, budget, 1).has_value());
    EXPECT_EQ(budget.fe, 17);
}

TEST(RunSadevps, EmptyScenarioFailsInitialization) {
    const auto cfg = config_kn(0, 1);
    const auto rec = run_sadevps(Instance{}, cfg, 1, 100);
    EXPECT_EQ(rec.status, RunStatus::init_failed);
}

class RunSadevpsProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RunSadevpsProperties, Invariants) {
    const auto cfg = config_kn(40, 10);
    const auto inst = generate_instance(cfg, 77);
    const long long max_fe = 3000;
    SadevpsOptions opt;
    opt.lp = 5;
    bool ok = true;
    long long prev_counts = 0;
    std::size_t prev_size = cfg.M_max;
    auto observer = [&](const GenerationInfo& g) {
        ASSERT_NE(g.adaptive, nullptr);
        ok &= g.adaptive->p1 + g.adaptive->p2 == 1.0;
        ok &= g.adaptive->p1 >= 0.0 && g.adaptive->p1 <= 1.0;
        for (double cr : g.adaptive->cr_memory) ok &= cr >= 0.0 && cr <= 1.0;
        const long long counts = g.adaptive->s1 + g.adaptive->f1 + g.adaptive->s2 + g.adaptive->f2;
        // Counters reset every lp generations; otherwise they grow by |Q|.
        if (g.adaptive->gen_in_period != 0) ok &= counts - prev_counts == static_cast<long long>(g.population_before);
        prev_counts = counts;
        ok &= g.outcomes.size() == g.population_before;
        ok &= g.population_before == prev_size;
        const long long diff = static_cast<long long>(g.population_after) - static_cast<long long>(g.population_before);
        ok &= std::llabs(diff) <= static_cast<long long>(g.population_before);
        prev_size = g.population_after;
    };
    const auto rec = run_sadevps(inst, cfg, GetParam(), max_fe, opt, observer);
    EXPECT_TRUE(ok);
    ASSERT_EQ(rec.status, RunStatus::ok);
    for (std::size_t i = 1; i < rec.trace.size(); ++i) {
        EXPECT_LE(rec.trace[i].best, rec.trace[i - 1].best);
        EXPECT_GT(rec.trace[i].fe, rec.trace[i - 1].fe);
    }
    EXPECT_GT(rec.fe_used, max_fe);
    EXPECT_LE(rec.fe_used - max_fe, 3 * static_cast<long long>(rec.last_generation_size));
    const auto M = static_cast<int>(rec.final_deployment.size());
    EXPECT_GE(M, cfg.M_min);
    EXPECT_LE(M, cfg.M_max);
    EXPECT_TRUE(evaluate(inst, rec.final_deployment, cfg).feasible());
    EXPECT_EQ(rec.final_breakdown.objective, rec.trace.back().best);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RunSadevpsProperties, ::testing::Values(1u, 2u, 3u, 4u));

TEST(RunSadevps, PopulationChangesByAtMostOnePerTrial) {
    const auto cfg = config_kn(30, 10);
    const auto inst = generate_instance(cfg, 5);
    bool ok = true;
    auto observer = [&](const GenerationInfo& g) {
        long long size = static_cast<long long>(g.population_before);
        for (auto o : g.outcomes) {
            if (o == UpdateOutcome::added) ++size;
            if (o == UpdateOutcome::removed_improving || o == UpdateOutcome::removed_neutral) --size;
        }
        ok &= size == static_cast<long long>(g.population_after);
    };
    run_sadevps(inst, cfg, 11, 2000, {}, observer);
    EXPECT_TRUE(ok);
}

TEST(RunSadevps, DeterministicPerSeed) {
    const auto cfg = config_kn(30, 10);
    const auto inst = generate_instance(cfg, 9);
    const auto a = run_sadevps(inst, cfg, 42, 2000);
    const auto b = run_sadevps(inst, cfg, 42, 2000);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.final_deployment, b.final_deployment);
    EXPECT_NE(a.trace, run_sadevps(inst, cfg, 43, 2000).trace);
}
