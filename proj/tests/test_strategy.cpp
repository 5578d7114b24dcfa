#include "bing/strategy.hpp"

#include "bing/walker.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace bing;
using doctest::Approx;

namespace {
Rat q(long long num, long long den) { return Rat(num) / den; }
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(validate(StrategyConfig{SmallDisplacementConfig{-1.0}}), ConfigError);
    CHECK_THROWS_AS(
        validate(StrategyConfig{SmallDisplacementConfig{0.25, EpsSchedule::power(0.1, 0.6)}}),
        ConfigError);
    CHECK_THROWS_AS(validate(StrategyConfig{Bing1952Config{2}}), ConfigError);
    CHECK_THROWS_AS(validate(StrategyConfig{Bing1988Config{0.0}}), ConfigError);
    CHECK_NOTHROW(validate(StrategyConfig{SmallDisplacementConfig{}}));
    CHECK(strategy_name(StrategyConfig{Bing1952Config{}}) == "bing1952");
    CHECK(strategy_is_interpretive(StrategyConfig{Bing1988Config{}}));
    CHECK(!strategy_is_interpretive(StrategyConfig{RandomClaspConfig{}}));
}

TEST_CASE("small displacement: first step from the root") {
    SmallDisplacementConfig cfg;
    PhaseState state = initial_phase_state(cfg);
    Interval dom(Rat(0), Rat(1));

    SdChildren step = small_disp_children(dom, state, 0, cfg);
    CHECK(step.step == Approx(0.99 * 0.05));
    CHECK(clasp_valid_for(step.clasp, dom));

    // Displacements stay strictly under min{eps_phase, eps_i}.
    const Rat disp_lo = step.clasp.a - dom.lo;
    const Rat disp_hi = dom.hi - step.clasp.b;
    CHECK(disp_lo > 0);
    CHECK(disp_hi > 0);
    CHECK(to_double(disp_lo) < 0.05);
    CHECK(to_double(disp_hi) < 0.05);

    // Both children sit on the next circle of the same bullseye.
    for (int bit = 0; bit < 2; ++bit) {
        const PhaseState& child = step.states[std::size_t(bit)];
        const PlanePoint pt = bit == 0
            ? PlanePoint{to_double(Rat(2 * dom.lo - step.clasp.a)), to_double(step.clasp.b)}
            : PlanePoint{to_double(step.clasp.a), to_double(Rat(2 * dom.hi - step.clasp.b))};
        const double vx = pt.x - child.center.x, vy = pt.y - child.center.y;
        CHECK(vx * vx + vy * vy == Approx(child.radius_sq).epsilon(1e-9));
    }
}

TEST_CASE("small displacement stop rule") {
    PhaseState st;
    st.eps_phase = 0.05;
    st.wiggle_side = WiggleSide::High;
    st.retrace_boundary = 1.0;
    st.round_anchor_lo = 0.0;
    st.round_anchor_hi = 1.0;
    st.run_max_a = 0.05;
    st.run_min_b = 0.9;
    PlanePoint q{1.0 / 3, 2.0 / 3};

    CHECK(small_disp_stop_check(st, {0.2, 0.8}, q) == SdSignal::Continue);
    CHECK(small_disp_stop_check(st, {1.0 / 3, 2.0 / 3}, q) == SdSignal::Continue);
    // East exit: retrace [c, t] contracts to [c', min(run_min_b, t)].
    CHECK(small_disp_stop_check(st, {0.4, 0.8}, q) == SdSignal::NewRound);
    // Deep east exit leaves almost nothing: phase done.
    CHECK(small_disp_stop_check(st, {0.88, 0.95}, q) == SdSignal::PhaseDone);
}

TEST_CASE("small displacement run: rounds contract and phases halve") {
    SmallDisplacementConfig cfg;
    cfg.eps_L = 0.25;
    cfg.schedule = EpsSchedule::constant(0.05);
    cfg.initial_eps = 0.05;
    Strategy strategy{StrategyConfig{cfg}};

    bing::testing::TestRng rng(77);
    int rounds_seen = 0, phases_seen = 0;
    for (int trial = 0; trial < 12; ++trial) {
        PathWalker walker(strategy);
        for (int step_i = 0; step_i < 4000; ++step_i) {
            auto info = walker.step(rng.bit());

            CHECK(to_double(info.disp_lo) < 0.05);
            CHECK(to_double(info.disp_hi) < 0.05);
            CHECK(to_double(walker.domain().length()) < 1.25);

            if (info.events.round_ended) {
                ++rounds_seen;
                CHECK(info.events.round_len_after <
                      (2.0 / 3.0) * info.events.round_len_before);
            }
            if (info.events.phase_ended) {
                ++phases_seen;
                // Phase-end leaf image diameter < 2 * the ended eps_phase.
                CHECK(to_double(walker.diameter()) < 2 * info.events.ended_eps_phase);
                if (info.events.ended_phase_index >= 2) return; // enough evidence per trial
            }
        }
    }
    CHECK(rounds_seen > 0);
    CHECK(phases_seen > 0);
}

TEST_CASE("bing 1952 trims one spacing from each side") {
    FoldedPath id = identity_path();
    auto clasp = bing1952_clasp(id, q(1, 10));
    REQUIRE(clasp.has_value());
    CHECK(*clasp == ClaspChoice{q(1, 10), q(9, 10)});
    auto [c0, c1] = fold_daughters(id, *clasp);
    CHECK(c0.image() == Interval(Rat(0), q(9, 10)));
    CHECK(c1.image() == Interval(q(1, 10), Rat(1)));

    // Second generation: all four grandchildren lose another tenth.
    for (const FoldedPath* f : {&c0, &c1}) {
        auto clasp2 = bing1952_clasp(*f, q(1, 10));
        REQUIRE(clasp2.has_value());
        auto [g0, g1] = fold_daughters(*f, *clasp2);
        CHECK(g0.diameter() == q(8, 10));
        CHECK(g1.diameter() == q(8, 10));
    }

    // Goal met: an extent of exactly 2 * spacing cannot be trimmed.
    FoldedPath small = fold_daughters(id, {q(1, 2), q(1, 2)}).first; // extent 1/2
    CHECK(!bing1952_clasp(small, q(1, 4)).has_value());
}

TEST_CASE("bing 1988 greedy halves the identity") {
    FoldedPath id = identity_path();
    ClaspChoice clasp = bing1988_clasp(id, 0, 0.01);
    CHECK(clasp.a == clasp.b); // the clasp pair collapses to the midpoint
    CHECK(clasp.a == q(1, 2));
    auto [c0, c1] = fold_daughters(id, clasp);
    CHECK(c0.diameter() == q(1, 2));
    CHECK(c1.diameter() == q(1, 2));
}

TEST_CASE("bing 1988 patient step keeps image extents") {
    bing::testing::TestRng rng(4031);
    for (int trial = 0; trial < 100; ++trial) {
        // A random function, then one patient step.
        FoldedPath f = identity_path();
        const int depth = int(rng.next() % 4);
        for (int level = 0; level < depth; ++level) {
            auto clasp = bing::testing::random_clasp_in(rng, f.domain());
            f = rng.bit() ? fold_daughters(f, clasp).second : fold_daughters(f, clasp).first;
        }
        ClaspChoice clasp = bing1988_clasp(f, 1, 0.01);
        auto [c0, c1] = fold_daughters(f, clasp);
        CHECK(c0.diameter() == f.diameter());
        CHECK(c1.diameter() == f.diameter());
    }
}

TEST_CASE("random clasps: bounds, determinism, spread") {
    Interval dom(q(-1, 3), q(3, 4));
    ClaspChoice first = random_clasp(dom, 42, "0110");
    CHECK(first == random_clasp(dom, 42, "0110"));
    CHECK(!(first == random_clasp(dom, 42, "0111")));
    CHECK(!(first == random_clasp(dom, 43, "0110")));

    Rat sum(0);
    const int trials = 100'000;
    SigmaHash path_bits(7, 1);
    std::string sigma;
    Interval unit(Rat(0), Rat(1));
    for (int i = 0; i < trials; ++i) {
        sigma.clear();
        for (int b = 0; b < 3; ++b) sigma.push_back(char('0' + (i >> b & 1)));
        ClaspChoice clasp = random_clasp(unit, std::uint64_t(i), sigma);
        REQUIRE(clasp_valid_for(clasp, unit));
        sum += clasp.b - clasp.a;
    }
    const double mean = to_double(sum) / trials;
    CHECK(mean == Approx(1.0 / 3).epsilon(0.03));
}

TEST_CASE("1952 strategy schedule advances at the floor") {
    Strategy strategy{StrategyConfig{Bing1952Config{10}}};
    CHECK(strategy.goal_for(0) == q(2, 10));
    CHECK(strategy.spacing_for(0) == q(1, 10));
    CHECK(strategy.goal_for(1) == q(2, 100));
    CHECK(strategy.spacing_for(1) == q(1, 100));
}
