#include "bing/walker.hpp"

#include "bing/tree.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace bing;

TEST_CASE("walker matches tree expansion step for step") {
    // Mode independence: the in-place walker must be bit-identical to the
    // immutable fold_daughters chain for the same sigma.
    Strategy strategy{StrategyConfig{RandomClaspConfig{909}}};
    bing::testing::TestRng rng(17);

    for (int trial = 0; trial < 20; ++trial) {
        PathWalker walker(strategy);
        FoldedPath reference = identity_path();
        std::string sigma;
        for (int level = 0; level < 12; ++level) {
            const ClaspChoice expected = random_clasp(reference.domain(), 909, sigma);
            const int bit = rng.bit();
            auto info = walker.step(bit);
            CHECK(info.clasp == expected);
            auto children = fold_daughters(reference, expected);
            reference = bit ? children.second : children.first;
            sigma.push_back(bit ? '1' : '0');

            REQUIRE(walker.materialize() == reference);
            CHECK(walker.image() == reference.image());
            CHECK(walker.diameter() == reference.diameter());
            CHECK(walker.sigma() == sigma);
        }
    }
}

TEST_CASE("walker stays exact over deep random paths") {
    Strategy strategy{StrategyConfig{RandomClaspConfig{5}}};
    PathWalker walker(strategy);
    SigmaHash bits(5, 1);
    for (int level = 0; level < 500; ++level) {
        auto info = walker.step(int(bits.value() & 1));
        bits.push(info.bit);
    }
    CHECK(walker.depth() == 500);
    CHECK(walker.turn_count() <= 2 * 500);
    // The deque is a valid folded path (this validates every invariant).
    FoldedPath path = walker.materialize();
    CHECK(path.domain() == walker.domain());
    CHECK(path.image() == walker.image());
}

TEST_CASE("walker image tracking survives truncation") {
    // Clasps chosen to chop the ends repeatedly, exercising multiset erase.
    Strategy strategy{StrategyConfig{RandomClaspConfig{31}}};
    PathWalker walker(strategy);
    for (int level = 0; level < 64; ++level) {
        walker.step(level & 1);
        FoldedPath path = walker.materialize();
        REQUIRE(walker.image() == path.image());
    }
}

TEST_CASE("extremal walk completes a phase with contracting rounds") {
    // Worst-case tracking rides each round until the circle family forces an
    // exit (thousands of steps at eps = 0.05), then contracts below 2/3.
    SmallDisplacementConfig cfg;
    Strategy strategy{StrategyConfig{cfg}};
    PathWalker walker(strategy);
    int rounds = 0;
    bool phase_done = false;
    for (int level = 0; level < 80'000 && !phase_done; ++level) {
        auto info = walker.step_extremal();
        if (info.events.round_ended) {
            ++rounds;
            CHECK(info.events.round_len_after < (2.0 / 3.0) * info.events.round_len_before);
        }
        if (info.events.phase_ended) {
            phase_done = true;
            CHECK(info.events.ended_phase_index == 1);
            CHECK(to_double(walker.diameter()) < 2 * info.events.ended_eps_phase);
        }
        CHECK(to_double(walker.domain().length()) < 1.25);
    }
    CHECK(phase_done);
    CHECK(rounds >= 2);
}
