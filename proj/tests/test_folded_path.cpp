#include "bing/folded_path.hpp"

#include "oracle.hpp"

#include <doctest.h>

using namespace bing;
using bing::testing::FoldChain;
using bing::testing::TestRng;

namespace {

Rat q(long long num, long long den) { return Rat(num) / den; }

// The worked two-generation example: identity folded at (1/3, 3/4).
std::pair<FoldedPath, FoldedPath> fig_children() {
    return fold_daughters(identity_path(), {q(1, 3), q(3, 4)});
}

} // namespace

TEST_CASE("identity path") {
    FoldedPath id = identity_path();
    CHECK(id.evaluate(Rat(0)) == Rat(0));
    CHECK(id.evaluate(Rat(1)) == Rat(1));
    CHECK(id.evaluate(q(3, 10)) == q(3, 10));
    CHECK(id.diameter() == Rat(1));
    CHECK(id.turns().empty());
    CHECK(id.start_slope() == 1);
    CHECK(id.domain() == Interval(Rat(0), Rat(1)));
}

TEST_CASE("two-generation example: first fold") {
    auto [f0, f1] = fig_children();

    CHECK(f0.domain() == Interval(q(-1, 3), q(3, 4)));
    CHECK(f0.image() == Interval(Rat(0), q(3, 4)));
    CHECK(f0.diameter() == q(3, 4));
    CHECK(f0.evaluate(q(-1, 3)) == q(1, 3)); // runs backwards from 1/3 to 0
    CHECK(f0.turns() == std::vector<Rat>{Rat(0)});

    CHECK(f1.domain() == Interval(q(1, 3), q(5, 4)));
    CHECK(f1.image() == Interval(q(1, 3), Rat(1)));
    CHECK(f1.turns() == std::vector<Rat>{Rat(1)});
}

TEST_CASE("two-generation example: second fold") {
    auto [f0, f1] = fig_children();
    (void)f1;
    auto [f00, f01] = fold_daughters(f0, {Rat(0), q(1, 2)});
    (void)f01;

    CHECK(f00.domain() == Interval(q(-2, 3), q(1, 2)));
    CHECK(f00.turns() == std::vector<Rat>{q(-1, 3), Rat(0)});
    CHECK(f00.image() == Interval(Rat(0), q(1, 2)));
    CHECK(f00.diameter() == q(1, 2));
    CHECK(f00.evaluate(q(-2, 3)) == Rat(0));

    // Same function through the reflection oracle.
    FoldChain chain{{{{q(1, 3), q(3, 4)}, 0}, {{Rat(0), q(1, 2)}, 0}}};
    CHECK(chain.domains().back() == f00.domain());
    for (int i = 0; i <= 24; ++i) {
        Rat x = f00.domain().lo + f00.domain().length() * i / 24;
        CHECK(f00.evaluate(x) == chain.eval(x));
    }
}

TEST_CASE("degenerate clasps") {
    FoldedPath id = identity_path();
    auto [c0, c1] = fold_daughters(id, {Rat(0), Rat(1)});
    CHECK(c0 == id);
    CHECK(c1 == id);

    // a == b is accepted at the type level.
    auto [d0, d1] = fold_daughters(id, {q(1, 2), q(1, 2)});
    CHECK(d0.domain() == Interval(q(-1, 2), q(1, 2)));
    CHECK(d0.image() == Interval(Rat(0), q(1, 2)));
    CHECK(d1.domain() == Interval(q(1, 2), q(3, 2)));

    CHECK_THROWS_AS(fold_daughters(id, {q(3, 4), q(1, 4)}), ClaspError);
    CHECK_THROWS_AS(fold_daughters(id, {q(-1, 4), q(1, 2)}), ClaspError);
}

TEST_CASE("evaluate outside domain") {
    FoldedPath id = identity_path();
    CHECK_THROWS_AS(id.evaluate(Rat(2)), DomainError);
    CHECK_THROWS_AS(id.evaluate(q(-1, 10)), DomainError);
}

TEST_CASE("derive_clasp") {
    CHECK(derive_clasp(Interval(Rat(0), Rat(1)), Interval(q(-1, 3), q(3, 4))) ==
          ClaspChoice{q(1, 3), q(3, 4)});
    CHECK(derive_clasp(Interval(q(1, 4), Rat(1)), Interval(q(1, 4), Rat(1))) ==
          ClaspChoice{q(1, 4), Rat(1)});
    CHECK_THROWS_AS(derive_clasp(Interval(Rat(0), Rat(1)), Interval(q(1, 8), q(1, 2))),
                    ClaspError);
}

TEST_CASE("equal_on") {
    auto [f0, f1] = fig_children();
    (void)f1;
    FoldedPath id = identity_path();
    CHECK(equal_on(f0, f0, f0.domain()));
    CHECK(equal_on(f0, id, Interval(q(1, 3), q(3, 4))));
    // f_0 re-traces the identity everywhere at or above c, so a genuinely
    // different pair needs a fold inside the compared window.
    FoldedPath f01 = fold_daughters(f0, {Rat(0), q(1, 2)}).second;
    CHECK(!equal_on(f01, id, Interval(q(1, 2), Rat(1))));
    CHECK_THROWS_AS(equal_on(f0, id, Interval(q(-1, 3), q(3, 4))), DomainError);
}

TEST_CASE("random fold chains match the reflection oracle") {
    TestRng rng(20240517);
    for (int trial = 0; trial < 200; ++trial) {
        FoldChain chain;
        FoldedPath f = identity_path();
        const int depth = 1 + int(rng.next() % 6);
        for (int level = 0; level < depth; ++level) {
            ClaspChoice clasp = bing::testing::random_clasp_in(rng, f.domain());
            int bit = rng.bit();
            auto [c0, c1] = fold_daughters(f, clasp);
            chain.steps.push_back({clasp, bit});
            f = bit == 0 ? c0 : c1;
        }
        CHECK(chain.domains().back() == f.domain());
        for (int i = 0; i <= 32; ++i) {
            Rat x = f.domain().lo + f.domain().length() * i / 32;
            REQUIRE(f.evaluate(x) == chain.eval(x));
        }
        // Grid image brackets the exact one to within half a grid cell.
        Interval img = f.image();
        Interval grid = chain.image_grid(512);
        Rat cell = f.domain().length() / 512;
        CHECK(img.contains(grid));
        CHECK(grid.lo - img.lo <= cell);
        CHECK(img.hi - grid.hi <= cell);
    }
}

TEST_CASE("fold invariants on random mothers") {
    TestRng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        FoldedPath mother = identity_path();
        const int depth = int(rng.next() % 5);
        for (int level = 0; level < depth; ++level) {
            auto clasp = bing::testing::random_clasp_in(rng, mother.domain());
            auto [c0, c1] = fold_daughters(mother, clasp);
            mother = rng.bit() ? c1 : c0;
        }

        auto clasp = bing::testing::random_clasp_in(rng, mother.domain());
        auto [child0, child1] = fold_daughters(mother, clasp);
        const Interval dom = mother.domain();
        const Rat c = dom.lo, d = dom.hi;

        // Length doubling, exactly.
        CHECK(child0.domain().length() + child1.domain().length() == 2 * dom.length());

        // Image nesting.
        CHECK(mother.image().contains(child0.image()));
        CHECK(mother.image().contains(child1.image()));

        // Overlap agreement.
        CHECK(equal_on(child0, mother, Interval(c, clasp.b)));
        CHECK(equal_on(child1, mother, Interval(clasp.a, d)));

        // Reflection identity on the re-traced tails.
        for (int i = 0; i <= 8; ++i) {
            if (clasp.a > c) {
                Rat x = (2 * c - clasp.a) + (clasp.a - c) * i / 8;
                CHECK(child0.evaluate(x) == mother.evaluate(2 * c - x));
            }
            if (clasp.b < d) {
                Rat x = d + (d - clasp.b) * i / 8;
                CHECK(child1.evaluate(x) == mother.evaluate(2 * d - x));
            }
        }

        // 1-Lipschitz.
        CHECK(child0.diameter() <= child0.domain().length());
        CHECK(child1.diameter() <= child1.domain().length());

        // Turn counts follow the re-trace structure exactly: the mirrored
        // tail duplicates the turns it re-traces and the fold point adds one.
        auto strictly_inside = [&](const Rat& lo, const Rat& hi) {
            std::size_t n = 0;
            for (const auto& t : mother.turns())
                if (t > lo && t < hi) ++n;
            return n;
        };
        CHECK(child0.turn_count() ==
              strictly_inside(c, clasp.a) + strictly_inside(c, clasp.b) + (clasp.a > c ? 1 : 0));
        CHECK(child1.turn_count() ==
              strictly_inside(clasp.b, d) + strictly_inside(clasp.a, d) + (clasp.b < d ? 1 : 0));
        // With no turns inside the re-traced tail the count grows by at most
        // one per fold; small-displacement clasps always live in that regime.
        if (strictly_inside(c, clasp.a) == 0)
            CHECK(child0.turn_count() <= mother.turn_count() + 1);

        // Clasp round trip.
        CHECK(derive_clasp(dom, child0.domain()) == clasp);
    }
}
