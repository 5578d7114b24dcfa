#include "bing/plane.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace bing;
using doctest::Approx;

TEST_CASE("to_plane and nw_contains") {
    PlanePoint p = to_plane(Interval(Rat(0), Rat(1)));
    CHECK(p == PlanePoint{0.0, 1.0});
    CHECK(p.y - p.x == 1.0); // distance above the diagonal = interval length

    PlanePoint third = to_plane(Interval(Rat(-1) / 3, Rat(3) / 4));
    CHECK(third.x == Approx(-1.0 / 3));
    CHECK(third.y == Approx(0.75));

    PlanePoint q{1.0 / 3, 2.0 / 3};
    CHECK(nw_contains({0, 1}, q));
    CHECK(nw_contains(q, q)); // closed quadrant
    CHECK(!nw_contains({0.4, 1}, q));
}

TEST_CASE("middle_third_point") {
    PlanePoint q = middle_third_point(0, 1);
    CHECK(q.x == Approx(1.0 / 3));
    CHECK(q.y == Approx(2.0 / 3));
    PlanePoint r = middle_third_point(0, 0.75);
    CHECK(r.x == Approx(0.25));
    CHECK(r.y == Approx(0.5));
    CHECK_THROWS_AS(middle_third_point(0.5, 0.5), GeometryError);
}

TEST_CASE("tangent_step forced by perpendicularity") {
    auto [c0, c1] = tangent_step({-10, 10}, {0, 0}, 0.1);
    const double s = 0.1 / std::sqrt(2.0);
    CHECK(c1.x == Approx(s));
    CHECK(c1.y == Approx(s));
    CHECK(c0.x == Approx(-s));
    CHECK(c0.y == Approx(-s));
    const double r2 = c1.x + 10, r2y = c1.y - 10;
    CHECK(r2 * r2 + r2y * r2y == Approx(200.01));

    // child0 displacement is the negative of child1's.
    CHECK(c0.x - 0 == Approx(-(c1.x - 0)));
    CHECK(c0.y - 0 == Approx(-(c1.y - 0)));

    // displacement components stay below h
    CHECK(std::abs(c1.x) < 0.1);
    CHECK(std::abs(c1.y) < 0.1);

    CHECK_THROWS_AS(tangent_step({1, -1}, {0, 0}, 0.1), GeometryError);
    CHECK_THROWS_AS(tangent_step({-1, 1}, {0, 0}, -0.1), GeometryError);
}

TEST_CASE("pythagorean radius growth") {
    PlanePoint center{-8, 9};
    PlanePoint p{0, 1};
    double sq = (p.x - center.x) * (p.x - center.x) + (p.y - center.y) * (p.y - center.y);
    bing::testing::TestRng rng(99);
    std::vector<double> hs;
    for (int i = 0; i < 2000; ++i) {
        double h = 0.001 + double(rng.next() % 1000) / 1e5;
        hs.push_back(h);
        auto [c0, c1] = tangent_step(center, p, h);
        p = (rng.next() & 1) ? c1 : c0;
        sq += h * h;
        const double rr = std::hypot(p.x - center.x, p.y - center.y);
        CHECK(std::abs(rr * rr - sq) <= 1e-12 * sq);
    }
    const double r0 = std::hypot(8.0, 8.0);
    CHECK(radius_after(r0, hs) == Approx(std::sqrt(sq)).epsilon(1e-12));

    // Quadrant monotonicity under a strictly NW center.
    auto [d0, d1] = tangent_step(center, p, 0.01);
    CHECK(d1.x > p.x);
    CHECK(d1.y > p.y);
    CHECK(d0.x < p.x);
    CHECK(d0.y < p.y);
}

TEST_CASE("radius_after closed forms") {
    CHECK(radius_after(1, std::vector<double>(99, 1.0)) == Approx(10.0));
    CHECK(radius_after(5, {0.1}) == Approx(std::sqrt(25.01)));
}

TEST_CASE("steps_to_radius") {
    CHECK(steps_to_radius(1, EpsSchedule::constant(1), 10) == 99);
    CHECK(steps_to_radius(1, EpsSchedule::power(1, 0.5), 2) == 11); // H_11 first exceeds 3
    // Constant closed form.
    CHECK(steps_to_radius(2, EpsSchedule::constant(0.25), 3) ==
          std::uint64_t(std::ceil((9.0 - 4.0) / 0.0625)));
    // Insufficient explicit schedule hits the cap.
    CHECK_THROWS_AS(steps_to_radius(1, EpsSchedule::explicit_list({1e-9}), 10, 1000),
                    GeometryError);
    CHECK_THROWS_AS(steps_to_radius(1, EpsSchedule::constant(1), 0.5), GeometryError);
}

TEST_CASE("schedule divergence checks") {
    CHECK(EpsSchedule::constant(0.05).divergent_square_sum());
    CHECK(EpsSchedule::power(0.1, 0.5).divergent_square_sum());
    CHECK(!EpsSchedule::power(0.1, 0.51).divergent_square_sum());
    CHECK(!EpsSchedule::explicit_list({0.1, 0.2}).divergent_square_sum());
    CHECK(EpsSchedule::power(2, 0.5).eps(4) == Approx(1.0));
    CHECK_THROWS_AS(EpsSchedule::constant(0), ConfigError);
    CHECK_THROWS_AS(EpsSchedule::constant(-1), ConfigError);
}

TEST_CASE("select_center length certificate") {
    PlanePoint p{0, 1};
    PlanePoint q{1.0 / 3, 2.0 / 3};
    const double bound = 1.25, max_step = 0.05;
    PlanePoint center = select_center(p, q, bound, max_step);

    CHECK(center.x < p.x);
    CHECK(center.y > p.y);
    CHECK(arc_length_sup(center, p, q, max_step) < bound);

    // Walk the circle family: every point created while inside the dilated
    // quadrant keeps y - x under the bound, including the first point out.
    bing::testing::TestRng rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        PlanePoint w = p;
        for (int step = 0; step < 400 && nw_contains(w, q); ++step) {
            auto [c0, c1] = tangent_step(center, w, max_step * 0.99);
            w = (rng.next() & 1) ? c1 : c0;
            CHECK(w.y - w.x < bound);
        }
    }

    CHECK_THROWS_AS(select_center({0, 1.3}, q, 1.25, 0.05), GeometryError);
    CHECK_THROWS_AS(select_center({0.5, 0.6}, q, 1.25, 0.05), GeometryError);
}
