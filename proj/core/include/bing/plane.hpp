#pragma once

#include "bing/errors.hpp"
#include "bing/interval.hpp"
#include "bing/schedule.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace bing {

// A domain interval [c, d] seen as the plane point (c, d). Everything here
// is binary64: radii involve square roots, and the stop rules below are
// inequalities on coordinates, never equality tests.
struct PlanePoint {
    double x = 0;
    double y = 0;
    bool operator==(const PlanePoint&) const = default;
};

inline PlanePoint to_plane(const Interval& iv) {
    return {to_double(iv.lo), to_double(iv.hi)};
}

// Interval inclusion in point form: p covers q's interval iff p lies in the
// closed NW quadrant of q.
inline bool nw_contains(const PlanePoint& p, const PlanePoint& q) {
    return p.x <= q.x && p.y >= q.y;
}

inline bool strictly_nw(const PlanePoint& p, const PlanePoint& q) {
    return p.x < q.x && p.y > q.y;
}

// The plane point of the middle third of [c_tau, t].
PlanePoint middle_third_point(double c_tau, double t);

// Concentric-circle bookkeeping: squared radii grow by h^2 per tangent step.
struct Bullseye {
    PlanePoint center;
    double base_radius = 0;
    std::vector<double> step_lengths;

    double radius_after_steps(std::size_t k) const;
};

// Distant center on the slope -1 ray through q, far enough that every point
// of the circle through p inside the NW quadrant of q dilated outward by
// max_step keeps y - x < length_bound. Doubling search from s = 10 (p.y - p.x),
// capped at 60 doublings.
PlanePoint select_center(const PlanePoint& p, const PlanePoint& q, double length_bound,
                         double max_step);

// Largest y - x over the circle through p centered at O, restricted to the
// NW quadrant of q dilated outward by margin. Used by select_center and by
// the length-certificate tests.
double arc_length_sup(const PlanePoint& center, const PlanePoint& p, const PlanePoint& q,
                      double margin);

// Steps distance h from p along the tangent of its circle about `center`,
// both ways; returns (child0 point, child1 point). Both land on the circle
// of radius sqrt(|p - center|^2 + h^2).
std::pair<PlanePoint, PlanePoint> tangent_step(const PlanePoint& center, const PlanePoint& p,
                                               double h);

// sqrt(r0^2 + sum h_i^2).
double radius_after(double r0, const std::vector<double>& steps);

// Least k with r0^2 + sum_{i<=k} eps_i^2 >= target^2. Diverging schedules
// always terminate; insufficient schedules hit the cap and throw.
std::uint64_t steps_to_radius(double r0, const EpsSchedule& sched, double target,
                              std::uint64_t cap = 200'000'000);

} // namespace bing
