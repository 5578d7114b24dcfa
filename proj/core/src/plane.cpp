#include "bing/plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bing {

PlanePoint middle_third_point(double c_tau, double t) {
    if (!(t > c_tau)) throw GeometryError("middle_third_point: t must exceed c_tau");
    return {c_tau + (t - c_tau) / 3.0, c_tau + 2.0 * (t - c_tau) / 3.0};
}

double Bullseye::radius_after_steps(std::size_t k) const {
    double sq = base_radius * base_radius;
    for (std::size_t i = 0; i < k && i < step_lengths.size(); ++i)
        sq += step_lengths[i] * step_lengths[i];
    return std::sqrt(sq);
}

double arc_length_sup(const PlanePoint& center, const PlanePoint& p, const PlanePoint& q,
                      double margin) {
    const double r = std::hypot(p.x - center.x, p.y - center.y);
    const double qx = q.x + margin;  // quadrant dilated outward
    const double qy = q.y - margin;

    // The bound applies to the arc CONTAINING p, not to every in-quadrant
    // piece of the circle: the far sweep around the center is never reached
    // by tangent stepping. In angle terms (atan2 about the center) the
    // quadrant's complement consists of an "east" failure zone around angle 0
    // where x > qx and a "south" zone around -pi/2 where y < qy; p sits
    // between them. y - x is sinusoidal with its maximum at 3pi/4, so the
    // supremum over p's arc is attained at the arc ends, or at 3pi/4 when a
    // missing failure zone lets the arc wrap around to it.
    const auto value_at = [&](double theta) {
        return (center.y + r * std::sin(theta)) - (center.x + r * std::cos(theta));
    };

    const double dxr = (qx - center.x) / r;
    const double syr = (qy - center.y) / r;
    const bool has_east = dxr < 1.0;
    const bool has_south = syr > -1.0;
    if (!has_east && !has_south) return value_at(3 * std::acos(-1.0) / 4);

    double sup = -std::numeric_limits<double>::infinity();
    if (has_east)
        sup = std::max(sup, value_at(-std::acos(std::clamp(dxr, -1.0, 1.0))));
    else
        sup = std::max(sup, value_at(3 * std::acos(-1.0) / 4));
    if (has_south)
        sup = std::max(sup, value_at(std::asin(std::clamp(syr, -1.0, 1.0))));
    else
        sup = std::max(sup, value_at(3 * std::acos(-1.0) / 4));
    return sup;
}

PlanePoint select_center(const PlanePoint& p, const PlanePoint& q, double length_bound,
                         double max_step) {
    if (!nw_contains(p, q)) throw GeometryError("select_center: p not in NW quadrant of q");
    if (!(p.y - p.x < length_bound))
        throw GeometryError("select_center: p already as long as the bound");

    const double inv_sqrt2 = std::sqrt(0.5);
    double s = 10.0 * (p.y - p.x);
    if (!(s > 0)) s = 10.0;
    for (int attempt = 0; attempt < 60; ++attempt, s *= 2) {
        PlanePoint center{q.x - s * inv_sqrt2, q.y + s * inv_sqrt2};
        if (!strictly_nw(center, p)) continue;
        if (arc_length_sup(center, p, q, max_step) < length_bound) return center;
    }
    throw GeometryError("select_center: no feasible center within 60 doublings");
}

std::pair<PlanePoint, PlanePoint> tangent_step(const PlanePoint& center, const PlanePoint& p,
                                               double h) {
    const double vx = p.x - center.x;
    const double vy = p.y - center.y;
    if (!(vx > 0) || !(vy < 0))
        throw GeometryError("tangent_step: center must be strictly NW of p");
    if (!(h > 0)) throw GeometryError("tangent_step: step must be positive");
    const double norm = std::hypot(vx, vy);
    const double tx = -vy / norm; // both components positive
    const double ty = vx / norm;
    PlanePoint child0{p.x - h * tx, p.y - h * ty};
    PlanePoint child1{p.x + h * tx, p.y + h * ty};
    return {child0, child1};
}

double radius_after(double r0, const std::vector<double>& steps) {
    double sq = r0 * r0;
    for (double h : steps) sq += h * h;
    return std::sqrt(sq);
}

std::uint64_t steps_to_radius(double r0, const EpsSchedule& sched, double target,
                              std::uint64_t cap) {
    if (!(target > r0)) throw GeometryError("steps_to_radius: target must exceed r0");
    const double goal_sq = target * target;
    if (sched.kind() == EpsSchedule::Kind::Constant) {
        const double e = sched.constant_value();
        return std::uint64_t(std::ceil((goal_sq - r0 * r0) / (e * e)));
    }
    double sq = r0 * r0;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        const double e = sched.eps(k);
        sq += e * e;
        if (sq >= goal_sq) return k;
    }
    throw GeometryError("steps_to_radius: cap exceeded; square sum looks convergent");
}

} // namespace bing
