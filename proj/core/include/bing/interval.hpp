#pragma once

#include "bing/errors.hpp"
#include "bing/rational.hpp"

namespace bing {

// Closed interval [lo, hi] on the model x-axis. Degenerate (lo == hi) is legal.
struct Interval {
    Rat lo;
    Rat hi;

    Interval() : lo(0), hi(0) {}
    Interval(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo > hi) throw DomainError("Interval: lo > hi");
    }

    Rat length() const { return hi - lo; }

    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }

    bool operator==(const Interval& other) const = default;
};

inline Interval intersect(const Interval& a, const Interval& b) {
    Rat lo = rat_max(a.lo, b.lo);
    Rat hi = rat_min(a.hi, b.hi);
    if (lo > hi) throw DomainError("intersect: disjoint intervals");
    return Interval(lo, hi);
}

} // namespace bing
