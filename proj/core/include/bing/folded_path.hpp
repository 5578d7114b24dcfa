#pragma once

#include "bing/errors.hpp"
#include "bing/interval.hpp"
#include "bing/rational.hpp"

#include <utility>
#include <vector>

namespace bing {

struct PathVertex {
    Rat x;
    Rat y;
    bool operator==(const PathVertex&) const = default;
};

// A piecewise-linear function with every piece of slope +1 or -1, stored as
// its vertex polyline (domain endpoints plus the turning points between
// them). Immutable after construction; all operations are pure.
class FoldedPath {
public:
    // Builds from a vertex list and validates the slope-alternation and
    // value-range invariants. A single vertex is the degenerate one-point
    // function.
    static FoldedPath from_vertices(std::vector<PathVertex> verts);

    Interval domain() const { return Interval(verts_.front().x, verts_.back().x); }
    Rat start_value() const { return verts_.front().y; }

    // +1 or -1; 0 for the degenerate one-point path.
    int start_slope() const;

    // Interior breakpoints, strictly increasing.
    std::vector<Rat> turns() const;

    std::size_t turn_count() const { return verts_.size() < 2 ? 0 : verts_.size() - 2; }

    const std::vector<PathVertex>& vertices() const { return verts_; }

    Rat evaluate(const Rat& x) const;
    Interval image() const;
    Rat diameter() const { return image().length(); }

    bool operator==(const FoldedPath&) const = default;

private:
    explicit FoldedPath(std::vector<PathVertex> verts) : verts_(std::move(verts)) {}
    std::vector<PathVertex> verts_;
};

// The daughter clasp points (a, b) inside a mother domain [c, d].
struct ClaspChoice {
    Rat a;
    Rat b;
    bool operator==(const ClaspChoice&) const = default;
};

inline bool clasp_valid_for(const ClaspChoice& clasp, const Interval& domain) {
    return domain.lo <= clasp.a && clasp.a <= clasp.b && clasp.b <= domain.hi;
}

// The identity map on [0,1], the root of every Bing tree.
FoldedPath identity_path();

// Restriction of f to a subinterval of its domain.
FoldedPath restrict_to(const FoldedPath& f, const Interval& iv);

// The two daughters of f under a clasp choice: child0 re-traces f backwards
// from a to c and then forwards from c to b; child1 runs forwards from a to
// d and then backwards from d to b.
std::pair<FoldedPath, FoldedPath> fold_daughters(const FoldedPath& f, const ClaspChoice& clasp);

// Recovers the clasp from the mother and child-0 domains: a = 2c - c0, b = d0.
ClaspChoice derive_clasp(const Interval& mother_domain, const Interval& child0_domain);

// Exact structural equality of the PL data restricted to iv.
bool equal_on(const FoldedPath& f, const FoldedPath& g, const Interval& iv);

} // namespace bing
