#include "bing/folded_path.hpp"

#include <algorithm>

namespace bing {

namespace {

int slope_between(const PathVertex& u, const PathVertex& v) {
    return v.y > u.y ? 1 : -1;
}

} // namespace

FoldedPath FoldedPath::from_vertices(std::vector<PathVertex> verts) {
    if (verts.empty()) throw DomainError("FoldedPath: empty vertex list");
    int prev_slope = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (verts[i].y < 0 || verts[i].y > 1)
            throw DomainError("FoldedPath: value outside [0,1]");
        if (i == 0) continue;
        const Rat dx = verts[i].x - verts[i - 1].x;
        if (dx <= 0) throw DomainError("FoldedPath: breakpoints not strictly increasing");
        if (rat_abs(verts[i].y - verts[i - 1].y) != dx)
            throw DomainError("FoldedPath: piece slope is not +1 or -1");
        const int s = slope_between(verts[i - 1], verts[i]);
        if (s == prev_slope)
            throw DomainError("FoldedPath: slopes do not alternate");
        prev_slope = s;
    }
    return FoldedPath(std::move(verts));
}

int FoldedPath::start_slope() const {
    if (verts_.size() < 2) return 0;
    return slope_between(verts_[0], verts_[1]);
}

std::vector<Rat> FoldedPath::turns() const {
    std::vector<Rat> out;
    if (verts_.size() < 3) return out;
    out.reserve(verts_.size() - 2);
    for (std::size_t i = 1; i + 1 < verts_.size(); ++i) out.push_back(verts_[i].x);
    return out;
}

Rat FoldedPath::evaluate(const Rat& x) const {
    if (rat_less(x, verts_.front().x) || rat_less(verts_.back().x, x))
        throw DomainError("evaluate: x outside domain");
    // Last vertex with x_i <= x.
    auto it = std::upper_bound(verts_.begin(), verts_.end(), x,
                               [](const Rat& v, const PathVertex& p) { return rat_less(v, p.x); });
    --it;
    if (it->x == x || it + 1 == verts_.end()) return it->y;
    const int s = slope_between(*it, *(it + 1));
    return s > 0 ? Rat(it->y + (x - it->x)) : Rat(it->y - (x - it->x));
}

Interval FoldedPath::image() const {
    Rat lo = verts_.front().y;
    Rat hi = lo;
    for (const auto& v : verts_) {
        if (rat_less(v.y, lo)) lo = v.y;
        else if (rat_less(hi, v.y)) hi = v.y;
    }
    return Interval(lo, hi);
}

FoldedPath identity_path() {
    return FoldedPath::from_vertices({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
}

FoldedPath restrict_to(const FoldedPath& f, const Interval& iv) {
    if (!f.domain().contains(iv)) throw DomainError("restrict_to: interval outside domain");
    const auto& verts = f.vertices();
    std::vector<PathVertex> out;
    out.push_back({iv.lo, f.evaluate(iv.lo)});
    if (iv.lo != iv.hi) {
        for (const auto& v : verts)
            if (rat_less(iv.lo, v.x) && rat_less(v.x, iv.hi)) out.push_back(v);
        out.push_back({iv.hi, f.evaluate(iv.hi)});
    }
    return FoldedPath::from_vertices(std::move(out));
}

namespace {

// Mirror of f over [from, to] about the vertical line x = axis, emitted with
// increasing x. Used for both daughter tails.
std::vector<PathVertex> mirrored_piece(const FoldedPath& f, const Rat& from, const Rat& to,
                                       const Rat& axis) {
    FoldedPath piece = restrict_to(f, Interval(from, to));
    const auto& verts = piece.vertices();
    std::vector<PathVertex> out;
    out.reserve(verts.size());
    for (auto it = verts.rbegin(); it != verts.rend(); ++it)
        out.push_back({2 * axis - it->x, it->y});
    return out;
}

std::vector<PathVertex> concat_at_junction(std::vector<PathVertex> head,
                                           const std::vector<PathVertex>& tail) {
    // head ends and tail begins at the same vertex (the fold point).
    head.insert(head.end(), tail.begin() + 1, tail.end());
    return head;
}

} // namespace

std::pair<FoldedPath, FoldedPath> fold_daughters(const FoldedPath& f, const ClaspChoice& clasp) {
    const Interval dom = f.domain();
    if (!clasp_valid_for(clasp, dom))
        throw ClaspError("fold_daughters: clasp outside c <= a <= b <= d");
    const Rat& c = dom.lo;
    const Rat& d = dom.hi;
    const Rat& a = clasp.a;
    const Rat& b = clasp.b;

    FoldedPath child0 = [&] {
        if (a == c) return restrict_to(f, Interval(c, b));
        auto head = mirrored_piece(f, c, a, c); // [2c-a, c], re-traced backwards
        auto tail = restrict_to(f, Interval(c, b)).vertices();
        return FoldedPath::from_vertices(concat_at_junction(std::move(head), tail));
    }();

    FoldedPath child1 = [&] {
        if (b == d) return restrict_to(f, Interval(a, d));
        auto head = restrict_to(f, Interval(a, d)).vertices();
        auto tail = mirrored_piece(f, b, d, d); // [d, 2d-b], re-traced backwards
        return FoldedPath::from_vertices(concat_at_junction(std::move(head), tail));
    }();

    return {std::move(child0), std::move(child1)};
}

ClaspChoice derive_clasp(const Interval& mother_domain, const Interval& child0_domain) {
    const Rat a = 2 * mother_domain.lo - child0_domain.lo;
    const Rat b = child0_domain.hi;
    ClaspChoice clasp{a, b};
    if (child0_domain.lo > mother_domain.lo || !clasp_valid_for(clasp, mother_domain))
        throw ClaspError("derive_clasp: inconsistent mother/child0 domains");
    return clasp;
}

bool equal_on(const FoldedPath& f, const FoldedPath& g, const Interval& iv) {
    if (!f.domain().contains(iv) || !g.domain().contains(iv))
        throw DomainError("equal_on: interval outside a domain");
    return restrict_to(f, iv) == restrict_to(g, iv);
}

} // namespace bing
