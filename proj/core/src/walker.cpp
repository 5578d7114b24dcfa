#include "bing/walker.hpp"

#include <algorithm>

namespace bing {

PathWalker::PathWalker(const Strategy& strategy) : strategy_(&strategy) {
    verts_.push_back({Rat(0), Rat(0)});
    verts_.push_back({Rat(1), Rat(1)});
    values_.insert(Rat(0));
    values_.insert(Rat(1));
    state_ = strategy.root_state();
}

void PathWalker::push_front_vertex(const PathVertex& v) {
    values_.insert(v.y);
    verts_.push_front(v);
}

void PathWalker::push_back_vertex(const PathVertex& v) {
    values_.insert(v.y);
    verts_.push_back(v);
}

void PathWalker::pop_front_vertex() {
    values_.erase(values_.find(verts_.front().y));
    verts_.pop_front();
}

void PathWalker::pop_back_vertex() {
    values_.erase(values_.find(verts_.back().y));
    verts_.pop_back();
}

Rat PathWalker::evaluate(const Rat& x) const {
    if (rat_less(x, verts_.front().x) || rat_less(verts_.back().x, x))
        throw DomainError("PathWalker: x outside domain");
    auto it = std::upper_bound(verts_.begin(), verts_.end(), x,
                               [](const Rat& v, const PathVertex& p) { return rat_less(v, p.x); });
    --it;
    if (it->x == x || std::next(it) == verts_.end()) return it->y;
    const bool rising = std::next(it)->y > it->y;
    return rising ? Rat(it->y + (x - it->x)) : Rat(it->y - (x - it->x));
}

FoldedPath PathWalker::materialize() const {
    return FoldedPath::from_vertices(std::vector<PathVertex>(verts_.begin(), verts_.end()));
}

StrategyDecision PathWalker::decide() const {
    NodeView view;
    view.domain = domain();
    view.depth = depth_;
    view.sigma = sigma_;
    view.path = [this]() -> const FoldedPath& {
        if (!path_cache_) path_cache_ = materialize();
        return *path_cache_;
    };
    return strategy_->decide(view, state_);
}

void PathWalker::fold_in_place(const ClaspChoice& clasp, int bit) {
    const Rat c = verts_.front().x;
    const Rat d = verts_.back().x;
    const Rat& a = clasp.a;
    const Rat& b = clasp.b;
    const Rat fa = evaluate(a);
    const Rat fb = evaluate(b);

    if (bit == 0) {
        // Truncate above b, then mirror [c, a] about c onto the front.
        while (rat_less(b, verts_.back().x)) pop_back_vertex();
        if (verts_.back().x != b) push_back_vertex({b, fb});
        if (a > c) {
            std::vector<PathVertex> mirrored; // turns in (c, a), then a itself
            for (auto it = std::next(verts_.begin()); it != verts_.end() && rat_less(it->x, a); ++it)
                mirrored.push_back({2 * c - it->x, it->y});
            for (const auto& v : mirrored) push_front_vertex(v);
            push_front_vertex({2 * c - a, fa});
        }
    } else {
        // Truncate below a, then mirror [b, d] about d onto the back.
        while (rat_less(verts_.front().x, a)) pop_front_vertex();
        if (verts_.front().x != a) push_front_vertex({a, fa});
        if (b < d) {
            std::vector<PathVertex> mirrored; // turns in (b, d) descending, then b
            for (auto it = std::next(verts_.rbegin()); it != verts_.rend() && rat_less(b, it->x); ++it)
                mirrored.push_back({2 * d - it->x, it->y});
            for (const auto& v : mirrored) push_back_vertex(v);
            push_back_vertex({2 * d - b, fb});
        }
    }
    path_cache_.reset();
}

PathWalker::StepInfo PathWalker::apply_decision(const StrategyDecision& decision, int bit) {
    StepInfo info;
    info.clasp = decision.clasp;
    info.events = decision.events[std::size_t(bit)];
    info.disp_lo = decision.clasp.a - verts_.front().x;
    info.disp_hi = verts_.back().x - decision.clasp.b;
    info.bit = bit;

    fold_in_place(decision.clasp, bit);
    state_ = decision.child_states[std::size_t(bit)];
    sigma_.push_back(bit ? '1' : '0');
    depth_ += 1;
    return info;
}

PathWalker::StepInfo PathWalker::step(int bit) { return apply_decision(decide(), bit); }

PathWalker::StepInfo PathWalker::step_extremal() {
    const StrategyDecision decision = decide();
    const Interval dom = domain();
    const Rat c = dom.lo, d = dom.hi;
    const Rat& a = decision.clasp.a;
    const Rat& b = decision.clasp.b;
    const Interval dom0(2 * c - a, b);
    const Interval dom1(a, 2 * d - b);

    int bit = 0;
    const double score0 = Strategy::extremal_score(decision.child_states[0], dom0);
    const double score1 = Strategy::extremal_score(decision.child_states[1], dom1);
    if (std::isnan(score0)) {
        // No re-trace bookkeeping: worst case means the longer image extent.
        // img(child0) spans f over [c, b]; img(child1) spans f over [a, d].
        auto window_extent = [this](const Rat& lo, const Rat& hi) {
            Rat mn = evaluate(lo), mx = mn;
            const Rat fhi = evaluate(hi);
            mn = rat_min(mn, fhi);
            mx = rat_max(mx, fhi);
            for (const auto& v : verts_) {
                if (!rat_less(lo, v.x) || !rat_less(v.x, hi)) continue;
                mn = rat_min(mn, v.y);
                mx = rat_max(mx, v.y);
            }
            return mx - mn;
        };
        bit = window_extent(a, d) > window_extent(c, b) ? 1 : 0;
    } else if (score0 != score1) {
        bit = score1 > score0 ? 1 : 0;
    } else {
        // In-round tie: both children share the clasp bookkeeping. Prefer the
        // child with more clearance from the stop boundary, tracking the
        // branch that can avoid contracting the longest.
        const auto* phase = std::get_if<PhaseState>(&decision.child_states[0]);
        if (phase && phase->round_active) {
            const PlanePoint q = phase->q;
            const PlanePoint p0 = to_plane(dom0);
            const PlanePoint p1 = to_plane(dom1);
            const double clear0 = std::min(q.x - p0.x, p0.y - q.y);
            const double clear1 = std::min(q.x - p1.x, p1.y - q.y);
            if (clear1 > clear0) bit = 1;
        }
    }
    return apply_decision(decision, bit);
}

} // namespace bing
