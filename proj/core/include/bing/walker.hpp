#pragma once

#include "bing/strategy.hpp"

#include <deque>
#include <set>
#include <string>

namespace bing {

// Walks one root-to-leaf branch, folding the function in place. The deque
// only ever changes near its ends (folds land within a clasp displacement of
// an end), so a step costs O(edits); memory stays O(turns). The exact image
// is maintained through a multiset of vertex values.
class PathWalker {
public:
    explicit PathWalker(const Strategy& strategy);

    std::size_t depth() const { return depth_; }
    const std::string& sigma() const { return sigma_; }
    Interval domain() const { return Interval(verts_.front().x, verts_.back().x); }
    Interval image() const { return Interval(*values_.begin(), *values_.rbegin()); }
    Rat diameter() const { return *values_.rbegin() - *values_.begin(); }
    std::size_t turn_count() const { return verts_.size() < 2 ? 0 : verts_.size() - 2; }
    const StrategyState& state() const { return state_; }

    struct StepInfo {
        ClaspChoice clasp; // clasp chosen at the node we just left
        SdEvents events;   // what happened to the branch we followed
        Rat disp_lo;
        Rat disp_hi;
        int bit = 0;
    };

    // Decide at the current node, then descend into child `bit`.
    StepInfo step(int bit);

    // Decide, then follow the child with the longer re-trace bookkeeping
    // (boundary clearance breaks in-round ties, then child 0).
    StepInfo step_extremal();

    // Current function as an immutable value (used by trimming strategies
    // and by equivalence tests against BingTree expansion).
    FoldedPath materialize() const;

    Rat evaluate(const Rat& x) const;

private:
    StepInfo apply_decision(const StrategyDecision& decision, int bit);
    void fold_in_place(const ClaspChoice& clasp, int bit);
    void push_front_vertex(const PathVertex& v);
    void push_back_vertex(const PathVertex& v);
    void pop_front_vertex();
    void pop_back_vertex();
    StrategyDecision decide() const;

    const Strategy* strategy_;
    std::deque<PathVertex> verts_;
    std::multiset<Rat, RatLess> values_;
    StrategyState state_;
    std::string sigma_;
    std::size_t depth_ = 0;
    mutable std::optional<FoldedPath> path_cache_;
};

} // namespace bing
