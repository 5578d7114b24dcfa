#include "bing/tree.hpp"

#include <algorithm>

namespace bing {

BingTree::BingTree(ExpansionMode mode) : mode_(mode) {
    TreeNode root{NodeId(), identity_path(), std::nullopt, std::nullopt, std::nullopt};
    nodes_.emplace(std::string(), std::move(root));
}

const TreeNode& BingTree::node(const NodeId& id) const {
    auto it = nodes_.find(id.sigma);
    if (it == nodes_.end()) throw TreeError("BingTree: no node " + (id.sigma.empty() ? "<root>" : id.sigma));
    return it->second;
}

std::vector<NodeId> BingTree::ids_sorted() const {
    std::vector<NodeId> ids;
    ids.reserve(nodes_.size());
    for (const auto& [sigma, node] : nodes_) ids.push_back(node.id);
    std::sort(ids.begin(), ids.end(), [](const NodeId& a, const NodeId& b) {
        if (a.sigma.size() != b.sigma.size()) return a.sigma.size() < b.sigma.size();
        return a.sigma < b.sigma;
    });
    return ids;
}

std::pair<NodeId, NodeId> BingTree::expand(const NodeId& id, const ClaspChoice& clasp) {
    auto it = nodes_.find(id.sigma);
    if (it == nodes_.end()) throw TreeError("expand: no node " + id.sigma);
    TreeNode& mother = it->second;
    if (mother.clasp) throw TreeError("expand: node already expanded: " + id.sigma);
    if (!clasp_valid_for(clasp, mother.path.domain()))
        throw ClaspError("expand: invalid clasp for node " + id.sigma);

    auto [p0, p1] = fold_daughters(mother.path, clasp);
    const Interval dom = mother.path.domain();
    mother.clasp = clasp;
    mother.disp_lo = clasp.a - dom.lo;
    mother.disp_hi = dom.hi - clasp.b;

    NodeId id0 = id.child(0), id1 = id.child(1);
    nodes_.emplace(id0.sigma, TreeNode{id0, std::move(p0), std::nullopt, std::nullopt, std::nullopt});
    nodes_.emplace(id1.sigma, TreeNode{id1, std::move(p1), std::nullopt, std::nullopt, std::nullopt});
    return {id0, id1};
}

namespace {

// Clasps along tau..parent(tau'), in order. tau must be an ancestor of tau'.
std::vector<ClaspChoice> chain_clasps(const BingTree& tree, const NodeId& tau,
                                      const NodeId& tau_prime) {
    if (!tau.is_ancestor_of(tau_prime))
        throw TreeError("chain: " + tau.sigma + " is not an ancestor of " + tau_prime.sigma);
    std::vector<ClaspChoice> clasps;
    for (std::size_t depth = tau.depth(); depth < tau_prime.depth(); ++depth) {
        const NodeId mid(tau_prime.sigma.substr(0, depth));
        const TreeNode& node = tree.node(mid);
        if (!node.clasp) throw TreeError("chain: node " + mid.sigma + " has no clasp");
        clasps.push_back(*node.clasp);
    }
    return clasps;
}

} // namespace

RetraceBounds retrace_bounds(const BingTree& tree, const NodeId& tau, const NodeId& tau_prime) {
    const auto clasps = chain_clasps(tree, tau, tau_prime);
    if (clasps.empty()) {
        const Interval dom = tree.node(tau).path.domain();
        return {dom.lo, dom.hi};
    }
    Rat M = clasps.front().a;
    Rat m = clasps.front().b;
    for (const auto& clasp : clasps) {
        M = rat_max(M, clasp.a);
        m = rat_min(m, clasp.b);
    }
    return {M, m};
}

Lemma1Report verify_lemma1(const BingTree& tree, const NodeId& tau, const NodeId& tau_prime) {
    const auto clasps = chain_clasps(tree, tau, tau_prime);
    const FoldedPath& f_tau = tree.node(tau).path;
    const FoldedPath& f_end = tree.node(tau_prime).path;
    const Interval dom_end = f_end.domain();

    Lemma1Report report;
    report.low_bound = Rat(0);
    report.high_bound = Rat(0);
    if (clasps.empty()) {
        report.equal_ok = true;
        report.low_fold_len = Rat(0);
        report.high_fold_len = Rat(0);
        report.bounds_ok = true;
        return report;
    }

    Rat M = clasps.front().a, m = clasps.front().b;
    {
        std::size_t depth = tau.depth();
        for (const auto& clasp : clasps) {
            const Interval dom = tree.node(NodeId(tau_prime.sigma.substr(0, depth))).path.domain();
            report.low_bound = rat_max(report.low_bound, clasp.a - dom.lo);
            report.high_bound = rat_max(report.high_bound, dom.hi - clasp.b);
            M = rat_max(M, clasp.a);
            m = rat_min(m, clasp.b);
            ++depth;
        }
    }

    report.equal_ok = M > m || equal_on(f_end, f_tau, Interval(M, m));
    report.low_fold_len = restrict_to(f_end, Interval(dom_end.lo, rat_min(rat_max(M, dom_end.lo), dom_end.hi)))
                              .diameter();
    report.high_fold_len = restrict_to(f_end, Interval(rat_max(rat_min(m, dom_end.hi), dom_end.lo), dom_end.hi))
                               .diameter();
    report.bounds_ok = report.equal_ok && report.low_fold_len <= report.low_bound &&
                       report.high_fold_len <= report.high_bound;
    return report;
}

AWClassification classify_aw(const BingTree& tree, const NodeId& tau, const NodeId& tau_prime,
                             const Rat& slack) {
    const auto bounds = retrace_bounds(tree, tau, tau_prime);
    const Lemma1Report lemma = verify_lemma1(tree, tau, tau_prime);
    const Interval dom = tree.node(tau_prime).path.domain();

    const bool low_anchored = bounds.M - dom.lo <= slack;  // c_tau' = M: wiggle on the high end
    const bool high_anchored = dom.hi - bounds.m <= slack; // d_tau' = m: wiggle on the low end
    if (!low_anchored && !high_anchored)
        throw TreeError("classify_aw: no pause position (c' = M or d' = m) at " + tau_prime.sigma);

    AWClassification out;
    const Interval retrace(rat_max(bounds.M, dom.lo), rat_min(bounds.m, dom.hi));
    out.retrace = retrace;
    if (low_anchored) {
        out.side = WiggleSide::High;
        out.eps_bound = lemma.high_bound;
    } else {
        out.side = WiggleSide::Low;
        out.eps_bound = lemma.low_bound;
    }
    return out;
}

DepthProfile depth_profile(const BingTree& tree) {
    DepthProfile profile;
    std::vector<Rat> diam_sums;
    for (const NodeId& id : tree.ids_sorted()) {
        const TreeNode& node = tree.node(id);
        const std::size_t depth = id.depth();
        if (profile.records.size() <= depth) {
            profile.records.resize(depth + 1);
            diam_sums.resize(depth + 1, Rat(0));
            profile.records[depth].depth = depth;
        }
        DepthRecord& rec = profile.records[depth];
        const Rat diam = node.path.diameter();
        const Rat len = node.path.domain().length();
        if (rec.count == 0 || diam > rec.max_diameter) rec.max_diameter = diam;
        if (rec.count == 0 || len > rec.max_length) rec.max_length = len;
        if (node.disp_lo) {
            const Rat disp = rat_max(*node.disp_lo, *node.disp_hi);
            if (disp > rec.max_displacement) rec.max_displacement = disp;
        }
        diam_sums[depth] += diam;
        rec.count += 1;
    }
    for (std::size_t depth = 0; depth < profile.records.size(); ++depth) {
        DepthRecord& rec = profile.records[depth];
        if (rec.count > 0) rec.mean_diameter = diam_sums[depth] / int(rec.count);
    }
    return profile;
}

} // namespace bing
