#pragma once

#include "bing/errors.hpp"
#include "bing/folded_path.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bing {

// Node address: the binary string sigma. The empty string is the root and
// depth equals the string length.
struct NodeId {
    std::string sigma;

    NodeId() = default;
    explicit NodeId(std::string s) : sigma(std::move(s)) {
        for (char ch : sigma)
            if (ch != '0' && ch != '1') throw TreeError("NodeId: sigma must be over {0,1}");
    }

    std::size_t depth() const { return sigma.size(); }
    bool is_root() const { return sigma.empty(); }
    NodeId child(int bit) const { return NodeId(sigma + (bit ? '1' : '0')); }
    NodeId parent() const {
        if (is_root()) throw TreeError("NodeId: root has no parent");
        return NodeId(sigma.substr(0, sigma.size() - 1));
    }
    // Prefix order: ancestor-or-equal.
    bool is_ancestor_of(const NodeId& other) const {
        return other.sigma.size() >= sigma.size() &&
               other.sigma.compare(0, sigma.size(), sigma) == 0;
    }
    bool operator==(const NodeId&) const = default;
};

struct TreeNode {
    NodeId id;
    FoldedPath path;
    std::optional<ClaspChoice> clasp; // set when expanded
    // Displacements |a - c| and |d - b|, recorded at expansion time.
    std::optional<Rat> disp_lo;
    std::optional<Rat> disp_hi;

    std::optional<NodeId> parent() const {
        if (id.is_root()) return std::nullopt;
        return id.parent();
    }
};

struct ExpansionMode {
    enum class Kind { Full, SampledPaths, Extremal };
    Kind kind = Kind::Full;
    std::size_t max_depth = 22;
    std::size_t path_count = 0;   // sampled mode
    std::uint64_t seed = 0;
};

// The binary tree of functions, rooted at the identity. Explicit node
// storage; the long-run walkers in experiment.hpp avoid materializing it.
class BingTree {
public:
    explicit BingTree(ExpansionMode mode = {});

    const TreeNode& node(const NodeId& id) const;
    bool contains(const NodeId& id) const { return nodes_.find(id.sigma) != nodes_.end(); }
    std::size_t size() const { return nodes_.size(); }
    const ExpansionMode& mode() const { return mode_; }

    // All materialized ids in depth-then-sigma order.
    std::vector<NodeId> ids_sorted() const;

    // Inserts both daughters of an unexpanded node.
    std::pair<NodeId, NodeId> expand(const NodeId& id, const ClaspChoice& clasp);

private:
    ExpansionMode mode_;
    std::unordered_map<std::string, TreeNode> nodes_;
};

// max a_mu / min b_mu over the clasps on the chain from tau to tau'
// (exclusive of tau's own... inclusive of tau, exclusive of tau' itself).
struct RetraceBounds {
    Rat M;
    Rat m;
};

RetraceBounds retrace_bounds(const BingTree& tree, const NodeId& tau, const NodeId& tau_prime);

struct Lemma1Report {
    bool equal_ok = false;
    Rat low_fold_len;
    Rat high_fold_len;
    Rat low_bound;  // max |a_mu - c_mu| over the chain
    Rat high_bound; // max |d_mu - b_mu| over the chain
    bool bounds_ok = false;
};

// Checks the ancestor lemma on a materialized chain: agreement on [M, m],
// and the end-fold image lengths against the max displacements.
Lemma1Report verify_lemma1(const BingTree& tree, const NodeId& tau, const NodeId& tau_prime);

enum class WiggleSide { Low, High };

struct AWClassification {
    WiggleSide side = WiggleSide::High;
    Interval retrace;
    Rat eps_bound;
};

// Splits f_tau' into a re-trace part plus one epsilon-bounded wiggle end.
// Requires a pause position: c_tau' = M or d_tau' = m, up to `slack`
// (exactly zero by default; geometry-driven trees pass a small slack).
AWClassification classify_aw(const BingTree& tree, const NodeId& tau, const NodeId& tau_prime,
                             const Rat& slack = Rat(0));

struct DepthRecord {
    std::size_t depth = 0;
    std::size_t count = 0;
    Rat max_diameter;
    Rat mean_diameter;
    Rat max_length;
    Rat max_displacement; // over clasps recorded at this depth; 0 if none
};

struct DepthProfile {
    std::vector<DepthRecord> records; // contiguous from depth 0
};

DepthProfile depth_profile(const BingTree& tree);

} // namespace bing
