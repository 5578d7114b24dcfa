#pragma once

#include "bing/folded_path.hpp"
#include "bing/plane.hpp"
#include "bing/schedule.hpp"
#include "bing/splitmix.hpp"
#include "bing/tree.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

namespace bing {

// --- configurations ---------------------------------------------------------

struct SmallDisplacementConfig {
    double eps_L = 0.25;
    EpsSchedule schedule = EpsSchedule::constant(0.05);
    double initial_eps = 0.05;
    // Tangent steps use step_scale * min{eps_phase, eps_i}; the paper needs
    // strictly less than the min, this fixes how much less.
    double step_scale = 0.99;
};

struct Bing1952Config {
    int plane_count = 10;
    // Target diameters; empty means the default cascade 2/n, 2/n^2, ...
    std::vector<Rat> goals;
};

struct Bing1988Config {
    double patient_delta = 0.01;
};

struct RandomClaspConfig {
    std::uint64_t seed = 0;
};

using StrategyConfig =
    std::variant<SmallDisplacementConfig, Bing1952Config, Bing1988Config, RandomClaspConfig>;

void validate(const StrategyConfig& config); // throws ConfigError
std::string strategy_name(const StrategyConfig& config);
bool strategy_is_interpretive(const StrategyConfig& config); // 1988 is a reading of pictures

// --- small-displacement phase machinery --------------------------------------

// Per-branch state of the circle-tangent construction. Plane bookkeeping is
// binary64; the exact function tree is reconstructed separately through the
// emitted clasps and cross-checked in tests.
struct PhaseState {
    double eps_phase = 0;
    int phase_index = 1;
    WiggleSide wiggle_side = WiggleSide::High;
    // Retrace part is [domain.lo, t] for a high wiggle, [t, domain.hi] for low.
    double retrace_boundary = 0;

    bool round_active = false;
    PlanePoint q;      // middle third of the round's retrace part
    PlanePoint center; // bullseye center for this round
    double round_anchor_lo = 0;
    double round_anchor_hi = 0;
    double round_start_retrace_len = 0;
    double run_max_a = 0; // running max a over the round
    double run_min_b = 0; // running min b over the round
    double radius_sq = 0; // squared radius of the node's circle
    std::uint64_t round_index = 0;
    std::uint64_t step_in_round = 0;
};

enum class SdSignal { Continue, NewRound, PhaseDone };

// Stop rule: continue while the stepped point stays in the NW quadrant of q.
// Pure coordinate inequalities, no tolerances.
SdSignal small_disp_stop_check(const PhaseState& state, const PlanePoint& node_point,
                               const PlanePoint& q);

// What happened to a branch at an expansion step.
struct SdEvents {
    bool round_ended = false;
    bool phase_ended = false;
    double round_len_before = 0;
    double round_len_after = 0;
    int ended_phase_index = 0;
    double ended_eps_phase = 0;
};

struct SdChildren {
    ClaspChoice clasp;
    std::array<PhaseState, 2> states;
    std::array<SdEvents, 2> events;
    double step = 0; // h actually used
};

// One tangent step: derives the clasp from the two stepped points and pushes
// the per-branch phase state through the stop rule.
SdChildren small_disp_children(const Interval& domain, const PhaseState& state,
                               std::size_t depth, const SmallDisplacementConfig& config);

PhaseState initial_phase_state(const SmallDisplacementConfig& config);

// --- the other clasp policies -------------------------------------------------

// Plane-trimming clasp: child images lose one `spacing` sliver from the top
// (child 0) and bottom (child 1) of the mother's image. Returns nothing when
// the trim is geometrically unavailable (goal met or folds block it).
std::optional<ClaspChoice> bing1952_clasp(const FoldedPath& path, const Rat& spacing);

// Greedy/patient alternation; parity 0 is greedy (targets half the extent,
// takes what is available), parity 1 is patient (small displacement that
// provably keeps both children's image extents unchanged).
ClaspChoice bing1988_clasp(const FoldedPath& path, int step_parity, double patient_delta);

// Order statistics of two draws, uniform on the dyadic 2^-40 grid inside
// [c, d], derived from the splittable hash of (seed, sigma).
ClaspChoice random_clasp(const Interval& domain, std::uint64_t seed, std::string_view sigma);

// --- uniform driver interface ---------------------------------------------

struct Bing1952State {
    std::size_t goal_index = 0;
};

using StrategyState = std::variant<PhaseState, Bing1952State, std::monostate>;

struct NodeView {
    Interval domain;
    std::size_t depth = 0;
    std::string_view sigma;
    // Materialized on demand; only the trimming strategies look at it.
    std::function<const FoldedPath&()> path;
};

struct StrategyDecision {
    ClaspChoice clasp;
    std::array<StrategyState, 2> child_states;
    std::array<SdEvents, 2> events; // nonempty only for small displacement
};

class Strategy {
public:
    explicit Strategy(StrategyConfig config);

    const StrategyConfig& config() const { return config_; }
    std::string name() const { return strategy_name(config_); }

    StrategyState root_state() const;
    StrategyDecision decide(const NodeView& node, const StrategyState& state) const;

    // Retrace-part length bookkeeping used by extremal mode; image extent
    // stands in for strategies without a retrace notion.
    static double extremal_score(const StrategyState& state, const Interval& domain);

    const Rat& spacing_for(std::size_t goal_index) const; // 1952 schedule
    const Rat& goal_for(std::size_t goal_index) const;
    std::size_t goal_count_hint() const { return goals_.size(); }

private:
    StrategyConfig config_;
    // Lazily extended 1952 cascade: goals 2/n^(k+1), spacings goal/2.
    mutable std::vector<Rat> goals_;
    mutable std::vector<Rat> spacings_;
    void ensure_goal(std::size_t index) const;
};

} // namespace bing
