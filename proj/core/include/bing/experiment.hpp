#pragma once

#include "bing/strategy.hpp"
#include "bing/tree.hpp"
#include "bing/walker.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bing {

struct RunConfig {
    StrategyConfig strategy = RandomClaspConfig{};
    ExpansionMode::Kind mode = ExpansionMode::Kind::Extremal;
    std::size_t max_depth = 64;
    std::size_t path_count = 1; // sampled mode
    std::vector<double> diameter_targets;
    std::uint64_t seed = 0;
    std::size_t max_nodes = std::size_t(1) << 22;
    int stop_after_phase = 0; // small displacement: stop a branch when this phase ends
    bool record_nodes = true;
    unsigned threads = 0; // 0 = hardware concurrency
};

void validate(const RunConfig& config);

// One CSV row.
struct NodeRecord {
    std::string sigma;
    std::size_t depth = 0;
    Rat c;
    Rat d;
    std::optional<ClaspChoice> clasp;
    Rat img_lo;
    Rat img_hi;
    std::optional<Rat> disp_lo;
    std::optional<Rat> disp_hi;
    int phase = 0;        // small displacement only
    double eps_phase = 0; // small displacement only
};

struct PhaseEndRecord {
    std::size_t path_index = 0;
    std::size_t depth = 0;
    int phase_index = 0;
    double eps_phase = 0;
    Rat diameter;
    Rat domain_length;
    std::string sigma;
};

struct RoundRecord {
    std::size_t path_index = 0;
    std::size_t depth = 0;
    double len_before = 0;
    double len_after = 0;
};

struct CircleRecord {
    PlanePoint center;
    std::vector<double> radii;
};

// Mergeable per-depth aggregate (exact arithmetic, so merge order cannot
// change the result).
struct DepthStat {
    std::size_t count = 0;
    Rat max_diameter;
    Rat sum_diameter;
    Rat max_length;
    Rat max_displacement;

    void absorb(const Rat& diameter, const Rat& length);
    void absorb_displacement(const Rat& disp);
    void merge(const DepthStat& other);
    Rat mean_diameter() const { return count ? Rat(sum_diameter / int(count)) : Rat(0); }
};

struct ExperimentReport {
    std::string strategy;
    std::string mode;
    std::uint64_t seed = 0;
    std::vector<DepthStat> profile; // indexed by depth
    // (target, first depth whose max diameter dropped below it), targets in
    // the configured (strictly decreasing) order.
    std::vector<std::pair<double, std::optional<std::size_t>>> stages_to_target;
    std::vector<NodeRecord> nodes; // sorted by (depth, sigma); deduped
    std::size_t nodes_materialized = 0;
    std::size_t paths_walked = 0;
    bool capped = false;
    bool interpretive = false; // 1988 outputs carry this marker
    std::vector<PhaseEndRecord> phase_ends;
    std::vector<RoundRecord> rounds;
    std::vector<CircleRecord> circles; // capped sample for plots
    Rat max_displacement_overall;
    Rat max_length_overall;
};

ExperimentReport run_shrink(const RunConfig& config);

struct ScalingPoint {
    double eps = 0;
    std::size_t stages = 0;
};

struct ScalingReport {
    std::vector<ScalingPoint> points;
    double target = 0;
    double eps_L = 0;
    double fit_log_intercept = 0; // ln S = intercept + exponent * ln eps
    double fit_exponent = 0;
    double fit_residual_rms = 0;
    // Extrapolation to the 0.1% budget / 0.001 diameter regime: the fitted
    // power law in eps times analytic factors for the deeper target (round
    // count) and the tighter length budget (bullseye radius).
    double regime_eps = 1e-3;
    double regime_target = 1e-3;
    double rounds_factor = 0;
    double radius_factor = 0;
    double extrapolated_stages = 0;
};

ScalingReport scaling_experiment(const std::vector<double>& eps_values, double target,
                                 double eps_L, unsigned threads = 0);

struct MonteCarloReport {
    std::size_t trials = 0;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
    struct Row {
        double q05, q25, q50, q75, q95, mean;
    };
    std::vector<Row> rows; // indexed by depth, 0..depth
    std::size_t max_turns_seen = 0;
};

MonteCarloReport monte_carlo_random(std::size_t trials, std::size_t depth, std::uint64_t seed,
                                    unsigned threads = 0);

struct ComparisonRow {
    std::string strategy;
    bool interpretive = false;
    std::vector<std::pair<double, std::optional<std::size_t>>> stages_to_target;
    Rat max_displacement;
    Rat max_length;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
};

ComparisonTable compare_strategies(const std::vector<RunConfig>& configs);

// Deterministic helper: runs fn(i) for i in [0, n) on `threads` workers and
// collects results by index, so the schedule cannot reorder anything.
void parallel_for_indexed(std::size_t n, unsigned threads,
                          const std::function<void(std::size_t)>& fn);

} // namespace bing
