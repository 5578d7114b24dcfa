#include "bing/experiment.hpp"

#include "bing/splitmix.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

namespace bing {

void validate(const RunConfig& config) {
    validate(config.strategy);
    if (config.max_depth < 1) throw ConfigError("max_depth must be >= 1");
    if (config.mode == ExpansionMode::Kind::SampledPaths && config.path_count < 1)
        throw ConfigError("sampled mode needs path_count >= 1");
    double prev = 2.0;
    for (double t : config.diameter_targets) {
        if (!(t > 0 && t <= 1)) throw ConfigError("targets must lie in (0, 1]");
        if (!(t < prev)) throw ConfigError("targets must be strictly decreasing");
        prev = t;
    }
    if (config.stop_after_phase < 0) throw ConfigError("stop_after_phase must be >= 0");
    if (config.stop_after_phase > 0 &&
        !std::holds_alternative<SmallDisplacementConfig>(config.strategy))
        throw ConfigError("stop_after_phase only applies to small_displacement");
}

void DepthStat::absorb(const Rat& diameter, const Rat& length) {
    if (count == 0 || diameter > max_diameter) max_diameter = diameter;
    if (count == 0 || length > max_length) max_length = length;
    sum_diameter += diameter;
    count += 1;
}

void DepthStat::absorb_displacement(const Rat& disp) {
    if (disp > max_displacement) max_displacement = disp;
}

void DepthStat::merge(const DepthStat& other) {
    if (other.count == 0) return;
    if (count == 0 || other.max_diameter > max_diameter) max_diameter = other.max_diameter;
    if (count == 0 || other.max_length > max_length) max_length = other.max_length;
    if (other.max_displacement > max_displacement) max_displacement = other.max_displacement;
    sum_diameter += other.sum_diameter;
    count += other.count;
}

void parallel_for_indexed(std::size_t n, unsigned threads,
                          const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = unsigned(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

const char* mode_name(ExpansionMode::Kind kind) {
    switch (kind) {
    case ExpansionMode::Kind::Full: return "full";
    case ExpansionMode::Kind::SampledPaths: return "sampled";
    case ExpansionMode::Kind::Extremal: return "extremal";
    }
    return "?";
}

int state_phase(const StrategyState& state) {
    if (const auto* phase = std::get_if<PhaseState>(&state)) return phase->phase_index;
    return 0;
}

double state_eps(const StrategyState& state) {
    if (const auto* phase = std::get_if<PhaseState>(&state)) return phase->eps_phase;
    return 0;
}

// Everything one walked branch contributes; merged by path index afterwards.
struct PathResult {
    std::vector<DepthStat> stats;
    std::vector<NodeRecord> rows;
    std::vector<PhaseEndRecord> phase_ends;
    std::vector<RoundRecord> rounds;
    std::vector<CircleRecord> circles;
    std::size_t visits = 0;
    Rat max_disp;
    Rat max_len;
    bool capped = false;
};

struct WalkLimits {
    std::size_t max_depth = 64;
    std::size_t max_rows = 0;
    bool record_nodes = false;
    bool record_circles = false;
    int stop_after_phase = 0;
    double smallest_target = 0; // 0 when no targets
};

PathResult walk_branch(const Strategy& strategy, const RunConfig& config, std::size_t path_index,
                       bool extremal, const WalkLimits& limits) {
    PathWalker walker(strategy);
    SigmaHash branch_hash(config.seed, path_index + 1);
    PathResult out;
    out.stats.reserve(std::min<std::size_t>(limits.max_depth + 1, 4096));

    std::optional<PlanePoint> last_center;
    for (std::size_t depth = 0;; ++depth) {
        // Account for the node we are standing on.
        const Rat diam = walker.diameter();
        const Rat len = walker.domain().length();
        if (out.stats.size() <= depth) out.stats.resize(depth + 1);
        out.stats[depth].absorb(diam, len);
        out.visits += 1;
        if (len > out.max_len) out.max_len = len;

        NodeRecord row;
        const bool want_row = limits.record_nodes && out.rows.size() < limits.max_rows;
        if (limits.record_nodes && !(out.rows.size() < limits.max_rows)) out.capped = true;
        if (want_row) {
            row.sigma = walker.sigma();
            row.depth = depth;
            row.c = walker.domain().lo;
            row.d = walker.domain().hi;
            row.img_lo = walker.image().lo;
            row.img_hi = walker.image().hi;
            row.phase = state_phase(walker.state());
            row.eps_phase = state_eps(walker.state());
        }

        const bool deep_enough = depth >= limits.max_depth;
        const bool target_met =
            limits.smallest_target > 0 && to_double(diam) < limits.smallest_target;
        if (deep_enough || target_met) {
            if (want_row) out.rows.push_back(std::move(row));
            break;
        }

        PathWalker::StepInfo info;
        if (extremal) {
            info = walker.step_extremal();
        } else {
            info = walker.step(int(branch_hash.value() & 1));
        }
        branch_hash.push(info.bit);

        if (want_row) {
            row.clasp = info.clasp;
            row.disp_lo = info.disp_lo;
            row.disp_hi = info.disp_hi;
            out.rows.push_back(std::move(row));
        }
        out.stats[depth].absorb_displacement(rat_max(info.disp_lo, info.disp_hi));
        if (info.disp_lo > out.max_disp) out.max_disp = info.disp_lo;
        if (info.disp_hi > out.max_disp) out.max_disp = info.disp_hi;

        if (limits.record_circles) {
            if (const auto* phase = std::get_if<PhaseState>(&walker.state());
                phase && phase->round_active && out.circles.size() < 64) {
                if (!last_center || !(phase->center == *last_center))
                    out.circles.push_back({phase->center, {}});
                if (out.circles.back().radii.size() < 512)
                    out.circles.back().radii.push_back(std::sqrt(phase->radius_sq));
                last_center = phase->center;
            }
        }

        if (info.events.round_ended) {
            out.rounds.push_back({path_index, walker.depth(), info.events.round_len_before,
                                  info.events.round_len_after});
        }
        if (info.events.phase_ended) {
            out.phase_ends.push_back({path_index, walker.depth(), info.events.ended_phase_index,
                                      info.events.ended_eps_phase, walker.diameter(),
                                      walker.domain().length(), walker.sigma()});
            if (limits.stop_after_phase > 0 &&
                info.events.ended_phase_index >= limits.stop_after_phase) {
                const std::size_t leaf_depth = walker.depth();
                if (out.stats.size() <= leaf_depth) out.stats.resize(leaf_depth + 1);
                out.stats[leaf_depth].absorb(walker.diameter(), walker.domain().length());
                out.visits += 1;
                break;
            }
        }
    }
    return out;
}

void merge_into(ExperimentReport& report, PathResult&& result) {
    if (report.profile.size() < result.stats.size()) report.profile.resize(result.stats.size());
    for (std::size_t d = 0; d < result.stats.size(); ++d)
        report.profile[d].merge(result.stats[d]);
    for (auto& row : result.rows) report.nodes.push_back(std::move(row));
    for (auto& r : result.phase_ends) report.phase_ends.push_back(std::move(r));
    for (auto& r : result.rounds) report.rounds.push_back(std::move(r));
    if (report.circles.empty())
        for (auto& c : result.circles) report.circles.push_back(std::move(c));
    report.nodes_materialized += result.visits;
    report.capped = report.capped || result.capped;
    if (result.max_disp > report.max_displacement_overall)
        report.max_displacement_overall = result.max_disp;
    if (result.max_len > report.max_length_overall)
        report.max_length_overall = result.max_len;
}

void finalize_report(ExperimentReport& report, const RunConfig& config) {
    std::sort(report.nodes.begin(), report.nodes.end(),
              [](const NodeRecord& a, const NodeRecord& b) {
                  if (a.depth != b.depth) return a.depth < b.depth;
                  return a.sigma < b.sigma;
              });
    report.nodes.erase(std::unique(report.nodes.begin(), report.nodes.end(),
                                   [](const NodeRecord& a, const NodeRecord& b) {
                                       return a.sigma == b.sigma;
                                   }),
                       report.nodes.end());

    std::sort(report.rounds.begin(), report.rounds.end(), [](const auto& a, const auto& b) {
        if (a.path_index != b.path_index) return a.path_index < b.path_index;
        return a.depth < b.depth;
    });
    std::sort(report.phase_ends.begin(), report.phase_ends.end(),
              [](const auto& a, const auto& b) {
                  if (a.path_index != b.path_index) return a.path_index < b.path_index;
                  return a.depth < b.depth;
              });

    for (double target : config.diameter_targets) {
        std::optional<std::size_t> first;
        for (std::size_t d = 0; d < report.profile.size(); ++d) {
            if (report.profile[d].count == 0) continue;
            if (to_double(report.profile[d].max_diameter) < target) {
                first = d;
                break;
            }
        }
        report.stages_to_target.emplace_back(target, first);
    }
}

ExperimentReport run_full(const Strategy& strategy, const RunConfig& config) {
    ExperimentReport report;
    BingTree tree(ExpansionMode{ExpansionMode::Kind::Full, config.max_depth, 0, config.seed});

    struct Frontier {
        NodeId id;
        StrategyState state;
    };
    std::vector<Frontier> frontier{{NodeId(), strategy.root_state()}};
    std::vector<PhaseEndRecord> phase_ends;

    std::unordered_map<std::string, std::pair<int, double>> phase_of;
    phase_of.emplace("", std::make_pair(state_phase(frontier[0].state),
                                        state_eps(frontier[0].state)));

    for (std::size_t depth = 0; depth < config.max_depth && !frontier.empty(); ++depth) {
        std::vector<Frontier> next;
        next.reserve(frontier.size() * 2);
        for (auto& item : frontier) {
            if (tree.size() + 2 > config.max_nodes) {
                report.capped = true;
                break;
            }
            const TreeNode& node = tree.node(item.id);
            NodeView view;
            view.domain = node.path.domain();
            view.depth = depth;
            view.sigma = item.id.sigma;
            view.path = [&node]() -> const FoldedPath& { return node.path; };
            StrategyDecision decision = strategy.decide(view, item.state);
            auto [id0, id1] = tree.expand(item.id, decision.clasp);

            const NodeId ids[2] = {id0, id1};
            for (int bit = 0; bit < 2; ++bit) {
                const auto& state = decision.child_states[std::size_t(bit)];
                phase_of.emplace(ids[bit].sigma,
                                 std::make_pair(state_phase(state), state_eps(state)));
                const auto& events = decision.events[std::size_t(bit)];
                if (events.phase_ended) {
                    const TreeNode& leaf = tree.node(ids[bit]);
                    phase_ends.push_back({0, depth + 1, events.ended_phase_index,
                                          events.ended_eps_phase, leaf.path.diameter(),
                                          leaf.path.domain().length(), ids[bit].sigma});
                }
                next.push_back({ids[bit], state});
            }
        }
        if (report.capped) break;
        frontier = std::move(next);
    }

    // Aggregate the materialized tree.
    for (const NodeId& id : tree.ids_sorted()) {
        const TreeNode& node = tree.node(id);
        const std::size_t depth = id.depth();
        if (report.profile.size() <= depth) report.profile.resize(depth + 1);
        report.profile[depth].absorb(node.path.diameter(), node.path.domain().length());
        if (node.disp_lo) {
            const Rat disp = rat_max(*node.disp_lo, *node.disp_hi);
            report.profile[depth].absorb_displacement(disp);
            if (disp > report.max_displacement_overall) report.max_displacement_overall = disp;
        }
        const Rat len = node.path.domain().length();
        if (len > report.max_length_overall) report.max_length_overall = len;

        if (config.record_nodes && report.nodes.size() < config.max_nodes) {
            NodeRecord row;
            row.sigma = id.sigma;
            row.depth = depth;
            row.c = node.path.domain().lo;
            row.d = node.path.domain().hi;
            row.img_lo = node.path.image().lo;
            row.img_hi = node.path.image().hi;
            row.clasp = node.clasp;
            row.disp_lo = node.disp_lo;
            row.disp_hi = node.disp_hi;
            auto it = phase_of.find(id.sigma);
            if (it != phase_of.end()) {
                row.phase = it->second.first;
                row.eps_phase = it->second.second;
            }
            report.nodes.push_back(std::move(row));
        } else if (config.record_nodes) {
            report.capped = true;
        }
    }
    report.nodes_materialized = tree.size();
    report.phase_ends = std::move(phase_ends);
    return report;
}

} // namespace

ExperimentReport run_shrink(const RunConfig& config) {
    validate(config);
    Strategy strategy(config.strategy);

    ExperimentReport report;
    report.strategy = strategy.name();
    report.mode = mode_name(config.mode);
    report.seed = config.seed;
    report.interpretive = strategy_is_interpretive(config.strategy);

    WalkLimits limits;
    limits.max_depth = config.max_depth;
    limits.max_rows = config.max_nodes;
    limits.record_nodes = config.record_nodes;
    limits.stop_after_phase = config.stop_after_phase;
    limits.smallest_target =
        config.diameter_targets.empty() ? 0.0 : config.diameter_targets.back();

    switch (config.mode) {
    case ExpansionMode::Kind::Full: {
        ExperimentReport full = run_full(strategy, config);
        full.strategy = report.strategy;
        full.mode = report.mode;
        full.seed = report.seed;
        full.interpretive = report.interpretive;
        finalize_report(full, config);
        full.paths_walked = 0;
        return full;
    }
    case ExpansionMode::Kind::Extremal: {
        limits.record_circles = true;
        merge_into(report, walk_branch(strategy, config, 0, true, limits));
        report.paths_walked = 1;
        break;
    }
    case ExpansionMode::Kind::SampledPaths: {
        const std::size_t n = config.path_count;
        std::vector<PathResult> results(n);
        parallel_for_indexed(n, config.threads, [&](std::size_t i) {
            WalkLimits local = limits;
            local.record_circles = (i == 0);
            // Row budget is global; give each path an equal slice.
            local.max_rows = limits.record_nodes ? std::max<std::size_t>(1, limits.max_rows / n)
                                                 : 0;
            results[i] = walk_branch(strategy, config, i, false, local);
        });
        for (auto& r : results) merge_into(report, std::move(r));
        report.paths_walked = n;
        break;
    }
    }
    finalize_report(report, config);
    return report;
}

ScalingReport scaling_experiment(const std::vector<double>& eps_values, double target,
                                 double eps_L, unsigned threads) {
    if (eps_values.size() < 2) throw ConfigError("scaling needs at least two eps values");
    for (std::size_t i = 1; i < eps_values.size(); ++i)
        if (!(eps_values[i] < eps_values[i - 1]))
            throw ConfigError("eps values must be strictly decreasing");
    if (!(target > 0 && target < 1)) throw ConfigError("target must lie in (0, 1)");

    ScalingReport report;
    report.target = target;
    report.eps_L = eps_L;
    report.points.resize(eps_values.size());

    parallel_for_indexed(eps_values.size(), threads, [&](std::size_t i) {
        const double eps = eps_values[i];
        RunConfig cfg;
        cfg.strategy = SmallDisplacementConfig{eps_L, EpsSchedule::constant(eps), eps, 0.99};
        cfg.mode = ExpansionMode::Kind::Extremal;
        cfg.max_depth = 50'000'000;
        cfg.diameter_targets = {target};
        cfg.record_nodes = false;
        ExperimentReport run = run_shrink(cfg);
        if (!run.stages_to_target[0].second)
            throw GeometryError("scaling run did not reach the target diameter");
        report.points[i] = {eps, *run.stages_to_target[0].second};
    });

    // Least squares on ln S = intercept + exponent * ln eps.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(report.points.size());
    for (const auto& p : report.points) {
        const double x = std::log(p.eps), y = std::log(double(p.stages));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    report.fit_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report.fit_log_intercept = (sy - report.fit_exponent * sx) / n;
    double rss = 0;
    for (const auto& p : report.points) {
        const double e = std::log(double(p.stages)) -
                         (report.fit_log_intercept + report.fit_exponent * std::log(p.eps));
        rss += e * e;
    }
    report.fit_residual_rms = std::sqrt(rss / n);

    // Analytic factors: round counts scale with log(target) under the 2/3
    // contraction, and the feasible bullseye radius scales inversely with the
    // length budget.
    report.rounds_factor = std::log(report.regime_target) / std::log(target);
    report.radius_factor = eps_L / 1e-3;
    const double fitted =
        std::exp(report.fit_log_intercept + report.fit_exponent * std::log(report.regime_eps));
    report.extrapolated_stages = fitted * report.rounds_factor * report.radius_factor;
    return report;
}

MonteCarloReport monte_carlo_random(std::size_t trials, std::size_t depth, std::uint64_t seed,
                                    unsigned threads) {
    if (trials < 1) throw ConfigError("monte_carlo_random needs trials >= 1");
    MonteCarloReport report;
    report.trials = trials;
    report.depth = depth;
    report.seed = seed;

    Strategy strategy{StrategyConfig{RandomClaspConfig{seed}}};

    // diameters[d][t]: one column per trial, exact values converted once.
    std::vector<std::vector<double>> diameters(depth + 1, std::vector<double>(trials));
    std::vector<std::size_t> turns(trials, 0);

    parallel_for_indexed(trials, threads, [&](std::size_t t) {
        PathWalker walker(strategy);
        SigmaHash branch_hash(seed, t + 1);
        std::size_t max_turns = 0;
        for (std::size_t d = 0;; ++d) {
            diameters[d][t] = to_double(walker.diameter());
            max_turns = std::max(max_turns, walker.turn_count());
            if (d == depth) break;
            auto info = walker.step(int(branch_hash.value() & 1));
            branch_hash.push(info.bit);
        }
        turns[t] = max_turns;
    });

    report.rows.resize(depth + 1);
    for (std::size_t d = 0; d <= depth; ++d) {
        auto column = diameters[d];
        std::sort(column.begin(), column.end());
        auto quantile = [&](double p) {
            const std::size_t idx =
                std::size_t(std::llround(p * double(column.size() - 1)));
            return column[idx];
        };
        double sum = 0;
        for (double v : column) sum += v;
        report.rows[d] = {quantile(0.05), quantile(0.25), quantile(0.50),
                          quantile(0.75), quantile(0.95), sum / double(column.size())};
    }
    report.max_turns_seen = *std::max_element(turns.begin(), turns.end());
    return report;
}

ComparisonTable compare_strategies(const std::vector<RunConfig>& configs) {
    if (configs.size() < 2) throw ConfigError("compare needs at least two configs");
    ComparisonTable table;
    for (const auto& config : configs) {
        ExperimentReport report = run_shrink(config);
        ComparisonRow row;
        row.strategy = report.strategy;
        row.interpretive = report.interpretive;
        row.stages_to_target = report.stages_to_target;
        row.max_displacement = report.max_displacement_overall;
        row.max_length = report.max_length_overall;
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace bing
