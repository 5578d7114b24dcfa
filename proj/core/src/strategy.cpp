#include "bing/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bing {

using boost::multiprecision::cpp_int;

// --- configuration -----------------------------------------------------------

void validate(const StrategyConfig& config) {
    std::visit(
        [](const auto& cfg) {
            using T = std::decay_t<decltype(cfg)>;
            if constexpr (std::is_same_v<T, SmallDisplacementConfig>) {
                if (!(cfg.eps_L > 0)) throw ConfigError("eps_L must be positive");
                if (!(cfg.initial_eps > 0)) throw ConfigError("initial_eps must be positive");
                if (!(cfg.step_scale > 0 && cfg.step_scale < 1))
                    throw ConfigError("step_scale must lie in (0, 1)");
                if (!cfg.schedule.divergent_square_sum())
                    throw ConfigError("schedule must have a divergent square sum");
            } else if constexpr (std::is_same_v<T, Bing1952Config>) {
                if (cfg.plane_count < 3) throw ConfigError("plane_count must be >= 3");
                for (const auto& g : cfg.goals)
                    if (!(g > 0 && g <= 1)) throw ConfigError("1952 goals must lie in (0, 1]");
                for (std::size_t i = 1; i < cfg.goals.size(); ++i)
                    if (!(cfg.goals[i] < cfg.goals[i - 1]))
                        throw ConfigError("1952 goals must be strictly decreasing");
            } else if constexpr (std::is_same_v<T, Bing1988Config>) {
                if (!(cfg.patient_delta > 0)) throw ConfigError("patient_delta must be positive");
            } else {
                (void)cfg;
            }
        },
        config);
}

std::string strategy_name(const StrategyConfig& config) {
    switch (config.index()) {
    case 0: return "small_displacement";
    case 1: return "bing1952";
    case 2: return "bing1988";
    default: return "random";
    }
}

bool strategy_is_interpretive(const StrategyConfig& config) {
    return std::holds_alternative<Bing1988Config>(config);
}

// --- small displacement ------------------------------------------------------

PhaseState initial_phase_state(const SmallDisplacementConfig& config) {
    PhaseState state;
    state.eps_phase = config.initial_eps;
    state.phase_index = 1;
    state.wiggle_side = WiggleSide::High;
    state.retrace_boundary = 1.0; // whole domain [0, 1] re-traces the root
    state.round_active = false;
    return state;
}

SdSignal small_disp_stop_check(const PhaseState& state, const PlanePoint& node_point,
                               const PlanePoint& q) {
    if (nw_contains(node_point, q)) return SdSignal::Continue;
    // Exit direction decides the new boundary; the phase test happens on the
    // contracted retrace length.
    const bool east = node_point.x > q.x;
    double new_len;
    if (state.wiggle_side == WiggleSide::High) {
        new_len = east ? std::min(state.run_min_b, state.retrace_boundary) - node_point.x
                       : node_point.y - std::max(state.run_max_a, state.round_anchor_lo);
    } else {
        new_len = east ? std::min(state.run_min_b, state.round_anchor_hi) - node_point.x
                       : node_point.y - std::max(state.run_max_a, state.retrace_boundary);
    }
    return std::max(new_len, 0.0) < state.eps_phase ? SdSignal::PhaseDone : SdSignal::NewRound;
}

namespace {

// Round bookkeeping after a stop; see the four-case table in the stop rule.
void finish_round(PhaseState& st, const PlanePoint& pt, SdEvents& events) {
    const bool east = pt.x > st.q.x;
    WiggleSide new_side;
    double t_new;
    if (st.wiggle_side == WiggleSide::High) {
        if (east) {
            new_side = WiggleSide::High;
            t_new = std::min(st.run_min_b, st.retrace_boundary);
        } else {
            new_side = WiggleSide::Low;
            t_new = std::max(st.run_max_a, st.round_anchor_lo);
        }
    } else {
        if (east) {
            new_side = WiggleSide::High;
            t_new = std::min(st.run_min_b, st.round_anchor_hi);
        } else {
            new_side = WiggleSide::Low;
            t_new = std::max(st.run_max_a, st.retrace_boundary);
        }
    }
    const double new_len =
        std::max(0.0, new_side == WiggleSide::High ? t_new - pt.x : pt.y - t_new);

    events.round_ended = true;
    events.round_len_before = st.round_start_retrace_len;
    events.round_len_after = new_len;

    st.round_active = false;
    st.round_index += 1;
    st.step_in_round = 0;
    if (new_len < st.eps_phase) {
        events.phase_ended = true;
        events.ended_phase_index = st.phase_index;
        events.ended_eps_phase = st.eps_phase;
        st.eps_phase /= 2;
        st.phase_index += 1;
        st.wiggle_side = WiggleSide::High;
        st.retrace_boundary = pt.y; // whole domain becomes the re-trace part
    } else {
        st.wiggle_side = new_side;
        st.retrace_boundary = t_new;
    }
}

} // namespace

SdChildren small_disp_children(const Interval& domain, const PhaseState& state,
                               std::size_t depth, const SmallDisplacementConfig& config) {
    PlanePoint p = to_plane(domain);
    PhaseState st = state;

    const double eps_i = config.schedule.eps(depth + 1); // root clasp is stage 1
    const double h = config.step_scale * std::min(st.eps_phase, eps_i);
    if (!(2 * h < p.y - p.x))
        throw GeometryError("small_disp: step too large for the domain length");

    if (!st.round_active) {
        // Anchor a fresh round here: middle third of the current re-trace
        // part, a distant center, and reset running clasp extremes.
        st.round_anchor_lo = p.x;
        st.round_anchor_hi = p.y;
        double t = std::clamp(st.retrace_boundary, p.x, p.y);
        st.retrace_boundary = t;
        if (st.wiggle_side == WiggleSide::High)
            st.q = middle_third_point(p.x, t);
        else
            st.q = middle_third_point(t, p.y);
        st.center = select_center(p, st.q, 1.0 + config.eps_L, h);
        st.round_start_retrace_len =
            st.wiggle_side == WiggleSide::High ? t - p.x : p.y - t;
        st.run_max_a = -std::numeric_limits<double>::infinity();
        st.run_min_b = std::numeric_limits<double>::infinity();
        const double vx = p.x - st.center.x, vy = p.y - st.center.y;
        st.radius_sq = vx * vx + vy * vy;
        st.round_active = true;
        st.step_in_round = 0;
    }

    auto [pt0, pt1] = tangent_step(st.center, p, h);

    SdChildren out;
    out.step = h;
    out.clasp = ClaspChoice{rat_from_double(pt1.x), rat_from_double(pt0.y)};
    if (!clasp_valid_for(out.clasp, domain))
        throw ClaspError("small_disp: tangent step produced an invalid clasp");

    st.run_max_a = std::max(st.run_max_a, pt1.x);
    st.run_min_b = std::min(st.run_min_b, pt0.y);
    st.radius_sq += h * h;
    st.step_in_round += 1;

    const PlanePoint pts[2] = {pt0, pt1};
    for (int bit = 0; bit < 2; ++bit) {
        PhaseState child = st;
        SdEvents events;
        if (!nw_contains(pts[bit], child.q)) finish_round(child, pts[bit], events);
        out.states[std::size_t(bit)] = child;
        out.events[std::size_t(bit)] = events;
    }
    return out;
}

// --- 1952 trimming ------------------------------------------------------------

namespace {

// Raw extremal preimages: b is where the running max first exceeds H - s,
// a is where the last dip below L + s ends. Nullopt when either end is
// undefined (the function starts above H - s or ends below L + s).
std::optional<std::pair<Rat, Rat>> trim_preimages(const FoldedPath& path, const Rat& spacing) {
    const auto& verts = path.vertices();
    if (verts.size() < 2) return std::nullopt;
    const Interval img = path.image();
    const Rat top = img.hi - spacing;
    const Rat bottom = img.lo + spacing;

    std::optional<Rat> b;
    if (verts.front().y > top) return std::nullopt;
    for (std::size_t i = 0; i + 1 < verts.size() && !b; ++i) {
        const auto& u = verts[i];
        const auto& v = verts[i + 1];
        if (rat_max(u.y, v.y) <= top) continue;
        // Rising crossing out of [*, top]; u.y <= top by the scan order.
        b = u.x + (top - u.y);
    }
    if (!b) b = verts.back().x; // never exceeds top: trim nothing on this side

    std::optional<Rat> a;
    if (verts.back().y < bottom) return std::nullopt;
    for (std::size_t i = verts.size() - 1; i-- > 0 && !a;) {
        const auto& u = verts[i];
        const auto& v = verts[i + 1];
        if (rat_min(u.y, v.y) >= bottom) continue;
        // u.y < bottom <= v.y: the dip ends where f rises back to bottom.
        a = u.x + (bottom - u.y);
    }
    if (!a) a = verts.front().x;

    return std::make_pair(*a, *b);
}

} // namespace

std::optional<ClaspChoice> bing1952_clasp(const FoldedPath& path, const Rat& spacing) {
    if (!(spacing > 0)) throw ConfigError("bing1952_clasp: spacing must be positive");
    if (!(path.diameter() > 2 * spacing)) return std::nullopt;
    auto ab = trim_preimages(path, spacing);
    if (!ab || !(ab->first < ab->second)) return std::nullopt;
    return ClaspChoice{ab->first, ab->second};
}

// --- 1988 greedy / patient -----------------------------------------------------

ClaspChoice bing1988_clasp(const FoldedPath& path, int step_parity, double patient_delta) {
    const Interval dom = path.domain();
    if (step_parity % 2 == 0) {
        // Greedy: trim toward half the extent. The clasp pair abstracts two
        // nearby turning points, so a == b is meaningful here and gives the
        // exact halving on unfolded functions.
        Rat target = path.diameter() / 2;
        for (int attempt = 0; attempt < 40 && target > 0; ++attempt, target /= 2) {
            auto ab = trim_preimages(path, target);
            if (ab && ab->first <= ab->second) return ClaspChoice{ab->first, ab->second};
        }
        return ClaspChoice{dom.lo, dom.hi}; // nothing available; do not move
    }

    // Patient: symmetric displacement capped so both children still attain
    // both image extremes, which keeps their extents exactly unchanged.
    const auto& verts = path.vertices();
    const Interval img = path.image();
    Rat first_hi = dom.hi, last_hi = dom.lo, first_lo = dom.hi, last_lo = dom.lo;
    for (const auto& v : verts) {
        if (v.y == img.hi) {
            first_hi = rat_min(first_hi, v.x);
            last_hi = rat_max(last_hi, v.x);
        }
        if (v.y == img.lo) {
            first_lo = rat_min(first_lo, v.x);
            last_lo = rat_max(last_lo, v.x);
        }
    }
    const Rat b_req = rat_max(first_hi, first_lo); // [c, b] must reach both
    const Rat a_req = rat_min(last_hi, last_lo);   // [a, d] must reach both
    Rat delta = rat_min(rat_from_double(patient_delta), dom.length() / 4);
    const Rat a = dom.lo + rat_min(delta, rat_max(a_req - dom.lo, Rat(0)));
    const Rat b = dom.hi - rat_min(delta, rat_max(dom.hi - b_req, Rat(0)));
    if (a > b) return ClaspChoice{dom.lo, dom.hi};
    return ClaspChoice{a, b};
}

// --- random clasps -------------------------------------------------------------

namespace {

cpp_int rat_floor_int(const Rat& r) {
    cpp_int num = numerator(r), den = denominator(r);
    cpp_int quot = num / den;
    if (num < 0 && quot * den != num) quot -= 1;
    return quot;
}

cpp_int rat_ceil_int(const Rat& r) {
    cpp_int num = numerator(r), den = denominator(r);
    cpp_int quot = num / den;
    if (num > 0 && quot * den != num) quot += 1;
    return quot;
}

} // namespace

ClaspChoice random_clasp(const Interval& domain, std::uint64_t seed, std::string_view sigma) {
    SigmaRng rng(seed, sigma);
    static const cpp_int grid = cpp_int(1) << 40;
    const cpp_int lo = rat_ceil_int(domain.lo * Rat(grid));
    const cpp_int hi = rat_floor_int(domain.hi * Rat(grid));

    if (lo > hi || hi - lo >= cpp_int(1) << 62) {
        // Domain thinner than the grid (or absurdly long): draw relative
        // offsets instead. Exactness is kept, closure under folds is not.
        Rat u1 = Rat(rng.next(), cpp_int(1) << 64) * domain.length();
        Rat u2 = Rat(rng.next(), cpp_int(1) << 64) * domain.length();
        if (u1 > u2) std::swap(u1, u2);
        return ClaspChoice{domain.lo + u1, domain.lo + u2};
    }

    const std::uint64_t span = (hi - lo).convert_to<std::uint64_t>() + 1;
    cpp_int k1 = lo + rng.next() % span;
    cpp_int k2 = lo + rng.next() % span;
    if (k1 > k2) std::swap(k1, k2);
    return ClaspChoice{Rat(k1, grid), Rat(k2, grid)};
}

// --- uniform driver ------------------------------------------------------------

Strategy::Strategy(StrategyConfig config) : config_(std::move(config)) {
    validate(config_);
    if (const auto* cfg = std::get_if<Bing1952Config>(&config_)) {
        goals_ = cfg->goals;
        for (const auto& g : goals_) spacings_.push_back(g / 2);
    }
}

void Strategy::ensure_goal(std::size_t index) const {
    const auto* cfg = std::get_if<Bing1952Config>(&config_);
    if (!cfg) throw ConfigError("goal schedule only exists for bing1952");
    if (!cfg->goals.empty()) {
        if (index >= goals_.size())
            throw ConfigError("bing1952: explicit goal schedule exhausted");
        return;
    }
    while (goals_.size() <= index) {
        // Default cascade 2/n, 2/n^2, ...
        Rat goal = goals_.empty() ? Rat(2, cfg->plane_count)
                                  : goals_.back() / cfg->plane_count;
        goals_.push_back(goal);
        spacings_.push_back(goal / 2);
    }
}

const Rat& Strategy::spacing_for(std::size_t goal_index) const {
    ensure_goal(goal_index);
    return spacings_[goal_index];
}

const Rat& Strategy::goal_for(std::size_t goal_index) const {
    ensure_goal(goal_index);
    return goals_[goal_index];
}

StrategyState Strategy::root_state() const {
    if (const auto* cfg = std::get_if<SmallDisplacementConfig>(&config_))
        return initial_phase_state(*cfg);
    if (std::holds_alternative<Bing1952Config>(config_)) return Bing1952State{};
    return std::monostate{};
}

StrategyDecision Strategy::decide(const NodeView& node, const StrategyState& state) const {
    StrategyDecision out;
    if (const auto* cfg = std::get_if<SmallDisplacementConfig>(&config_)) {
        const auto& phase = std::get<PhaseState>(state);
        SdChildren children = small_disp_children(node.domain, phase, node.depth, *cfg);
        out.clasp = children.clasp;
        out.child_states = {children.states[0], children.states[1]};
        out.events = children.events;
        return out;
    }
    if (std::holds_alternative<Bing1952Config>(config_)) {
        auto b52 = std::get<Bing1952State>(state);
        const FoldedPath& path = node.path();
        const Rat& spacing = spacing_for(b52.goal_index);
        if (auto clasp = bing1952_clasp(path, spacing)) {
            out.clasp = *clasp;
            out.child_states = {b52, b52};
            return out;
        }
        // Goal met (or the folds block the trim): pause with an identity
        // rotation and re-mark with the next plane spacing.
        bool advanced = true;
        try {
            ensure_goal(b52.goal_index + 1);
        } catch (const ConfigError&) {
            advanced = false; // explicit schedule exhausted: halt trimming
        }
        if (advanced) b52.goal_index += 1;
        const Interval dom = node.domain;
        out.clasp = ClaspChoice{dom.lo, dom.hi};
        out.child_states = {b52, b52};
        return out;
    }
    if (const auto* cfg = std::get_if<Bing1988Config>(&config_)) {
        out.clasp = bing1988_clasp(node.path(), int(node.depth % 2), cfg->patient_delta);
        out.child_states = {std::monostate{}, std::monostate{}};
        return out;
    }
    const auto& cfg = std::get<RandomClaspConfig>(config_);
    out.clasp = random_clasp(node.domain, cfg.seed, node.sigma);
    out.child_states = {std::monostate{}, std::monostate{}};
    return out;
}

double Strategy::extremal_score(const StrategyState& state, const Interval& domain) {
    if (const auto* phase = std::get_if<PhaseState>(&state)) {
        const double t = phase->retrace_boundary;
        return phase->wiggle_side == WiggleSide::High ? t - to_double(domain.lo)
                                                      : to_double(domain.hi) - t;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace bing
