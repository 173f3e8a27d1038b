#include "quench/control.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace quench {

namespace {

struct Grid {
    int steps_per_segment;
    double h;  // step size
    int n_segments;
    double segment_duration;
    long total_steps() const {
        return static_cast<long>(n_segments) * steps_per_segment;
    }
};

Grid make_grid(const OptimizerConfig& cfg) {
    if (cfg.n_segments < 1) {
        throw std::invalid_argument("control: n_segments must be >= 1");
    }
    if (!(cfg.t_f > 0.0) || !(cfg.dt_target > 0.0)) {
        throw std::invalid_argument("control: t_f and dt_target must be positive");
    }
    Grid g;
    g.n_segments = cfg.n_segments;
    g.segment_duration = cfg.t_f / cfg.n_segments;
    g.steps_per_segment = std::max(
        1, static_cast<int>(std::ceil(g.segment_duration / cfg.dt_target - 1e-12)));
    g.h = g.segment_duration / g.steps_per_segment;
    return g;
}

void check_segments(const std::vector<double>& segments,
                    const OptimizerConfig& cfg) {
    if (static_cast<int>(segments.size()) != cfg.n_segments) {
        throw std::invalid_argument("control: segment count != cfg.n_segments");
    }
    for (double v : segments) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("control: segment values must be finite");
        }
    }
}

inline void rk4_step(const RealMatrix& a, RealState& x, double h) {
    const RealState k1 = a * x;
    const RealState k2 = a * (x + 0.5 * h * k1);
    const RealState k3 = a * (x + 0.5 * h * k2);
    const RealState k4 = a * (x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Forward sweep; optionally stores the state before every step.
// Returns the objective: terminal Re<a+a> or the mean of Re<a+a> over the
// post-step grid points.
double forward(const std::vector<double>& segments, const LinearSplit& sys,
               const Grid& grid, const RealState& x0, Objective objective,
               std::vector<RealState>* store, RealState* x_final) {
    RealState x = x0;
    if (store) {
        store->clear();
        store->reserve(static_cast<std::size_t>(grid.total_steps()));
    }
    double mean_acc = 0.0;
    for (int s = 0; s < grid.n_segments; ++s) {
        const RealMatrix a = sys.at(segments[static_cast<std::size_t>(s)]);
        for (int n = 0; n < grid.steps_per_segment; ++n) {
            if (store) store->push_back(x);
            rk4_step(a, x, grid.h);
            mean_acc += x[kPhononIndex];
        }
    }
    if (x_final) *x_final = x;
    if (objective == Objective::TerminalNbar) return x[kPhononIndex];
    return mean_acc / static_cast<double>(grid.total_steps());
}

// Backward sweep: exact transpose of the forward RK4 recursion plus the
// per-step objective source; accumulates the per-segment gradient.
std::vector<double> backward(const std::vector<double>& segments,
                             const LinearSplit& sys, const Grid& grid,
                             const std::vector<RealState>& xs,
                             Objective objective) {
    std::vector<double> g(static_cast<std::size_t>(grid.n_segments), 0.0);
    RealState lam = RealState::Zero();
    RealState source = RealState::Zero();
    if (objective == Objective::TerminalNbar) {
        lam[kPhononIndex] = 1.0;
    } else {
        source[kPhononIndex] = 1.0 / static_cast<double>(grid.total_steps());
    }
    const double h = grid.h;
    long idx = grid.total_steps() - 1;
    for (int s = grid.n_segments - 1; s >= 0; --s) {
        const double c = segments[static_cast<std::size_t>(s)];
        const RealMatrix a = sys.at(c);
        const RealMatrix at = a.transpose();
        for (int n = 0; n < grid.steps_per_segment; ++n, --idx) {
            if (objective == Objective::WindowMeanNbar) lam += source;
            const RealState& xp = xs[static_cast<std::size_t>(idx)];
            // d(step)/dc through the four stages
            const RealState x2 = xp + 0.5 * h * (a * xp);
            const RealState x3 = xp + 0.5 * h * (a * x2);
            const RealState x4 = xp + h * (a * x3);
            const RealState dk1 = sys.a1 * xp;
            const RealState dk2 = sys.a1 * x2 + 0.5 * h * (a * dk1);
            const RealState dk3 = sys.a1 * x3 + 0.5 * h * (a * dk2);
            const RealState dk4 = sys.a1 * x4 + h * (a * dk3);
            g[static_cast<std::size_t>(s)] +=
                lam.dot(h / 6.0 * (dk1 + 2.0 * dk2 + 2.0 * dk3 + dk4));
            // adjoint step: lam_n = Phi(h A)^T lam_{n+1}
            const RealState l1 = at * lam;
            const RealState l2 = at * (lam + 0.5 * h * l1);
            const RealState l3 = at * (lam + 0.5 * h * l2);
            const RealState l4 = at * (lam + h * l3);
            lam += h / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
        }
    }
    return g;
}

}  // namespace

RealState to_real(const Moments& m) {
    RealState x;
    for (int k = 0; k < 16; ++k) {
        x[2 * k] = m[static_cast<std::size_t>(k)].real();
        x[2 * k + 1] = m[static_cast<std::size_t>(k)].imag();
    }
    return x;
}

Moments from_real(const RealState& x) {
    Moments m;
    for (int k = 0; k < 16; ++k) {
        m[static_cast<std::size_t>(k)] = {x[2 * k], x[2 * k + 1]};
    }
    return m;
}

LinearSplit::LinearSplit(const DynParams& p) {
    for (int j = 0; j < 32; ++j) {
        RealState e = RealState::Zero();
        e[j] = 1.0;
        const Moments basis = from_real(e);
        a0.col(j) = to_real(rhs(basis, p, 0.0));
        a1.col(j) = to_real(rhs(basis, p, 1.0)) - a0.col(j);
    }
}

RealState costate_rhs(const RealState& costate, const DynParams& p, double c) {
    const LinearSplit sys(p);
    return -(sys.at(c).transpose() * costate);
}

ControlPulse OptimizationResult::pulse() const {
    std::vector<std::pair<double, double>> segs;
    segs.reserve(segments.size());
    for (double v : segments) segs.emplace_back(segment_duration, v);
    return ControlPulse::piecewise_constant(std::move(segs));
}

double control_objective(const std::vector<double>& segments,
                         const DynParams& p, const OptimizerConfig& cfg,
                         const MomentState& x0) {
    check_segments(segments, cfg);
    const Grid grid = make_grid(cfg);
    const LinearSplit sys(p);
    return forward(segments, sys, grid, to_real(x0.m), cfg.objective, nullptr,
                   nullptr);
}

std::vector<double> control_gradient(const std::vector<double>& segments,
                                     const DynParams& p,
                                     const OptimizerConfig& cfg,
                                     const MomentState& x0) {
    check_segments(segments, cfg);
    const Grid grid = make_grid(cfg);
    const LinearSplit sys(p);
    std::vector<RealState> xs;
    forward(segments, sys, grid, to_real(x0.m), cfg.objective, &xs, nullptr);
    return backward(segments, sys, grid, xs, cfg.objective);
}

double gradient_norm(const std::vector<double>& grad,
                     double segment_duration) {
    double s = 0.0;
    for (double g : grad) s += g * g;
    return std::sqrt(s / segment_duration);
}

OptimizationResult steepest_descent(const std::vector<double>& initial_segments,
                                    const DynParams& p,
                                    const OptimizerConfig& cfg,
                                    const MomentState& x0) {
    check_segments(initial_segments, cfg);
    if (!(cfg.tau > 0.0) || !(cfg.epsilon > 0.0) || cfg.max_iters < 0) {
        throw std::invalid_argument("steepest_descent: invalid config");
    }
    const Grid grid = make_grid(cfg);
    const LinearSplit sys(p);
    const RealState xr0 = to_real(x0.m);

    auto eval = [&](const std::vector<double>& segs) {
        return forward(segs, sys, grid, xr0, cfg.objective, nullptr, nullptr);
    };
    auto clamp = [&](std::vector<double>& segs) {
        if (cfg.g_max > 0.0) {
            for (double& v : segs) v = std::clamp(v, -cfg.g_max, cfg.g_max);
        }
    };

    OptimizationResult res;
    res.segments = initial_segments;
    clamp(res.segments);
    res.segment_duration = grid.segment_duration;

    std::vector<RealState> xs;
    double j_cur = forward(res.segments, sys, grid, xr0, cfg.objective, &xs,
                           nullptr);
    if (!std::isfinite(j_cur)) {
        throw std::runtime_error("steepest_descent: non-finite objective");
    }
    const double j_initial = j_cur;
    std::vector<double> grad = backward(res.segments, sys, grid, xs,
                                        cfg.objective);

    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        const double gn = gradient_norm(grad, grid.segment_duration);
        res.gradient_norm_history.push_back(gn);
        if (gn <= cfg.epsilon) {
            res.converged = true;
            break;
        }
        // function-space steepest-descent direction (per-segment mean of
        // the gradient density)
        std::vector<double> dir(grad.size());
        for (std::size_t k = 0; k < grad.size(); ++k) {
            dir[k] = grad[k] / grid.segment_duration;
        }
        double tau = cfg.tau;
        bool improved = false;
        std::vector<double> trial(res.segments.size());
        for (int half = 0; half < 80; ++half) {
            for (std::size_t k = 0; k < trial.size(); ++k) {
                trial[k] = res.segments[k] - tau * dir[k];
            }
            clamp(trial);
            const double j_trial = eval(trial);
            if (std::isfinite(j_trial) && j_trial < j_cur) {
                improved = true;
                break;
            }
            tau *= 0.5;
        }
        if (!improved) break;  // stationary to line-search resolution
        res.segments = trial;
        j_cur = forward(res.segments, sys, grid, xr0, cfg.objective, &xs,
                        nullptr);
        grad = backward(res.segments, sys, grid, xs, cfg.objective);
    }
    if (static_cast<int>(res.gradient_norm_history.size()) == it) {
        res.gradient_norm_history.push_back(
            gradient_norm(grad, grid.segment_duration));
    }

    RealState xf;
    res.objective_value =
        forward(res.segments, sys, grid, xr0, cfg.objective, nullptr, &xf);
    res.iterations = it;
    res.terminal.m = from_real(xf);
    res.terminal.t = x0.t + cfg.t_f;
    if (res.objective_value > j_initial) {
        throw std::logic_error(
            "steepest_descent: accepted objective increased (internal error)");
    }
    return res;
}

MaintenanceResult optimize_maintenance(const DynParams& p,
                                       const MaintenanceOptions& opt) {
    for (double k : opt.k_grid) {
        if (k < 0.0 || k > 1.0) {
            throw std::invalid_argument(
                "optimize_maintenance: k values must lie in [0, 1]");
        }
    }
    if (opt.k_grid.empty()) {
        throw std::invalid_argument("optimize_maintenance: empty k grid");
    }

    // cooling stage
    OptimizerConfig cool_cfg = opt.cooling;
    cool_cfg.objective = Objective::TerminalNbar;
    std::vector<double> seed(static_cast<std::size_t>(cool_cfg.n_segments),
                             opt.initial_g);
    MaintenanceResult out;
    out.cooling = steepest_descent(seed, p, cool_cfg, thermal_initial(p.n_t, p.n_cav));
    out.t_switch = cool_cfg.t_f;

    // window configuration
    const double period = 2.0 * M_PI / p.omega_m;
    OptimizerConfig win_cfg;
    win_cfg.n_segments = static_cast<int>(
        std::lround(opt.window_periods * opt.segments_per_period));
    win_cfg.t_f = opt.window_periods * period;
    win_cfg.objective = Objective::WindowMeanNbar;
    win_cfg.max_iters = opt.maint_max_iters;
    win_cfg.dt_target = opt.maint_dt_target;
    win_cfg.epsilon = 1e-6;
    const double seg_dur = win_cfg.t_f / win_cfg.n_segments;

    auto window_run = [&](double k) {
        std::vector<double> init(static_cast<std::size_t>(win_cfg.n_segments));
        for (int s = 0; s < win_cfg.n_segments; ++s) {
            const double tmid = (s + 0.5) * seg_dur;
            init[static_cast<std::size_t>(s)] = std::exp(-50.0 * tmid) + k;
        }
        return steepest_descent(init, p, win_cfg, out.cooling.terminal);
    };

    std::vector<double> ks = opt.k_grid;
    double best_k = 0.0;
    double best_mean = std::numeric_limits<double>::infinity();
    OptimizationResult best_run;
    for (int round = 0; ; ++round) {
        for (double k : ks) {
            OptimizationResult r = window_run(k);
            out.k_means.emplace_back(k, r.objective_value);
            if (r.objective_value < best_mean) {
                best_mean = r.objective_value;
                best_k = k;
                best_run = std::move(r);
            }
        }
        if (round >= opt.refine_rounds) break;
        // refine: half-spacing neighbors of the current best
        const double span = 0.5 * (ks.size() > 1
                                       ? std::abs(ks[1] - ks[0])
                                       : 0.5 * best_k + 1e-3);
        ks = {std::max(0.0, best_k - span), std::min(1.0, best_k + span)};
    }

    out.best_k = best_k;
    out.best_mean = best_mean;
    out.best_window = std::move(best_run);

    // combined pulse: cooling segments followed by the optimized window
    std::vector<std::pair<double, double>> segs;
    for (double v : out.cooling.segments) {
        segs.emplace_back(out.cooling.segment_duration, v);
    }
    for (double v : out.best_window.segments) {
        segs.emplace_back(out.best_window.segment_duration, v);
    }
    out.combined = ControlPulse::piecewise_constant(std::move(segs));
    return out;
}

}  // namespace quench
