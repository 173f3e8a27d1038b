#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <vector>

#include "quench/moments.hpp"

namespace quench {

/// The optimizer works on the real/imaginary split of the 16 complex
/// moments: x[2k] = Re m[k], x[2k+1] = Im m[k] (32 components).
using RealState = Eigen::Matrix<double, 32, 1>;
using RealMatrix = Eigen::Matrix<double, 32, 32>;

RealState to_real(const Moments& m);
Moments from_real(const RealState& x);

/// Index of Re<a+a> in the real split.
inline constexpr int kPhononIndex = 2 * m_ada;

/// dx/dt = (A0 + c A1) x; the split system is linear and homogeneous.
struct LinearSplit {
    RealMatrix a0;
    RealMatrix a1;

    explicit LinearSplit(const DynParams& p);
    RealMatrix at(double c) const { return a0 + c * a1; }
};

/// Costate equation dp/dt = -(A0 + c A1)^T p of the split system.
RealState costate_rhs(const RealState& costate, const DynParams& p, double c);

enum class Objective { TerminalNbar, WindowMeanNbar };

struct OptimizerConfig {
    int n_segments = 12;
    double tau = 1.0;         // initial step size, reset every iteration
    double epsilon = 1e-3;    // gradient-norm stopping tolerance
    int max_iters = 250;
    double t_f = 1.1 * M_PI;  // horizon (omega_m = 1 default)
    Objective objective = Objective::TerminalNbar;
    double dt_target = 2.0 * M_PI / 2000.0;  // step size goal; segments are
                                             // subdivided into whole steps
    double g_max = 0.0;  // optional |g| clamp; <= 0 disables
};

struct OptimizationResult {
    std::vector<double> segments;
    double segment_duration = 0.0;
    double objective_value = 0.0;
    std::vector<double> gradient_norm_history;
    int iterations = 0;
    bool converged = false;
    MomentState terminal;  // state at t_f under the final pulse

    ControlPulse pulse() const;
};

/// Objective of the RK4-discretized trajectory under a piecewise-constant
/// pulse (terminal or window-mean phonon number).
double control_objective(const std::vector<double>& segments,
                         const DynParams& p, const OptimizerConfig& cfg,
                         const MomentState& x0);

/// Exact gradient of control_objective w.r.t. the segment values, by
/// transposed accumulation through the same RK4 grid
/// (discretize-then-optimize). Entry k is the integral of p^T (df/dc) x
/// over segment k.
std::vector<double> control_gradient(const std::vector<double>& segments,
                                     const DynParams& p,
                                     const OptimizerConfig& cfg,
                                     const MomentState& x0);

/// L2 norm of the piecewise-constant gradient function,
/// sqrt(Sum_k g_k^2 / dt_k).
double gradient_norm(const std::vector<double>& grad, double segment_duration);

/// Steepest descent with backtracking line search: from the initial pulse,
/// iterate g <- g - tau * (g_k/dt_k), halving tau from cfg.tau each
/// iteration until the objective decreases; stop on |grad| <= epsilon,
/// max_iters, or a stalled line search. The accepted objective sequence is
/// non-increasing by construction.
OptimizationResult steepest_descent(const std::vector<double>& initial_segments,
                                    const DynParams& p,
                                    const OptimizerConfig& cfg,
                                    const MomentState& x0);

struct MaintenanceOptions {
    std::vector<double> k_grid = {0.02, 0.05, 0.1};
    int refine_rounds = 0;       // extra local grid refinements around best k
    double window_periods = 50;  // maintenance window after t_switch
    int segments_per_period = 12;
    OptimizerConfig cooling;     // cooling stage (defaults per module docs)
    int maint_max_iters = 150;   // descent budget per k evaluation
    double maint_dt_target = 2.0 * M_PI / 500.0;
    double initial_g = 0.01;     // constant cooling seed pulse
};

struct MaintenanceResult {
    double best_k = 0.0;
    double best_mean = 0.0;
    std::vector<std::pair<double, double>> k_means;  // (k, mean nbar)
    OptimizationResult cooling;
    OptimizationResult best_window;  // window run for best_k
    ControlPulse combined;           // cooling + optimized maintenance pulse
    double t_switch = 0.0;
};

/// Grid+refine search over the plateau value k. Each evaluation starts from
/// the optimized-cooling terminal state and runs the window-mean descent
/// seeded with exp(-50 (t - t_switch)) + k. Returns the best k and the
/// combined pulse covering the whole protocol.
MaintenanceResult optimize_maintenance(const DynParams& p,
                                       const MaintenanceOptions& opt);

}  // namespace quench
