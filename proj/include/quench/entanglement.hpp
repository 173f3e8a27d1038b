#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "quench/equilibrium.hpp"
#include "quench/spectral.hpp"

namespace quench {

/// Two identical oscillators, bilinear position coupling -c0 q1 q2, each
/// damped by an independent identical Drude bath. Stability requires
/// 0 <= c0 < m w0^2 (both normal-mode frequencies real).
struct TwoModeSystem {
    OscillatorParams osc;
    double coupling = 0.0;  // c0 in units of m0 w0^2
    BathParams bath;
};

/// 4x4 covariance in (q1, q2, p1, p2) ordering plus the eigenvalues of
/// -i Sigma sigma (the symplectic spectrum; +/- pairs).
struct TwoModeCovariance {
    Eigen::Matrix4d sigma;
    std::array<std::complex<double>, 4> symplectic_eigs;
};

/// Symplectic form Sigma for the (q1, q2, p1, p2) ordering.
Eigen::Matrix4d symplectic_form();

/// Stationary covariance via the exact normal-mode rotation
/// q_pm = (q1 +- q2)/sqrt(2): each normal mode is a single damped oscillator
/// at w_pm^2 = w0^2 -+ c0, so the Drude variance sums apply per mode.
TwoModeCovariance equilibrium_covariance(const TwoModeSystem& sys);

/// Logarithmic negativity E_N = -(1/2) Sum_i log2[min(1, 2|lambda_i|)],
/// lambda_i the eigenvalues of -i Sigma sigma~ with sigma~ the partial
/// transpose (p2 -> -p2). Values below 1e-12 are reported as exactly 0.
double log_negativity(const TwoModeCovariance& cov);

/// Peres-Horodecki: separable iff E_N == 0.
bool separability(const TwoModeCovariance& cov);

/// Bisection for the temperature where E_N crosses zero. Requires
/// E_N(t_lo) > 0 and E_N(t_hi) == 0; E_N must be non-increasing on the
/// bracket (spot-checked). Tolerance 1e-4 in temperature.
double critical_temperature(const TwoModeSystem& proto, double t_lo,
                            double t_hi);

/// Smallest eigenvalue of the Hermitian form sigma + (i/2) Sigma;
/// >= 0 (up to tolerance) for physical states.
double min_physicality_eigenvalue(const TwoModeCovariance& cov);

}  // namespace quench
