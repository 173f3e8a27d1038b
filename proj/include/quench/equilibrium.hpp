#pragma once

#include "quench/spectral.hpp"

namespace quench {

/// Single damped oscillator in natural units (mass fixed to 1).
struct OscillatorParams {
    double mass = 1.0;
    double frequency = 1.0;  // omega_0 > 0
};

/// Equilibrium observables of one damped oscillator under a Drude bath.
struct EquilibriumReport {
    double q2 = 0.0;         // <q^2>
    double p2 = 0.0;         // <p^2>
    double omega_eff = 0.0;  // effective frequency
    double z_ratio = 0.0;    // Z / Z_can
    double s_ratio = 0.0;    // S / S_can
    double delta = 0.0;      // squeezing parameter, p2 - w0^2 q2
};

/// Matsubara-sum position variance
///   <q^2> = (1/m beta) Sum_n 1/(w0^2 + nu_n^2 + gamma wd |nu_n|/(wd+|nu_n|)).
/// Drude baths only. The symmetric sum is truncated adaptively and closed
/// with an analytic tail; relative accuracy ~1e-12.
double variance_q(const OscillatorParams& osc, const BathParams& b);

/// Momentum variance, summand (w0^2 + g(nu)) / (w0^2 + nu^2 + g(nu)),
/// prefactor m/beta, with g(nu) = gamma wd |nu|/(wd+|nu|).
double variance_p(const OscillatorParams& osc, const BathParams& b);

/// Squeezing parameter from the analytically differentiated partition sum:
///   Delta = (2 m gamma / beta) Sum_{n>=1} [wd nu_n/(wd+nu_n)] / D(nu_n).
/// Equals variance_p - w0^2 * variance_q (cross-checked in tests).
double squeezing_delta(const OscillatorParams& osc, const BathParams& b);

/// omega_eff = (1/beta) ln[(sqrt(p2 q2) + 1/2) / (sqrt(p2 q2) - 1/2)].
/// Throws if q2*p2 <= 1/4 (uncertainty violation).
double effective_frequency(double q2, double p2, double beta);

/// Z/Z_can = sinh(beta w0/2) / sinh(beta w_eff/2).
double partition_ratio(const OscillatorParams& osc, const BathParams& b);

/// Von Neumann entropy ratio S/S_can from the symplectic eigenvalue
/// nu = 2 sqrt(q2 p2) of the reduced Gaussian state.
double entropy_ratio(const OscillatorParams& osc, const BathParams& b);

EquilibriumReport equilibrium_report(const OscillatorParams& osc,
                                     const BathParams& b);

}  // namespace quench
