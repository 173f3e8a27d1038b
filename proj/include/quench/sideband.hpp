#pragma once

#include "quench/spectral.hpp"

namespace quench {

/// Steady-state sideband-cooling parameters. Rates in units of the
/// mechanical frequency unless noted. `kappa` is the energy-decay cavity
/// linewidth used by the golden-rule branch; the Langevin-spectrum branch
/// (optomech_response, nf, sbb, n_min_nonmarkovian) draws its amplitude-rate
/// kernels from cav_kernel / mech_kernel instead. The two conventions differ
/// by a factor 2 and are kept separate on purpose.
struct CoolingParams {
    double omega_m = 1.0;   // mechanical frequency
    double detuning = 1.0;  // laser detuning Delta
    double kappa = 0.1;     // cavity decay (golden-rule branch)
    double g0 = 0.0;        // single-quantum coupling (rates)
    double g = 0.0;         // linearized coupling (spectra)
    double gamma_m = 0.0;   // mechanical damping (rate equation)
    double n_th = 0.0;      // mechanical thermal occupancy
    double n_cav = 1.0;     // intracavity photon number scale in S_NN
    SpectralDensity mech_kernel = SpectralDensity{SpectralKind::OhmicFlat, 1e-6, 0.0};
    SpectralDensity cav_kernel = SpectralDensity{SpectralKind::OhmicFlat, 0.05, 0.0};
};

struct GoldenRates {
    double a_plus = 0.0;   // heating transition rate
    double a_minus = 0.0;  // cooling transition rate
    double gamma_opt() const { return a_minus - a_plus; }
};

struct OptomechResponse {
    double delta_omega_m = 0.0;  // mechanical frequency shift
    double gamma_om = 0.0;       // optomechanical damping rate
};

/// Cavity photon-number noise spectrum
///   S_NN(w) = n_cav * kappa / (kappa^2/4 + (Delta + w)^2).
double snn(const CoolingParams& p, double omega);

/// Fermi-golden-rule rates A-+ = g0^2 S_NN(-+ omega_m):
/// a_minus at -omega_m (anti-Stokes), a_plus at +omega_m.
GoldenRates golden_rule_rates(const CoolingParams& p);

/// n_min = A+ / (A- - A+). Requires net cooling (gamma_opt > 0).
/// At Delta = omega_m this equals (kappa/4 omega_m)^2 exactly.
double n_min_markovian(const CoolingParams& p);

/// Detuning in (0, 2 omega_m] minimizing n_min (golden-section search).
double optimal_detuning(const CoolingParams& p);

/// Steady state n_f = (A+ + n_th gamma_m) / (gamma_opt + gamma_m).
double n_steady(const CoolingParams& p);

/// Frequency shift and optomechanical damping from the cavity kernel:
///   bracket(w) = 1/(i(Delta-w)+k~(w)) - 1/(-i(Delta+w)+k~(w)),
///   delta_omega_m = |g|^2 Im bracket, gamma_om = 2|g|^2 Re bracket.
OptomechResponse optomech_response(const CoolingParams& p, double omega);

/// Back-action modified phonon number
///   n_f(w) = gamma n_b / gt(w) + (g^2 k~(w)/gt(w)) / (k~(w)^2 + (Delta-w)^2),
/// where gt(w) = gamma~_i(w) + gamma_OM and gamma_OM keeps its resonance
/// denominators pinned at +-omega_m (its kernel argument still runs with w);
/// with the running-omega form the total damping changes sign at w = -omega_m
/// and the spectrum would lose positivity.
double nf(const CoolingParams& p, double omega);

/// Quantum noise spectrum S_bb(w) = gt(w) n_f(w) / (gt(w)^2 + (omega_m+w)^2).
double sbb(const CoolingParams& p, double omega);

/// Non-Markovian cooling limit n_min(w) = k~(w)^2 / (8 w^2) at w = omega_m.
double n_min_nonmarkovian(const SpectralDensity& kernel, double omega_m);

/// Markovian limit of the Langevin branch, kappa^2 / (8 omega^2).
double n_m_langevin(double kappa, double omega_m);

}  // namespace quench
