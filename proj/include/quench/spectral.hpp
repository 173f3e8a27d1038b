#pragma once

#include <cmath>

namespace quench {

enum class SpectralKind { DrudeCutoff, OhmicExpCutoff, OhmicFlat };

/// Bath spectral density J(omega). Three closed-form families:
///   Drude:       J(w) = gamma * w * wd^2 / (w^2 + wd^2)
///   exp-cutoff:  J(w) = kappa * w * exp(-w / wc)
///   flat Ohmic:  J(w) = gamma * w
/// Natural units hbar = k_B = m0 = 1; rates and cutoffs in units of the
/// system frequency.
struct SpectralDensity {
    SpectralKind kind = SpectralKind::OhmicFlat;
    double rate = 1.0;    // gamma or kappa
    double cutoff = 0.0;  // omega_D / omega_C; unused for OhmicFlat

    static SpectralDensity drude(double gamma, double omega_d);
    static SpectralDensity ohmic_exp(double kappa, double omega_c);
    static SpectralDensity ohmic_flat(double gamma);
};

/// Thermal bath: temperature plus spectral model. beta = 1/T; the Matsubara
/// frequencies are nu_l = l * Omega with Omega = 2*pi*T.
struct BathParams {
    double temperature = 1.0;
    SpectralDensity spectral;

    BathParams(double t, SpectralDensity s);

    double beta() const { return 1.0 / temperature; }
    double matsubara_spacing() const { return 2.0 * M_PI * temperature; }
    double matsubara(long l) const {
        return static_cast<double>(l) * matsubara_spacing();
    }
};

/// J(omega) for omega >= 0.
double j_of_omega(const SpectralDensity& s, double omega);

/// Power spectrum I(omega, T) = J(omega) * coth(beta*omega/2), omega > 0.
double power_spectrum(const BathParams& b, double omega);

/// Imaginary-time bath correlation
///   K(sigma) = (1/pi) Int_0^inf dw J(w) cosh(w(beta/2 - sigma)) / sinh(w beta/2)
/// for sigma in [0, beta]. Symmetric under sigma -> beta - sigma. The flat
/// Ohmic density is rejected (the integral diverges for it).
double noise_kernel(const BathParams& b, double sigma);

/// Laplace-domain damping kernel
///   gamma~(z) = Int_0^inf (dw/pi) (J(w)/w) * 2z/(w^2+z^2),  z > 0.
/// Closed form for Drude and flat; quadrature for the exponential cutoff.
double damping_laplace(const SpectralDensity& s, double z);

/// Effective coupling at the l-th Matsubara frequency, l >= 1. For the Drude
/// bath this is gamma / (1 + l*Omega/omega_D); other kernels fall back to
/// damping_laplace at nu_l.
double effective_coupling(const BathParams& b, long l);

/// Fourier transform of the dissipation kernel; even in omega and positive.
///   Drude -> gamma * wd^2/(w^2+wd^2), exp -> kappa * exp(-|w|/wc), flat -> gamma.
double kernel_fourier(const SpectralDensity& s, double omega);

}  // namespace quench
