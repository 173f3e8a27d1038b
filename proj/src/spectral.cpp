#include "quench/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "quench/quadrature.hpp"

namespace quench {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("spectral: ") + what +
                                    " must be positive and finite");
    }
}

}  // namespace

SpectralDensity SpectralDensity::drude(double gamma, double omega_d) {
    require_positive(gamma, "Drude rate");
    require_positive(omega_d, "Drude cutoff");
    return {SpectralKind::DrudeCutoff, gamma, omega_d};
}

SpectralDensity SpectralDensity::ohmic_exp(double kappa, double omega_c) {
    require_positive(kappa, "Ohmic rate");
    require_positive(omega_c, "Ohmic cutoff");
    return {SpectralKind::OhmicExpCutoff, kappa, omega_c};
}

SpectralDensity SpectralDensity::ohmic_flat(double gamma) {
    require_positive(gamma, "Ohmic rate");
    return {SpectralKind::OhmicFlat, gamma, 0.0};
}

BathParams::BathParams(double t, SpectralDensity s)
    : temperature(t), spectral(s) {
    require_positive(t, "temperature");
}

double j_of_omega(const SpectralDensity& s, double omega) {
    if (omega < 0.0) {
        throw std::domain_error("j_of_omega: omega must be non-negative");
    }
    switch (s.kind) {
        case SpectralKind::DrudeCutoff:
            return s.rate * omega * s.cutoff * s.cutoff /
                   (omega * omega + s.cutoff * s.cutoff);
        case SpectralKind::OhmicExpCutoff:
            return s.rate * omega * std::exp(-omega / s.cutoff);
        case SpectralKind::OhmicFlat:
            return s.rate * omega;
    }
    throw std::logic_error("j_of_omega: unknown spectral kind");
}

double power_spectrum(const BathParams& b, double omega) {
    if (!(omega > 0.0)) {
        throw std::domain_error("power_spectrum: omega must be positive");
    }
    const double x = 0.5 * b.beta() * omega;
    return j_of_omega(b.spectral, omega) / std::tanh(x);
}

double noise_kernel(const BathParams& b, double sigma) {
    const double beta = b.beta();
    if (sigma < 0.0 || sigma > beta) {
        throw std::domain_error("noise_kernel: sigma must lie in [0, beta]");
    }
    if (b.spectral.kind == SpectralKind::OhmicFlat) {
        throw std::domain_error(
            "noise_kernel: flat Ohmic density is unsupported (divergent)");
    }
    const double slope = b.spectral.rate;  // J(w)/w -> rate as w -> 0
    auto integrand = [&](double w) {
        if (w == 0.0) return slope * 2.0 / beta;
        // cosh(w(beta/2-sigma))/sinh(w beta/2) in overflow-safe form
        const double num = std::exp(-w * sigma) + std::exp(-w * (beta - sigma));
        const double den = -std::expm1(-w * beta);
        return j_of_omega(b.spectral, w) * num / den;
    };
    const double scale = b.spectral.cutoff;
    return quad::integrate_half_line(integrand, 0.0, scale) / M_PI;
}

double damping_laplace(const SpectralDensity& s, double z) {
    if (!(z > 0.0)) {
        throw std::domain_error("damping_laplace: z must be positive");
    }
    switch (s.kind) {
        case SpectralKind::DrudeCutoff:
            return s.rate * s.cutoff / (s.cutoff + z);
        case SpectralKind::OhmicFlat:
            return s.rate;
        case SpectralKind::OhmicExpCutoff: {
            auto integrand = [&](double w) {
                return s.rate * std::exp(-w / s.cutoff) / (w * w + z * z);
            };
            return 2.0 * z / M_PI *
                   quad::integrate_half_line(integrand, 0.0, s.cutoff);
        }
    }
    throw std::logic_error("damping_laplace: unknown spectral kind");
}

double effective_coupling(const BathParams& b, long l) {
    if (l < 1) {
        throw std::domain_error("effective_coupling: l must be >= 1");
    }
    const double nu = b.matsubara(l);
    if (b.spectral.kind == SpectralKind::DrudeCutoff) {
        return b.spectral.rate / (1.0 + nu / b.spectral.cutoff);
    }
    return damping_laplace(b.spectral, nu);
}

double kernel_fourier(const SpectralDensity& s, double omega) {
    const double w = std::abs(omega);
    switch (s.kind) {
        case SpectralKind::DrudeCutoff:
            return s.rate * s.cutoff * s.cutoff / (w * w + s.cutoff * s.cutoff);
        case SpectralKind::OhmicExpCutoff:
            return s.rate * std::exp(-w / s.cutoff);
        case SpectralKind::OhmicFlat:
            return s.rate;
    }
    throw std::logic_error("kernel_fourier: unknown spectral kind");
}

}  // namespace quench
