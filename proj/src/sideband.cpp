#include "quench/sideband.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace quench {

namespace {

using Cd = std::complex<double>;

// Response bracket with resonance denominators at (dm, dp) and kernel value
// kt: 1/(i*dm + kt) - 1/(-i*dp + kt).
Cd bracket(double dm, double dp, double kt) {
    return 1.0 / Cd(kt, dm) - 1.0 / Cd(kt, -dp);
}

double total_mech_damping(const CoolingParams& p, double omega) {
    const double kt = kernel_fourier(p.cav_kernel, omega);
    // gamma_OM with resonance factors pinned at omega_m
    const Cd br = bracket(p.detuning - p.omega_m, p.detuning + p.omega_m, kt);
    const double gamma_om = 2.0 * p.g * p.g * br.real();
    return kernel_fourier(p.mech_kernel, omega) + gamma_om;
}

}  // namespace

double snn(const CoolingParams& p, double omega) {
    if (!(p.kappa > 0.0)) {
        throw std::domain_error("snn: kappa must be positive");
    }
    const double d = p.detuning + omega;
    return p.n_cav * p.kappa / (0.25 * p.kappa * p.kappa + d * d);
}

GoldenRates golden_rule_rates(const CoolingParams& p) {
    GoldenRates r;
    r.a_minus = p.g0 * p.g0 * snn(p, -p.omega_m);
    r.a_plus = p.g0 * p.g0 * snn(p, +p.omega_m);
    return r;
}

double n_min_markovian(const CoolingParams& p) {
    const GoldenRates r = golden_rule_rates(p);
    if (!(r.gamma_opt() > 0.0)) {
        throw std::domain_error("n_min_markovian: no net cooling (gamma_opt <= 0)");
    }
    return r.a_plus / r.gamma_opt();
}

double optimal_detuning(const CoolingParams& p) {
    auto value = [&](double d) {
        CoolingParams q = p;
        q.detuning = d;
        return n_min_markovian(q);
    };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 1e-6 * p.omega_m;
    double b = 2.0 * p.omega_m;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = value(x1);
    double f2 = value(x2);
    while (b - a > 1e-10 * p.omega_m) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = value(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = value(x2);
        }
    }
    return 0.5 * (a + b);
}

double n_steady(const CoolingParams& p) {
    const GoldenRates r = golden_rule_rates(p);
    const double denom = r.gamma_opt() + p.gamma_m;
    if (!(denom > 0.0)) {
        throw std::domain_error("n_steady: total damping must be positive");
    }
    return (r.a_plus + p.n_th * p.gamma_m) / denom;
}

OptomechResponse optomech_response(const CoolingParams& p, double omega) {
    const double kt = kernel_fourier(p.cav_kernel, omega);
    const Cd br = bracket(p.detuning - omega, p.detuning + omega, kt);
    OptomechResponse r;
    r.delta_omega_m = p.g * p.g * br.imag();
    r.gamma_om = 2.0 * p.g * p.g * br.real();
    return r;
}

double nf(const CoolingParams& p, double omega) {
    const double gt = total_mech_damping(p, omega);
    if (!(gt > 0.0)) {
        throw std::domain_error("nf: total mechanical damping must be positive");
    }
    const double kt = kernel_fourier(p.cav_kernel, omega);
    const double d = p.detuning - omega;
    return p.mech_kernel.rate * p.n_th / gt +
           (p.g * p.g * kt / gt) / (kt * kt + d * d);
}

double sbb(const CoolingParams& p, double omega) {
    const double gt = total_mech_damping(p, omega);
    const double s = p.omega_m + omega;
    return gt * nf(p, omega) / (gt * gt + s * s);
}

double n_min_nonmarkovian(const SpectralDensity& kernel, double omega_m) {
    if (!(omega_m > 0.0)) {
        throw std::domain_error("n_min_nonmarkovian: omega_m must be positive");
    }
    const double kt = kernel_fourier(kernel, omega_m);
    return kt * kt / (8.0 * omega_m * omega_m);
}

double n_m_langevin(double kappa, double omega_m) {
    return kappa * kappa / (8.0 * omega_m * omega_m);
}

}  // namespace quench
