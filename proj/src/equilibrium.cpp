#include "quench/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quench/quadrature.hpp"

namespace quench {

namespace {

enum class Summand { Position, Momentum, Squeeze };

// Drude summand machinery. g(nu) = gamma*wd*nu/(wd+nu) is the product
// gamma~(nu)*nu; D(nu) the common denominator of the variance sums.
struct DrudeSums {
    double w0sq, gamma, wd, omega;  // omega = Matsubara spacing

    double g(double nu) const { return gamma * wd * nu / (wd + nu); }
    double gp(double nu) const {
        const double s = wd + nu;
        return gamma * wd * wd / (s * s);
    }
    double den(double nu) const { return w0sq + nu * nu + g(nu); }
    double denp(double nu) const { return 2.0 * nu + gp(nu); }

    double term(Summand k, double nu) const {
        const double d = den(nu);
        switch (k) {
            case Summand::Position: return 1.0 / d;
            case Summand::Momentum: return (w0sq + g(nu)) / d;
            case Summand::Squeeze: return (wd * nu / (wd + nu)) / d;
        }
        return 0.0;
    }

    double term_deriv(Summand k, double nu) const {
        const double d = den(nu);
        const double dp = denp(nu);
        switch (k) {
            case Summand::Position:
                return -dp / (d * d);
            case Summand::Momentum:
                return gp(nu) / d - (w0sq + g(nu)) * dp / (d * d);
            case Summand::Squeeze: {
                const double n = wd * nu / (wd + nu);
                const double np = gp(nu) / gamma;
                return np / d - n * dp / (d * d);
            }
        }
        return 0.0;
    }

    // Sum over n = 1..inf of term(k, n*omega). Direct part up to N where the
    // summand is deep in its 1/nu^2 asymptote, then a midpoint-rule integral
    // tail with the leading Euler-Maclaurin derivative correction.
    double sum_tail(Summand k) const {
        const double scale = std::max({std::sqrt(w0sq), wd, 1.0});
        const double n_needed = 50.0 * scale / omega;
        if (n_needed > 1e8) {
            throw std::runtime_error(
                "equilibrium: Matsubara summation cap exceeded (1e8 terms)");
        }
        const long n_direct = std::max<long>(64, static_cast<long>(n_needed) + 1);

        // accumulate smallest terms first
        double sum = 0.0;
        for (long n = n_direct; n >= 1; --n) {
            sum += term(k, static_cast<double>(n) * omega);
        }

        const double x0 = (static_cast<double>(n_direct) + 0.5) * omega;
        auto f = [&](double nu) { return term(k, nu); };
        quad::Options opt;
        opt.abs_tol = std::max(1e-15 * sum, 1e-300);
        opt.rel_tol = 1e-10;
        const double integral =
            quad::integrate_half_line(f, x0, x0, opt) / omega;
        const double correction = omega * term_deriv(k, x0) / 24.0;
        return sum + integral + correction;
    }
};

DrudeSums make_sums(const OscillatorParams& osc, const BathParams& b) {
    if (b.spectral.kind != SpectralKind::DrudeCutoff) {
        throw std::domain_error(
            "equilibrium: variance sums are defined for Drude baths only");
    }
    if (!(osc.frequency > 0.0)) {
        throw std::invalid_argument("equilibrium: frequency must be positive");
    }
    return {osc.frequency * osc.frequency, b.spectral.rate, b.spectral.cutoff,
            b.matsubara_spacing()};
}

// Entropy of a single-mode Gaussian state with mean occupation nbar.
double gaussian_entropy(double nbar) {
    if (nbar <= 0.0) return 0.0;
    return (nbar + 1.0) * std::log1p(nbar) - nbar * std::log(nbar);
}

// nbar = (nu - 1)/2 with nu = 2 sqrt(q2 p2), computed cancellation-free.
double nbar_from_variances(double q2, double p2) {
    const double x2 = q2 * p2;
    const double d = x2 - 0.25;
    if (d < -1e-12 * x2) {
        throw std::domain_error("equilibrium: q2*p2 < 1/4 (unphysical state)");
    }
    return std::max(d, 0.0) / (std::sqrt(x2) + 0.5);
}

}  // namespace

double variance_q(const OscillatorParams& osc, const BathParams& b) {
    const DrudeSums s = make_sums(osc, b);
    const double total = 1.0 / s.w0sq + 2.0 * s.sum_tail(Summand::Position);
    return total / (osc.mass * b.beta());
}

double variance_p(const OscillatorParams& osc, const BathParams& b) {
    const DrudeSums s = make_sums(osc, b);
    const double total = 1.0 + 2.0 * s.sum_tail(Summand::Momentum);
    return osc.mass * total / b.beta();
}

double squeezing_delta(const OscillatorParams& osc, const BathParams& b) {
    const DrudeSums s = make_sums(osc, b);
    return 2.0 * osc.mass * b.spectral.rate * s.sum_tail(Summand::Squeeze) /
           b.beta();
}

double effective_frequency(double q2, double p2, double beta) {
    if (!(q2 > 0.0) || !(p2 > 0.0)) {
        throw std::domain_error("effective_frequency: variances must be positive");
    }
    const double x2 = q2 * p2;
    const double d = x2 - 0.25;
    if (!(d > 0.0)) {
        throw std::domain_error(
            "effective_frequency: q2*p2 <= 1/4 violates the uncertainty bound");
    }
    const double x = std::sqrt(x2);
    const double xm = d / (x + 0.5);  // x - 1/2 without cancellation
    return std::log((x + 0.5) / xm) / beta;
}

double partition_ratio(const OscillatorParams& osc, const BathParams& b) {
    const double q2 = variance_q(osc, b);
    const double p2 = variance_p(osc, b);
    const double beta = b.beta();
    const double weff = effective_frequency(q2, p2, beta);
    // sinh(a)/sinh(b) = exp(a-b) * (1-e^{-2a})/(1-e^{-2b}), overflow-safe
    const double a = 0.5 * beta * osc.frequency;
    const double e = 0.5 * beta * weff;
    return std::exp(a - e) * (-std::expm1(-2.0 * a)) / (-std::expm1(-2.0 * e));
}

double entropy_ratio(const OscillatorParams& osc, const BathParams& b) {
    const double q2 = variance_q(osc, b);
    const double p2 = variance_p(osc, b);
    const double nbar = nbar_from_variances(q2, p2);
    const double arg = b.beta() * osc.frequency;
    const double nbar_can = 1.0 / std::expm1(arg);
    if (nbar_can == 0.0) {
        throw std::domain_error(
            "entropy_ratio: canonical occupation underflows at this temperature");
    }
    return gaussian_entropy(nbar) / gaussian_entropy(nbar_can);
}

EquilibriumReport equilibrium_report(const OscillatorParams& osc,
                                     const BathParams& b) {
    EquilibriumReport r;
    r.q2 = variance_q(osc, b);
    r.p2 = variance_p(osc, b);
    r.delta = squeezing_delta(osc, b);
    r.omega_eff = effective_frequency(r.q2, r.p2, b.beta());
    const double a = 0.5 * b.beta() * osc.frequency;
    const double e = 0.5 * b.beta() * r.omega_eff;
    r.z_ratio = std::exp(a - e) * (-std::expm1(-2.0 * a)) / (-std::expm1(-2.0 * e));
    const double nbar = nbar_from_variances(r.q2, r.p2);
    const double nbar_can = 1.0 / std::expm1(b.beta() * osc.frequency);
    r.s_ratio = gaussian_entropy(nbar) / gaussian_entropy(nbar_can);
    return r;
}

}  // namespace quench
