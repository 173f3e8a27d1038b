#include "quench/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace quench {

namespace {

constexpr double kNegativityFloor = 1e-12;

std::array<std::complex<double>, 4> spectrum_of(const Eigen::Matrix4d& sigma) {
    const Eigen::Matrix4d k = symplectic_form() * sigma;
    Eigen::EigenSolver<Eigen::Matrix4d> es(k);
    std::array<std::complex<double>, 4> out;
    const std::complex<double> mi(0.0, -1.0);
    for (int i = 0; i < 4; ++i) out[i] = mi * es.eigenvalues()(i);
    return out;
}

void check_covariance(const Eigen::Matrix4d& sigma) {
    const double scale = sigma.cwiseAbs().maxCoeff();
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::domain_error("log_negativity: covariance must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(sigma);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw std::domain_error(
            "log_negativity: covariance must be positive definite");
    }
}

}  // namespace

Eigen::Matrix4d symplectic_form() {
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s(0, 2) = 1.0;
    s(1, 3) = 1.0;
    s(2, 0) = -1.0;
    s(3, 1) = -1.0;
    return s;
}

TwoModeCovariance equilibrium_covariance(const TwoModeSystem& sys) {
    const double w0sq = sys.osc.mass * sys.osc.frequency * sys.osc.frequency;
    if (sys.coupling < 0.0 || sys.coupling >= w0sq) {
        throw std::domain_error(
            "equilibrium_covariance: require 0 <= c0 < m w0^2 (stability)");
    }
    const double wp = std::sqrt(sys.osc.frequency * sys.osc.frequency -
                                sys.coupling / sys.osc.mass);
    const double wm = std::sqrt(sys.osc.frequency * sys.osc.frequency +
                                sys.coupling / sys.osc.mass);

    const OscillatorParams op{sys.osc.mass, wp};
    const OscillatorParams om{sys.osc.mass, wm};
    const double qp = variance_q(op, sys.bath);
    const double pp = variance_p(op, sys.bath);
    const double qm = variance_q(om, sys.bath);
    const double pm = variance_p(om, sys.bath);

    TwoModeCovariance cov;
    cov.sigma = Eigen::Matrix4d::Zero();
    cov.sigma(0, 0) = cov.sigma(1, 1) = 0.5 * (qp + qm);
    cov.sigma(0, 1) = cov.sigma(1, 0) = 0.5 * (qp - qm);
    cov.sigma(2, 2) = cov.sigma(3, 3) = 0.5 * (pp + pm);
    cov.sigma(2, 3) = cov.sigma(3, 2) = 0.5 * (pp - pm);
    cov.symplectic_eigs = spectrum_of(cov.sigma);
    return cov;
}

double log_negativity(const TwoModeCovariance& cov) {
    check_covariance(cov.sigma);
    // partial transpose of mode 2: p2 -> -p2
    Eigen::Matrix4d pt = cov.sigma;
    for (int i = 0; i < 4; ++i) {
        if (i != 3) {
            pt(3, i) = -pt(3, i);
            pt(i, 3) = -pt(i, 3);
        }
    }
    const auto eigs = spectrum_of(pt);
    double en = 0.0;
    for (const auto& l : eigs) {
        const double two_abs = 2.0 * std::abs(l);
        if (two_abs < 1.0) en -= 0.5 * std::log2(two_abs);
    }
    return en < kNegativityFloor ? 0.0 : en;
}

bool separability(const TwoModeCovariance& cov) {
    return log_negativity(cov) == 0.0;
}

double critical_temperature(const TwoModeSystem& proto, double t_lo,
                            double t_hi) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
        throw std::domain_error("critical_temperature: need 0 < t_lo < t_hi");
    }
    auto en_at = [&](double t) {
        TwoModeSystem sys = proto;
        sys.bath = BathParams(t, proto.bath.spectral);
        return log_negativity(equilibrium_covariance(sys));
    };
    double e_lo = en_at(t_lo);
    double e_hi = en_at(t_hi);
    if (!(e_lo > 0.0) || e_hi != 0.0) {
        throw std::domain_error(
            "critical_temperature: bracket invalid (need E_N(t_lo)>0, "
            "E_N(t_hi)=0)");
    }
    // spot-check monotone decrease along the bracket
    double prev = e_lo;
    for (int i = 1; i <= 4; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / 5.0;
        const double e = en_at(t);
        if (e > prev + 1e-9) {
            throw std::domain_error(
                "critical_temperature: E_N is not monotone on the bracket");
        }
        prev = e;
    }
    double lo = t_lo, hi = t_hi;
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        if (en_at(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double min_physicality_eigenvalue(const TwoModeCovariance& cov) {
    using Cd = std::complex<double>;
    Eigen::Matrix4cd h = cov.sigma.cast<Cd>() +
                         Cd(0.0, 0.5) * symplectic_form().cast<Cd>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    return es.eigenvalues().minCoeff();
}

}  // namespace quench
