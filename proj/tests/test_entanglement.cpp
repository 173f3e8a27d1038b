#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "quench/entanglement.hpp"

using namespace quench;

namespace {

TwoModeSystem make_system(double c0, double gamma, double wd, double temp) {
    return {OscillatorParams{1.0, 1.0}, c0,
            BathParams(temp, SpectralDensity::drude(gamma, wd))};
}

}  // namespace

TEST_CASE("decoupled oscillators give a diagonal covariance") {
    const auto sys = make_system(0.0, 0.01, 10.0, 0.5);
    const auto cov = equilibrium_covariance(sys);
    CHECK(cov.sigma(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cov.sigma(2, 3) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cov.sigma(0, 0) ==
          doctest::Approx(variance_q(sys.osc, sys.bath)).epsilon(1e-12));
    CHECK(log_negativity(cov) == 0.0);
    CHECK(separability(cov));
}

TEST_CASE("ground-state normal modes at weak damping and low T") {
    const double c0 = 0.2;
    const auto sys = make_system(c0, 1e-10, 10.0, 1e-3);
    const auto cov = equilibrium_covariance(sys);
    const double wp = std::sqrt(1.0 - c0);
    const double wm = std::sqrt(1.0 + c0);
    CHECK(cov.sigma(0, 0) ==
          doctest::Approx(0.25 / wp + 0.25 / wm).epsilon(1e-6));
    CHECK(cov.sigma(2, 2) == doctest::Approx(0.25 * (wp + wm)).epsilon(1e-6));
}

TEST_CASE("covariance entries equal the per-normal-mode variance sums") {
    const double c0 = 0.1;
    const auto sys = make_system(c0, 0.01, 10.0, 0.1);
    const auto cov = equilibrium_covariance(sys);
    const OscillatorParams plus{1.0, std::sqrt(1.0 - c0)};
    const OscillatorParams minus{1.0, std::sqrt(1.0 + c0)};
    const double qp = variance_q(plus, sys.bath);
    const double qm = variance_q(minus, sys.bath);
    const double pp = variance_p(plus, sys.bath);
    const double pm = variance_p(minus, sys.bath);
    CHECK(cov.sigma(0, 0) == doctest::Approx(0.5 * (qp + qm)).epsilon(1e-13));
    CHECK(cov.sigma(0, 1) == doctest::Approx(0.5 * (qp - qm)).epsilon(1e-13));
    CHECK(cov.sigma(2, 2) == doctest::Approx(0.5 * (pp + pm)).epsilon(1e-13));
    CHECK(cov.sigma(2, 3) == doctest::Approx(0.5 * (pp - pm)).epsilon(1e-13));
}

TEST_CASE("instability rejected") {
    CHECK_THROWS_AS(equilibrium_covariance(make_system(1.0, 0.01, 10.0, 0.5)),
                    std::domain_error);
    CHECK_THROWS_AS(equilibrium_covariance(make_system(-0.1, 0.01, 10.0, 0.5)),
                    std::domain_error);
}

TEST_CASE("two-mode squeezed covariance with PT eigenvalue 1/4 gives E_N = 1") {
    // squeezing r = ln(2)/2: cosh 2r = 1.25, sinh 2r = 0.75, so the PT
    // symplectic eigenvalues are (1/2) e^{-+ 2r} = {1/4, 1}.
    TwoModeCovariance cov;
    cov.sigma << 0.625, 0.375, 0.0, 0.0,
                 0.375, 0.625, 0.0, 0.0,
                 0.0, 0.0, 0.625, -0.375,
                 0.0, 0.0, -0.375, 0.625;
    cov.symplectic_eigs = {};
    CHECK(log_negativity(cov) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log negativity input validation") {
    TwoModeCovariance bad;
    bad.sigma = Eigen::Matrix4d::Identity();
    bad.sigma(0, 1) = 0.5;  // asymmetric
    CHECK_THROWS_AS(log_negativity(bad), std::domain_error);
    TwoModeCovariance neg;
    neg.sigma = -Eigen::Matrix4d::Identity();
    CHECK_THROWS_AS(log_negativity(neg), std::domain_error);
}

TEST_CASE("entanglement survives in the low-T non-Markovian corner") {
    const auto sys = make_system(0.2, 0.005, 1.0, 0.1);
    const auto cov = equilibrium_covariance(sys);
    CHECK(log_negativity(cov) > 0.1);
    CHECK(!separability(cov));
    // high temperature: separable for every tested coupling
    for (double c0 : {0.05, 0.1, 0.2}) {
        const auto hot = make_system(c0, 0.005, 1.0, 5.0);
        CHECK(separability(equilibrium_covariance(hot)));
    }
}

TEST_CASE("E_N vanishes for uncoupled systems across random baths") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double temp = 0.05 * std::pow(100.0, u(rng));
        const double gamma = 1e-3 * std::pow(100.0, u(rng));
        const double wd = 0.1 * std::pow(1000.0, u(rng));
        const auto cov = equilibrium_covariance(make_system(0.0, gamma, wd, temp));
        CHECK(log_negativity(cov) == 0.0);
    }
}

TEST_CASE("symplectic spectrum pairing and physicality") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        const double c0 = 0.25 * u(rng);
        const double temp = 0.05 * std::pow(40.0, u(rng));
        const double gamma = 1e-3 * std::pow(100.0, u(rng));
        const double wd = 0.1 * std::pow(100.0, u(rng));
        const auto cov = equilibrium_covariance(make_system(c0, gamma, wd, temp));
        // +/- pairing: sorted magnitudes come in equal pairs
        std::array<double, 4> mag;
        for (int k = 0; k < 4; ++k) mag[k] = std::abs(cov.symplectic_eigs[k]);
        std::sort(mag.begin(), mag.end());
        CHECK(std::abs(mag[0] - mag[1]) < 1e-10);
        CHECK(std::abs(mag[2] - mag[3]) < 1e-10);
        // physical state: sigma + (i/2) Sigma >= 0 and 2 nu >= 1
        CHECK(min_physicality_eigenvalue(cov) >= -1e-10);
        CHECK(2.0 * mag[0] >= 1.0 - 1e-9);
    }
}

TEST_CASE("E_N invariant under 1<->2 relabeling") {
    const auto sys = make_system(0.15, 0.01, 5.0, 0.1);
    auto cov = equilibrium_covariance(sys);
    // perturb symmetrically to avoid the trivially symmetric case
    cov.sigma(0, 2) += 1e-3;
    cov.sigma(2, 0) += 1e-3;
    cov.sigma(1, 3) += 1e-3;
    cov.sigma(3, 1) += 1e-3;
    const double e1 = log_negativity(cov);
    // swap modes: permutation (q1<->q2, p1<->p2)
    Eigen::Matrix4d perm = Eigen::Matrix4d::Zero();
    perm(0, 1) = perm(1, 0) = perm(2, 3) = perm(3, 2) = 1.0;
    TwoModeCovariance swapped;
    swapped.sigma = perm * cov.sigma * perm.transpose();
    const double e2 = log_negativity(swapped);
    CHECK(e1 == doctest::Approx(e2).epsilon(1e-10));
    CHECK(e1 > 0.0);
}

TEST_CASE("E_N monotone along the Fig-3.5-style axes") {
    // temperature up -> E_N down
    double prev = 1e9;
    for (double t : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        const double e = log_negativity(
            equilibrium_covariance(make_system(0.2, 0.005, 10.0, t)));
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
    // damping up -> E_N down
    prev = 1e9;
    for (double g : {0.002, 0.01, 0.05, 0.1}) {
        const double e = log_negativity(
            equilibrium_covariance(make_system(0.2, g, 10.0, 0.1)));
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
    // cutoff up -> E_N down (more effective damping)
    prev = 1e9;
    for (double wd : {0.1, 1.0, 10.0, 100.0}) {
        const double e = log_negativity(
            equilibrium_covariance(make_system(0.2, 0.01, wd, 0.1)));
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
    // coupling down -> E_N down
    prev = 1e9;
    for (double c0 : {0.2, 0.15, 0.1, 0.05}) {
        const double e = log_negativity(
            equilibrium_covariance(make_system(c0, 0.005, 10.0, 0.1)));
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
}

TEST_CASE("critical temperature bisection and monotonicity") {
    auto proto = [&](double c0, double gamma, double wd) {
        return make_system(c0, gamma, wd, 1.0);  // temperature replaced inside
    };
    // invalid bracket
    CHECK_THROWS_AS(
        critical_temperature(proto(0.2, 0.005, 1.0), 2.0, 5.0),
        std::domain_error);

    // more non-Markovian (smaller cutoff) -> higher T*
    const double t_wd1 = critical_temperature(proto(0.2, 0.005, 1.0), 0.05, 2.0);
    const double t_wd100 =
        critical_temperature(proto(0.2, 0.005, 100.0), 0.05, 2.0);
    CHECK(t_wd1 >= t_wd100);

    // stronger coupling -> higher T*
    const double t_c_small =
        critical_temperature(proto(0.05, 0.005, 10.0), 0.05, 2.0);
    const double t_c_large =
        critical_temperature(proto(0.20, 0.005, 10.0), 0.05, 2.0);
    CHECK(t_c_large >= t_c_small);

    // weaker damping -> higher T*
    const double t_g_small =
        critical_temperature(proto(0.2, 0.005, 10.0), 0.05, 2.0);
    const double t_g_large =
        critical_temperature(proto(0.2, 0.1, 10.0), 0.05, 2.0);
    CHECK(t_g_small >= t_g_large);
}
