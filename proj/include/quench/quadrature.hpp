#pragma once

#include <functional>

namespace quench::quad {

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_depth = 50;
};

/// Adaptive Simpson integration of f over [a, b].
/// Throws std::runtime_error if the recursion depth limit is hit before the
/// tolerance is met (non-integrable or pathological integrand).
double integrate(const std::function<double(double)>& f, double a, double b,
                 Options opt = {});

/// Integral of f over [a, inf), mapped onto [0, 1) by
/// omega = a + scale * u / (1 - u). `scale` should be a characteristic
/// decay scale of f (e.g. the spectral cutoff).
double integrate_half_line(const std::function<double(double)>& f, double a,
                           double scale, Options opt = {});

}  // namespace quench::quad
