#include "quench/quadrature.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace quench::quad {

namespace {

struct Workspace {
    const std::function<double(double)>& f;
    int max_depth;
    double unresolved = 0.0;  // error estimate of leaves cut off at max_depth
};

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(Workspace& ws, double a, double b, double fa, double fm,
             double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = ws.f(lm);
    const double frm = ws.f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double diff = left + right - whole;
    // Acceptance: the Richardson estimate meets the budget, or the
    // difference is at the roundoff floor of the local values, or the
    // interval cannot be split further in double precision.
    const double roundoff =
        32.0 * DBL_EPSILON * (std::abs(left) + std::abs(right) + std::abs(whole));
    if (std::abs(diff) <= 15.0 * eps || std::abs(diff) <= roundoff ||
        (b - a) <= 8.0 * DBL_EPSILON * (std::abs(a) + std::abs(b) + 1.0)) {
        return left + right + diff / 15.0;
    }
    if (depth >= ws.max_depth) {
        ws.unresolved += std::abs(diff) / 15.0;
        return left + right + diff / 15.0;
    }
    return adapt(ws, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
           adapt(ws, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 Options opt) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("quadrature: require a <= b");
    }
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    const double eps = std::max(opt.abs_tol, opt.rel_tol * std::abs(whole));
    Workspace ws{f, opt.max_depth};
    const double result = adapt(ws, a, b, fa, fm, fb, whole, eps, 0);
    const double budget =
        std::max({opt.abs_tol, opt.rel_tol * std::abs(result), eps});
    if (ws.unresolved > budget) {
        throw std::runtime_error(
            "quadrature: adaptive Simpson failed to converge "
            "(non-integrable or pathological integrand)");
    }
    return result;
}

double integrate_half_line(const std::function<double(double)>& f, double a,
                           double scale, Options opt) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("quadrature: mapping scale must be positive");
    }
    auto mapped = [&](double u) {
        // Clamp just below 1: the mapped point is then far out on the tail,
        // where integrands with >= 1/omega^2 decay are still representable.
        if (u >= 1.0) u = std::nextafter(1.0, 0.0);
        const double om = a + scale * u / (1.0 - u);
        const double jac = scale / ((1.0 - u) * (1.0 - u));
        return f(om) * jac;
    };
    return integrate(mapped, 0.0, 1.0, opt);
}

}  // namespace quench::quad
