#include "quench/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace quench {

namespace {
constexpr std::complex<double> I{0.0, 1.0};
}

ControlPulse ControlPulse::piecewise_constant(
    std::vector<std::pair<double, double>> segments) {
    if (segments.empty()) {
        throw std::invalid_argument("ControlPulse: need at least one segment");
    }
    ControlPulse p;
    p.kind_ = Kind::Piecewise;
    double t = 0.0;
    for (const auto& [dur, val] : segments) {
        if (!(dur > 0.0) || !std::isfinite(val)) {
            throw std::invalid_argument(
                "ControlPulse: segment durations must be positive, values finite");
        }
        t += dur;
        p.edges_.push_back(t);
        p.values_.push_back(val);
    }
    return p;
}

ControlPulse ControlPulse::sampled(double dt, std::vector<double> values) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("ControlPulse: sample spacing must be positive");
    }
    std::vector<std::pair<double, double>> segs;
    segs.reserve(values.size());
    for (double v : values) segs.emplace_back(dt, v);
    return piecewise_constant(std::move(segs));
}

ControlPulse ControlPulse::maintain(double k) {
    if (!std::isfinite(k)) {
        throw std::invalid_argument("ControlPulse: k must be finite");
    }
    ControlPulse p;
    p.kind_ = Kind::Maintain;
    p.k_ = k;
    return p;
}

ControlPulse ControlPulse::combined(ControlPulse cool, double k,
                                    double t_switch) {
    if (!(t_switch > 0.0) || cool.duration() < t_switch) {
        throw std::invalid_argument(
            "ControlPulse: cooling pulse must cover [0, t_switch]");
    }
    ControlPulse p = ControlPulse::maintain(k);
    p.kind_ = Kind::Combined;
    p.t_switch_ = t_switch;
    p.edges_ = std::move(cool.edges_);
    p.values_ = std::move(cool.values_);
    p.const_value_ = cool.const_value_;
    if (p.edges_.empty()) p.edges_.push_back(t_switch);  // constant cool pulse
    if (p.values_.empty()) p.values_.push_back(p.const_value_);
    return p;
}

ControlPulse ControlPulse::constant(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("ControlPulse: value must be finite");
    }
    ControlPulse p;
    p.kind_ = Kind::Constant;
    p.const_value_ = value;
    return p;
}

double ControlPulse::value(double t) const {
    switch (kind_) {
        case Kind::Constant:
            return const_value_;
        case Kind::Maintain:
            return std::exp(-50.0 * t) + k_;
        case Kind::Combined:
            if (t > t_switch_) return std::exp(-50.0 * (t - t_switch_)) + k_;
            [[fallthrough]];
        case Kind::Piecewise: {
            // right-continuous: a step starting exactly on a segment edge
            // samples the new segment
            auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
            if (it == edges_.end()) return values_.back();
            return values_[static_cast<std::size_t>(it - edges_.begin())];
        }
    }
    return 0.0;
}

double ControlPulse::duration() const {
    if (kind_ == Kind::Piecewise) return edges_.back();
    return std::numeric_limits<double>::infinity();
}

Moments rhs(const Moments& m, const DynParams& p, double c) {
    const double w = p.omega_m;
    const double g = p.gamma;
    const double k = p.kappa;
    const double nT = p.n_t;
    const double nc = p.n_cav;

    Moments d;
    d[m_aa] = -2.0 * I * w * m[m_aa] + I * c * (m[m_ab] + m[m_abd]) - g * m[m_aa];
    d[m_aad] = -0.5 * I * c * (m[m_bda] - m[m_bdad] + m[m_ba] - m[m_bad]) -
               g * (nT + 1.0) * m[m_ada] + g * nT * m[m_aad];
    d[m_ab] = -2.0 * I * w * m[m_ab] +
              0.5 * I * c * (m[m_bb] + m[m_aa] + m[m_bdb] + m[m_aad]) -
              0.5 * g * m[m_ab] - 0.5 * k * m[m_ba];
    d[m_abd] = 0.5 * I * c * (m[m_bbd] - m[m_aad] + m[m_bdbd] - m[m_aa]) -
               0.5 * g * m[m_abd] - 0.5 * k * m[m_bda];
    d[m_ba] = -2.0 * I * w * m[m_ba] +
              0.5 * I * c * (m[m_bb] + m[m_aa] + m[m_bdb] + m[m_aad]) -
              0.5 * g * m[m_ab] - 0.5 * k * m[m_ba];
    d[m_bad] = -0.5 * I * c * (m[m_bdb] - m[m_ada] + m[m_bb] - m[m_adad]) -
               0.5 * (g + k) * m[m_bad];
    d[m_bb] = -2.0 * I * w * m[m_bb] + I * c * (m[m_ba] + m[m_bad]) - k * m[m_bb];
    d[m_bbd] = -0.5 * I * c * (m[m_bad] - m[m_bdad] + m[m_ba] - m[m_bda]) -
               k * (nc + 1.0) * m[m_bdb] + k * nc * m[m_bbd];
    d[m_ada] = 0.5 * I * c * (m[m_bad] + m[m_bdad] - m[m_ba] - m[m_bda]) -
               g * (nT + 1.0) * m[m_ada] + g * nT * m[m_aad];
    // sign of the coupling term fixed to the Hermitian conjugate of d<aa>/dt
    d[m_adad] = 2.0 * I * w * m[m_adad] - I * c * (m[m_bdad] + m[m_bad]) -
                g * m[m_adad];
    // damping fixed to -(g+k)/2, matching its operator twin <ba+>
    d[m_adb] = -0.5 * I * c * (m[m_bdb] - m[m_ada] + m[m_bb] - m[m_adad]) -
               0.5 * (g + k) * m[m_adb];
    d[m_adbd] = 2.0 * I * w * m[m_adbd] -
                0.5 * I * c * (m[m_adad] + m[m_bdbd] + m[m_bbd] + m[m_ada]) -
                0.5 * g * m[m_adbd] - 0.5 * k * m[m_bdad];
    d[m_bda] = 0.5 * I * c * (m[m_bbd] - m[m_aad] + m[m_bdbd] - m[m_aa]) -
               0.5 * g * m[m_bda] - 0.5 * k * m[m_abd];
    d[m_bdad] = 2.0 * I * w * m[m_bdad] -
                0.5 * I * c * (m[m_adad] + m[m_bdbd] + m[m_bbd] + m[m_ada]) -
                0.5 * g * m[m_bdad] - 0.5 * k * m[m_adbd];
    // gain term fixed to kappa*n_cav (conserves the b commutator)
    d[m_bdb] = 0.5 * I * c * (m[m_bda] + m[m_bdad] - m[m_ba] - m[m_bad]) -
               k * (nc + 1.0) * m[m_bdb] + k * nc * m[m_bbd];
    // sign fixed to the Hermitian conjugate of d<bb>/dt
    d[m_bdbd] = 2.0 * I * w * m[m_bdbd] - I * c * (m[m_bdad] + m[m_bda]) -
                k * m[m_bdbd];
    return d;
}

MomentState thermal_initial(double n_t, double n_cav) {
    if (n_t < 0.0 || n_cav < 0.0) {
        throw std::invalid_argument("thermal_initial: occupancies must be >= 0");
    }
    MomentState s;
    s.m[m_aad] = n_t + 1.0;
    s.m[m_ada] = n_t;
    s.m[m_bbd] = n_cav + 1.0;
    s.m[m_bdb] = n_cav;
    return s;
}

double phonon_number(const MomentState& s) {
    if (std::abs(s.m[m_ada].imag()) >= 1e-9) {
        throw std::runtime_error(
            "phonon_number: imaginary residue on <a+a> exceeds 1e-9");
    }
    return s.m[m_ada].real();
}

double commutator_drift(const Moments& m) {
    return std::max(std::abs(m[m_aad] - m[m_ada] - 1.0),
                    std::abs(m[m_bbd] - m[m_bdb] - 1.0));
}

double hermiticity_drift(const Moments& m) {
    auto conj_dev = [&](int i, int j) {
        return std::abs(m[static_cast<std::size_t>(i)] -
                        std::conj(m[static_cast<std::size_t>(j)]));
    };
    double dev = 0.0;
    dev = std::max(dev, conj_dev(m_adad, m_aa));
    dev = std::max(dev, conj_dev(m_bdbd, m_bb));
    dev = std::max(dev, conj_dev(m_bdad, m_ab));
    dev = std::max(dev, conj_dev(m_adbd, m_ba));
    dev = std::max(dev, conj_dev(m_bad, m_abd));
    dev = std::max(dev, conj_dev(m_bda, m_adb));
    dev = std::max(dev, std::abs(m[m_aad].imag()));
    dev = std::max(dev, std::abs(m[m_ada].imag()));
    dev = std::max(dev, std::abs(m[m_bbd].imag()));
    dev = std::max(dev, std::abs(m[m_bdb].imag()));
    // operator identities carried as separate variables
    dev = std::max(dev, std::abs(m[m_ab] - m[m_ba]));
    dev = std::max(dev, std::abs(m[m_abd] - m[m_bda]));
    dev = std::max(dev, std::abs(m[m_adb] - m[m_bad]));
    dev = std::max(dev, std::abs(m[m_adbd] - m[m_bdad]));
    return dev;
}

Trajectory integrate(const MomentState& initial, const DynParams& p,
                     const ControlPulse& pulse, double t_f, double dt,
                     int output_stride) {
    const double period = 2.0 * M_PI / p.omega_m;
    if (!(dt > 0.0) || dt > period / 500.0) {
        throw std::domain_error("integrate: require 0 < dt <= period/500");
    }
    if (!(t_f > 0.0)) {
        throw std::domain_error("integrate: horizon must be positive");
    }
    if (pulse.duration() < t_f) {
        throw std::domain_error("integrate: pulse shorter than the horizon");
    }
    if (output_stride < 1) {
        throw std::invalid_argument("integrate: output_stride must be >= 1");
    }

    const long nsteps = std::max<long>(1, std::lround(t_f / dt));
    const double h = t_f / static_cast<double>(nsteps);

    Trajectory traj;
    traj.dt = h;
    traj.t.push_back(initial.t);
    traj.m.push_back(initial.m);
    traj.pulse.push_back(pulse.value(0.0));

    Moments x = initial.m;
    Moments k1, k2, k3, k4, tmp;
    for (long n = 0; n < nsteps; ++n) {
        const double t = static_cast<double>(n) * h;
        const double c0 = pulse.value(t);
        const double cm = pulse.value(t + 0.5 * h);
        const double ce = pulse.value(t + h);
        k1 = rhs(x, p, c0);
        for (int i = 0; i < 16; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
        k2 = rhs(tmp, p, cm);
        for (int i = 0; i < 16; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
        k3 = rhs(tmp, p, cm);
        for (int i = 0; i < 16; ++i) tmp[i] = x[i] + h * k3[i];
        k4 = rhs(tmp, p, ce);
        for (int i = 0; i < 16; ++i) {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if ((n + 1) % output_stride == 0 || n + 1 == nsteps) {
            traj.t.push_back(initial.t + static_cast<double>(n + 1) * h);
            traj.m.push_back(x);
            traj.pulse.push_back(ce);
        }
    }

    if (commutator_drift(x) > 1e-6 || hermiticity_drift(x) > 1e-6) {
        throw std::runtime_error(
            "integrate: invariant drift exceeded 1e-6 (step too large?)");
    }
    return traj;
}

}  // namespace quench
