#pragma once

#include <array>
#include <complex>
#include <vector>

namespace quench {

/// Second moments of the coupled mechanical (a) / optical (b) modes, in the
/// fixed order
///   0 <aa>    1 <aa+>   2 <ab>    3 <ab+>   4 <ba>    5 <ba+>
///   6 <bb>    7 <bb+>   8 <a+a>   9 <a+a+> 10 <a+b>  11 <a+b+>
///  12 <b+a>  13 <b+a+> 14 <b+b>  15 <b+b+>
/// Commutators <aa+>-<a+a> = <bb+>-<b+b> = 1 are conserved exactly by the
/// equations of motion; Hermitian pairing (e.g. <a+a+> = conj<aa>) and the
/// operator identities <ab>=<ba>, <ab+>=<b+a>, <a+b>=<ba+>, <a+b+>=<b+a+>
/// are preserved whenever the initial state satisfies them.
using Moments = std::array<std::complex<double>, 16>;

enum MomentIndex {
    m_aa = 0, m_aad = 1, m_ab = 2, m_abd = 3, m_ba = 4, m_bad = 5,
    m_bb = 6, m_bbd = 7, m_ada = 8, m_adad = 9, m_adb = 10, m_adbd = 11,
    m_bda = 12, m_bdad = 13, m_bdb = 14, m_bdbd = 15,
};

struct MomentState {
    Moments m{};
    double t = 0.0;
};

/// Both modes evolve at omega_m (resonant red-detuned configuration);
/// gamma/n_t belong to the mechanical mode, kappa/n_cav to the optical one.
struct DynParams {
    double omega_m = 1.0;
    double gamma = 1e-5;
    double kappa = 1e-5;
    double n_t = 0.0;
    double n_cav = 0.0;
};

/// Time-dependent coupling waveform c(t).
class ControlPulse {
  public:
    /// Piecewise-constant: (duration, value) segments from t = 0.
    static ControlPulse piecewise_constant(
        std::vector<std::pair<double, double>> segments);
    /// Uniform segments of width dt (zero-order hold).
    static ControlPulse sampled(double dt, std::vector<double> values);
    /// Maintenance waveform exp(-50 t) + k (clock starts at pulse start).
    static ControlPulse maintain(double k);
    /// Cooling pulse on [0, t_switch], then exp(-50 (t - t_switch)) + k.
    static ControlPulse combined(ControlPulse cool, double k, double t_switch);
    static ControlPulse constant(double value);

    double value(double t) const;
    /// Total covered duration; +inf for maintain/combined/constant.
    double duration() const;

  private:
    enum class Kind { Piecewise, Maintain, Combined, Constant };
    Kind kind_ = Kind::Constant;
    std::vector<double> edges_;   // cumulative segment end times
    std::vector<double> values_;  // per-segment values
    double k_ = 0.0;
    double t_switch_ = 0.0;
    double const_value_ = 0.0;
};

/// Right-hand side of the 16 coupled moment equations at coupling value c.
/// Linear in the moments; see the module notes on the four printed-source
/// sign/damping corrections required to preserve the exact invariants.
Moments rhs(const Moments& m, const DynParams& p, double c);

/// Thermal product state: <a+a> = n_t, <b+b> = n_cav, commutator partners
/// offset by one, every cross moment zero.
MomentState thermal_initial(double n_t, double n_cav);

/// Re<a+a>; throws if the imaginary residue exceeds 1e-9 (corrupted state).
double phonon_number(const MomentState& s);

/// Max deviation of the two mode commutators from 1.
double commutator_drift(const Moments& m);

/// Max mismatch across the Hermitian-pairing table.
double hermiticity_drift(const Moments& m);

struct Trajectory {
    std::vector<double> t;
    std::vector<Moments> m;
    std::vector<double> pulse;  // c at the recorded times
    double dt = 0.0;

    double nbar(std::size_t i) const { return m[i][m_ada].real(); }
};

/// Classical fixed-step RK4 with the pulse sampled at stage times.
/// Requires dt <= period/500 and a pulse covering [0, t_f]. Records every
/// `output_stride` steps (the initial state is always included). Throws if
/// the commutator/Hermiticity drift exceeds 1e-6 at the end of the run.
Trajectory integrate(const MomentState& initial, const DynParams& p,
                     const ControlPulse& pulse, double t_f, double dt,
                     int output_stride = 1);

}  // namespace quench
