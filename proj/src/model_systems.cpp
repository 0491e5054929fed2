#include "floquet/model_systems.hpp"

#include <cmath>

namespace floquet {

PulseTrain::PulseTrain(double amp_first_half, double amp_second_half, double period)
    : amp_first_(amp_first_half), amp_second_(amp_second_half), period_(period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw ValidationError("PulseTrain: period must be positive and finite");
    }
    if (amp_first_ < 0.0 || amp_second_ < 0.0 || !std::isfinite(amp_first_) ||
        !std::isfinite(amp_second_)) {
        throw ValidationError("PulseTrain: amplitudes must be finite and nonnegative");
    }
}

PulseTrain PulseTrain::probe(double amplitude, double period) {
    return PulseTrain(amplitude, 0.0, period);
}

PulseTrain PulseTrain::control(double amplitude, double period) {
    return PulseTrain(0.0, amplitude, period);
}

PulseTrain PulseTrain::constant(double amplitude, double period) {
    return PulseTrain(amplitude, amplitude, period);
}

double PulseTrain::value(double t) const {
    double phase = std::fmod(t, period_);
    if (phase < 0.0) phase += period_;
    // Half-open halves; t = period/2 lands in the second half.
    return phase < period_ / 2.0 ? amp_first_ : amp_second_;
}

void TwoLevelParams::validate() const {
    if (!(period > 0.0)) throw ValidationError("TwoLevelParams: period must be positive");
    if (gamma10 < 0.0 || gamma1_phi < 0.0) {
        throw ValidationError("TwoLevelParams: rates must be nonnegative");
    }
    if (omega_p < 0.0) throw ValidationError("TwoLevelParams: omega_p must be nonnegative");
    if (!std::isfinite(delta)) throw ValidationError("TwoLevelParams: delta must be finite");
}

void ThreeLevelParams::validate() const {
    two_level().validate();
    if (gamma21 < 0.0 || gamma2_phi < 0.0) {
        throw ValidationError("ThreeLevelParams: rates must be nonnegative");
    }
    if (omega_c < 0.0) throw ValidationError("ThreeLevelParams: omega_c must be nonnegative");
}

TwoLevelParams ThreeLevelParams::two_level() const {
    return TwoLevelParams{delta, omega_p, period, gamma10, gamma1_phi};
}

void LabFrameParams::validate(WarningLog* warnings) const {
    base.validate();
    if (!(omega_probe > 0.0)) {
        throw ValidationError("LabFrameParams: carrier frequency must be positive");
    }
    if (base.omega_p / omega10() > 0.1) {
        warn(warnings,
             "lab frame: omega_p is not small against omega10; the rotating-frame "
             "comparison may be inaccurate");
    }
}

ComplexMatrix transition_op(int dim, int i, int j) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix hamiltonian_two_level(const TwoLevelParams& p, double t) {
    const double drive = p.probe_train().value(t);
    ComplexMatrix h(2, 2);
    h << -p.delta / 2.0, -drive / 2.0,
         -drive / 2.0, p.delta / 2.0;
    return h;
}

ComplexMatrix hamiltonian_three_level(const ThreeLevelParams& p, double t) {
    const double probe = p.probe_train().value(t);
    const double control = p.control_train().value(t);
    ComplexMatrix h = ComplexMatrix::Zero(3, 3);
    h(0, 0) = -p.delta / 2.0;
    h(1, 1) = p.delta / 2.0;
    h(2, 2) = p.delta / 2.0;  // resonant control leaves |2> degenerate with |1>
    h(0, 1) = h(1, 0) = -probe / 2.0;
    h(1, 2) = h(2, 1) = -control / 2.0;
    return h;
}

ComplexMatrix hamiltonian_lab_frame(const LabFrameParams& p, double t) {
    const double drive = p.base.probe_train().value(t);
    const Complex coupling =
        -drive * (1.0 + std::exp(2.0 * imag_unit * p.omega_probe * t)) / 2.0;
    ComplexMatrix h(2, 2);
    h << -p.base.delta / 2.0, coupling,
         std::conj(coupling), p.base.delta / 2.0;
    return h;
}

DissipatorSet dissipators(const TwoLevelParams& p) {
    DissipatorSet set;
    set.damping.push_back({p.gamma10, transition_op(2, 0, 1)});
    set.dephasing.push_back({p.gamma1_phi, transition_op(2, 1, 1)});
    return set;
}

DissipatorSet dissipators(const ThreeLevelParams& p) {
    DissipatorSet set;
    set.damping.push_back({p.gamma10, transition_op(3, 0, 1)});
    set.damping.push_back({p.gamma21, transition_op(3, 1, 2)});
    set.dephasing.push_back({p.gamma1_phi, transition_op(3, 1, 1)});
    set.dephasing.push_back({p.gamma2_phi, transition_op(3, 2, 2)});
    return set;
}

}  // namespace floquet
