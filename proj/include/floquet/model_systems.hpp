#pragma once

#include "floquet/quantum_core.hpp"
#include "floquet/warnings.hpp"

namespace floquet {

/// Square-wave drive envelope: amp_first_half on [0, period/2), then
/// amp_second_half on [period/2, period), repeated. The boundary at half
/// period belongs to the second half.
class PulseTrain {
public:
    PulseTrain(double amp_first_half, double amp_second_half, double period);

    /// Probe scheme: on in the first half-period, off in the second.
    static PulseTrain probe(double amplitude, double period);
    /// Control scheme, asynchronous to the probe: off first, on second.
    static PulseTrain control(double amplitude, double period);
    /// Un-modulated baseline: the same amplitude in both halves.
    static PulseTrain constant(double amplitude, double period);

    double value(double t) const;
    double amp_first_half() const { return amp_first_; }
    double amp_second_half() const { return amp_second_; }
    double period() const { return period_; }
    /// Modulation frequency 1/period.
    double frequency() const { return 1.0 / period_; }

private:
    double amp_first_;
    double amp_second_;
    double period_;
};

/// Driven two-level system parameters. `period` is the square-wave modulation
/// period of the probe envelope; all rates are in units of gamma10.
struct TwoLevelParams {
    double delta = 0.0;      // omega_10 - omega_p
    double omega_p = 0.0;    // probe Rabi amplitude while on
    double period = 1.0;     // modulation period
    double gamma10 = 1.0;    // population damping 1 -> 0
    double gamma1_phi = 0.0; // pure dephasing of |1>

    double gamma1_prime() const { return gamma10 / 2.0 + gamma1_phi; }
    double gamma1() const { return 3.0 * gamma10 / 4.0 + gamma1_phi / 2.0; }

    void validate() const;
    PulseTrain probe_train() const { return PulseTrain::probe(omega_p, period); }
};

/// Ladder three-level system: probe on 0<->1, resonant control on 1<->2,
/// modulated asynchronously with the probe.
struct ThreeLevelParams {
    double delta = 0.0;
    double omega_p = 0.0;
    double omega_c = 0.0;    // control Rabi amplitude while on
    double period = 1.0;
    double gamma10 = 1.0;
    double gamma21 = 0.0;    // population damping 2 -> 1
    double gamma1_phi = 0.0;
    double gamma2_phi = 0.0; // pure dephasing of |2>

    double gamma1_prime() const { return gamma10 / 2.0 + gamma1_phi; }
    double gamma1() const { return 3.0 * gamma10 / 4.0 + gamma1_phi / 2.0; }

    /// Dressed-coherence decay rate Gamma.
    double big_gamma() const {
        return (gamma10 + gamma21) / 4.0 + (gamma1_phi + gamma2_phi) / 2.0;
    }
    /// Dressed cross-coupling (interference) rate Lambda.
    double big_lambda() const {
        return (gamma10 - gamma21) / 4.0 + (gamma1_phi - gamma2_phi) / 2.0;
    }

    void validate() const;
    TwoLevelParams two_level() const;
    PulseTrain probe_train() const { return PulseTrain::probe(omega_p, period); }
    PulseTrain control_train() const { return PulseTrain::control(omega_c, period); }
};

/// Two-level system without the rotating-wave approximation: the coupling
/// keeps the counter-rotating phase factor exp(2 i omega_probe t).
struct LabFrameParams {
    TwoLevelParams base;
    double omega_probe = 0.0; // probe carrier frequency

    double omega10() const { return base.delta + omega_probe; }
    void validate(WarningLog* warnings = nullptr) const;
};

ComplexMatrix hamiltonian_two_level(const TwoLevelParams& p, double t);
ComplexMatrix hamiltonian_three_level(const ThreeLevelParams& p, double t);
ComplexMatrix hamiltonian_lab_frame(const LabFrameParams& p, double t);

struct DissipatorSet {
    std::vector<DampingTerm> damping;
    std::vector<DephasingTerm> dephasing;
};

DissipatorSet dissipators(const TwoLevelParams& p);
DissipatorSet dissipators(const ThreeLevelParams& p);

/// |i><j| on a dim-level system.
ComplexMatrix transition_op(int dim, int i, int j);

}  // namespace floquet
