#pragma once

#include <optional>
#include <vector>

#include "floquet/model_systems.hpp"
#include "floquet/quantum_core.hpp"
#include "floquet/warnings.hpp"

namespace floquet {

/// Bessel function of the first kind J_k(x) for integer order, |x| < 1e4.
/// Power series for small arguments, backward recurrence with sum
/// normalization otherwise.
double bessel_j(int k, double x);

/// Frequency comb of the square-wave probe envelope: a dc component
/// omega_p/2 plus per-tooth amplitudes omega_p/((2n-1)pi) at odd multiples
/// of the fundamental. `omega` is the angular fundamental of the envelope.
struct FourierComponents {
    struct Harmonic {
        double amplitude;  // per-tooth amplitude Omega_pn
        double frequency;  // omega_n = (2n-1) omega
    };
    double omega_p = 0.0;
    double omega = 0.0;
    double dc = 0.0;
    std::vector<Harmonic> harmonics;
};

FourierComponents fourier_components(double omega_p, double omega, int n_max);

/// Partial-sum reconstruction of the envelope aligned to the probe train
/// (on during the first half-period). Each tooth contributes with twice its
/// one-sided amplitude.
double fourier_reconstruct(const FourierComponents& fc, double t);

/// Truncation controls for the nested Bessel product expansion of the
/// effective drive weights Omega_n.
struct BesselSumConfig {
    int q_max = 4;          // number of retained envelope harmonics (model order)
    int index_margin = 12;  // per-factor order cutoff is ceil(|x|) + margin
    int n_max = 0;          // outer-sum range; 0 means the full finite support
    bool self_check = true; // re-run with doubled order cutoffs and compare
    double self_check_tol = 1e-10;

    void validate() const;
};

/// Weights Omega_n of the resonant quasi-harmonic decomposition, indexed by
/// n in [-support, support].
struct BesselOmegaSeries {
    int support = 0;
    std::vector<double> values;  // values[n + support] = Omega_n

    double at(int n) const {
        return (n < -support || n > support) ? 0.0 : values[static_cast<std::size_t>(n + support)];
    }
};

BesselOmegaSeries bessel_omega_series(double omega_p, double omega, const BesselSumConfig& cfg);
double bessel_omega_n(int n, double omega_p, double omega, const BesselSumConfig& cfg);

/// Weak-drive steady excitation: saturated central Lorentzian plus sideband
/// Lorentzians at the comb teeth. `symmetrized` adds the mirrored teeth at
/// positive detunings (default; the one-sided literal form is kept for
/// reference).
double weak_drive_rho11(double delta, const TwoLevelParams& params, int n_max,
                        bool symmetrized = true, WarningLog* warnings = nullptr);

struct ResonantSteady {
    double rho11;
    double im_rho10;
};

/// Closed-form resonant (delta = 0) steady state of the modulated two-level
/// system, summing Lorentzians at Omega_p/2 - n*omega weighted by Omega_n^2.
ResonantSteady resonant_steady(double omega_p, const TwoLevelParams& params,
                               const BesselSumConfig& cfg, WarningLog* warnings = nullptr);

/// Drive amplitude of the n-th coherent-destruction-of-tunneling locus at
/// detuning delta, if it exists: sqrt((2 n omega)^2 - delta^2).
std::optional<double> cdt_locus(double omega, int n, double delta);

/// Optical Bloch components U, V, W; u = [rho11 - rho00 + rho01 - rho10]/2,
/// v = [rho10 + rho01]/2, w = [rho11 - rho00 - rho01 + rho10]/2.
struct BlochComponents {
    Complex u;
    Complex v;
    Complex w;
};

struct BlochTrace {
    double period = 0.0;
    std::vector<BlochComponents> points;  // points[k] at time k*period
};

BlochComponents bloch_from_density(const DensityMatrix& rho);
ComplexMatrix bloch_to_density(const BlochComponents& b);
double bloch_rho11(const BlochComponents& b);
double bloch_im_rho10(const BlochComponents& b);

/// Integrate the resonant optical Bloch equations from the ground state,
/// sampling at period ends. Exact for delta = 0 (no approximation beyond the
/// master equation itself).
BlochTrace integrate_bloch_resonant(const TwoLevelParams& params, double t_end,
                                    double reltol = 1e-9);

}  // namespace floquet
