#pragma once

#include <utility>
#include <vector>

#include "floquet/model_systems.hpp"
#include "floquet/quantum_core.hpp"
#include "floquet/warnings.hpp"

namespace floquet {

/// Interference-model parameters: control and probe Rabi rates, dressed
/// coherence decay Gamma and cross-coupling Lambda.
struct QiParams {
    double omega_c;
    double omega_p;
    double big_gamma;
    double big_lambda;

    void validate(WarningLog* warnings = nullptr) const;
};

/// Two-Lorentzian (non-interference) model parameters.
struct AtsParams {
    double omega_c;
    double omega_p;
    double big_gamma;

    void validate() const;
};

/// Evaluated interference lineshape with its intermediate terms.
struct QiEvaluation {
    double a;
    double b;
    double value;
};

/// (Gamma, Lambda) from the bare damping and dephasing rates.
std::pair<double, double> gamma_lambda(const ThreeLevelParams& params);

/// Probe absorption of the interference model.
QiEvaluation qi_absorption(double delta, const QiParams& p);

/// Probe absorption as a sum of two Lorentzians split by omega_c.
double ats_absorption(double delta, const AtsParams& p);

/// Whether the central absorption dip exists:
/// omega_c > 2 sqrt((Gamma-Lambda)^3 / (3 Gamma - Lambda)).
bool dip_visible(const QiParams& p);

/// First-order weak-probe solution in the dressed basis.
struct DressedFirstOrder {
    Complex rho_plus0;   // coherence |+><0|
    Complex rho_minus0;  // coherence |-><0|
    double im_rho10;     // reconstructed probe absorption
};

DressedFirstOrder dressed_first_order(double delta, const ThreeLevelParams& params);

/// Relative phases accumulated by the dressed transitions over one
/// modulation period.
struct PhaseAccumulation {
    double first_half_plus;    // (delta + omega_c/2) * period / 2
    double first_half_minus;   // (delta - omega_c/2) * period / 2
    double second_half;        // delta * period / 2 (both branches)
    double total_plus;         // (delta + omega_c/4) * period
    double total_minus;        // (delta - omega_c/4) * period
};

PhaseAccumulation phase_accumulation(double delta, double omega_c, double period);

/// Detunings of maximal constructive interference,
/// delta = 2 n pi / period +- omega_c / 4 for n in [n_min, n_max].
std::vector<double> peak_positions(double period, double omega_c, int n_min, int n_max);

}  // namespace floquet
