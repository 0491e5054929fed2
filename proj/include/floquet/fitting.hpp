#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floquet/lineshape.hpp"
#include "floquet/spectrum.hpp"

namespace floquet {

enum class LineshapeModel { qi, ats };

std::string model_name(LineshapeModel m);

/// Detuning window for the central-transparency-window fit. The window must
/// stay inside the central window: below the inner peak of the first side
/// group at 2 pi / period - omega_c / 4.
struct FitWindow {
    double delta_min;
    double delta_max;
    double spacing = 0.05;

    /// Default central window: |delta| <= 4, shrunk to 90% of the distance
    /// to the first side group when that is closer.
    static FitWindow default_ctw(double period, double omega_c);
    std::vector<double> sample_deltas() const;
    void validate() const;
    void validate_against_system(double period, double omega_c) const;
    bool contains(double delta) const { return delta >= delta_min && delta <= delta_max; }
};

struct FitResult {
    LineshapeModel model;
    std::vector<double> params;   // QI: omega_c, omega_p, Gamma, Lambda; ATS: first three
    double rss;                   // residual sum of squares
    int n_points;
    int k;                        // parameter count (4 QI, 3 ATS)
    std::vector<double> fitted_deltas;
    long iterations;

    double aic_per_point() const;
    double evaluate(double delta) const;  // model value at the fitted parameters

    QiParams qi_params() const;
    AtsParams ats_params() const;
};

struct FitOptions {
    long max_iterations = 10000;
    double rss_rel_tol = 1e-12;
    double step_tol = 1e-10;
    int extra_starts = 5;   // perturbed restarts beyond the supplied init
    unsigned int seed = 0x51ab5eed;  // perturbations are deterministic
};

/// Least-squares fit of Im(rho10)(delta) inside the window. The default
/// initial guess halves the physical Rabi rates (each drive is on half the
/// time) and seeds Gamma/Lambda from the bare rates.
FitResult fit_model(const Spectrum& spectrum, LineshapeModel model, const FitWindow& window,
                    const std::optional<std::vector<double>>& init = std::nullopt,
                    const FitOptions& options = {});

/// Thrown when the iteration cap is reached; carries the best fit so far.
struct FitNonConvergence : FitError {
    FitResult best;
    FitNonConvergence(const std::string& what, FitResult best_fit)
        : FitError(what), best(std::move(best_fit)) {}
};

struct AicWeights {
    double w_qi;
    double w_ats;
};

/// Relative per-point Akaike weights of two fits over the identical window.
AicWeights aic_weights(const FitResult& fit_qi, const FitResult& fit_ats);

}  // namespace floquet
