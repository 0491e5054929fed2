#pragma once

#include <vector>

#include "floquet/model_systems.hpp"
#include "floquet/quantum_core.hpp"

namespace floquet {

/// One-period propagator E = exp(L2 period/2) exp(L1 period/2) of the
/// square-wave-driven Lindblad equation; half 1 carries the probe, half 2 the
/// control (three-level) or nothing (two-level).
class MonodromyMap {
public:
    MonodromyMap(Superoperator full, double period);

    const Superoperator& superop() const { return full_; }
    double period() const { return period_; }
    int dim() const { return full_.dim(); }

    DensityMatrix apply(const DensityMatrix& rho) const { return full_.apply(rho); }

private:
    Superoperator full_;
    double period_;
};

MonodromyMap build_monodromy(const TwoLevelParams& params);
MonodromyMap build_monodromy(const ThreeLevelParams& params);

/// Monodromy of explicitly supplied half-period generators (used by the
/// un-modulated baseline and by tests).
MonodromyMap build_monodromy(const Superoperator& first_half,
                             const Superoperator& second_half, double period);

enum class SteadyMethod { fixed_point, evolution };

struct SteadyStateResult {
    DensityMatrix rho;
    SteadyMethod method;
    long iterations;
    double residual;  // Frobenius norm of E(rho) - rho
};

/// Solve (E - I) v = 0 with unit trace via a linear solve; verifies the
/// fixed point is unique (throws AmbiguityError when the eigenvalue-1 space
/// of E is degenerate).
SteadyStateResult steady_state_fixed_point(const MonodromyMap& map);

/// Iterate rho <- E(rho) until the Frobenius update drops below tol.
SteadyStateResult steady_state_by_evolution(const MonodromyMap& map, const DensityMatrix& rho0,
                                            double tol = 1e-12, long max_periods = 1000000);

struct StroboscopicTrace {
    double period = 0.0;
    std::vector<DensityMatrix> states;  // states[k] is the state at k*period

    double time(std::size_t k) const { return static_cast<double>(k) * period; }
    std::size_t size() const { return states.size(); }
};

StroboscopicTrace evolve_stroboscopic(const MonodromyMap& map, const DensityMatrix& rho0, int n);

/// Integrate the Lindblad equation with the counter-rotating coupling kept,
/// sampling at modulation-period ends until t_end. The step never exceeds a
/// twentieth of the carrier period.
StroboscopicTrace integrate_lab_frame(const LabFrameParams& params, const DensityMatrix& rho0,
                                      double t_end, double reltol = 1e-9);

}  // namespace floquet
