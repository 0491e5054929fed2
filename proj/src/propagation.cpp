#include "floquet/propagation.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "floquet/ode.hpp"

namespace floquet {

namespace {

constexpr double kResidualTol = 1e-10;

double fixed_point_residual(const MonodromyMap& map, const DensityMatrix& rho) {
    return (map.superop().apply(rho.matrix()) - rho.matrix()).norm();
}

// Multiplicity of eigenvalues of E within tol of 1.
int unit_eigenvalue_multiplicity(const Superoperator& e, double tol) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(e.matrix(), /*computeEigenvectors=*/false);
    int count = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (std::abs(es.eigenvalues()(i) - Complex(1.0, 0.0)) < tol) ++count;
    }
    return count;
}

}  // namespace

MonodromyMap::MonodromyMap(Superoperator full, double period)
    : full_(std::move(full)), period_(period) {
    if (!(period > 0.0)) throw ValidationError("MonodromyMap: period must be positive");
}

MonodromyMap build_monodromy(const Superoperator& first_half, const Superoperator& second_half,
                             double period) {
    const Superoperator e1(matexp(first_half.matrix(), period / 2.0), first_half.dim());
    const Superoperator e2(matexp(second_half.matrix(), period / 2.0), second_half.dim());
    return MonodromyMap(e2.compose_after(e1), period);
}

MonodromyMap build_monodromy(const TwoLevelParams& params) {
    params.validate();
    const auto diss = dissipators(params);
    // The drive is constant inside each half-period; evaluate at interior
    // points of each half.
    const auto l_on = lindblad_generator(hamiltonian_two_level(params, 0.25 * params.period),
                                         diss.damping, diss.dephasing);
    const auto l_off = lindblad_generator(hamiltonian_two_level(params, 0.75 * params.period),
                                          diss.damping, diss.dephasing);
    return build_monodromy(l_on, l_off, params.period);
}

MonodromyMap build_monodromy(const ThreeLevelParams& params) {
    params.validate();
    const auto diss = dissipators(params);
    const auto l_probe = lindblad_generator(hamiltonian_three_level(params, 0.25 * params.period),
                                            diss.damping, diss.dephasing);
    const auto l_control = lindblad_generator(
        hamiltonian_three_level(params, 0.75 * params.period), diss.damping, diss.dephasing);
    return build_monodromy(l_probe, l_control, params.period);
}

SteadyStateResult steady_state_fixed_point(const MonodromyMap& map) {
    const int d = map.dim();
    const auto n = static_cast<Eigen::Index>(d) * d;
    ComplexMatrix system = map.superop().matrix() - ComplexMatrix::Identity(n, n);

    // Replace the first row with the trace functional; the unique fixed point
    // then solves system * v = e0.
    system.row(0).setZero();
    for (int i = 0; i < d; ++i) system(0, i * d + i) = 1.0;
    ComplexVector rhs = ComplexVector::Zero(n);
    rhs(0) = 1.0;

    Eigen::FullPivLU<ComplexMatrix> lu(system);
    DensityMatrix rho = DensityMatrix::ground_state(d);
    bool solved = false;
    if (lu.isInvertible()) {
        const ComplexVector v = lu.solve(rhs);
        const ComplexMatrix candidate = devectorize(v);
        if (candidate.allFinite()) {
            rho = DensityMatrix::clean(candidate);
            solved = true;
        }
    }
    const double residual = solved ? fixed_point_residual(map, rho) : 1.0;
    if (!solved || residual > kResidualTol) {
        if (unit_eigenvalue_multiplicity(map.superop(), 1e-8) > 1) {
            throw AmbiguityError(
                "steady_state_fixed_point: fixed-point space is degenerate; "
                "no unique periodic steady state");
        }
        throw NumericError("steady_state_fixed_point: residual " + std::to_string(residual) +
                           " exceeds 1e-10");
    }
    return SteadyStateResult{rho, SteadyMethod::fixed_point, 1, residual};
}

SteadyStateResult steady_state_by_evolution(const MonodromyMap& map, const DensityMatrix& rho0,
                                            double tol, long max_periods) {
    if (!(tol > 0.0)) throw ValidationError("steady_state_by_evolution: tol must be positive");
    ComplexMatrix rho = rho0.matrix();
    double update = 0.0;
    for (long k = 1; k <= max_periods; ++k) {
        ComplexMatrix next = map.superop().apply(rho);
        update = (next - rho).norm();
        rho = std::move(next);
        if (update < tol) {
            DensityMatrix state = DensityMatrix::clean(rho);
            return SteadyStateResult{state, SteadyMethod::evolution, k,
                                     fixed_point_residual(map, state)};
        }
    }
    throw ConvergenceError("steady_state_by_evolution: no convergence within " +
                               std::to_string(max_periods) + " periods",
                           update);
}

StroboscopicTrace evolve_stroboscopic(const MonodromyMap& map, const DensityMatrix& rho0, int n) {
    if (n < 0) throw ValidationError("evolve_stroboscopic: n must be nonnegative");
    StroboscopicTrace trace;
    trace.period = map.period();
    trace.states.reserve(static_cast<std::size_t>(n) + 1);
    trace.states.push_back(rho0);
    ComplexMatrix rho = rho0.matrix();
    for (int k = 0; k < n; ++k) {
        rho = map.superop().apply(rho);
        trace.states.push_back(DensityMatrix::clean(rho));
    }
    return trace;
}

StroboscopicTrace integrate_lab_frame(const LabFrameParams& params, const DensityMatrix& rho0,
                                      double t_end, double reltol) {
    params.validate();
    if (!(reltol > 1e-12 && reltol < 1e-3)) {
        throw ValidationError("integrate_lab_frame: reltol must lie in (1e-12, 1e-3)");
    }
    const auto diss = dissipators(params.base);
    const int d = 2;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);

    // Dissipative part is time independent; only the Hamiltonian commutator
    // changes with t.
    const auto dissipator_only =
        lindblad_generator(ComplexMatrix::Zero(d, d), diss.damping, diss.dephasing);
    const ComplexMatrix diss_mat = dissipator_only.matrix();

    const auto rhs = [&](double t, const ComplexVector& v) -> ComplexVector {
        const ComplexMatrix h = hamiltonian_lab_frame(params, t);
        const ComplexMatrix commutator =
            -imag_unit * (kron(id, h) - kron(h.transpose(), id));
        return (commutator + diss_mat) * v;
    };

    ode::Options opt;
    opt.reltol = reltol;
    opt.abstol = reltol * 1e-3;
    // Resolve the counter-rotating phase: at least 20 steps per carrier cycle.
    opt.max_step = 2.0 * M_PI / (20.0 * params.omega_probe);

    const double period = params.base.period;
    const auto n_periods = static_cast<long>(std::floor(t_end / period + 1e-9));

    StroboscopicTrace trace;
    trace.period = period;
    trace.states.push_back(rho0);
    ComplexVector v = vectorize(rho0.matrix());
    for (long k = 0; k < n_periods; ++k) {
        const double t0 = static_cast<double>(k) * period;
        // Integrate the two halves separately so no step straddles the
        // envelope discontinuity.
        v = ode::integrate_segment(rhs, v, t0, t0 + period / 2.0, opt);
        v = ode::integrate_segment(rhs, v, t0 + period / 2.0, t0 + period, opt);
        trace.states.push_back(DensityMatrix::clean(devectorize(v)));
    }
    return trace;
}

}  // namespace floquet
