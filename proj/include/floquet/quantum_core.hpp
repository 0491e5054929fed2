#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "floquet/errors.hpp"

namespace floquet {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex imag_unit{0.0, 1.0};

// Tolerances for the density-matrix invariants. All rates and frequencies are
// dimensionless (normalized by the ground-transition damping rate), so these
// are absolute.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

/// Hermitian, trace-one, positive-semidefinite state of a 2- or 3-level
/// system. Construction validates; use `DensityMatrix::clean` to hermitize
/// and renormalize output of numerical maps before validation.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix ground_state(int dim);
    static DensityMatrix basis_state(int dim, int level);
    static DensityMatrix maximally_mixed(int dim);

    /// Hermitize ((m + m†)/2), renormalize trace to one, then validate.
    static DensityMatrix clean(const ComplexMatrix& m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const ComplexMatrix& matrix() const { return m_; }

    double population(int level) const { return m_(level, level).real(); }
    Complex element(int row, int col) const { return m_(row, col); }

    double min_eigenvalue() const;

private:
    ComplexMatrix m_;
};

/// rho11 and Im(rho10): the excitation probability and the absorption
/// quadrature of the probe coherence, read at the stroboscopic sample times.
struct Observables {
    double rho11;
    double im_rho10;
};

Observables observables(const DensityMatrix& rho);

/// Linear map on column-vectorized density matrices. The vectorization
/// convention is column-stacking throughout: vec(rho)[i + dim*j] = rho(i, j).
class Superoperator {
public:
    Superoperator(ComplexMatrix m, int dim);

    int dim() const { return dim_; }
    const ComplexMatrix& matrix() const { return m_; }

    /// Apply to a (not necessarily valid) matrix.
    ComplexMatrix apply(const ComplexMatrix& rho) const;
    /// Apply to a state and clean the result back into a DensityMatrix.
    DensityMatrix apply(const DensityMatrix& rho) const;

    Superoperator compose_after(const Superoperator& first) const;

    /// Max |trace of L(basis element)| over a Hermitian matrix basis; zero for
    /// Liouvillians and for E - I of trace-preserving maps.
    double max_trace_defect() const;

private:
    ComplexMatrix m_;
    int dim_;
};

ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix devectorize(const ComplexVector& v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(scale * m) for a square complex matrix.
ComplexMatrix matexp(const ComplexMatrix& m, double scale);

/// Damping channel (rate, lowering operator), contributing
/// (rate/2) * (2 A rho A† - A†A rho - rho A†A).
struct DampingTerm {
    double rate;
    ComplexMatrix op;
};

/// Pure-dephasing channel (rate, level projector), contributing
/// rate * (2 P rho P - P rho - rho P). Note the prefactor is the bare rate,
/// not rate/2; the two channel types use different conventions on purpose and
/// together give a coherence decay of gamma/2 + gamma_phi.
struct DephasingTerm {
    double rate;
    ComplexMatrix projector;
};

/// Build the Liouvillian superoperator L with
///   L(rho) = -i[h, rho] + sum damping + sum dephasing.
Superoperator lindblad_generator(const ComplexMatrix& h,
                                 const std::vector<DampingTerm>& damping,
                                 const std::vector<DephasingTerm>& dephasing);

}  // namespace floquet
