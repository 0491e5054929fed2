#include "floquet/quantum_core.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace floquet {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionError(std::string(who) + ": matrix must be square and nonempty");
    }
}

void require_finite(const ComplexMatrix& m, const char* who) {
    if (!m.allFinite()) {
        throw NumericError(std::string(who) + ": non-finite entries");
    }
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    require_square(m_, "DensityMatrix");
    require_finite(m_, "DensityMatrix");
    if (!is_hermitian(m_, kHermitianTol)) {
        throw ValidationError("DensityMatrix: not Hermitian within 1e-12");
    }
    if (std::abs(m_.trace() - Complex(1.0, 0.0)) > kTraceTol) {
        throw ValidationError("DensityMatrix: trace differs from 1 by more than 1e-12");
    }
    // Work on the exactly-Hermitian part so the eigenvalue check is real.
    m_ = ((m_ + m_.adjoint()) / 2.0).eval();
    if (min_eigenvalue() < -kPositivityTol) {
        throw ValidationError("DensityMatrix: negative eigenvalue below -1e-10");
    }
}

DensityMatrix DensityMatrix::ground_state(int dim) { return basis_state(dim, 0); }

DensityMatrix DensityMatrix::basis_state(int dim, int level) {
    if (level < 0 || level >= dim) throw DimensionError("basis_state: level out of range");
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(level, level) = 1.0;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::clean(const ComplexMatrix& m) {
    require_square(m, "DensityMatrix::clean");
    require_finite(m, "DensityMatrix::clean");
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    const double tr = h.trace().real();
    if (std::abs(tr) < 1e-300) throw NumericError("DensityMatrix::clean: zero trace");
    return DensityMatrix(h / tr);
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Observables observables(const DensityMatrix& rho) {
    return Observables{rho.population(1), rho.element(1, 0).imag()};
}

Superoperator::Superoperator(ComplexMatrix m, int dim) : m_(std::move(m)), dim_(dim) {
    if (m_.rows() != m_.cols() || m_.rows() != static_cast<Eigen::Index>(dim) * dim) {
        throw DimensionError("Superoperator: matrix must be dim^2 x dim^2");
    }
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
        throw DimensionError("Superoperator::apply: state dimension mismatch");
    }
    return devectorize(m_ * vectorize(rho));
}

DensityMatrix Superoperator::apply(const DensityMatrix& rho) const {
    return DensityMatrix::clean(apply(rho.matrix()));
}

Superoperator Superoperator::compose_after(const Superoperator& first) const {
    if (dim_ != first.dim_) throw DimensionError("Superoperator: dimension mismatch");
    return Superoperator(m_ * first.m_, dim_);
}

double Superoperator::max_trace_defect() const {
    // Hermitian basis: E_ii, (E_ij + E_ji), (i E_ij - i E_ji) for i < j.
    double worst = 0.0;
    auto check = [&](const ComplexMatrix& b) {
        worst = std::max(worst, std::abs(apply(b).trace()));
    };
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            ComplexMatrix b = ComplexMatrix::Zero(dim_, dim_);
            if (i == j) {
                b(i, i) = 1.0;
                check(b);
            } else if (i < j) {
                b(i, j) = 1.0;
                b(j, i) = 1.0;
                check(b);
                b(i, j) = imag_unit;
                b(j, i) = -imag_unit;
                check(b);
            }
        }
    }
    return worst;
}

ComplexVector vectorize(const ComplexMatrix& rho) {
    require_square(rho, "vectorize");
    return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix devectorize(const ComplexVector& v) {
    const auto n = v.size();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (d * d != n) throw DimensionError("devectorize: length is not a perfect square");
    return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix matexp(const ComplexMatrix& m, double scale) {
    require_square(m, "matexp");
    require_finite(m, "matexp");
    if (!std::isfinite(scale)) throw NumericError("matexp: non-finite scale");
    return (scale * m).exp();
}

Superoperator lindblad_generator(const ComplexMatrix& h,
                                 const std::vector<DampingTerm>& damping,
                                 const std::vector<DephasingTerm>& dephasing) {
    require_square(h, "lindblad_generator");
    require_finite(h, "lindblad_generator");
    if (!is_hermitian(h, 1e-12)) {
        throw ValidationError("lindblad_generator: Hamiltonian must be Hermitian");
    }
    const auto d = h.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);

    // vec(A rho B) = (B^T (x) A) vec(rho) with column stacking.
    ComplexMatrix l = -imag_unit * (kron(id, h) - kron(h.transpose(), id));

    for (const auto& term : damping) {
        if (term.rate < 0.0) throw ValidationError("lindblad_generator: negative damping rate");
        if (term.op.rows() != d || term.op.cols() != d) {
            throw DimensionError("lindblad_generator: damping operator dimension mismatch");
        }
        const ComplexMatrix& a = term.op;
        const ComplexMatrix n = a.adjoint() * a;
        l += (term.rate / 2.0) *
             (2.0 * kron(a.conjugate(), a) - kron(id, n) - kron(n.transpose(), id));
    }
    for (const auto& term : dephasing) {
        if (term.rate < 0.0) throw ValidationError("lindblad_generator: negative dephasing rate");
        const ComplexMatrix& p = term.projector;
        if (p.rows() != d || p.cols() != d) {
            throw DimensionError("lindblad_generator: projector dimension mismatch");
        }
        if (!is_hermitian(p, 1e-12) || (p * p - p).cwiseAbs().maxCoeff() > 1e-12) {
            throw ValidationError("lindblad_generator: dephasing operator must be a projector");
        }
        l += term.rate * (2.0 * kron(p.conjugate(), p) - kron(id, p) - kron(p.transpose(), id));
    }
    return Superoperator(std::move(l), static_cast<int>(d));
}

}  // namespace floquet
