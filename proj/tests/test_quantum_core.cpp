#include "doctest.h"

#include <random>

#include "floquet/model_systems.hpp"
#include "floquet/quantum_core.hpp"
#include "oracles.hpp"

using namespace floquet;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, int dim, double norm_cap) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    }
    const double norm = m.operatorNorm();
    if (norm > norm_cap) m *= norm_cap / norm;
    return m;
}

}  // namespace

TEST_CASE("matexp of zero is the identity") {
    const ComplexMatrix e = matexp(ComplexMatrix::Zero(4, 4), 1.0);
    CHECK((e - ComplexMatrix::Identity(4, 4)).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("matexp of a diagonal matrix exponentiates the diagonal") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = Complex(0.3, -1.2);
    m(1, 1) = Complex(-0.7, 0.4);
    const ComplexMatrix e = matexp(m, 1.0);
    CHECK(std::abs(e(0, 0) - std::exp(m(0, 0))) < 1e-14);
    CHECK(std::abs(e(1, 1) - std::exp(m(1, 1))) < 1e-14);
    CHECK(std::abs(e(0, 1)) == 0.0);
}

TEST_CASE("matexp matches a 30-term Taylor series on norm-bounded inputs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix m = random_matrix(rng, 4, 2.0);
        const ComplexMatrix expected = oracles::taylor_matexp(m);
        const ComplexMatrix got = matexp(m, 1.0);
        CHECK((got - expected).norm() <= 1e-12 * expected.norm());
    }
}

TEST_CASE("matexp is additive on commuting inputs") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = random_matrix(rng, 3, 1.5);
        const ComplexMatrix b = a * a - 0.5 * a;  // commutes with a
        const ComplexMatrix lhs = matexp(a, 1.0) * matexp(b, 1.0);
        const ComplexMatrix rhs = matexp(a + b, 1.0);
        CHECK((lhs - rhs).norm() <= 1e-11 * rhs.norm());
    }
}

TEST_CASE("matexp rejects bad input") {
    CHECK_THROWS_AS(matexp(ComplexMatrix::Zero(2, 3), 1.0), DimensionError);
    ComplexMatrix nan_mat = ComplexMatrix::Zero(2, 2);
    nan_mat(0, 0) = std::nan("");
    CHECK_THROWS_AS(matexp(nan_mat, 1.0), NumericError);
    CHECK_THROWS_AS(matexp(ComplexMatrix::Zero(2, 2), std::nan("")), NumericError);
}

TEST_CASE("vectorize uses column stacking") {
    const DensityMatrix rho = DensityMatrix::ground_state(2);
    const ComplexVector v = vectorize(rho.matrix());
    CHECK(v(0) == Complex(1.0, 0.0));
    CHECK(v(1) == Complex(0.0, 0.0));
    CHECK(v(2) == Complex(0.0, 0.0));
    CHECK(v(3) == Complex(0.0, 0.0));

    ComplexMatrix m(2, 2);
    m << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
    const ComplexVector vm = vectorize(m);
    CHECK(vm(1) == Complex(3, 0));  // (row 1, col 0) right after (0, 0)
}

TEST_CASE("vectorize/devectorize roundtrip is exact") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = oracles::random_density(rng, 3);
        CHECK((devectorize(vectorize(rho)) - rho).norm() == 0.0);
    }
    CHECK_THROWS_AS(devectorize(ComplexVector::Zero(5)), DimensionError);
}

TEST_CASE("density matrix validation") {
    CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::Identity(2, 2)}, ValidationError);  // trace 2
    ComplexMatrix not_hermitian(2, 2);
    not_hermitian << 0.5, Complex(0.1, 0.0), Complex(0.3, 0.0), 0.5;
    CHECK_THROWS_AS(DensityMatrix{not_hermitian}, ValidationError);
    ComplexMatrix negative(2, 2);
    negative << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityMatrix{negative}, ValidationError);

    const DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
    CHECK(mixed.population(0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("lindblad generator with nothing in it is zero") {
    const auto l = lindblad_generator(ComplexMatrix::Zero(2, 2), {}, {});
    CHECK(l.matrix().norm() == 0.0);
}

TEST_CASE("two-level damping moves population 1 -> 0 at rate gamma10") {
    const auto l = lindblad_generator(ComplexMatrix::Zero(2, 2),
                                      {{1.0, transition_op(2, 0, 1)}}, {});
    ComplexMatrix excited = ComplexMatrix::Zero(2, 2);
    excited(1, 1) = 1.0;
    const ComplexMatrix rate = l.apply(excited);
    CHECK(rate(1, 1).real() == doctest::Approx(-1.0));
    CHECK(rate(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("coherence decays at gamma10/2 + gamma1_phi") {
    const auto l = lindblad_generator(ComplexMatrix::Zero(2, 2), {{1.0, transition_op(2, 0, 1)}},
                                      {{0.4, transition_op(2, 1, 1)}});
    ComplexMatrix coherence = ComplexMatrix::Zero(2, 2);
    coherence(1, 0) = 1.0;
    const ComplexMatrix rate = l.apply(coherence);
    CHECK(rate(1, 0).real() == doctest::Approx(-0.9).epsilon(1e-12));
    CHECK(std::abs(rate(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("lindblad generator validates input") {
    CHECK_THROWS_AS(lindblad_generator(ComplexMatrix::Zero(2, 2),
                                       {{-0.5, transition_op(2, 0, 1)}}, {}),
                    ValidationError);
    ComplexMatrix not_hermitian(2, 2);
    not_hermitian << 0.0, Complex(0.0, 0.5), Complex(0.0, 0.5), 0.0;
    CHECK_THROWS_AS(lindblad_generator(not_hermitian, {}, {}), ValidationError);
}

TEST_CASE("generators preserve trace, hermiticity, and positivity under evolution") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> rate(0.0, 2.0);
    std::uniform_real_distribution<double> timespan(0.0, 100.0);
    for (int trial = 0; trial < 50; ++trial) {
        TwoLevelParams p;
        p.delta = rate(rng) - 1.0;
        p.omega_p = rate(rng);
        p.period = 1.0;
        p.gamma10 = rate(rng);
        p.gamma1_phi = rate(rng);
        const auto diss = dissipators(p);
        const auto l = lindblad_generator(hamiltonian_two_level(p, 0.0), diss.damping,
                                          diss.dephasing);
        CHECK(l.max_trace_defect() < 1e-12);

        const ComplexMatrix rho0 = oracles::random_density(rng, 2);
        const ComplexMatrix propagator = matexp(l.matrix(), timespan(rng));
        const ComplexMatrix rho = devectorize(propagator * vectorize(rho0));
        CHECK(std::abs(rho.trace() - Complex(1.0, 0.0)) < 1e-12);
        CHECK((rho - rho.adjoint()).norm() < 1e-12);
        CHECK(DensityMatrix::clean(rho).min_eigenvalue() >= -1e-10);
    }
}

TEST_CASE("monodromy-style composition keeps bigger systems trace preserving") {
    ThreeLevelParams p;
    p.omega_p = 1.0;
    p.omega_c = 10.8;
    p.period = 0.3;
    p.gamma21 = 1.4;
    p.gamma1_phi = 0.4;
    p.gamma2_phi = 0.2;
    const auto diss = dissipators(p);
    const auto l = lindblad_generator(hamiltonian_three_level(p, 0.1), diss.damping,
                                      diss.dephasing);
    CHECK(l.max_trace_defect() < 1e-12);
}
