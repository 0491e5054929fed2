#include "doctest.h"

#include <random>

#include "floquet/model_systems.hpp"

using namespace floquet;

TEST_CASE("pulse trains follow the half-open square-wave convention") {
    const PulseTrain probe = PulseTrain::probe(1.0, 0.4);
    CHECK(probe.value(0.0) == 1.0);
    CHECK(probe.value(0.1) == 1.0);
    CHECK(probe.value(0.2) == 0.0);  // boundary belongs to the second half
    CHECK(probe.value(0.3) == 0.0);
    CHECK(probe.value(0.4) == 1.0);

    const PulseTrain control = PulseTrain::control(2.5, 0.4);
    CHECK(control.value(0.1) == 0.0);
    CHECK(control.value(0.3) == 2.5);

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> time(0.0, 40.0);
    for (int i = 0; i < 100; ++i) {
        const double t = time(rng);
        CHECK(probe.value(t + 0.4) == probe.value(t));
    }
}

TEST_CASE("pulse train validation") {
    CHECK_THROWS_AS(PulseTrain(1.0, 0.0, 0.0), ValidationError);
    CHECK_THROWS_AS(PulseTrain(-1.0, 0.0, 1.0), ValidationError);
}

TEST_CASE("two-level Hamiltonian matches the drive and detuning layout") {
    TwoLevelParams p;
    p.delta = 2.0;
    p.omega_p = 0.0;
    p.period = 1.0;
    const ComplexMatrix h = hamiltonian_two_level(p, 0.1);
    CHECK(h(0, 0) == Complex(-1.0, 0.0));
    CHECK(h(1, 1) == Complex(1.0, 0.0));
    CHECK(h(0, 1) == Complex(0.0, 0.0));

    p.delta = 0.0;
    p.omega_p = 1.0;
    const ComplexMatrix driven = hamiltonian_two_level(p, 0.1);
    CHECK(driven(0, 1) == Complex(-0.5, 0.0));
    CHECK(driven(1, 0) == Complex(-0.5, 0.0));
    CHECK(driven(0, 0) == Complex(0.0, 0.0));
}

TEST_CASE("three-level Hamiltonian alternates probe and control halves") {
    ThreeLevelParams p;
    p.delta = 1.0;
    p.omega_p = 1.0;
    p.omega_c = 10.8;
    p.period = 1.0;

    const ComplexMatrix first = hamiltonian_three_level(p, 0.25);
    CHECK(first(0, 1) == Complex(-0.5, 0.0));
    CHECK(first(1, 2) == Complex(0.0, 0.0));

    const ComplexMatrix second = hamiltonian_three_level(p, 0.75);
    CHECK(second(0, 1) == Complex(0.0, 0.0));
    CHECK(second(1, 2) == Complex(-5.4, 0.0));

    CHECK(first(0, 0) == Complex(-0.5, 0.0));
    CHECK(first(1, 1) == Complex(0.5, 0.0));
    CHECK(first(2, 2) == Complex(0.5, 0.0));

    p.delta = 0.0;
    TwoLevelParams q = p.two_level();
    q.delta = 0.0;
    const ComplexMatrix probe_off = hamiltonian_two_level(q, 0.75);
    CHECK(probe_off.norm() == 0.0);
}

TEST_CASE("lab-frame Hamiltonian keeps the counter-rotating phase") {
    LabFrameParams p;
    p.base.delta = 0.0;
    p.base.omega_p = 1.0;
    p.base.period = 1.0;
    p.omega_probe = 6000.0;

    // t = 0: factor (1 + 1)/2
    CHECK(hamiltonian_lab_frame(p, 0.0)(0, 1) == Complex(-1.0, 0.0));

    // omega_probe * t = pi/2: factor (1 + exp(i pi))/2 = 0
    const double t_quarter = M_PI / (2.0 * p.omega_probe);
    CHECK(std::abs(hamiltonian_lab_frame(p, t_quarter)(0, 1)) < 1e-12);

    // drive-off half: H0 regardless of the carrier
    p.base.delta = 3.0;
    const ComplexMatrix off = hamiltonian_lab_frame(p, 0.6);
    CHECK(off(0, 1) == Complex(0.0, 0.0));
    CHECK(off(0, 0) == Complex(-1.5, 0.0));
}

TEST_CASE("all Hamiltonians are Hermitian at random parameters and times") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        ThreeLevelParams p;
        p.delta = u(rng) - 1.5;
        p.omega_p = u(rng);
        p.omega_c = u(rng);
        p.period = 0.1 + u(rng);
        const double t = u(rng) * 10.0;
        const ComplexMatrix h3 = hamiltonian_three_level(p, t);
        CHECK((h3 - h3.adjoint()).norm() == 0.0);

        LabFrameParams lab;
        lab.base = p.two_level();
        lab.omega_probe = 100.0 + u(rng) * 1000.0;
        const ComplexMatrix hl = hamiltonian_lab_frame(lab, t);
        CHECK((hl - hl.adjoint()).norm() < 1e-15);
    }
}

TEST_CASE("hamiltonians are constant inside each open half-period") {
    ThreeLevelParams p;
    p.delta = 0.7;
    p.omega_p = 1.3;
    p.omega_c = 4.2;
    p.period = 0.5;
    const ComplexMatrix first = hamiltonian_three_level(p, 0.05);
    const ComplexMatrix second = hamiltonian_three_level(p, 0.3);
    for (int i = 1; i <= 10; ++i) {
        const double eps = 0.24 * i / 10.0;
        CHECK((hamiltonian_three_level(p, 0.005 + eps) - first).norm() == 0.0);
        CHECK((hamiltonian_three_level(p, 0.255 + eps) - second).norm() == 0.0);
    }
}

TEST_CASE("lab-frame Hamiltonian averages to the rotating-frame one over a carrier cycle") {
    LabFrameParams p;
    p.base.delta = 1.2;
    p.base.omega_p = 1.0;
    p.base.period = 10.0;  // stay inside the drive-on half
    p.omega_probe = 50000.0;

    const int samples = 400;
    const double cycle = 2.0 * M_PI / p.omega_probe;
    ComplexMatrix avg = ComplexMatrix::Zero(2, 2);
    for (int i = 0; i < samples; ++i) {
        avg += hamiltonian_lab_frame(p, cycle * i / samples);
    }
    avg /= static_cast<double>(samples);
    const ComplexMatrix rwa = hamiltonian_two_level(p.base, 0.0);
    CHECK((avg - rwa).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dissipator sets carry the advertised rates") {
    ThreeLevelParams p;
    p.gamma10 = 1.0;
    p.gamma21 = 1.4;
    p.gamma1_phi = 0.4;
    p.gamma2_phi = 0.2;
    const DissipatorSet set = dissipators(p);
    REQUIRE(set.damping.size() == 2);
    REQUIRE(set.dephasing.size() == 2);
    CHECK(set.damping[0].rate == 1.0);
    CHECK(set.damping[0].op(0, 1) == Complex(1.0, 0.0));
    CHECK(set.damping[1].rate == 1.4);
    CHECK(set.damping[1].op(1, 2) == Complex(1.0, 0.0));
    CHECK(set.dephasing[0].rate == 0.4);
    CHECK(set.dephasing[1].rate == 0.2);

    TwoLevelParams q;
    q.gamma10 = 1.0;
    q.gamma1_phi = 0.4;
    const DissipatorSet two = dissipators(q);
    CHECK(two.damping.size() == 1);
    CHECK(two.dephasing.size() == 1);
}

TEST_CASE("zero-rate dissipators produce no dissipation") {
    TwoLevelParams p;
    p.gamma10 = 0.0;
    p.gamma1_phi = 0.0;
    const auto diss = dissipators(p);
    const auto l = lindblad_generator(ComplexMatrix::Zero(2, 2), diss.damping, diss.dephasing);
    CHECK(l.matrix().norm() == 0.0);
}
