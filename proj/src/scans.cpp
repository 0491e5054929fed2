#include "floquet/scans.hpp"

#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace floquet {

double dbm_from_rabi(double omega_p) {
    if (!(omega_p > 0.0)) throw DomainError("dbm_from_rabi: omega_p must be positive");
    return 10.0 * std::log10(kPowerCalibration * omega_p * omega_p);
}

double rabi_from_dbm(double power_dbm) {
    return std::sqrt(std::pow(10.0, power_dbm / 10.0) / kPowerCalibration);
}

int worker_count() {
#ifdef _OPENMP
    int count = omp_get_max_threads();
#else
    int count = 1;
#endif
    if (const char* env = std::getenv("FLOQUET_QI_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && cap < count) count = cap;
    }
    return count;
}

void for_each_index(std::size_t n, ExecMode mode,
                    const std::function<void(std::size_t)>& body) {
#ifdef _OPENMP
    if (mode == ExecMode::parallel) {
        const int threads = worker_count();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#endif
    (void)mode;
    for (std::size_t i = 0; i < n; ++i) body(i);
}

namespace {

// Half-period generators of one modulated system; everything a scan point
// needs to build its propagators.
struct HalfGenerators {
    Superoperator first;
    Superoperator second;
    double period;
};

HalfGenerators half_generators(const TwoLevelParams& p) {
    const auto diss = dissipators(p);
    return {lindblad_generator(hamiltonian_two_level(p, 0.25 * p.period), diss.damping,
                               diss.dephasing),
            lindblad_generator(hamiltonian_two_level(p, 0.75 * p.period), diss.damping,
                               diss.dephasing),
            p.period};
}

HalfGenerators half_generators(const ThreeLevelParams& p) {
    const auto diss = dissipators(p);
    return {lindblad_generator(hamiltonian_three_level(p, 0.25 * p.period), diss.damping,
                               diss.dephasing),
            lindblad_generator(hamiltonian_three_level(p, 0.75 * p.period), diss.damping,
                               diss.dephasing),
            p.period};
}

Observables steady_from_generators(const HalfGenerators& gen, SamplePoint sample) {
    const Superoperator e1(matexp(gen.first.matrix(), gen.period / 2.0), gen.first.dim());
    const Superoperator e2(matexp(gen.second.matrix(), gen.period / 2.0), gen.second.dim());
    const MonodromyMap map(e2.compose_after(e1), gen.period);
    const DensityMatrix steady = steady_state_fixed_point(map).rho;

    switch (sample) {
        case SamplePoint::period_end:
            return observables(steady);
        case SamplePoint::probe_end:
            return observables(e1.apply(steady));
        case SamplePoint::period_average: {
            constexpr int kSubdivisions = 32;
            double rho11 = 0.0, im = 0.0;
            for (int j = 0; j < kSubdivisions; ++j) {
                const double t = gen.period * j / kSubdivisions;
                ComplexMatrix state;
                if (t < gen.period / 2.0) {
                    state = devectorize(matexp(gen.first.matrix(), t) *
                                        vectorize(steady.matrix()));
                } else {
                    state = devectorize(matexp(gen.second.matrix(), t - gen.period / 2.0) *
                                        vectorize(e1.apply(steady).matrix()));
                }
                const auto obs = observables(DensityMatrix::clean(state));
                rho11 += obs.rho11;
                im += obs.im_rho10;
            }
            return Observables{rho11 / kSubdivisions, im / kSubdivisions};
        }
    }
    throw NumericError("steady_from_generators: unknown sample point");
}

}  // namespace

Observables steady_observables(const MonodromyMap& map, const Superoperator& first_half_gen,
                               const Superoperator& second_half_gen, SamplePoint sample) {
    return steady_from_generators(
        HalfGenerators{first_half_gen, second_half_gen, map.period()}, sample);
}

ScanGrid scan_two_level(const std::vector<double>& deltas, const std::vector<double>& powers_dbm,
                        double tau, double gamma10, double gamma1_phi, ExecMode mode) {
    if (deltas.empty() || powers_dbm.empty()) {
        throw ValidationError("scan_two_level: empty grid");
    }
    const double period = period_from_tau(tau);
    const std::size_t cols = powers_dbm.size();

    GridMapResult<double> result = map_grid<double>(
        deltas.size() * cols, mode, std::nan(""), [&](std::size_t idx) {
            const std::size_t i = idx / cols;
            const std::size_t j = idx % cols;
            TwoLevelParams p{deltas[i], rabi_from_dbm(powers_dbm[j]), period, gamma10,
                             gamma1_phi};
            return steady_from_generators(half_generators(p), SamplePoint::period_end).rho11;
        });

    ScanGrid grid;
    grid.axis1_name = "delta";
    grid.axis2_name = "power_dbm";
    grid.observable_name = "rho11";
    grid.axis1 = deltas;
    grid.axis2 = powers_dbm;
    grid.values = std::move(result.values);
    grid.failures = std::move(result.failures);
    return grid;
}

ScanGrid scan_three_level_tau(const std::vector<double>& deltas, const std::vector<double>& taus,
                              const ThreeLevelParams& params, ExecMode mode) {
    if (deltas.empty() || taus.empty()) {
        throw ValidationError("scan_three_level_tau: empty grid");
    }
    const std::size_t cols = taus.size();

    GridMapResult<double> result = map_grid<double>(
        deltas.size() * cols, mode, std::nan(""), [&](std::size_t idx) {
            ThreeLevelParams p = params;
            p.delta = deltas[idx / cols];
            p.period = period_from_tau(taus[idx % cols]);
            return steady_from_generators(half_generators(p), SamplePoint::period_end).rho11;
        });

    ScanGrid grid;
    grid.axis1_name = "delta";
    grid.axis2_name = "tau";
    grid.observable_name = "rho11";
    grid.axis1 = deltas;
    grid.axis2 = taus;
    grid.values = std::move(result.values);
    grid.failures = std::move(result.failures);
    return grid;
}

namespace {

template <typename Params>
Spectrum spectrum_impl(double tau, const std::vector<double>& deltas, const Params& params,
                       SamplePoint sample, ExecMode mode, ThreeLevelParams provenance) {
    if (deltas.empty()) throw ValidationError("spectrum: empty detuning grid");
    const double period = period_from_tau(tau);

    const Observables sentinel{std::nan(""), std::nan("")};
    GridMapResult<Observables> result = map_grid<Observables>(
        deltas.size(), mode, sentinel, [&](std::size_t i) {
            Params p = params;
            p.delta = deltas[i];
            p.period = period;
            return steady_from_generators(half_generators(p), sample);
        });

    Spectrum spec;
    spec.delta = deltas;
    spec.rho11.resize(deltas.size());
    spec.im_rho10.resize(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        spec.rho11[i] = result.values[i].rho11;
        spec.im_rho10[i] = result.values[i].im_rho10;
    }
    provenance.period = period;
    spec.params = provenance;
    spec.sample_point = sample;
    spec.validate();
    return spec;
}

}  // namespace

Spectrum spectrum_two_level(double tau, const std::vector<double>& deltas,
                            const TwoLevelParams& params, SamplePoint sample, ExecMode mode) {
    ThreeLevelParams provenance;
    provenance.omega_p = params.omega_p;
    provenance.omega_c = 0.0;
    provenance.gamma10 = params.gamma10;
    provenance.gamma21 = 0.0;
    provenance.gamma1_phi = params.gamma1_phi;
    provenance.gamma2_phi = 0.0;
    return spectrum_impl(tau, deltas, params, sample, mode, provenance);
}

Spectrum spectrum_three_level(double tau, const std::vector<double>& deltas,
                              const ThreeLevelParams& params, SamplePoint sample, ExecMode mode) {
    return spectrum_impl(tau, deltas, params, sample, mode, params);
}

RwaComparison rwa_comparison(const LabFrameParams& params, int n_periods) {
    if (n_periods < 1) throw ValidationError("rwa_comparison: n_periods must be positive");
    const DensityMatrix ground = DensityMatrix::ground_state(2);
    const double t_end = n_periods * params.base.period;

    RwaComparison cmp{integrate_lab_frame(params, ground, t_end + params.base.period / 2.0),
                      evolve_stroboscopic(build_monodromy(params.base), ground, n_periods), 0.0};

    const std::size_t n = std::min(cmp.exact.size(), cmp.rwa.size());
    for (std::size_t k = 0; k < n; ++k) {
        cmp.max_abs_deviation =
            std::max(cmp.max_abs_deviation, std::abs(cmp.exact.states[k].population(1) -
                                                     cmp.rwa.states[k].population(1)));
    }
    return cmp;
}

}  // namespace floquet
