#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "floquet/propagation.hpp"
#include "floquet/spectrum.hpp"

namespace floquet {

// The scan-level modulation parameter tau is the reciprocal angular
// modulation frequency: the comb teeth sit at odd multiples of 1/tau and the
// tunneling-suppression loci at even multiples, which requires a square-wave
// period of 2*pi*tau. Everything below the scan layer works with the period
// itself; this is the only place the convention enters.
inline constexpr double kPeriodPerTau = 2.0 * M_PI;

inline double period_from_tau(double tau) { return kPeriodPerTau * tau; }
inline double tau_from_period(double period) { return period / kPeriodPerTau; }

/// dBm calibration constant for probe power, P = 10 log10(C omega_p^2).
inline constexpr double kPowerCalibration = 1.38e-4;

double dbm_from_rabi(double omega_p);
double rabi_from_dbm(double power_dbm);

enum class ExecMode { parallel, serial };

/// Worker cap: FLOQUET_QI_THREADS when set, otherwise the OpenMP default.
int worker_count();

struct GridFailure {
    std::size_t index;
    std::string message;
};

/// Map an index range through `body` (parallel or serial reference path).
/// Failed points keep their sentinel value and are reported, not fatal.
/// Results are written by index, so the two modes agree bit for bit.
void for_each_index(std::size_t n, ExecMode mode,
                    const std::function<void(std::size_t)>& body);

template <typename T>
struct GridMapResult {
    std::vector<T> values;
    std::vector<GridFailure> failures;
};

template <typename T>
GridMapResult<T> map_grid(std::size_t n, ExecMode mode, T sentinel,
                          const std::function<T(std::size_t)>& point) {
    GridMapResult<T> out;
    out.values.assign(n, sentinel);
    std::vector<std::string> errors(n);
    for_each_index(n, mode, [&](std::size_t i) {
        try {
            out.values[i] = point(i);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (!errors[i].empty()) out.failures.push_back({i, errors[i]});
    }
    return out;
}

/// Rectangular scan result in axis1-major layout.
struct ScanGrid {
    std::string axis1_name;
    std::string axis2_name;
    std::string observable_name;
    std::vector<double> axis1;
    std::vector<double> axis2;
    std::vector<double> values;  // values[i * axis2.size() + j]
    std::vector<GridFailure> failures;

    double at(std::size_t i, std::size_t j) const { return values[i * axis2.size() + j]; }
};

/// Steady excitation over (detuning, probe power in dBm) for the modulated
/// two-level system.
ScanGrid scan_two_level(const std::vector<double>& deltas, const std::vector<double>& powers_dbm,
                        double tau, double gamma10, double gamma1_phi,
                        ExecMode mode = ExecMode::parallel);

/// Steady excitation over (detuning, tau) for the three-level system.
/// `params.delta` is ignored; the grids supply both axes.
ScanGrid scan_three_level_tau(const std::vector<double>& deltas, const std::vector<double>& taus,
                              const ThreeLevelParams& params, ExecMode mode = ExecMode::parallel);

Spectrum spectrum_two_level(double tau, const std::vector<double>& deltas,
                            const TwoLevelParams& params,
                            SamplePoint sample = SamplePoint::period_end,
                            ExecMode mode = ExecMode::parallel);

Spectrum spectrum_three_level(double tau, const std::vector<double>& deltas,
                              const ThreeLevelParams& params,
                              SamplePoint sample = SamplePoint::period_end,
                              ExecMode mode = ExecMode::parallel);

/// Steady state of one already-built monodromy map read out at the requested
/// point of the cycle.
Observables steady_observables(const MonodromyMap& map, const Superoperator& first_half_gen,
                               const Superoperator& second_half_gen, SamplePoint sample);

struct RwaComparison {
    StroboscopicTrace exact;  // counter-rotating coupling kept
    StroboscopicTrace rwa;    // square-wave monodromy evolution
    double max_abs_deviation; // over rho11 at the common sample times
};

RwaComparison rwa_comparison(const LabFrameParams& params, int n_periods);

}  // namespace floquet
