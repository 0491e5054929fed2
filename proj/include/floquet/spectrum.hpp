#pragma once

#include <vector>

#include "floquet/model_systems.hpp"

namespace floquet {

/// Where inside the modulation cycle the steady state is read out.
enum class SamplePoint {
    period_end,   // stroboscopic sample at k * period (default)
    probe_end,    // half a period later, right after the probe half
    period_average  // average over the cycle (32 subdivisions)
};

/// Steady-state absorption spectrum: (delta, rho11, Im rho10) triples on a
/// strictly increasing detuning grid, with the generating parameters kept as
/// provenance. A two-level spectrum is stored with omega_c = 0 and the
/// |2>-level rates zeroed.
struct Spectrum {
    std::vector<double> delta;
    std::vector<double> rho11;
    std::vector<double> im_rho10;
    ThreeLevelParams params;  // delta field unused; the grid supplies it
    SamplePoint sample_point = SamplePoint::period_end;

    std::size_t size() const { return delta.size(); }
    void validate() const;
};

/// Indices of strict interior local maxima of `values`.
std::vector<std::size_t> local_maxima(const std::vector<double>& values);
std::vector<std::size_t> local_minima(const std::vector<double>& values);

}  // namespace floquet
