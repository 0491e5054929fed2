#include "floquet/spectrum.hpp"

#include <cmath>

#include "floquet/errors.hpp"

namespace floquet {

void Spectrum::validate() const {
    if (delta.size() != rho11.size() || delta.size() != im_rho10.size()) {
        throw DimensionError("Spectrum: column lengths differ");
    }
    for (std::size_t i = 1; i < delta.size(); ++i) {
        if (!(delta[i] > delta[i - 1])) {
            throw ValidationError("Spectrum: detuning grid must be strictly increasing");
        }
    }
    for (double p : rho11) {
        if (std::isfinite(p) && (p < -1e-9 || p > 1.0 + 1e-9)) {
            throw ValidationError("Spectrum: rho11 outside [0, 1]");
        }
    }
}

std::vector<std::size_t> local_maxima(const std::vector<double>& values) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > values[i - 1] && values[i] > values[i + 1]) idx.push_back(i);
    }
    return idx;
}

std::vector<std::size_t> local_minima(const std::vector<double>& values) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] < values[i - 1] && values[i] < values[i + 1]) idx.push_back(i);
    }
    return idx;
}

}  // namespace floquet
