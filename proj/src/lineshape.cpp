#include "floquet/lineshape.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace floquet {

void QiParams::validate(WarningLog* warnings) const {
    if (!(big_gamma > 0.0)) throw ValidationError("QiParams: Gamma must be positive");
    if (std::abs(big_lambda) > big_gamma) {
        warn(warnings, "QiParams: |Lambda| exceeds Gamma; outside the interference range");
    }
}

void AtsParams::validate() const {
    if (!(big_gamma > 0.0)) throw ValidationError("AtsParams: Gamma must be positive");
}

std::pair<double, double> gamma_lambda(const ThreeLevelParams& params) {
    params.validate();
    return {params.big_gamma(), params.big_lambda()};
}

QiEvaluation qi_absorption(double delta, const QiParams& p) {
    const double half_c = p.omega_c / 2.0;
    const double g = p.big_gamma;
    const double l = p.big_lambda;

    const double a = -(half_c * half_c - delta * delta) * l + (g - l) * (g - l) * (g + l);
    const double b = ((delta + half_c) * (delta + half_c) + g * g) *
                         ((delta - half_c) * (delta - half_c) + g * g) -
                     2.0 * (half_c * half_c - delta * delta + g * g) * l * l +
                     l * l * l * l;
    if (std::abs(b) < 1e-14) {
        throw SingularityError("qi_absorption: vanishing denominator");
    }
    const double value = p.omega_p / (4.0 * b) *
                         ((delta - half_c) * (delta - half_c) * g +
                          (delta + half_c) * (delta + half_c) * g + 2.0 * a);
    return QiEvaluation{a, b, value};
}

double ats_absorption(double delta, const AtsParams& p) {
    p.validate();
    const double half_c = p.omega_c / 2.0;
    const double g = p.big_gamma;
    return (g * p.omega_p / 4.0) / ((delta - half_c) * (delta - half_c) + g * g) +
           (g * p.omega_p / 4.0) / ((delta + half_c) * (delta + half_c) + g * g);
}

bool dip_visible(const QiParams& p) {
    if (!(3.0 * p.big_gamma - p.big_lambda > 0.0)) {
        throw DomainError("dip_visible: requires 3*Gamma - Lambda > 0");
    }
    const double gl = p.big_gamma - p.big_lambda;
    const double threshold = 2.0 * std::sqrt(gl * gl * gl / (3.0 * p.big_gamma - p.big_lambda));
    return p.omega_c > threshold;
}

DressedFirstOrder dressed_first_order(double delta, const ThreeLevelParams& params) {
    params.validate();
    const double g = params.big_gamma();
    const double l = params.big_lambda();
    const double half_c = params.omega_c / 2.0;

    // Row order |->, |+> as in the dressed-basis equations of motion.
    Eigen::Matrix2cd m;
    m << imag_unit * (delta + half_c) + g, Complex(l, 0.0),
         Complex(l, 0.0), imag_unit * (delta - half_c) + g;
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) < 1e-14) {
        throw SingularityError("dressed_first_order: singular dressed response matrix");
    }
    Eigen::Vector2cd drive;
    const Complex source = imag_unit * params.omega_p / (2.0 * std::sqrt(2.0));
    drive << source, source;

    const Eigen::Vector2cd r = m.inverse() * drive;
    const Complex rho_minus0 = r(0);
    const Complex rho_plus0 = r(1);
    const double im = ((rho_plus0 + rho_minus0) / std::sqrt(2.0)).imag();
    return DressedFirstOrder{rho_plus0, rho_minus0, im};
}

PhaseAccumulation phase_accumulation(double delta, double omega_c, double period) {
    if (!(period > 0.0)) throw ValidationError("phase_accumulation: period must be positive");
    PhaseAccumulation acc;
    acc.first_half_plus = (delta + omega_c / 2.0) * period / 2.0;
    acc.first_half_minus = (delta - omega_c / 2.0) * period / 2.0;
    acc.second_half = delta * period / 2.0;
    acc.total_plus = acc.first_half_plus + acc.second_half;
    acc.total_minus = acc.first_half_minus + acc.second_half;
    return acc;
}

std::vector<double> peak_positions(double period, double omega_c, int n_min, int n_max) {
    if (!(period > 0.0)) throw ValidationError("peak_positions: period must be positive");
    if (n_min > n_max) throw ValidationError("peak_positions: empty index range");
    std::vector<double> peaks;
    peaks.reserve(2 * static_cast<std::size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n) {
        const double center = 2.0 * M_PI * static_cast<double>(n) / period;
        peaks.push_back(center - omega_c / 4.0);
        peaks.push_back(center + omega_c / 4.0);
    }
    std::sort(peaks.begin(), peaks.end());
    return peaks;
}

}  // namespace floquet
