#include "floquet/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "floquet/ode.hpp"

namespace floquet {

namespace {

constexpr double kSeriesCutoff = 8.0;

double bessel_j_series(int k, double x) {
    // k >= 0, |x| <= kSeriesCutoff
    const double half = x / 2.0;
    double term = 1.0;
    for (int i = 1; i <= k; ++i) term *= half / static_cast<double>(i);
    double sum = term;
    const double half2 = half * half;
    for (int m = 1; m < 200; ++m) {
        term *= -half2 / (static_cast<double>(m) * static_cast<double>(k + m));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

// All of J_0(x)..J_kmax(x) by backward recurrence (Miller's algorithm) with
// the even-order sum normalization. Requires x > 0.
std::vector<double> bessel_j_all_miller(double x, int kmax) {
    // The contaminating solution is only suppressed above the turning point;
    // start well past it (the transition zone scales like x^(1/3)).
    const int turning = static_cast<int>(std::ceil(x));
    int start = std::max(kmax, turning);
    start += 50 + static_cast<int>(10.0 * std::cbrt(x));
    if (start % 2 != 0) ++start;

    std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
    double jp = 0.0;        // J_{k+1} trial
    double jc = 1e-300;     // J_k trial
    double norm = 0.0;      // accumulates J_0 + 2 sum J_{2m}
    for (int k = start; k >= 0; --k) {
        const double jm = (2.0 * (k + 1) / x) * jc - jp;
        jp = jc;
        jc = jm;
        if (k <= kmax) out[static_cast<std::size_t>(k)] = jc;
        if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * jc;
        if (std::abs(jc) > 1e250) {
            jc *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            for (auto& v : out) v *= 1e-250;
        }
    }
    for (auto& v : out) v /= norm;
    return out;
}

std::vector<double> bessel_j_all(double x, int kmax) {
    // J_k(-x) = (-1)^k J_k(x)
    const double ax = std::abs(x);
    std::vector<double> out;
    if (ax <= kSeriesCutoff) {
        out.resize(static_cast<std::size_t>(kmax) + 1);
        for (int k = 0; k <= kmax; ++k) out[static_cast<std::size_t>(k)] = bessel_j_series(k, ax);
    } else {
        out = bessel_j_all_miller(ax, kmax);
    }
    if (x < 0.0) {
        for (int k = 1; k <= kmax; k += 2) out[static_cast<std::size_t>(k)] = -out[static_cast<std::size_t>(k)];
    }
    return out;
}

}  // namespace

double bessel_j(int k, double x) {
    if (!std::isfinite(x) || std::abs(x) >= 1e4) {
        throw RangeError("bessel_j: |x| must be below 1e4");
    }
    const int ak = std::abs(k);
    const double sign = (k < 0 && ak % 2 != 0) ? -1.0 : 1.0;
    if (std::abs(x) <= kSeriesCutoff) {
        return sign * ((x < 0.0 && ak % 2 != 0) ? -bessel_j_series(ak, -x)
                                                : bessel_j_series(ak, std::abs(x)));
    }
    return sign * bessel_j_all(x, ak)[static_cast<std::size_t>(ak)];
}

FourierComponents fourier_components(double omega_p, double omega, int n_max) {
    if (omega_p < 0.0) throw ValidationError("fourier_components: omega_p must be nonnegative");
    if (!(omega > 0.0)) throw ValidationError("fourier_components: omega must be positive");
    if (n_max < 1) throw ValidationError("fourier_components: n_max must be at least 1");
    FourierComponents fc;
    fc.omega_p = omega_p;
    fc.omega = omega;
    fc.dc = omega_p / 2.0;
    fc.harmonics.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        fc.harmonics.push_back({omega_p / ((2.0 * n - 1.0) * M_PI), (2.0 * n - 1.0) * omega});
    }
    return fc;
}

double fourier_reconstruct(const FourierComponents& fc, double t) {
    double value = fc.dc;
    for (const auto& h : fc.harmonics) {
        value += 2.0 * h.amplitude * std::sin(h.frequency * t);
    }
    return value;
}

void BesselSumConfig::validate() const {
    if (q_max < 1) throw ValidationError("BesselSumConfig: q_max must be at least 1");
    if (index_margin < 1) throw ValidationError("BesselSumConfig: index_margin must be positive");
    if (n_max < 0) throw ValidationError("BesselSumConfig: n_max must be nonnegative");
}

namespace {

// One pass of the nested product expansion: convolve the Bessel coefficient
// combs of each retained envelope harmonic.
BesselOmegaSeries omega_series_once(double omega_p, double omega, int q_max, int margin) {
    std::vector<double> coeffs{1.0};
    int support = 0;
    for (int q = 1; q <= q_max; ++q) {
        const double stride = 2.0 * q - 1.0;
        const double x = ((q % 2 == 1) ? -2.0 : 2.0) * omega_p / (stride * stride * omega * M_PI);
        // Orders past ceil(|x|) + margin carry tails below 1e-14 only for
        // moderate arguments; the transition zone widens like |x|^(1/3).
        const int cutoff = static_cast<int>(std::ceil(std::abs(x))) + margin +
                           static_cast<int>(std::ceil(9.0 * std::cbrt(std::abs(x))));
        const auto j = bessel_j_all(x, cutoff);

        const int new_support = support + static_cast<int>(stride) * cutoff;
        std::vector<double> next(2 * static_cast<std::size_t>(new_support) + 1, 0.0);
        for (int m = -support; m <= support; ++m) {
            const double base = coeffs[static_cast<std::size_t>(m + support)];
            if (base == 0.0) continue;
            for (int k = -cutoff; k <= cutoff; ++k) {
                // J_{-k}(x) = (-1)^k J_k(x)
                const double jk = (k >= 0) ? j[static_cast<std::size_t>(k)]
                                           : ((-k) % 2 == 0 ? j[static_cast<std::size_t>(-k)]
                                                            : -j[static_cast<std::size_t>(-k)]);
                next[static_cast<std::size_t>(m + static_cast<int>(stride) * k + new_support)] +=
                    base * jk;
            }
        }
        coeffs = std::move(next);
        support = new_support;
    }
    return BesselOmegaSeries{support, std::move(coeffs)};
}

}  // namespace

BesselOmegaSeries bessel_omega_series(double omega_p, double omega, const BesselSumConfig& cfg) {
    cfg.validate();
    if (omega_p < 0.0) throw ValidationError("bessel_omega_series: omega_p must be nonnegative");
    if (!(omega > 0.0)) throw ValidationError("bessel_omega_series: omega must be positive");

    BesselOmegaSeries series = omega_series_once(omega_p, omega, cfg.q_max, cfg.index_margin);
    if (cfg.self_check) {
        // Doubling the per-factor order cutoffs probes the Bessel-tail
        // truncation, which is the part that must be negligible. q_max is a
        // model-order choice, not a numerical cutoff: the expansion converges
        // only quadratically in q, so it is excluded from this check.
        const BesselOmegaSeries refined =
            omega_series_once(omega_p, omega, cfg.q_max, 2 * cfg.index_margin);
        double worst = 0.0;
        for (int n = -refined.support; n <= refined.support; ++n) {
            worst = std::max(worst, std::abs(series.at(n) - refined.at(n)));
        }
        if (worst > cfg.self_check_tol) {
            throw TruncationError("bessel_omega_series: truncation self-check failed (" +
                                  std::to_string(worst) + ")");
        }
    }
    return series;
}

double bessel_omega_n(int n, double omega_p, double omega, const BesselSumConfig& cfg) {
    return bessel_omega_series(omega_p, omega, cfg).at(n);
}

double weak_drive_rho11(double delta, const TwoLevelParams& params, int n_max, bool symmetrized,
                        WarningLog* warnings) {
    params.validate();
    if (n_max < 0) throw ValidationError("weak_drive_rho11: n_max must be nonnegative");
    const double omega = 2.0 * M_PI / params.period;
    if (params.omega_p >= omega) {
        warn(warnings, "weak_drive_rho11: omega_p >= omega; outside the weak-drive regime");
    }
    const double g1p = params.gamma1_prime();
    const double g10 = params.gamma10;
    const double half_drive = params.omega_p / 2.0;

    auto lorentzian = [&](double amp, double det) {
        return (g1p / (2.0 * g10)) * amp * amp /
               (g1p * g1p + det * det + (g1p / g10) * amp * amp);
    };

    double value = lorentzian(half_drive, delta);
    for (int n = 1; n <= n_max; ++n) {
        const double amp = params.omega_p / ((2.0 * n - 1.0) * M_PI);
        const double wn = (2.0 * n - 1.0) * omega;
        value += lorentzian(amp, delta + wn);
        if (symmetrized) value += lorentzian(amp, delta - wn);
    }
    return value;
}

ResonantSteady resonant_steady(double omega_p, const TwoLevelParams& params,
                               const BesselSumConfig& cfg, WarningLog* warnings) {
    params.validate();
    if (params.delta != 0.0) {
        throw DomainError("resonant_steady: formula is valid only at delta = 0");
    }
    const double omega = 2.0 * M_PI / params.period;
    const double g1 = params.gamma1();
    if (omega_p < 5.0 * g1) {
        warn(warnings,
             "resonant_steady: omega_p below 5*gamma1; the strong-drive derivation "
             "drops terms rotating at 2*omega_p");
    }
    const BesselOmegaSeries series = bessel_omega_series(omega_p, omega, cfg);
    const int range = cfg.n_max > 0 ? std::min(cfg.n_max, series.support) : series.support;

    double pop_sum = 0.0;
    double coh_sum = 0.0;
    for (int n = -range; n <= range; ++n) {
        const double w = series.at(n);
        if (w == 0.0) continue;
        const double det = omega_p / 2.0 - static_cast<double>(n) * omega;
        const double denom = g1 * g1 + det * det;
        pop_sum += w * w / denom;
        coh_sum += w * w * det / denom;
    }
    return ResonantSteady{0.5 - (params.gamma10 * g1 / 2.0) * pop_sum,
                          (params.gamma10 / 2.0) * coh_sum};
}

std::optional<double> cdt_locus(double omega, int n, double delta) {
    if (n < 1) throw ValidationError("cdt_locus: n must be at least 1");
    if (!(omega > 0.0)) throw ValidationError("cdt_locus: omega must be positive");
    const double target = 2.0 * n * omega;
    const double rhs = target * target - delta * delta;
    if (rhs < 0.0) return std::nullopt;
    return std::sqrt(rhs);
}

BlochComponents bloch_from_density(const DensityMatrix& rho) {
    const Complex r00 = rho.element(0, 0), r11 = rho.element(1, 1);
    const Complex r01 = rho.element(0, 1), r10 = rho.element(1, 0);
    return BlochComponents{(r11 - r00 + r01 - r10) / 2.0, (r10 + r01) / 2.0,
                           (r11 - r00 - r01 + r10) / 2.0};
}

ComplexMatrix bloch_to_density(const BlochComponents& b) {
    const Complex d = b.u + b.w;        // rho11 - rho00
    const Complex c = b.u - b.w;        // rho01 - rho10
    ComplexMatrix rho(2, 2);
    rho(0, 0) = (1.0 - d) / 2.0;
    rho(1, 1) = (1.0 + d) / 2.0;
    rho(0, 1) = b.v + c / 2.0;
    rho(1, 0) = b.v - c / 2.0;
    return rho;
}

double bloch_rho11(const BlochComponents& b) { return 0.5 + b.u.real(); }

double bloch_im_rho10(const BlochComponents& b) { return -b.u.imag(); }

BlochTrace integrate_bloch_resonant(const TwoLevelParams& params, double t_end, double reltol) {
    params.validate();
    if (params.delta != 0.0) {
        throw DomainError("integrate_bloch_resonant: valid only at delta = 0");
    }
    const double g10 = params.gamma10;
    const double g1p = params.gamma1_prime();
    const PulseTrain train = params.probe_train();

    // State layout (u, v, w). The source terms carry -gamma10/2: with the
    // component definitions above, the undriven system relaxes to
    // u = w = -1/2 (ground state), and rho11 = 1/2 + Re u.
    const auto rhs = [&](double t, const ComplexVector& y) -> ComplexVector {
        const double drive = train.value(t);
        ComplexVector dy(3);
        const Complex u = y(0), v = y(1), w = y(2);
        dy(0) = -g10 / 2.0 - (g10 + g1p) / 2.0 * u + imag_unit * drive * u -
                (g10 - g1p) / 2.0 * w;
        dy(1) = -g1p * v;
        dy(2) = -g10 / 2.0 - (g10 + g1p) / 2.0 * w - imag_unit * drive * w -
                (g10 - g1p) / 2.0 * u;
        return dy;
    };

    ode::Options opt;
    opt.reltol = reltol;
    opt.abstol = reltol * 1e-3;

    const double period = params.period;
    const auto n_periods = static_cast<long>(std::floor(t_end / period + 1e-9));

    BlochTrace trace;
    trace.period = period;
    ComplexVector y(3);
    y << Complex(-0.5, 0.0), Complex(0.0, 0.0), Complex(-0.5, 0.0);
    trace.points.push_back(BlochComponents{y(0), y(1), y(2)});
    for (long k = 0; k < n_periods; ++k) {
        const double t0 = static_cast<double>(k) * period;
        y = ode::integrate_segment(rhs, y, t0, t0 + period / 2.0, opt);
        y = ode::integrate_segment(rhs, y, t0 + period / 2.0, t0 + period, opt);
        trace.points.push_back(BlochComponents{y(0), y(1), y(2)});
    }
    return trace;
}

}  // namespace floquet
