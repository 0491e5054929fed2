#include "floquet/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace floquet {

std::string model_name(LineshapeModel m) { return m == LineshapeModel::qi ? "qi" : "ats"; }

FitWindow FitWindow::default_ctw(double period, double omega_c) {
    const double side_window = 2.0 * M_PI / period - omega_c / 4.0;
    const double half_width = std::min(4.0, 0.9 * side_window);
    return FitWindow{-half_width, half_width, 0.05};
}

std::vector<double> FitWindow::sample_deltas() const {
    validate();
    std::vector<double> deltas;
    const auto count = static_cast<std::size_t>(std::floor((delta_max - delta_min) / spacing + 1e-9)) + 1;
    deltas.reserve(count);
    for (std::size_t i = 0; i < count; ++i) deltas.push_back(delta_min + spacing * i);
    return deltas;
}

void FitWindow::validate() const {
    if (!(delta_min < 0.0 && delta_max > 0.0)) {
        throw ValidationError("FitWindow: window must straddle zero detuning");
    }
    if (!(spacing > 0.0)) throw ValidationError("FitWindow: spacing must be positive");
}

void FitWindow::validate_against_system(double period, double omega_c) const {
    validate();
    const double cap = 2.0 * M_PI / period - omega_c / 4.0 + 1e-9;
    if (std::max(-delta_min, delta_max) > cap) {
        throw ValidationError(
            "FitWindow: window reaches into the side transparency windows (|delta| cap " +
            std::to_string(cap) + ")");
    }
}

double FitResult::aic_per_point() const {
    const double n = static_cast<double>(n_points);
    return (n * std::log(std::max(rss, 1e-300) / n) + 2.0 * k) / n;
}

double FitResult::evaluate(double delta) const {
    if (model == LineshapeModel::qi) return qi_absorption(delta, qi_params()).value;
    return ats_absorption(delta, ats_params());
}

QiParams FitResult::qi_params() const {
    if (model != LineshapeModel::qi) throw ValidationError("FitResult: not a QI fit");
    return QiParams{params[0], params[1], params[2], params[3]};
}

AtsParams FitResult::ats_params() const {
    if (model != LineshapeModel::ats) throw ValidationError("FitResult: not an ATS fit");
    return AtsParams{params[0], params[1], params[2]};
}

namespace {

double model_value(LineshapeModel model, const std::vector<double>& theta, double delta) {
    try {
        if (model == LineshapeModel::qi) {
            return qi_absorption(delta, QiParams{theta[0], theta[1], theta[2], theta[3]}).value;
        }
        return ats_absorption(delta, AtsParams{theta[0], theta[1], std::abs(theta[2])});
    } catch (const std::exception&) {
        return 1e50;  // push the optimizer away from singular parameter sets
    }
}

struct LevMarOutcome {
    std::vector<double> theta;
    double rss;
    long iterations;
    bool converged;
};

// Damped least squares with a forward-difference Jacobian.
LevMarOutcome levenberg_marquardt(LineshapeModel model, std::vector<double> theta,
                                  const std::vector<double>& deltas,
                                  const std::vector<double>& data, const FitOptions& opt) {
    const int n_params = static_cast<int>(theta.size());
    const auto n_data = static_cast<Eigen::Index>(deltas.size());

    auto residuals = [&](const std::vector<double>& th) {
        Eigen::VectorXd r(n_data);
        for (Eigen::Index i = 0; i < n_data; ++i) {
            r(i) = data[static_cast<std::size_t>(i)] -
                   model_value(model, th, deltas[static_cast<std::size_t>(i)]);
        }
        return r;
    };

    Eigen::VectorXd r = residuals(theta);
    double rss = r.squaredNorm();
    double damping = 1e-3;
    long iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        Eigen::MatrixXd jac(n_data, n_params);  // d residual / d theta
        for (int p = 0; p < n_params; ++p) {
            const double step = 1e-7 * std::max(std::abs(theta[static_cast<std::size_t>(p)]), 1e-2);
            std::vector<double> bumped = theta;
            bumped[static_cast<std::size_t>(p)] += step;
            jac.col(p) = (residuals(bumped) - r) / step;
        }

        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * r;

        bool accepted = false;
        for (int attempt = 0; attempt < 25; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal() += damping * jtj.diagonal().cwiseMax(1e-12);
            const Eigen::VectorXd step = damped.ldlt().solve(-jtr);
            if (!step.allFinite()) {
                damping *= 10.0;
                continue;
            }
            std::vector<double> trial = theta;
            for (int p = 0; p < n_params; ++p) trial[static_cast<std::size_t>(p)] += step(p);
            const Eigen::VectorXd r_trial = residuals(trial);
            const double rss_trial = r_trial.squaredNorm();
            if (rss_trial < rss) {
                const double rel_drop = (rss - rss_trial) / std::max(rss, 1e-300);
                const double step_norm = step.norm();
                theta = std::move(trial);
                r = r_trial;
                rss = rss_trial;
                damping = std::max(damping / 10.0, 1e-12);
                accepted = true;
                if (rel_drop < opt.rss_rel_tol || step_norm < opt.step_tol) {
                    return {theta, rss, iter + 1, true};
                }
                break;
            }
            damping *= 10.0;
        }
        if (!accepted) {
            // No downhill step at any damping: a (possibly flat) minimum.
            return {theta, rss, iter + 1, true};
        }
    }
    return {theta, rss, iter, false};
}

std::vector<double> default_init(LineshapeModel model, const ThreeLevelParams& p) {
    // Each drive is on for half the cycle, so the effective fitted rates sit
    // near half the physical ones.
    std::vector<double> theta{p.omega_c / 2.0, p.omega_p / 2.0, p.big_gamma()};
    if (model == LineshapeModel::qi) theta.push_back(p.big_lambda());
    return theta;
}

}  // namespace

FitResult fit_model(const Spectrum& spectrum, LineshapeModel model, const FitWindow& window,
                    const std::optional<std::vector<double>>& init, const FitOptions& options) {
    spectrum.validate();
    window.validate_against_system(spectrum.params.period, spectrum.params.omega_c);

    std::vector<double> deltas;
    std::vector<double> data;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (window.contains(spectrum.delta[i]) && std::isfinite(spectrum.im_rho10[i])) {
            deltas.push_back(spectrum.delta[i]);
            data.push_back(spectrum.im_rho10[i]);
        }
    }
    if (deltas.size() < 20) {
        throw ValidationError("fit_model: fewer than 20 spectrum points inside the window");
    }

    const int k = model == LineshapeModel::qi ? 4 : 3;
    std::vector<double> base =
        init.has_value() ? *init : default_init(model, spectrum.params);
    if (static_cast<int>(base.size()) != k) {
        throw ValidationError("fit_model: initial guess has wrong parameter count");
    }

    // Deterministic multi-start around the base guess.
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    std::vector<std::vector<double>> starts{base};
    for (int s = 0; s < options.extra_starts; ++s) {
        std::vector<double> perturbed = base;
        for (auto& v : perturbed) {
            v = v * (1.0 + jitter(rng)) + 0.01 * jitter(rng);
        }
        starts.push_back(std::move(perturbed));
    }

    LevMarOutcome best{base, std::numeric_limits<double>::infinity(), 0, false};
    for (const auto& start : starts) {
        const LevMarOutcome outcome = levenberg_marquardt(model, start, deltas, data, options);
        if (outcome.rss < best.rss) best = outcome;
    }

    // The models are even in omega_c; report the nonnegative branch.
    best.theta[0] = std::abs(best.theta[0]);
    if (model == LineshapeModel::ats) best.theta[2] = std::abs(best.theta[2]);

    FitResult result{model,  best.theta,
                     best.rss, static_cast<int>(deltas.size()),
                     k,        std::move(deltas),
                     best.iterations};
    if (!best.converged) {
        throw FitNonConvergence("fit_model: iteration cap reached before convergence", result);
    }
    return result;
}

AicWeights aic_weights(const FitResult& fit_qi, const FitResult& fit_ats) {
    if (fit_qi.model != LineshapeModel::qi || fit_ats.model != LineshapeModel::ats) {
        throw ValidationError("aic_weights: pass the QI fit first and the ATS fit second");
    }
    if (fit_qi.fitted_deltas != fit_ats.fitted_deltas) {
        throw ValidationError("aic_weights: fits use different windows");
    }
    const double i_qi = fit_qi.aic_per_point();
    const double i_ats = fit_ats.aic_per_point();
    const double shift = std::min(i_qi, i_ats);  // overflow-safe
    const double e_qi = std::exp(-(i_qi - shift) / 2.0);
    const double e_ats = std::exp(-(i_ats - shift) / 2.0);
    const double w_qi = e_qi / (e_qi + e_ats);
    return AicWeights{w_qi, 1.0 - w_qi};
}

}  // namespace floquet
