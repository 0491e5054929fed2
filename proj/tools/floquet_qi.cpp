// Command-line front end: steady-state scans, spectra, lineshape fits, exact
// vs rotating-frame comparisons, closed-form evaluations, and the `repro`
// verification suite.
//
// Exit codes: 0 success, 2 configuration/validation, 3 refusing to clobber,
// 4 fit failure, 5 numeric failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "floquet/acceptance.hpp"
#include "floquet/analytic.hpp"
#include "floquet/fitting.hpp"
#include "floquet/lineshape.hpp"
#include "floquet/scans.hpp"

using json = nlohmann::ordered_json;
using namespace floquet;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitClobber = 3;
constexpr int kExitFit = 4;
constexpr int kExitNumeric = 5;

struct CliError {
    int code;
    std::string message;
};

// Ordered key/value provenance block carried into every output file.
using Provenance = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void add(Provenance& p, const std::string& key, double v) {
    p.emplace_back(key, format_double(v));
}

void add(Provenance& p, const std::string& key, const std::string& v) { p.emplace_back(key, v); }

std::ofstream open_output(const std::string& path, bool force) {
    if (!force && std::filesystem::exists(path)) {
        throw CliError{kExitClobber, "output file exists (use --force to overwrite): " + path};
    }
    std::ofstream out(path);
    if (!out) throw CliError{kExitConfig, "cannot open output file: " + path};
    out << std::setprecision(17);
    return out;
}

// Comment block at the top of CSV outputs. Stripping the leading "# " from
// these lines yields a config file that reproduces the run.
void write_provenance_csv(std::ostream& out, const std::string& command, const Provenance& p) {
    out << "## floquet_qi " << command << "\n";
    out << "# [" << command << "]\n";
    for (const auto& [key, value] : p) out << "# " << key << " = " << value << "\n";
}

json provenance_json(const Provenance& p) {
    json j = json::object();
    for (const auto& [key, value] : p) {
        try {
            std::size_t used = 0;
            const double d = std::stod(value, &used);
            if (used == value.size()) {
                j[key] = d;
                continue;
            }
        } catch (...) {
        }
        j[key] = value;
    }
    return j;
}

void print_warnings(const WarningLog& log) {
    for (const auto& message : log.messages()) std::cerr << "warning: " << message << "\n";
}

std::vector<double> make_grid(double lo, double hi, double step, const char* what) {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw CliError{kExitConfig, std::string("invalid grid for ") + what};
    }
    std::vector<double> grid;
    for (double v = lo; v <= hi + step * 1e-9; v += step) grid.push_back(v);
    return grid;
}

std::vector<double> make_log_grid(double lo, double hi, int points, const char* what) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw CliError{kExitConfig, std::string("invalid log grid for ") + what};
    }
    std::vector<double> grid;
    const double ratio = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid.push_back(lo * std::exp(ratio * i));
    return grid;
}

// Physical parameters shared by most subcommands.
struct ParamFlags {
    double tau = 0.05;
    double delta = 0.0;
    double omega_p = 1.0;
    double omega_c = 10.8;
    double gamma10 = 1.0;
    double gamma1_phi = 0.4;
    double gamma21 = 1.4;
    double gamma2_phi = 0.2;

    void attach(CLI::App* cmd, bool with_three_level = true) {
        cmd->add_option("--tau", tau, "Modulation parameter tau (period / 2 pi)")
            ->capture_default_str();
        cmd->add_option("--omega-p", omega_p, "Probe Rabi amplitude")->capture_default_str();
        cmd->add_option("--gamma10", gamma10, "Damping rate 1 -> 0")->capture_default_str();
        cmd->add_option("--gamma1-phi", gamma1_phi, "Dephasing of |1>")->capture_default_str();
        if (with_three_level) {
            cmd->add_option("--omega-c", omega_c, "Control Rabi amplitude")
                ->capture_default_str();
            cmd->add_option("--gamma21", gamma21, "Damping rate 2 -> 1")->capture_default_str();
            cmd->add_option("--gamma2-phi", gamma2_phi, "Dephasing of |2>")
                ->capture_default_str();
        }
    }

    TwoLevelParams two_level() const {
        return TwoLevelParams{delta, omega_p, period_from_tau(tau), gamma10, gamma1_phi};
    }

    ThreeLevelParams three_level() const {
        ThreeLevelParams p;
        p.delta = delta;
        p.omega_p = omega_p;
        p.omega_c = omega_c;
        p.period = period_from_tau(tau);
        p.gamma10 = gamma10;
        p.gamma21 = gamma21;
        p.gamma1_phi = gamma1_phi;
        p.gamma2_phi = gamma2_phi;
        return p;
    }

    void describe(Provenance& p, bool with_three_level = true) const {
        add(p, "tau", tau);
        add(p, "omega-p", omega_p);
        add(p, "gamma10", gamma10);
        add(p, "gamma1-phi", gamma1_phi);
        if (with_three_level) {
            add(p, "omega-c", omega_c);
            add(p, "gamma21", gamma21);
            add(p, "gamma2-phi", gamma2_phi);
        }
    }
};

SamplePoint parse_sample(const std::string& name) {
    if (name == "period-end") return SamplePoint::period_end;
    if (name == "probe-end") return SamplePoint::probe_end;
    return SamplePoint::period_average;
}

void apply_regime(const std::string& regime, ParamFlags& flags) {
    if (regime.empty()) return;
    if (regime == "ats") {
        flags.omega_p = 1.0;
        flags.omega_c = 10.8;
        flags.gamma10 = 1.0;
        flags.gamma21 = 1.4;
        flags.gamma1_phi = 0.4;
        flags.gamma2_phi = 0.2;
    } else {  // "eit"
        flags.omega_p = 1.0;
        flags.omega_c = 3.55;
        flags.gamma10 = 1.0;
        flags.gamma21 = 0.1;
        flags.gamma1_phi = 3.0;
        flags.gamma2_phi = 0.0;
    }
}

void write_failures_sidecar(const std::string& output, const std::vector<GridFailure>& failures,
                            const std::vector<double>& axis1, const std::vector<double>& axis2) {
    if (failures.empty()) return;
    std::ofstream log(output + ".failures.log");
    for (const auto& f : failures) {
        const std::size_t i = f.index / axis2.size();
        const std::size_t j = f.index % axis2.size();
        log << axis1[i] << "," << axis2[j] << "," << f.message << "\n";
    }
    std::cerr << "warning: " << failures.size() << " grid cells failed; see " << output
              << ".failures.log\n";
}

json fit_to_json(const FitResult& fit) {
    json j;
    j["model"] = model_name(fit.model);
    json params;
    params["omega_c"] = fit.params[0];
    params["omega_p"] = fit.params[1];
    params["gamma_big"] = fit.params[2];
    if (fit.model == LineshapeModel::qi) params["lambda"] = fit.params[3];
    j["params"] = params;
    j["rss"] = fit.rss;
    j["n"] = fit.n_points;
    j["k"] = fit.k;
    j["aic_per_point"] = fit.aic_per_point();
    j["iterations"] = fit.iterations;
    return j;
}

void emit_text_or_file(const std::string& path, bool force, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
    } else {
        auto out = open_output(path, force);
        out << body;
    }
}

// ---------------------------------------------------------------------------
// subcommand handlers

int run_scan(const std::string& system, const ParamFlags& params, double delta_min,
             double delta_max, double delta_step, double power_min, double power_max,
             double power_step, double tau_min, double tau_max, int tau_points,
             const std::string& output, bool force, bool serial, const std::string& format) {
    const auto deltas = make_grid(delta_min, delta_max, delta_step, "delta");
    const ExecMode exec = serial ? ExecMode::serial : ExecMode::parallel;
    ScanGrid grid;
    Provenance prov;
    add(prov, "system", system);
    if (system == "two-level") {
        const auto powers = make_grid(power_min, power_max, power_step, "power");
        grid = scan_two_level(deltas, powers, params.tau, params.gamma10, params.gamma1_phi,
                              exec);
        params.describe(prov, false);
        add(prov, "power-min", power_min);
        add(prov, "power-max", power_max);
        add(prov, "power-step", power_step);
    } else {
        const auto taus = make_log_grid(tau_min, tau_max, tau_points, "tau");
        grid = scan_three_level_tau(deltas, taus, params.three_level(), exec);
        params.describe(prov);
        add(prov, "tau-min", tau_min);
        add(prov, "tau-max", tau_max);
        add(prov, "tau-points", static_cast<double>(tau_points));
    }
    add(prov, "delta-min", delta_min);
    add(prov, "delta-max", delta_max);
    add(prov, "delta-step", delta_step);

    auto out = open_output(output, force);
    if (format == "csv") {
        write_provenance_csv(out, "scan", prov);
        out << grid.axis1_name << "," << grid.axis2_name << "," << grid.observable_name << "\n";
        for (std::size_t i = 0; i < grid.axis1.size(); ++i) {
            for (std::size_t j = 0; j < grid.axis2.size(); ++j) {
                out << grid.axis1[i] << "," << grid.axis2[j] << "," << grid.at(i, j) << "\n";
            }
        }
    } else {
        json j;
        j["config"] = provenance_json(prov);
        j["axis1"] = grid.axis1;
        j["axis2"] = grid.axis2;
        j["observable"] = grid.observable_name;
        j["values"] = grid.values;
        out << j.dump(2) << "\n";
    }
    write_failures_sidecar(output, grid.failures, grid.axis1, grid.axis2);
    return 0;
}

int run_spectrum(const std::string& system, const ParamFlags& params, double delta_min,
                 double delta_max, double delta_step, const std::string& sample,
                 const std::string& output, bool force, bool serial,
                 const std::string& format) {
    const auto deltas = make_grid(delta_min, delta_max, delta_step, "delta");
    const ExecMode exec = serial ? ExecMode::serial : ExecMode::parallel;
    const SamplePoint sp = parse_sample(sample);
    Spectrum spec;
    Provenance prov;
    add(prov, "system", system);
    if (system == "two-level") {
        spec = spectrum_two_level(params.tau, deltas, params.two_level(), sp, exec);
        params.describe(prov, false);
    } else {
        spec = spectrum_three_level(params.tau, deltas, params.three_level(), sp, exec);
        params.describe(prov);
    }
    add(prov, "delta-min", delta_min);
    add(prov, "delta-max", delta_max);
    add(prov, "delta-step", delta_step);
    add(prov, "sample", sample);

    auto out = open_output(output, force);
    if (format == "csv") {
        write_provenance_csv(out, "spectrum", prov);
        out << "delta,rho11,im_rho10\n";
        for (std::size_t i = 0; i < spec.size(); ++i) {
            out << spec.delta[i] << "," << spec.rho11[i] << "," << spec.im_rho10[i] << "\n";
        }
    } else {
        json j;
        j["config"] = provenance_json(prov);
        j["delta"] = spec.delta;
        j["rho11"] = spec.rho11;
        j["im_rho10"] = spec.im_rho10;
        out << j.dump(2) << "\n";
    }
    return 0;
}

int run_fit(const ParamFlags& params, double window_half, double window_spacing,
            const std::string& sample, const std::string& output, bool force) {
    const ThreeLevelParams system = params.three_level();
    FitWindow window = FitWindow::default_ctw(system.period, system.omega_c);
    if (window_half > 0.0) {
        window.delta_min = -window_half;
        window.delta_max = window_half;
    }
    window.spacing = window_spacing;

    const Spectrum spec = spectrum_three_level(params.tau, window.sample_deltas(), system,
                                               parse_sample(sample));

    Provenance prov;
    params.describe(prov);
    add(prov, "window-half", window.delta_max);
    add(prov, "window-spacing", window.spacing);
    add(prov, "sample", sample);

    json j;
    j["config"] = provenance_json(prov);

    int exit_code = 0;
    try {
        const FitResult qi = fit_model(spec, LineshapeModel::qi, window);
        const FitResult ats = fit_model(spec, LineshapeModel::ats, window);
        const AicWeights weights = aic_weights(qi, ats);
        j["qi"] = fit_to_json(qi);
        j["ats"] = fit_to_json(ats);
        j["weights"] = {{"w_qi", weights.w_qi}, {"w_ats", weights.w_ats}};
    } catch (const FitNonConvergence& e) {
        std::cerr << "fit did not converge: " << e.what() << "\n";
        j["error"] = e.what();
        j["best"] = fit_to_json(e.best);
        exit_code = kExitFit;
    }
    emit_text_or_file(output, force, j.dump(2) + "\n");
    return exit_code;
}

int run_rwa(std::string preset, ParamFlags params, double carrier, int periods,
            const std::string& output, bool force) {
    if (!preset.empty()) {
        params.gamma10 = 1.0;
        params.gamma1_phi = 0.4;
        params.delta = 0.0;
        params.omega_p = 1.0;
        if (preset == "a") {
            params.tau = 0.001;
        } else if (preset == "b") {
            params.tau = 0.15;
        } else if (preset == "c") {
            params.tau = 0.001;
            params.delta = 40.0;
        } else {  // "d"
            params.tau = 0.05;
            params.omega_p = 200.0;
        }
    }
    LabFrameParams lab;
    lab.base = params.two_level();
    lab.omega_probe = carrier;
    WarningLog warnings;
    lab.validate(&warnings);
    print_warnings(warnings);

    if (periods <= 0) {
        // default: roughly ten damping times of evolution
        periods = std::max(8, static_cast<int>(std::ceil(10.0 / lab.base.period)));
    }
    const RwaComparison cmp = rwa_comparison(lab, periods);

    Provenance prov;
    params.describe(prov, false);
    add(prov, "delta", params.delta);
    add(prov, "carrier", carrier);
    add(prov, "periods", static_cast<double>(periods));

    auto out = open_output(output, force);
    write_provenance_csv(out, "rwa", prov);
    out << "time,rho11_exact,rho11_rwa\n";
    const std::size_t n = std::min(cmp.exact.size(), cmp.rwa.size());
    for (std::size_t k = 0; k < n; ++k) {
        out << cmp.exact.time(k) << "," << cmp.exact.states[k].population(1) << ","
            << cmp.rwa.states[k].population(1) << "\n";
    }
    std::cout << "max |rho11_exact - rho11_rwa| = " << format_double(cmp.max_abs_deviation)
              << "\n";
    return 0;
}

int run_analytic(const std::string& op, const ParamFlags& params, double delta_min,
                 double delta_max, double delta_step, int harmonic, int n_max,
                 bool literal_sidebands, double t_end, const std::string& output, bool force) {
    WarningLog warnings;
    Provenance prov;
    params.describe(prov, false);
    add(prov, "op", op);
    if (op == "weak-drive") {
        add(prov, "delta-min", delta_min);
        add(prov, "delta-max", delta_max);
        add(prov, "delta-step", delta_step);
        add(prov, "n-max", static_cast<double>(n_max));
        if (literal_sidebands) add(prov, "literal-sidebands", "true");
    } else if (op == "cdt-locus") {
        add(prov, "n", static_cast<double>(harmonic));
        add(prov, "delta", params.delta);
    } else if (op == "omega-n" || op == "fourier") {
        add(prov, "n-max", static_cast<double>(n_max));
    } else if (op == "bloch") {
        add(prov, "t-end", t_end);
    }
    std::ostringstream body;
    body << std::setprecision(17);

    if (op == "resonant-steady") {
        BesselSumConfig cfg;
        const ResonantSteady rs = resonant_steady(params.omega_p, params.two_level(), cfg,
                                                  &warnings);
        body << "rho11 = " << rs.rho11 << "\nim_rho10 = " << rs.im_rho10 << "\n";
    } else if (op == "weak-drive") {
        write_provenance_csv(body, "analytic", prov);
        body << "delta,rho11\n";
        for (double d = delta_min; d <= delta_max + 1e-9; d += delta_step) {
            body << d << ","
                 << weak_drive_rho11(d, params.two_level(), n_max, !literal_sidebands, &warnings)
                 << "\n";
        }
    } else if (op == "cdt-locus") {
        const auto locus = cdt_locus(1.0 / params.tau, harmonic, params.delta);
        if (locus.has_value()) {
            body << "omega_p = " << *locus << "\n";
        } else {
            body << "none\n";
        }
    } else if (op == "omega-n") {
        BesselSumConfig cfg;
        const BesselOmegaSeries series =
            bessel_omega_series(params.omega_p, 1.0 / params.tau, cfg);
        write_provenance_csv(body, "analytic", prov);
        body << "n,omega_n\n";
        const int range = std::min(series.support, n_max);
        for (int n = -range; n <= range; ++n) body << n << "," << series.at(n) << "\n";
    } else if (op == "fourier") {
        const FourierComponents fc = fourier_components(params.omega_p, 1.0 / params.tau, n_max);
        write_provenance_csv(body, "analytic", prov);
        body << "n,amplitude,frequency\n";
        body << 0 << "," << fc.dc << "," << 0.0 << "\n";
        for (std::size_t n = 0; n < fc.harmonics.size(); ++n) {
            body << n + 1 << "," << fc.harmonics[n].amplitude << ","
                 << fc.harmonics[n].frequency << "\n";
        }
    } else {  // "bloch"
        const BlochTrace trace = integrate_bloch_resonant(params.two_level(), t_end);
        write_provenance_csv(body, "analytic", prov);
        body << "time,rho11,im_rho10\n";
        for (std::size_t k = 0; k < trace.points.size(); ++k) {
            body << k * trace.period << "," << bloch_rho11(trace.points[k]) << ","
                 << bloch_im_rho10(trace.points[k]) << "\n";
        }
    }
    print_warnings(warnings);
    emit_text_or_file(output, force, body.str());
    return 0;
}

int run_repro(int only, bool list_only) {
    if (list_only) {
        for (const auto& [id, name] : floquet::acceptance::list()) {
            std::cout << id << ": " << name << "\n";
        }
        return 0;
    }
    const std::optional<int> filter =
        only > 0 ? std::optional<int>(only) : std::nullopt;
    const auto results = floquet::acceptance::run(filter, &std::cout);
    if (results.empty()) {
        std::cerr << "no such criterion: " << only << "\n";
        return kExitConfig;
    }
    int failed = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failed;
    }
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Floquet two- and three-level steady-state toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Config file: [subcommand] section, flag names as keys; flags win");
    app.allow_config_extras(CLI::config_extras_mode::error);

    // ---- scan ----
    auto* scan = app.add_subcommand(
        "scan", "Steady-state grids over (detuning, power) or (detuning, tau)");
    std::string scan_system = "two-level";
    scan->add_option("--system", scan_system, "two-level or three-level")
        ->check(CLI::IsMember({"two-level", "three-level"}))
        ->capture_default_str();
    ParamFlags scan_params;
    scan_params.attach(scan);
    double scan_delta_min = -300.0, scan_delta_max = 300.0, scan_delta_step = 2.0;
    scan->add_option("--delta-min", scan_delta_min)->capture_default_str();
    scan->add_option("--delta-max", scan_delta_max)->capture_default_str();
    scan->add_option("--delta-step", scan_delta_step)->capture_default_str();
    double power_min = -45.0, power_max = 0.0, power_step = 0.5;
    scan->add_option("--power-min", power_min, "dBm, two-level scans")->capture_default_str();
    scan->add_option("--power-max", power_max)->capture_default_str();
    scan->add_option("--power-step", power_step)->capture_default_str();
    double tau_min = 0.02, tau_max = 0.8;
    int tau_points = 100;
    scan->add_option("--tau-min", tau_min, "three-level scans")->capture_default_str();
    scan->add_option("--tau-max", tau_max)->capture_default_str();
    scan->add_option("--tau-points", tau_points, "log-spaced points")->capture_default_str();
    std::string scan_output;
    bool scan_force = false, scan_serial = false;
    std::string scan_format = "csv";
    scan->add_option("--output", scan_output, "Output file")->required();
    scan->add_flag("--force", scan_force, "Overwrite existing output");
    scan->add_flag("--serial", scan_serial, "Serial reference execution");
    scan->add_option("--format", scan_format)
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    scan->fallthrough();

    // ---- spectrum ----
    auto* spectrum =
        app.add_subcommand("spectrum", "Steady-state absorption spectrum over detuning");
    std::string spectrum_system = "three-level";
    spectrum->add_option("--system", spectrum_system)
        ->check(CLI::IsMember({"two-level", "three-level"}))
        ->capture_default_str();
    ParamFlags spectrum_params;
    spectrum_params.attach(spectrum);
    double sp_delta_min = -300.0, sp_delta_max = 300.0, sp_delta_step = 0.5;
    spectrum->add_option("--delta-min", sp_delta_min)->capture_default_str();
    spectrum->add_option("--delta-max", sp_delta_max)->capture_default_str();
    spectrum->add_option("--delta-step", sp_delta_step)->capture_default_str();
    std::string spectrum_sample = "period-end";
    spectrum->add_option("--sample", spectrum_sample, "period-end, probe-end, or average")
        ->check(CLI::IsMember({"period-end", "probe-end", "average"}))
        ->capture_default_str();
    std::string spectrum_output;
    bool spectrum_force = false, spectrum_serial = false;
    std::string spectrum_format = "csv";
    spectrum->add_option("--output", spectrum_output)->required();
    spectrum->add_flag("--force", spectrum_force);
    spectrum->add_flag("--serial", spectrum_serial);
    spectrum->add_option("--format", spectrum_format)
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    spectrum->fallthrough();

    // ---- fit ----
    auto* fit = app.add_subcommand("fit", "Fit the central transparency window to the "
                                          "interference and two-Lorentzian models");
    std::string fit_regime;
    fit->add_option("--regime", fit_regime, "Parameter preset: ats or eit")
        ->check(CLI::IsMember({"ats", "eit"}));
    ParamFlags fit_params;
    fit_params.attach(fit);
    double window_half = 0.0;
    double window_spacing = 0.05;
    fit->add_option("--window-half", window_half,
                    "Half-width of the fit window (default: central-window rule)");
    fit->add_option("--window-spacing", window_spacing)->capture_default_str();
    std::string fit_sample = "probe-end";
    fit->add_option("--sample", fit_sample)
        ->check(CLI::IsMember({"period-end", "probe-end", "average"}))
        ->capture_default_str();
    std::string fit_output;
    bool fit_force = false;
    fit->add_option("--output", fit_output, "JSON output path (stdout when omitted)");
    fit->add_flag("--force", fit_force);

    fit->fallthrough();

    // ---- rwa ----
    auto* rwa = app.add_subcommand(
        "rwa", "Exact lab-frame dynamics against the rotating-frame propagator");
    std::string rwa_case;
    rwa->add_option("--case", rwa_case, "Preset a, b, c, or d")
        ->check(CLI::IsMember({"a", "b", "c", "d"}));
    ParamFlags rwa_params;
    rwa_params.attach(rwa, /*with_three_level=*/false);
    rwa->add_option("--delta", rwa_params.delta, "Probe detuning")->capture_default_str();
    double carrier = 6000.0;
    rwa->add_option("--carrier", carrier, "Probe carrier frequency")->capture_default_str();
    int rwa_periods = 0;
    rwa->add_option("--periods", rwa_periods, "Number of modulation periods (0: auto)")
        ->capture_default_str();
    std::string rwa_output;
    bool rwa_force = false;
    rwa->add_option("--output", rwa_output)->required();
    rwa->add_flag("--force", rwa_force);

    rwa->fallthrough();

    // ---- analytic ----
    auto* analytic = app.add_subcommand("analytic", "Closed-form reference evaluations");
    std::string op;
    analytic
        ->add_option("--op", op,
                     "resonant-steady, weak-drive, cdt-locus, omega-n, fourier, or bloch")
        ->required()
        ->check(CLI::IsMember(
            {"resonant-steady", "weak-drive", "cdt-locus", "omega-n", "fourier", "bloch"}));
    ParamFlags analytic_params;
    analytic_params.attach(analytic, /*with_three_level=*/false);
    double an_delta_min = -80.0, an_delta_max = 80.0, an_delta_step = 0.25;
    analytic->add_option("--delta-min", an_delta_min)->capture_default_str();
    analytic->add_option("--delta-max", an_delta_max)->capture_default_str();
    analytic->add_option("--delta-step", an_delta_step)->capture_default_str();
    analytic->add_option("--delta", analytic_params.delta, "Detuning for cdt-locus")
        ->capture_default_str();
    int harmonic = 1;
    analytic->add_option("--n", harmonic, "Harmonic index")->capture_default_str();
    int n_max = 200;
    analytic->add_option("--n-max", n_max, "Series length")->capture_default_str();
    bool literal_sidebands = false;
    analytic->add_flag("--literal-sidebands", literal_sidebands,
                       "Keep only the one-sided sideband sum (no mirrored teeth)");
    double t_end = 10.0;
    analytic->add_option("--t-end", t_end, "Integration time for bloch")->capture_default_str();
    std::string analytic_output;
    bool analytic_force = false;
    analytic->add_option("--output", analytic_output, "Output file (stdout when omitted)");
    analytic->add_flag("--force", analytic_force);

    analytic->fallthrough();

    // ---- repro ----
    auto* repro =
        app.add_subcommand("repro", "Run the acceptance criteria and report pass/fail");
    int only = 0;
    repro->add_option("--only", only, "Run a single criterion by number");
    bool list_only = false;
    repro->add_flag("--list", list_only, "List criteria without running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (scan->parsed()) {
        return run_scan(scan_system, scan_params, scan_delta_min, scan_delta_max,
                        scan_delta_step, power_min, power_max, power_step, tau_min, tau_max,
                        tau_points, scan_output, scan_force, scan_serial, scan_format);
    }
    if (spectrum->parsed()) {
        return run_spectrum(spectrum_system, spectrum_params, sp_delta_min, sp_delta_max,
                            sp_delta_step, spectrum_sample, spectrum_output, spectrum_force,
                            spectrum_serial, spectrum_format);
    }
    if (fit->parsed()) {
        apply_regime(fit_regime, fit_params);
        return run_fit(fit_params, window_half, window_spacing, fit_sample, fit_output,
                       fit_force);
    }
    if (rwa->parsed()) {
        return run_rwa(rwa_case, rwa_params, carrier, rwa_periods, rwa_output, rwa_force);
    }
    if (analytic->parsed()) {
        return run_analytic(op, analytic_params, an_delta_min, an_delta_max, an_delta_step,
                            harmonic, n_max, literal_sidebands, t_end, analytic_output,
                            analytic_force);
    }
    return run_repro(only, list_only);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const FitError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return kExitFit;
    } catch (const ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
