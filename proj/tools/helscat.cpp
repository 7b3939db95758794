// helscat: command-line driver for the helicity-splitting scattering pipeline
// and the two-photon purity layer built on top of it.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helscat/beam.hpp"
#include "helscat/constants.hpp"
#include "helscat/errors.hpp"
#include "helscat/io.hpp"
#include "helscat/materials.hpp"
#include "helscat/mie.hpp"
#include "helscat/quantum.hpp"
#include "helscat/runconfig.hpp"

namespace {

using namespace helscat;

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string material_path;
    std::string cache_path;
    int threads = 0;
    bool force = false;
    std::optional<double> sigma_thz;
};

RunConfig build_config(const CliOptions& cli) {
    RunConfig cfg;
    if (!cli.config_path.empty())
        apply_config_file(cfg, cli.config_path);
    if (!cli.material_path.empty())
        apply_key(cfg, "material_path", cli.material_path);
    if (cli.sigma_thz) {
        cfg.sigma_thz = *cli.sigma_thz;
        cfg.explicit_keys.insert("sigma_thz");
    }
    validate(cfg);
    return cfg;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    atomic_write(out_path, content);
}

struct ClassicalSetup {
    Material material;
    ParticleConfig particle;
    BeamConfig beam;
    LensConfig lens;
    ProjectionNumerics numerics;
    std::string classical_fp;
    std::string full_fp;
};

ClassicalSetup classical_setup(const RunConfig& cfg) {
    ClassicalSetup s{Material::load(resolve_material_path(cfg.material_path)),
                     {}, {}, {}, {}, {}, {}};
    s.particle.radius_nm = cfg.radius_nm;
    s.particle.material = &s.material;
    s.beam.waist_mm = cfg.waist_mm;
    s.beam.q = cfg.q;
    s.beam.s = cfg.s;
    s.lens.na = cfg.na;
    s.lens.focal_mm = cfg.focal_mm;
    s.numerics.quad_theta = cfg.quad_theta;
    s.numerics.quad_radial = cfg.quad_radial;
    s.numerics.quad_azimuthal = cfg.quad_azimuthal;
    s.classical_fp = classical_fingerprint(cfg, s.material);
    s.full_fp = full_fingerprint(cfg, s.material);
    return s;
}

// Interpolating the cached spectrum onto the two-photon frequency grid only
// resolves features the classical grid itself resolves: require the grid
// spacing (in ordinary frequency) to stay below a quarter of sigma/2pi.
void validate_grid_fineness(const std::vector<double>& lambda_sorted_desc, double sigma_rads) {
    const double bound_hz = sigma_rads / (2.0 * pi) / 4.0;
    double worst = 0.0;
    for (std::size_t i = 1; i < lambda_sorted_desc.size(); ++i) {
        const double dnu = c_nm_per_s * std::abs(1.0 / lambda_sorted_desc[i] -
                                                 1.0 / lambda_sorted_desc[i - 1]);
        worst = std::max(worst, dnu);
    }
    if (worst > bound_hz) {
        const double lam_min = std::min(lambda_sorted_desc.front(), lambda_sorted_desc.back());
        const double lam_max = std::max(lambda_sorted_desc.front(), lambda_sorted_desc.back());
        const double step_needed = bound_hz * lam_min * lam_min / c_nm_per_s;
        const int n_needed =
            static_cast<int>(std::ceil((lam_max - lam_min) / step_needed)) + 1;
        throw config_error(
            "classical wavelength grid is too coarse for sigma = " +
            format_double(sigma_rads / 1e12) + "e12 rad/s: the largest grid step is " +
            format_double(worst) + " Hz in ordinary frequency but interpolation needs <= " +
            format_double(bound_hz) + " Hz (a quarter of sigma/2pi); use n_lambda >= " +
            std::to_string(n_needed) + " over [" + format_double(lam_min) + ", " +
            format_double(lam_max) + "] nm, or narrow the sweep range");
    }
}

// Every pulse-centre evaluation needs its full frequency window inside the
// classical spectrum, one interior node on each side included so two-sided
// derivatives exist.
void validate_coverage(const HelicitySpectrum& sp, const std::vector<double>& lambda_in,
                       double sigma_rads, double window_sigmas) {
    const std::size_t n = sp.size();
    const double om_lo_ok = sp.omega[1];
    const double om_hi_ok = sp.omega[n - 2];
    for (const double lam : lambda_in) {
        const double om = omega_from_lambda_nm(lam);
        if (!(sigma_rads / om < 1e-2))
            throw config_error("sigma = " + format_double(sigma_rads / 1e12) +
                               "e12 rad/s is not quasi-monochromatic at lambda_in = " +
                               format_double(lam) + " nm (needs sigma/omega_in < 1e-2)");
        const double lo = om - window_sigmas * sigma_rads;
        const double hi = om + window_sigmas * sigma_rads;
        if (lo < om_lo_ok || hi > om_hi_ok)
            throw config_error(
                "lambda_in = " + format_double(lam) + " nm needs classical coverage of [" +
                format_double(lambda_nm_from_omega(hi)) + ", " +
                format_double(lambda_nm_from_omega(lo)) + "] nm (pulse window of +-" +
                format_double(window_sigmas) + " sigma plus an interior margin); extend "
                "lambda_min_nm/lambda_max_nm of the sweep");
    }
}

int run_spectrum(const RunConfig& cfg, const CliOptions& cli) {
    const ClassicalSetup s = classical_setup(cfg);
    const std::vector<double> grid = sweep_grid(cfg);
    check_quadrature_convergence(s.beam, s.lens, s.particle,
                                 omega_from_lambda_nm(grid.front()), s.numerics);
    const HelicitySpectrum sp =
        sweep(s.beam, s.lens, s.particle, grid, s.numerics, cli.threads, s.classical_fp);
    emit(cli.out_path, spectrum_csv(sp, s.full_fp));
    return 0;
}

int run_xsec(const RunConfig& cfg, const CliOptions& cli) {
    const ClassicalSetup s = classical_setup(cfg);
    const std::vector<double> grid = sweep_grid(cfg);
    check_quadrature_convergence(s.beam, s.lens, s.particle,
                                 omega_from_lambda_nm(grid.front()), s.numerics);

    const double x_max = omega_from_lambda_nm(grid.front()) / c_nm_per_s * cfg.radius_nm;
    const int nmax_focus = truncation_order(x_max);

    std::vector<XsecRow> rows(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double om = omega_from_lambda_nm(grid[i]);
        const MieSet mie = mie_set(om, s.particle);
        const FocusExpansion focus =
            focus_coefficients(s.beam, s.lens, om, nmax_focus, cfg.quad_theta);
        const CrossSectionDecomposition cs = cross_section(mie, focus);
        XsecRow row;
        row.lambda_nm = grid[i];
        row.total = cs.total;
        for (const auto& term : cs.per_order) {
            if (term.n == 2) row.a2 = term.electric;
            if (term.n == 3) row.b3 = term.magnetic;
        }
        row.rest = cs.total - row.a2 - row.b3;
        rows[i] = row;
    }
    emit(cli.out_path, xsec_csv(rows, s.full_fp, s.classical_fp));
    return 0;
}

HelicitySpectrum spectrum_for_quantum(const RunConfig& cfg, const ClassicalSetup& s,
                                      const CliOptions& cli) {
    HelicitySpectrum sp;
    if (!cli.cache_path.empty()) {
        sp = read_spectrum_csv(cli.cache_path);
        if (sp.fingerprint != s.classical_fp) {
            if (!cli.force)
                throw data_error("spectrum cache mismatch: configuration expects classical "
                                 "fingerprint " + s.classical_fp + " but " + cli.cache_path +
                                 " carries " + sp.fingerprint + "; regenerate it with "
                                 "`helscat spectrum`, or pass --force to use it anyway");
            std::cerr << "warning: using cache " << cli.cache_path
                      << " despite fingerprint mismatch (expected " << s.classical_fp
                      << ", found " << sp.fingerprint << ")\n";
        }
    } else {
        const std::vector<double> grid = sweep_grid(cfg);
        // fail fast on a grid the quantum layer would reject anyway
        std::vector<double> desc(grid.rbegin(), grid.rend());
        validate_grid_fineness(desc, cfg.sigma_rads());
        check_quadrature_convergence(s.beam, s.lens, s.particle,
                                     omega_from_lambda_nm(grid.front()), s.numerics);
        sp = sweep(s.beam, s.lens, s.particle, grid, s.numerics, cli.threads, s.classical_fp);
    }
    validate_grid_fineness(sp.lambda_nm, cfg.sigma_rads());
    return sp;
}

int run_purity(const RunConfig& cfg, const CliOptions& cli) {
    const ClassicalSetup s = classical_setup(cfg);
    const HelicitySpectrum sp = spectrum_for_quantum(cfg, s, cli);
    const std::vector<double> lam_in = lambda_in_grid(cfg);
    validate_coverage(sp, lam_in, cfg.sigma_rads(), cfg.freq_window_sigmas);

    const QuantumNumerics qnum{cfg.freq_grid_points, cfg.freq_window_sigmas};
    const std::vector<PurityRow> rows =
        purity_spectrum(input_state(cfg), sp, cfg.sigma_rads(), lam_in, qnum, cli.threads);
    for (const auto& row : rows)
        if (!row.approx_valid)
            std::cerr << "warning: first-order expansion is degenerate at lambda_in = "
                      << format_double(row.lambda_in_nm)
                      << " nm; purity_approx falls back to the exact value\n";
    emit(cli.out_path, purity_csv(rows, s.full_fp, s.classical_fp));
    return 0;
}

int run_rho(const RunConfig& cfg, const CliOptions& cli) {
    if (!cfg.is_explicit("lambda_in") || cfg.lambda_in_nm.size() != 1)
        throw config_error("rho needs exactly one pulse-centre wavelength: set "
                           "`lambda_in = <nm>` in the config file");
    const ClassicalSetup s = classical_setup(cfg);
    const HelicitySpectrum sp = spectrum_for_quantum(cfg, s, cli);
    validate_coverage(sp, cfg.lambda_in_nm, cfg.sigma_rads(), cfg.freq_window_sigmas);

    const SpectralAmplitude sa{omega_from_lambda_nm(cfg.lambda_in_nm.front()),
                               cfg.sigma_rads()};
    const FreqGrid grid = frequency_grid(sa, cfg.freq_grid_points, cfg.freq_window_sigmas);
    const ModeWeights weights = channel_weights(input_state(cfg), interpolate(sp), grid);
    const DensityMatrix4 dm = density_matrix(weights);
    emit(cli.out_path, rho_json(dm, purity_loss(dm)));
    return 0;
}

int run_lorentzian_demo(const RunConfig& cfg, const CliOptions& cli) {
    // Single-resonance model channel: alpha a Lorentzian centred on the
    // pulse, beta flat. Runs the whole quantum layer with no classical sweep.
    const double omega_res = 17.5e14; // rad/s
    const double gamma = 1e12;        // rad/s
    const cplx beta_const(0.2, 0.0);
    const SpectrumEval eval = [&](double w) -> std::pair<cplx, cplx> {
        const cplx denom(omega_res * omega_res - w * w, gamma * w);
        return {omega_res * gamma / (2.0 * denom), beta_const};
    };

    const SpectralAmplitude sa{omega_res, cfg.sigma_rads()};
    const int points = cfg.is_explicit("freq_grid_points") ? cfg.freq_grid_points : 512;
    const FreqGrid grid = frequency_grid(sa, points, cfg.freq_window_sigmas);
    const ModeWeights weights = channel_weights(BasisLabel::psi_plus, eval, grid);
    const DensityMatrix4 dm = density_matrix(weights);
    const double exact = purity_loss(dm);

    const double h = sa.sigma / 200.0;
    const auto [A, B] = eval(sa.omega_in);
    const auto [ap, bp] = eval(sa.omega_in + h);
    const auto [am, bm] = eval(sa.omega_in - h);
    const QuasiMonoParams p =
        quasi_mono_from_samples(sa, A, B, (ap - am) / (2.0 * h), (bp - bm) / (2.0 * h));
    const double approx = purity_approx(p);

    std::string out;
    out += "Lorentzian channel demo (alpha resonant, beta = 0.2)\n";
    out += "  omega_res = " + format_double(omega_res) + " rad/s, gamma = " +
           format_double(gamma) + " rad/s, sigma = " + format_double(sa.sigma) + " rad/s\n";
    out += "exact purity loss  = " + format_double(exact) + "\n";
    out += "approx purity loss = " + format_double(approx) + "\n";
    out += "tau_psi = " + format_double(p.tau_psi) + " s, tau_chi = " +
           format_double(p.tau_chi) + " s\n";
    out += "shift_psi = " + format_double(p.Omega_psi) + " rad/s, shift_chi = " +
           format_double(p.Omega_chi) + " rad/s\n";
    out += "density matrix (basis psi_plus, psi_minus, chi_plus, chi_minus):\n";
    for (int i = 0; i < 4; ++i) {
        out += " ";
        for (int j = 0; j < 4; ++j) {
            out += "  " + format_double(dm.rho[i][j].real()) + (dm.rho[i][j].imag() < 0 ? "-" : "+") +
                   format_double(std::abs(dm.rho[i][j].imag())) + "i";
        }
        out += "\n";
    }
    emit(cli.out_path, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helicity-splitting spectra of a focused vortex beam on a spherical "
                 "scatterer, and two-photon purity through that channel"};
    app.fallthrough();
    app.require_subcommand(1);

    CliOptions cli;
    app.add_option("--config", cli.config_path, "key = value configuration file");
    app.add_option("--out", cli.out_path, "output path (default: stdout)");
    app.add_option("--material", cli.material_path, "material table path (overrides config)");
    app.add_option("--threads", cli.threads, "worker threads (0 = all cores)");
    app.add_option("--spectrum-cache", cli.cache_path,
                   "spectrum CSV produced by `spectrum`, reused instead of sweeping");
    app.add_flag("--force", cli.force, "use a cache whose fingerprint does not match");
    double sigma_flag = 0.0;
    CLI::Option* sigma_opt =
        app.add_option("--sigma-thz", sigma_flag,
                       "pulse width in 1e12 rad/s (overrides config)");

    CLI::App* cmd_spectrum =
        app.add_subcommand("spectrum", "classical helicity-splitting sweep -> CSV");
    CLI::App* cmd_xsec =
        app.add_subcommand("xsec", "scattered-power decomposition by multipole -> CSV");
    CLI::App* cmd_purity =
        app.add_subcommand("purity", "two-photon purity-loss spectrum -> CSV");
    CLI::App* cmd_rho =
        app.add_subcommand("rho", "post-selected two-photon density matrix -> JSON");
    CLI::App* cmd_demo =
        app.add_subcommand("lorentzian-demo", "end-to-end demo on an analytic channel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sigma_opt->count() > 0) cli.sigma_thz = sigma_flag;
        const helscat::RunConfig cfg = build_config(cli);
        if (*cmd_spectrum) return run_spectrum(cfg, cli);
        if (*cmd_xsec) return run_xsec(cfg, cli);
        if (*cmd_purity) return run_purity(cfg, cli);
        if (*cmd_rho) return run_rho(cfg, cli);
        if (*cmd_demo) return run_lorentzian_demo(cfg, cli);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const helscat::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const helscat::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const helscat::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
