#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "dephase/cli.hpp"
#include "dephase/errors.hpp"

namespace {

struct GlobalOpts {
    std::string out;
    std::string format{"csv"};
    std::uint64_t seed{12345};
    int threads{0};
};

void add_bath_options(CLI::App* cmd, dephase::RunConfig& cfg, bool single_temp) {
    cmd->add_option("--kappa", cfg.bath.kappa, "bath coupling strength")
        ->capture_default_str();
    cmd->add_option("--omega-c", cfg.bath.omega_c, "bath cutoff frequency")
        ->capture_default_str();
    if (single_temp)
        cmd->add_option("--temperature", cfg.bath.temperature, "bath temperature")
            ->capture_default_str();
}

void add_temp_grid(CLI::App* cmd, dephase::RunConfig& cfg) {
    cmd->add_option("--temp-min", cfg.temp_grid.min, "temperature grid minimum")
        ->capture_default_str();
    cmd->add_option("--temp-max", cfg.temp_grid.max, "temperature grid maximum")
        ->capture_default_str();
    cmd->add_option("--temp-points", cfg.temp_grid.points, "temperature grid size")
        ->capture_default_str();
    cmd->add_option("--temp-log", cfg.temp_grid.log_scale,
                    "log-spaced temperature grid (true/false)")
        ->capture_default_str();
}

void add_time_grid(CLI::App* cmd, dephase::RunConfig& cfg) {
    cmd->add_option("--t-min", cfg.t_grid.min, "time grid minimum")
        ->capture_default_str();
    cmd->add_option("--t-max", cfg.t_grid.max, "time grid maximum")
        ->capture_default_str();
    cmd->add_option("--t-points", cfg.t_grid.points, "time grid size")
        ->capture_default_str();
    cmd->add_option("--t-log", cfg.t_grid.log_scale, "log-spaced time grid (true/false)")
        ->capture_default_str();
}

void add_state_options(CLI::App* cmd, dephase::RunConfig& cfg) {
    cmd->add_option("--r", cfg.radius, "Bloch vector length of the initial qubit")
        ->capture_default_str();
    cmd->add_option("--z", cfg.z, "Bloch z component of the initial qubit")
        ->capture_default_str();
    cmd->add_option("--phi", cfg.phase, "azimuth of the initial qubit")
        ->capture_default_str();
}

void add_quad_options(CLI::App* cmd, dephase::RunConfig& cfg) {
    cmd->add_option("--rel-tol", cfg.quad.rel_tol, "quadrature relative tolerance")
        ->capture_default_str();
    cmd->add_option("--abs-tol", cfg.quad.abs_tol, "quadrature absolute tolerance")
        ->capture_default_str();
    cmd->add_option("--max-subdivisions", cfg.quad.max_subdivisions,
                    "quadrature subdivision budget")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "qubit pure-dephasing toolkit: decoherence kernels, separability and "
        "entanglement certificates, and a single-mode brute-force cross-check"};
    app.require_subcommand(1);

    GlobalOpts global;
    app.set_config("--config", "", "read options from an INI file");
    app.add_option("--out", global.out, "output file (default: stdout)");
    app.add_option("--format", global.format, "output format: csv or json")
        ->capture_default_str();
    app.add_option("--seed", global.seed, "random seed for the Monte-Carlo check")
        ->capture_default_str();
    app.add_option("--threads", global.threads, "worker threads (0 = auto)")
        ->capture_default_str();

    auto finish = [&global](dephase::RunConfig& cfg, dephase::Table (*runner)(const dephase::RunConfig&)) {
        cfg.out_path = global.out;
        cfg.format = global.format;
        cfg.seed = global.seed;
        cfg.threads = global.threads;
        dephase::write_output(runner(cfg), cfg);
    };

    // rate: dephasing rate, accumulated exponent and coherence factor vs time
    static dephase::RunConfig rate_cfg;
    rate_cfg.bath = {1e-3, 1.0, 1.0, dephase::SpectralDensityKind::OhmicSharpCutoff};
    rate_cfg.t_grid = {0.0, 50.0, 501, false};
    auto* rate = app.add_subcommand("rate", "dephasing rate and coherence decay table");
    rate->fallthrough();
    add_bath_options(rate, rate_cfg, true);
    add_time_grid(rate, rate_cfg);
    add_quad_options(rate, rate_cfg);
    rate->callback([&finish] { finish(rate_cfg, dephase::run_rate); });

    // phase-diagram: (T, t) classification grid with the decoherence-time curve
    static dephase::RunConfig phase_cfg;
    phase_cfg.bath = {1e-3, 1.0, 1.0, dephase::SpectralDensityKind::OhmicSharpCutoff};
    phase_cfg.radius = 0.98;
    phase_cfg.z = 0.0;
    phase_cfg.temp_grid = {0.05, 10.0, 200, true};
    phase_cfg.t_grid = {1e-2, 1e4, 400, true};
    auto* phase = app.add_subcommand("phase-diagram",
                                     "separable/entangled/unknown labels on a (T,t) grid");
    phase->fallthrough();
    add_bath_options(phase, phase_cfg, false);
    add_temp_grid(phase, phase_cfg);
    add_time_grid(phase, phase_cfg);
    add_state_options(phase, phase_cfg);
    add_quad_options(phase, phase_cfg);
    phase->callback([&finish] { finish(phase_cfg, dephase::run_phase_diagram); });

    // fraction: separable volume fraction at the decoherence time
    static dephase::RunConfig fraction_cfg;
    fraction_cfg.bath = {1e-3, 1.0, 1.0, dephase::SpectralDensityKind::OhmicSharpCutoff};
    fraction_cfg.temp_grid = {0.1, 10.0, 31, true};
    fraction_cfg.mc_samples = 100000;
    auto* fraction = app.add_subcommand(
        "fraction", "Bloch-ball fraction still separable at the decoherence time");
    fraction->fallthrough();
    add_bath_options(fraction, fraction_cfg, false);
    add_temp_grid(fraction, fraction_cfg);
    add_quad_options(fraction, fraction_cfg);
    fraction->add_option("--mc-samples", fraction_cfg.mc_samples,
                         "Monte-Carlo sample count (0 disables the check)")
        ->capture_default_str();
    fraction->callback([&finish] { finish(fraction_cfg, dephase::run_fraction); });

    // bloch-cut: boundary curves in the phi = 0 cut at the decoherence time
    static dephase::RunConfig cut_cfg;
    cut_cfg.bath = {1.0, 1.0, 1.0, dephase::SpectralDensityKind::OhmicSharpCutoff};
    cut_cfg.temp_grid = {0.1, 10.0, 7, true};
    cut_cfg.z_grid = {-0.99, 0.99, 199, false};
    auto* cut = app.add_subcommand("bloch-cut",
                                   "separable and entangled boundary curves at tau_dec");
    cut->fallthrough();
    add_bath_options(cut, cut_cfg, false);
    add_temp_grid(cut, cut_cfg);
    cut->add_option("--z-min", cut_cfg.z_grid.min, "z grid minimum")->capture_default_str();
    cut->add_option("--z-max", cut_cfg.z_grid.max, "z grid maximum")->capture_default_str();
    cut->add_option("--z-points", cut_cfg.z_grid.points, "z grid size")
        ->capture_default_str();
    add_quad_options(cut, cut_cfg);
    cut->callback([&finish] { finish(cut_cfg, dephase::run_bloch_cut); });

    // oscillations: witness traces and labels along a time axis at fixed T
    static dephase::RunConfig osc_cfg;
    osc_cfg.bath = {1e-3, 1.0, 0.3, dephase::SpectralDensityKind::OhmicSharpCutoff};
    osc_cfg.radius = 0.95;
    osc_cfg.z = 0.0;
    osc_cfg.t_grid = {0.5, 500.0, 1000, false};
    auto* osc = app.add_subcommand(
        "oscillations", "witness values and labels along t, plus the alternation count");
    osc->fallthrough();
    add_bath_options(osc, osc_cfg, true);
    add_time_grid(osc, osc_cfg);
    add_state_options(osc, osc_cfg);
    add_quad_options(osc, osc_cfg);
    osc->callback([&finish] { finish(osc_cfg, dephase::run_oscillations); });

    // single-mode: Fock-space oracle vs the closed-form crossing times
    static dephase::RunConfig mode_cfg;
    mode_cfg.radius = 0.75;
    mode_cfg.z = 0.2;
    mode_cfg.temp_grid = {0.6, 2.0, 15, false};
    mode_cfg.mode_omega = 1.0;
    mode_cfg.mode_coupling = 0.2;
    auto* mode = app.add_subcommand(
        "single-mode", "PT-negativity times from a truncated Fock oracle vs closed form");
    mode->fallthrough();
    add_temp_grid(mode, mode_cfg);
    add_state_options(mode, mode_cfg);
    mode->add_option("--mode-omega", mode_cfg.mode_omega, "mode frequency")
        ->capture_default_str();
    mode->add_option("--coupling", mode_cfg.mode_coupling, "qubit-mode coupling")
        ->capture_default_str();
    mode->add_option("--levels", mode_cfg.mode_levels,
                     "Fock truncation (0 = from the thermal tail bound)")
        ->capture_default_str();
    mode->add_option("--scan-t-max", mode_cfg.t_max,
                     "scan horizon (0 = one mode period)")
        ->capture_default_str();
    mode->callback([&finish] { finish(mode_cfg, dephase::run_single_mode); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const dephase::inconsistency_error& e) {
        std::fprintf(stderr, "inconsistency: %s\n", e.what());
        return 4;
    } catch (const dephase::numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const dephase::invalid_input& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const dephase::truncation_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
