#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dephase/model.hpp"
#include "dephase/quadrature.hpp"
#include "dephase/table.hpp"

namespace dephase {

// Grid of values, linear or logarithmic in the endpoints.
struct GridSpec {
    double min{0.0};
    double max{0.0};
    int points{1};
    bool log_scale{false};
};

std::vector<double> make_grid(const GridSpec& spec);

// One options bag shared by every command; each command reads the fields it
// documents and ignores the rest. Defaults here are deliberately neutral,
// main() overrides them per command before parsing.
struct RunConfig {
    BathSpec bath;
    double omega_q{0.0};

    // Bloch vector of the qubit, polar form.
    double radius{1.0};
    double z{0.0};
    double phase{0.0};

    GridSpec t_grid{0.0, 10.0, 200, false};
    GridSpec temp_grid{1e-3, 10.0, 64, true};
    GridSpec z_grid{-1.0, 1.0, 101, false};

    // fraction command
    int mc_samples{0};
    std::uint64_t seed{12345};

    // single-mode command
    double mode_omega{1.0};
    double mode_coupling{0.2};
    int mode_levels{0};

    double t_max{0.0};  // 0 = choose per command
    int threads{0};     // 0 = hardware concurrency

    QuadratureConfig quad;

    std::string format{"csv"};
    std::string out_path;  // empty = stdout
};

// Each runner fills a Table; summaries beyond the table go to stdout.
Table run_rate(const RunConfig& cfg);
Table run_phase_diagram(const RunConfig& cfg);
Table run_fraction(const RunConfig& cfg);
Table run_bloch_cut(const RunConfig& cfg);
Table run_oscillations(const RunConfig& cfg);
Table run_single_mode(const RunConfig& cfg);

// Writes to cfg.out_path or stdout in cfg.format ("csv" or "json").
void write_output(const Table& table, const RunConfig& cfg);

}  // namespace dephase
