#include "dephase/cli.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dephase/criteria.hpp"
#include "dephase/errors.hpp"
#include "dephase/kernels.hpp"
#include "dephase/parallel.hpp"
#include "dephase/singlemode.hpp"

namespace dephase {
namespace {

constexpr double kPi = 3.14159265358979323846;

QubitBloch state_from(const RunConfig& cfg) {
    return qubit_from_polar(cfg.radius, cfg.z, cfg.phase);
}

BathSpec bath_at(const RunConfig& cfg, double temperature) {
    BathSpec bath = cfg.bath;
    bath.temperature = temperature;
    return bath;
}

std::uint64_t derived_seed(std::uint64_t seed, std::size_t index) {
    // splitmix64 stream over the base seed; stable per grid index
    std::uint64_t state = seed;
    std::uint64_t value = 0;
    for (std::size_t i = 0; i <= index; ++i) {
        state += 0x9E3779B97F4A7C15ULL;
        value = state;
        value = (value ^ (value >> 30)) * 0xBF58476D1CE4E5B9ULL;
        value = (value ^ (value >> 27)) * 0x94D049BB133111EBULL;
        value ^= value >> 31;
    }
    return value;
}

double uniform01(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

int alternation_count(const std::vector<RegionLabel>& labels) {
    int transitions = 0;
    bool seen = false;
    RegionLabel prev = RegionLabel::Unknown;
    for (RegionLabel label : labels) {
        if (label == RegionLabel::Unknown) continue;
        if (seen && label != prev) ++transitions;
        prev = label;
        seen = true;
    }
    return transitions;
}

}  // namespace

std::vector<double> make_grid(const GridSpec& spec) {
    if (spec.points < 1) throw invalid_input("grid needs at least one point");
    if (!std::isfinite(spec.min) || !std::isfinite(spec.max) || spec.max < spec.min)
        throw invalid_input("grid bounds must be finite with max >= min");
    if (spec.points == 1) return {spec.min};
    if (spec.log_scale && !(spec.min > 0.0))
        throw invalid_input("log grid requires a positive minimum");

    std::vector<double> grid(spec.points);
    const double n1 = spec.points - 1.0;
    for (int i = 0; i < spec.points; ++i) {
        const double frac = i / n1;
        grid[i] = spec.log_scale ? spec.min * std::pow(spec.max / spec.min, frac)
                                 : spec.min + (spec.max - spec.min) * frac;
    }
    grid.back() = spec.max;
    return grid;
}

Table run_rate(const RunConfig& cfg) {
    validate(cfg.bath);
    const std::vector<double> times = make_grid(cfg.t_grid);

    Table table;
    table.columns = {"t", "gamma", "Gamma", "|D|"};
    table.rows.resize(times.size());
    parallel_for_indexed(times.size(), cfg.threads, [&](std::size_t i) {
        const double t = times[i];
        const double rate = decoherence_rate(cfg.bath, t, cfg.quad);
        const double exponent = decoherence_exponent(cfg.bath, t, cfg.quad);
        table.rows[i] = {Cell::num(t), Cell::num(rate), Cell::num(exponent),
                         Cell::num(std::exp(-exponent))};
    });
    return table;
}

Table run_phase_diagram(const RunConfig& cfg) {
    const QubitBloch state = state_from(cfg);
    const std::vector<double> temps = make_grid(cfg.temp_grid);
    const std::vector<double> times = make_grid(cfg.t_grid);

    const PhaseDiagram diagram =
        phase_diagram(cfg.bath, state, temps, times, cfg.quad, cfg.threads);

    std::vector<double> tau(temps.size());
    parallel_for_indexed(temps.size(), cfg.threads, [&](std::size_t i) {
        tau[i] = decoherence_time(bath_at(cfg, temps[i]), cfg.quad);
    });

    Table table;
    table.columns = {"T", "t", "label", "tau_dec"};
    table.rows.reserve(temps.size() * times.size());
    for (std::size_t i = 0; i < temps.size(); ++i)
        for (std::size_t j = 0; j < times.size(); ++j)
            table.rows.push_back({Cell::num(temps[i]), Cell::num(times[j]),
                                  Cell::str(to_string(diagram.at(i, j))),
                                  Cell::num(tau[i])});
    return table;
}

Table run_fraction(const RunConfig& cfg) {
    validate(cfg.bath);
    if (cfg.mc_samples < 0) throw invalid_input("mc_samples must be nonnegative");
    const std::vector<double> temps = make_grid(cfg.temp_grid);

    Table table;
    table.columns = {"T", "fraction", "fraction_mc", "mc_stderr"};
    table.rows.resize(temps.size());
    parallel_for_indexed(temps.size(), cfg.threads, [&](std::size_t i) {
        const BathSpec bath = bath_at(cfg, temps[i]);
        const double fraction = separable_fraction(bath, cfg.quad);

        Cell mc = Cell::empty();
        Cell se = Cell::empty();
        if (cfg.mc_samples > 0) {
            // the separability condition at tau_dec reads
            // x^2 + y^2 <= (1 - z^2) * e^{-2S}, and e^{-2S} is the fraction itself
            std::mt19937_64 engine(derived_seed(cfg.seed, i));
            std::size_t hits = 0;
            for (int s = 0; s < cfg.mc_samples; ++s) {
                double x, y, z;
                do {
                    x = 2.0 * uniform01(engine) - 1.0;
                    y = 2.0 * uniform01(engine) - 1.0;
                    z = 2.0 * uniform01(engine) - 1.0;
                } while (x * x + y * y + z * z > 1.0);
                if (x * x + y * y <= (1.0 - z * z) * fraction) ++hits;
            }
            const double p = static_cast<double>(hits) / cfg.mc_samples;
            mc = Cell::num(p);
            // Binomial error at the analytic rate, not the empirical one:
            // cold baths give zero hits and would report zero uncertainty.
            se = Cell::num(std::sqrt(fraction * (1.0 - fraction) / cfg.mc_samples));
        }
        table.rows[i] = {Cell::num(temps[i]), Cell::num(fraction), mc, se};
    });
    return table;
}

Table run_bloch_cut(const RunConfig& cfg) {
    validate(cfg.bath);
    const std::vector<double> temps = make_grid(cfg.temp_grid);
    const std::vector<double> z_axis = make_grid(cfg.z_grid);

    std::vector<BoundaryCurve> sep(temps.size()), ent(temps.size());
    parallel_for_indexed(temps.size(), cfg.threads, [&](std::size_t i) {
        const BathSpec bath = bath_at(cfg, temps[i]);
        sep[i] = separable_cut(bath, z_axis, cfg.quad);
        ent[i] = entangled_cut(bath, z_axis, cfg.quad);
    });

    Table table;
    table.columns = {"T", "z", "rho_sep", "rho_ent"};
    table.rows.reserve(temps.size() * z_axis.size());
    for (std::size_t i = 0; i < temps.size(); ++i)
        for (std::size_t j = 0; j < z_axis.size(); ++j) {
            const auto& boundary = ent[i][j].rho_perp;
            table.rows.push_back(
                {Cell::num(temps[i]), Cell::num(z_axis[j]),
                 Cell::num(*sep[i][j].rho_perp),
                 boundary ? Cell::num(*boundary) : Cell::empty()});
        }
    return table;
}

Table run_oscillations(const RunConfig& cfg) {
    validate(cfg.bath);
    const QubitBloch state = state_from(cfg);
    const std::vector<double> times = make_grid(cfg.t_grid);
    const double sep_b = separability_bound(state);
    const double ent_b = entanglement_bound(state);

    Table table;
    table.columns = {"t", "S", "E", "sep_bound", "ent_bound", "label"};
    table.rows.resize(times.size());
    std::vector<RegionLabel> labels(times.size());
    parallel_for_indexed(times.size(), cfg.threads, [&](std::size_t i) {
        const double t = times[i];
        const double s = witness_sep(cfg.bath, t, cfg.quad);
        const double e = witness_ent(cfg.bath, t, cfg.quad);
        const bool separable = s <= sep_b;
        const bool entangled = e > ent_b;
        if (separable && entangled)
            throw inconsistency_error(
                "separability and entanglement certificates fired together at t=" +
                std::to_string(t));
        labels[i] = separable  ? RegionLabel::Separable
                    : entangled ? RegionLabel::Entangled
                                : RegionLabel::Unknown;
        table.rows[i] = {Cell::num(t),     Cell::num(s),
                         Cell::num(e),     Cell::num(sep_b),
                         Cell::num(ent_b), Cell::str(to_string(labels[i]))};
    });

    std::printf("alternations: %d\n", alternation_count(labels));
    return table;
}

Table run_single_mode(const RunConfig& cfg) {
    const QubitBloch state = state_from(cfg);
    ModeSpec proto;
    proto.omega = cfg.mode_omega;
    proto.coupling = cfg.mode_coupling;
    proto.n_levels = cfg.mode_levels;
    proto.temperature = 1.0;
    validate(proto);
    const std::vector<double> temps = make_grid(cfg.temp_grid);
    const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 2.0 * kPi / proto.omega;

    Table table;
    table.columns = {"T", "tau_crit_list", "tau_ent_list", "max_rel_dev"};
    table.rows.resize(temps.size());
    parallel_for_indexed(temps.size(), cfg.threads, [&](std::size_t i) {
        ModeSpec mode = proto;
        mode.temperature = temps[i];
        const std::vector<double> analytic = witness_crossing_times(mode, state, t_max);
        const FockSystem system(mode, cfg.omega_q);
        const std::vector<double> numeric = pt_negativity_times(system, state, t_max);

        Cell dev = Cell::empty();
        const std::size_t pairs = std::min(analytic.size(), numeric.size());
        if (pairs > 0) {
            double worst = 0.0;
            for (std::size_t k = 0; k < pairs; ++k)
                worst = std::max(worst,
                                 std::abs(numeric[k] - analytic[k]) / analytic[k]);
            dev = Cell::num(worst);
        }
        table.rows[i] = {Cell::num(temps[i]), Cell::nums(numeric),
                         Cell::nums(analytic), dev};
    });
    return table;
}

void write_output(const Table& table, const RunConfig& cfg) {
    std::string payload;
    if (cfg.format == "csv") {
        payload = to_csv(table);
    } else if (cfg.format == "json") {
        payload = to_json(table);
    } else {
        throw invalid_input("format must be csv or json, got '" + cfg.format + "'");
    }

    if (cfg.out_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::FILE* file = std::fopen(cfg.out_path.c_str(), "wb");
    if (!file) throw invalid_input("cannot open output file '" + cfg.out_path + "'");
    std::fwrite(payload.data(), 1, payload.size(), file);
    std::fclose(file);
}

}  // namespace dephase
