#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <dephase/criteria.hpp>
#include <dephase/errors.hpp>
#include <dephase/kernels.hpp>
#include <dephase/model.hpp>

using namespace dephase;

namespace {

BathSpec make_bath(double kappa, double temperature) {
    BathSpec bath;
    bath.kappa = kappa;
    bath.temperature = temperature;
    return bath;
}

bool is_inf(double x) { return std::isinf(x) && x > 0.0; }

}  // namespace

TEST_CASE("bound formulas at frozen reference states") {
    CHECK(separability_bound(qubit_from_polar(0.98, 0.0, 0.0)) ==
          doctest::Approx(0.020202707317519476).epsilon(1e-12));
    CHECK(entanglement_bound(qubit_from_polar(0.75, 0.2, 0.0)) ==
          doctest::Approx(0.30663998619639504).epsilon(1e-12));
    CHECK(separability_bound(qubit_from_polar(0.75, 0.2, 0.0)) ==
          doctest::Approx(0.3041541503114579).epsilon(1e-12));
}

TEST_CASE("bounds at special states") {
    // pure equatorial states have zero thresholds: any witness value fires
    CHECK(near_abs(separability_bound(qubit_from_polar(1.0, 0.0, 0.0)), 0.0, 1e-14));
    CHECK(near_abs(entanglement_bound(qubit_from_polar(1.0, 0.0, 0.0)), 0.0, 1e-14));
    // any pure state has a vanishing entanglement threshold
    CHECK(near_abs(entanglement_bound(qubit_from_polar(1.0, 0.5, 0.3)), 0.0, 1e-14));
    // axis states and the maximally mixed state never fire either test
    CHECK(is_inf(separability_bound(qubit_from_cartesian(0.0, 0.0, 0.8))));
    CHECK(is_inf(entanglement_bound(qubit_from_cartesian(0.0, 0.0, 0.8))));
    CHECK(is_inf(separability_bound(qubit_from_cartesian(0.0, 0.0, 0.0))));
    CHECK(is_inf(entanglement_bound(qubit_from_cartesian(0.0, 0.0, 0.0))));
}

TEST_CASE("bound ordering and pole trend") {
    // separability threshold never exceeds the entanglement threshold
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double r = 0.05 + 0.94 * unit(rng);
        const double z = r * (2.0 * unit(rng) - 1.0) * 0.999;
        const QubitBloch q = qubit_from_polar(r, z, 2.0 * M_PI * unit(rng));
        if (q.rho_perp_sq() <= 0.0) continue;
        CAPTURE(r);
        CAPTURE(z);
        CHECK(separability_bound(q) <= entanglement_bound(q) + 1e-12);
        CHECK(separability_bound(q) >= 0.0);
    }
    // on a fixed shell both thresholds grow toward the poles
    const double r = 0.9;
    double prev_sep = -1.0;
    double prev_ent = -1.0;
    for (double z : {0.0, 0.3, 0.6, 0.8}) {
        const QubitBloch q = qubit_from_polar(r, z, 0.0);
        CHECK(separability_bound(q) > prev_sep);
        CHECK(entanglement_bound(q) > prev_ent);
        prev_sep = separability_bound(q);
        prev_ent = entanglement_bound(q);
    }
}

TEST_CASE("classification at benchmark points") {
    // before any dephasing the joint state is a product state
    CHECK(classify(make_bath(1e-3, 1.0), 0.0, qubit_from_polar(0.95, 0.1, 0.0)) ==
          RegionLabel::Separable);
    // weak coupling, warm bath: separable again by the dephasing time
    {
        const BathSpec bath = make_bath(1e-3, 2.0);
        const double tau = decoherence_time(bath);
        CHECK(classify(bath, tau, qubit_from_polar(0.98, 0.0, 0.0)) ==
              RegionLabel::Separable);
    }
    // strong coupling, cold bath, pure superposition: entangled
    CHECK(classify(make_bath(1.0, 0.1), 1.0, qubit_from_polar(1.0, 0.0, 0.0)) ==
          RegionLabel::Entangled);
    // axis states never entangle, even deep in the overflow regime
    for (double T : {1e-3, 0.3, 10.0}) {
        for (double t : {0.0, 1.0, 1e3}) {
            CHECK(classify(make_bath(1.0, T), t, qubit_from_cartesian(0.0, 0.0, 0.9)) ==
                  RegionLabel::Separable);
        }
    }
    CHECK_THROWS_AS(
        classify(make_bath(1.0, 1.0), -1.0, qubit_from_polar(0.5, 0.0, 0.0)),
        invalid_input);
}

TEST_CASE("region labels have stable names") {
    CHECK(std::string(to_string(RegionLabel::Separable)) == "SEPARABLE");
    CHECK(std::string(to_string(RegionLabel::Entangled)) == "ENTANGLED");
    CHECK(std::string(to_string(RegionLabel::Unknown)) == "UNKNOWN");
}

TEST_CASE("phase diagram matches pointwise classification and thread counts") {
    const BathSpec proto = make_bath(1e-3, 1.0);
    const QubitBloch state = qubit_from_polar(0.98, 0.0, 0.0);
    const std::vector<double> temps{0.5, 2.0, 10.0};
    const std::vector<double> times{1.0, 40.0, 200.0};
    const PhaseDiagram one = phase_diagram(proto, state, temps, times, {}, 1);
    const PhaseDiagram many = phase_diagram(proto, state, temps, times, {}, 4);
    REQUIRE(one.labels.size() == 9);
    CHECK(one.labels == many.labels);
    for (std::size_t i = 0; i < temps.size(); ++i) {
        for (std::size_t j = 0; j < times.size(); ++j) {
            BathSpec bath = proto;
            bath.temperature = temps[i];
            CHECK(one.at(i, j) == classify(bath, times[j], state));
        }
    }
}

TEST_CASE("phase diagram rejects malformed axes") {
    const BathSpec proto = make_bath(1e-3, 1.0);
    const QubitBloch state = qubit_from_polar(0.9, 0.0, 0.0);
    CHECK_THROWS_AS(phase_diagram(proto, state, {}, {1.0}), invalid_input);
    CHECK_THROWS_AS(phase_diagram(proto, state, {1.0}, {}), invalid_input);
    CHECK_THROWS_AS(phase_diagram(proto, state, {2.0, 1.0}, {1.0}), invalid_input);
    CHECK_THROWS_AS(phase_diagram(proto, state, {1.0}, {1.0, 1.0}), invalid_input);
    // grid temperatures below the documented floor are refused
    CHECK_THROWS_AS(phase_diagram(proto, state, {1e-4, 1.0}, {1.0}), invalid_input);
}

TEST_CASE("grid failures carry their coordinates") {
    const BathSpec proto = make_bath(1e-3, 1.0);
    const QubitBloch state = qubit_from_polar(0.9, 0.0, 0.0);
    bool threw = false;
    try {
        phase_diagram(proto, state, {1.0}, {-5.0, 1.0});
    } catch (const invalid_input& err) {
        threw = true;
        CHECK(std::string(err.what()).find("t=") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("entanglement onset for limiting states") {
    // pure superposition: the test fires immediately
    const auto onset = entanglement_onset(make_bath(1.0, 1.0),
                                          qubit_from_polar(1.0, 0.0, 0.0), 10.0);
    REQUIRE(onset.has_value());
    CHECK(*onset < 1e-6);
    // axis state: infinite threshold, no onset
    CHECK_FALSE(entanglement_onset(make_bath(1.0, 1.0),
                                   qubit_from_cartesian(0.0, 0.0, 0.5), 10.0)
                    .has_value());
    // hot weak-coupling bath: the witness saturates below the threshold
    CHECK_FALSE(entanglement_onset(make_bath(1e-3, 10.0),
                                   qubit_from_polar(0.95, 0.0, 0.0), 500.0)
                    .has_value());
}

TEST_CASE("onset is a certified boundary when present") {
    const BathSpec bath = make_bath(1.0, 0.5);
    const QubitBloch state = qubit_from_polar(0.9, 0.0, 0.0);
    const auto onset = entanglement_onset(bath, state, 10.0);
    REQUIRE(onset.has_value());
    CHECK(witness_exceeds(WitnessKind::Ent, bath, *onset, entanglement_bound(state)));
    // at strong coupling entanglement precedes the dephasing time
    CHECK(*onset < decoherence_time(bath));
}

TEST_CASE("strong-coupling orderings for a deeply mixed state") {
    const QubitBloch state = qubit_from_polar(0.1, 0.0, 0.0);
    {
        const BathSpec bath = make_bath(1.0, 0.1);
        const auto onset = entanglement_onset(bath, state, 10.0);
        REQUIRE(onset.has_value());
        CHECK(*onset < decoherence_time(bath));
    }
    {
        // hot bath: no certified entanglement, separable at the dephasing time
        const BathSpec bath = make_bath(1.0, 5.0);
        CHECK_FALSE(entanglement_onset(bath, state, 50.0).has_value());
        CHECK(classify(bath, decoherence_time(bath), state) == RegionLabel::Separable);
    }
}

TEST_CASE("separable fraction at frozen reference points") {
    CHECK(separable_fraction(make_bath(1e-3, 10.0)) ==
          doctest::Approx(0.9783061171129085).epsilon(1e-6));
    const double cold = separable_fraction(make_bath(1e-3, 0.1));
    CHECK(cold < 0.01);
    CHECK(cold > 2.3e-9);
    CHECK(cold < 2.6e-9);
    CHECK(separable_fraction(make_bath(1e-3, 2.0)) ==
          doctest::Approx(std::exp(-2.0 * 0.019318497980185315)).epsilon(2e-6));
}

TEST_CASE("separable fraction stays a probability") {
    for (double T : {0.2, 1.0, 5.0}) {
        const double f = separable_fraction(make_bath(1e-2, T));
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("separable cut matches the closed form and its symmetry") {
    const BathSpec bath = make_bath(1e-3, 2.0);
    const std::vector<double> z_axis{-0.5, 0.0, 0.5};
    const BoundaryCurve curve = separable_cut(bath, z_axis);
    REQUIRE(curve.size() == 3);
    const double shrink = std::exp(-0.019318497980185315);  // e^{-S(tau_dec)}
    for (std::size_t i = 0; i < curve.size(); ++i) {
        REQUIRE(curve[i].rho_perp.has_value());
        const double z = z_axis[i];
        CHECK(*curve[i].rho_perp ==
              doctest::Approx(std::sqrt(1.0 - z * z) * shrink).epsilon(1e-5));
        CHECK(*curve[i].rho_perp <= std::sqrt(1.0 - z * z) + 1e-12);
    }
    CHECK(*curve[0].rho_perp == doctest::Approx(*curve[2].rho_perp).epsilon(1e-14));
    CHECK_THROWS_AS(separable_cut(bath, {1.0}), invalid_input);
    CHECK_THROWS_AS(separable_cut(bath, {-1.2}), invalid_input);
}

TEST_CASE("separable cut collapses toward the axis for a cold strong bath") {
    const BathSpec bath = make_bath(1.0, 0.1);
    const BoundaryCurve curve = separable_cut(bath, {0.0});
    REQUIRE(curve.size() == 1);
    REQUIRE(curve[0].rho_perp.has_value());
    CHECK(*curve[0].rho_perp < 0.1);
}

TEST_CASE("entangled cut solves its defining equation") {
    const BathSpec bath = make_bath(1.0, 0.5);
    const double tau = decoherence_time(bath);
    const double witness = witness_ent(bath, tau);
    const std::vector<double> z_axis{-0.4, 0.0, 0.4};
    const BoundaryCurve curve = entangled_cut(bath, z_axis);
    REQUIRE(curve.size() == 3);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double z = z_axis[i];
        if (!curve[i].rho_perp.has_value()) continue;
        const double rho = *curve[i].rho_perp;
        const double r = std::sqrt(z * z + rho * rho);
        CHECK(r <= 1.0 + 1e-9);
        if (r < 1.0 - 1e-9) {
            // interior boundary point: threshold equals the witness there
            CHECK(std::log((r - z * z) / (rho * rho)) ==
                  doctest::Approx(witness).epsilon(1e-6));
        }
    }
    CHECK(curve[0].rho_perp.has_value() == curve[2].rho_perp.has_value());
    if (curve[0].rho_perp && curve[2].rho_perp)
        CHECK(*curve[0].rho_perp == doctest::Approx(*curve[2].rho_perp).epsilon(1e-12));
    CHECK_THROWS_AS(entangled_cut(bath, {1.0}), invalid_input);
}

TEST_CASE("entangled cut is empty when the witness exceeds every threshold source") {
    // far below the high-temperature regime the witness blows up past any
    // representable boundary, so the curve reports no points
    const BathSpec bath = make_bath(1.0, 1e-3);
    const BoundaryCurve curve = entangled_cut(bath, {0.0, 0.3});
    for (const BoundaryPoint& p : curve) CHECK_FALSE(p.rho_perp.has_value());
}

TEST_CASE("alternation counting") {
    const QubitBloch state = qubit_from_polar(0.95, 0.0, 0.0);
    // hot bath: no certified entanglement anywhere on the axis
    {
        std::vector<double> t_axis;
        for (int i = 1; i <= 50; ++i) t_axis.push_back(10.0 * i);
        const AlternationResult res =
            count_alternations(make_bath(1e-3, 10.0), state, t_axis);
        CHECK(res.transitions == 0);
        for (RegionLabel label : res.labels) CHECK(label != RegionLabel::Entangled);
    }
    // diagonal state: constant labels
    {
        const AlternationResult res = count_alternations(
            make_bath(1e-3, 0.3), qubit_from_cartesian(0.0, 0.0, 0.5), {1.0, 2.0, 3.0});
        CHECK(res.transitions == 0);
        REQUIRE(res.labels.size() == 3);
        for (RegionLabel label : res.labels) CHECK(label == RegionLabel::Separable);
    }
}

TEST_CASE("cool weak-coupling window produces repeated alternations") {
    const QubitBloch state = qubit_from_polar(0.95, 0.0, 0.0);
    std::vector<double> t_axis;
    const int n = 2000;
    for (int i = 1; i <= n; ++i)
        t_axis.push_back(500.0 * static_cast<double>(i) / static_cast<double>(n));
    const AlternationResult res =
        count_alternations(make_bath(1e-3, 0.3), state, t_axis);
    // the frozen reference run on this exact grid counts 5 switches
    CHECK(res.transitions >= 2);
    CHECK(res.transitions <= 9);
}
