// Particle numbers, mode energies, and the Brillouin-zone sweeps: frozen
// reference values, log-domain behaviour at extreme growth, trend metadata,
// and determinism across thread counts.

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tlinedce/circuit.hpp"
#include "tlinedce/lattice.hpp"
#include "tlinedce/observables.hpp"

using namespace tlinedce;

namespace {

CircuitSpec make_spec(CircuitFamily family, int n_cells = 200) {
    CircuitSpec spec;
    spec.family = family;
    spec.n_cells = n_cells;
    return spec;
}

constexpr double kTau = 1e-12;  // reference slow time used by the tables

// N_j(tau = 1 ps) for the default circuits, computed from the dispersion
// constants with 30-digit arithmetic and frozen here.
struct NumberGolden {
    CircuitFamily family;
    int j;
    double n;
};
constexpr NumberGolden kNumberGoldens[] = {
    {CircuitFamily::LHTL1, 1, 1.704018615154709e+00},
    {CircuitFamily::LHTL1, 100, 1.480371152082378e-02},
    {CircuitFamily::LHTL2, 1, 8.419037200189202e-05},
    {CircuitFamily::LHTL2, 100, 5.165902515239765e-02},
    {CircuitFamily::RHTL1, 1, 6.081472478258226e-02},
    {CircuitFamily::RHTL1, 100, 1.580975676388881e-02},
    {CircuitFamily::RHTL2, 1, 5.887694104350322e-05},
    {CircuitFamily::RHTL2, 100, 2.124095355809466e-01},
};

}  // namespace

TEST_CASE("particle numbers match the frozen references at 1 ps") {
    for (const auto& g : kNumberGoldens) {
        CAPTURE(family_name(g.family));
        CAPTURE(g.j);
        const CircuitSpec spec = make_spec(g.family);
        const ParticleNumber pn = particle_number_analytic(spec, g.j, kTau);
        CHECK(pn.n == doctest::Approx(g.n).epsilon(1e-12));
        CHECK(pn.log10_n ==
              doctest::Approx(std::log10(g.n)).epsilon(1e-12));
    }
}

TEST_CASE("particle number edges: tau = 0, tau < 0, bad mode") {
    const CircuitSpec spec = make_spec(CircuitFamily::LHTL1);
    const ParticleNumber at_zero = particle_number_analytic(spec, 60, 0.0);
    CHECK(at_zero.n == 0.0);
    CHECK(std::isinf(at_zero.log10_n));
    CHECK(at_zero.log10_n < 0.0);
    CHECK_THROWS_AS(particle_number_analytic(spec, 60, -1e-15),
                    std::domain_error);
    CHECK_THROWS_AS(particle_number_analytic(spec, 0, kTau),
                    std::domain_error);

    // Massless growth argument is omega0*tau, so tau = 1/omega0 pins
    // N = sinh^2(1) regardless of the mode frequency.
    const double omega0 = dispersion0(spec, 60);
    CHECK(particle_number_analytic(spec, 60, 1.0 / omega0).n ==
          doctest::Approx(1.381097845541815e+00).epsilon(1e-12));
}

TEST_CASE("log-domain evaluation stays glued to the direct formula") {
    const CircuitSpec spec = make_spec(CircuitFamily::LHTL1);
    const double omega0 = dispersion0(spec, 60);
    for (double x : {0.5, 1.0, 10.0, 100.0, 250.0}) {
        CAPTURE(x);
        const ParticleNumber pn =
            particle_number_analytic(spec, 60, x / omega0);
        const double direct = std::pow(std::sinh(x), 2);
        CHECK(pn.n == doctest::Approx(direct).epsilon(1e-12));
        CHECK(pn.log10_n ==
              doctest::Approx(2.0 * std::log10(std::sinh(x))).epsilon(1e-10));
    }

    // x = 320 crosses the log-domain switch but sinh^2 still fits a double.
    const ParticleNumber huge =
        particle_number_analytic(spec, 60, 320.0 / omega0);
    CHECK(std::isfinite(huge.n));
    CHECK(huge.n > 1e270);
    CHECK(std::log10(huge.n) == doctest::Approx(huge.log10_n).epsilon(1e-12));

    // x = 400 overflows n; the log10 companion keeps the physics readable.
    const ParticleNumber over =
        particle_number_analytic(spec, 60, 400.0 / omega0);
    CHECK(std::isinf(over.n));
    CHECK(over.n > 0.0);
    const double expected_log10 =
        (800.0 - 2.0 * std::log(2.0)) / std::log(10.0);
    CHECK(over.log10_n == doctest::Approx(expected_log10).epsilon(1e-12));
}

TEST_CASE("numeric particle number handles the undriven limit") {
    const CircuitSpec spec = make_spec(CircuitFamily::LHTL1);
    DriveSpec off;
    off.eta = 0.0;
    off.Omega = 2.0 * dispersion0(spec, 60);
    off.t_f = 1e-10;
    CHECK(particle_number_numeric(spec, off, 60) == 0.0);
    // The undriven shortcut still vets the mode label.
    CHECK_THROWS_AS(particle_number_numeric(spec, off, 0), std::domain_error);
}

TEST_CASE("mode energy is eps_j times the particle number") {
    for (const auto family : {CircuitFamily::LHTL1, CircuitFamily::RHTL2}) {
        const CircuitSpec spec = make_spec(family);
        const double eps = eigenenergy(spec, 42, josephson_E0(spec));
        CHECK(mode_energy(spec, 42, 2.5) ==
              doctest::Approx(2.5 * eps).epsilon(1e-14));
        CHECK(mode_energy(spec, 42, 0.0) == 0.0);
        CHECK_THROWS_AS(mode_energy(spec, 42, -1e-6), std::domain_error);
    }
}

TEST_CASE("analytic sweep: layout, self-consistency, trends") {
    const struct {
        CircuitFamily family;
        Monotonicity trend;
    } expected[] = {
        {CircuitFamily::LHTL1, Monotonicity::Decreasing},
        {CircuitFamily::LHTL2, Monotonicity::Increasing},
        {CircuitFamily::RHTL1, Monotonicity::Decreasing},
        {CircuitFamily::RHTL2, Monotonicity::Increasing},
    };
    SweepOptions opt;  // tau = 1 ps, analytic
    for (const auto& e : expected) {
        CAPTURE(family_name(e.family));
        const CircuitSpec spec = make_spec(e.family);
        const SweepResult sweep = sweep_spectrum(spec, opt);
        CHECK(sweep.family == e.family);
        CHECK(sweep.tau == opt.tau);
        CHECK(sweep.eta == opt.eta);
        REQUIRE(sweep.rows.size() == 100);
        std::vector<double> numbers;
        for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
            const SweepRow& row = sweep.rows[i];
            REQUIRE(row.j == static_cast<int>(i) + 1);
            CHECK(row.omega0 == dispersion0(spec, row.j));
            CHECK(row.Omega == 2.0 * row.omega0);
            CHECK(row.method == EvolveMethod::AnalyticMultiscale);
            CHECK(row.N ==
                  doctest::Approx(particle_number_analytic(spec, row.j, opt.tau).n)
                      .epsilon(1e-13));
            CHECK(row.E_over_hbar ==
                  doctest::Approx(row.epsilon_over_hbar * row.N)
                      .epsilon(1e-13));
            CHECK(row.log10_N ==
                  doctest::Approx(std::log10(row.N)).epsilon(1e-12));
            numbers.push_back(row.N);
        }
        CHECK(sweep.trend_N == e.trend);
        CHECK(sequence_trend(numbers) == e.trend);
    }
}

TEST_CASE("LHTL1 dominates the released energy only up to j = 33") {
    SweepOptions opt;
    std::vector<SweepResult> sweeps;
    for (const auto family :
         {CircuitFamily::LHTL1, CircuitFamily::LHTL2, CircuitFamily::RHTL1,
          CircuitFamily::RHTL2}) {
        sweeps.push_back(sweep_spectrum(make_spec(family), opt));
    }
    int first_failure = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        const double lhtl1 = sweeps[0].rows[i].E_over_hbar;
        bool dominates = true;
        for (std::size_t f = 1; f < sweeps.size(); ++f) {
            if (lhtl1 <= sweeps[f].rows[i].E_over_hbar) dominates = false;
        }
        if (!dominates) {
            first_failure = sweeps[0].rows[i].j;
            break;
        }
    }
    // The low-j dominance window comfortably covers j <= 10 and first
    // breaks at j = 34, where RHTL2 overtakes (margins are +8.8% at j = 33
    // and -2.1% at j = 34 -- a robust discrete crossing, frozen here).
    CHECK(first_failure == 34);
}

TEST_CASE("numeric sweep agrees with the closed form mode by mode") {
    const CircuitSpec spec = make_spec(CircuitFamily::LHTL1);
    SweepOptions numeric;
    numeric.method = EvolveMethod::NumericOde;
    numeric.max_modes = 6;
    const SweepResult sweep = sweep_spectrum(spec, numeric);
    REQUIRE(sweep.rows.size() == 6);
    for (const SweepRow& row : sweep.rows) {
        CAPTURE(row.j);
        CHECK(row.method == EvolveMethod::NumericOde);
        const double reference =
            particle_number_analytic(spec, row.j, numeric.tau).n;
        CHECK(row.N == doctest::Approx(reference).epsilon(0.10));
        CHECK(row.E_over_hbar ==
              doctest::Approx(row.epsilon_over_hbar * row.N).epsilon(1e-13));
    }
}

TEST_CASE("sweep rows do not depend on the thread count") {
    const CircuitSpec spec = make_spec(CircuitFamily::RHTL1);
    SweepOptions opt;
    opt.method = EvolveMethod::NumericOde;
    opt.max_modes = 4;

    opt.threads = 1;
    const SweepResult serial = sweep_spectrum(spec, opt);
    opt.threads = 3;
    const SweepResult parallel = sweep_spectrum(spec, opt);

    // The TLINE_DCE_THREADS escape hatch feeds the same machinery.
    setenv("TLINE_DCE_THREADS", "2", 1);
    opt.threads = 0;
    const SweepResult from_env = sweep_spectrum(spec, opt);
    unsetenv("TLINE_DCE_THREADS");

    REQUIRE(serial.rows.size() == parallel.rows.size());
    REQUIRE(serial.rows.size() == from_env.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].N == parallel.rows[i].N);  // bitwise
        CHECK(serial.rows[i].N == from_env.rows[i].N);
        CHECK(serial.rows[i].E_over_hbar == parallel.rows[i].E_over_hbar);
    }
}

TEST_CASE("multi-circuit sweeps insist on a shared mode grid") {
    SweepOptions opt;
    opt.max_modes = 3;
    const std::vector<CircuitSpec> mismatched = {
        make_spec(CircuitFamily::LHTL1, 200),
        make_spec(CircuitFamily::LHTL2, 100),
    };
    CHECK_THROWS_AS(sweep_spectrum(mismatched, opt), std::invalid_argument);
    CHECK_THROWS_AS(sweep_spectrum(std::vector<CircuitSpec>{}, opt),
                    std::invalid_argument);

    const std::vector<CircuitSpec> matched = {
        make_spec(CircuitFamily::LHTL1),
        make_spec(CircuitFamily::RHTL2),
    };
    const auto results = sweep_spectrum(matched, opt);
    REQUIRE(results.size() == 2);
    CHECK(results[0].family == CircuitFamily::LHTL1);
    CHECK(results[1].family == CircuitFamily::RHTL2);
    CHECK(results[0].rows.size() == 3);
}

TEST_CASE("dispersion table covers the positive branch") {
    const CircuitSpec lhtl1 = make_spec(CircuitFamily::LHTL1);
    const DispersionTable table = dispersion_table(lhtl1);
    REQUIRE(table.rows.size() == 100);
    const double pi = std::acos(-1.0);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const DispersionRow& row = table.rows[i];
        REQUIRE(row.j == static_cast<int>(i) + 1);
        CHECK(row.k_dx ==
              doctest::Approx(2.0 * pi * row.j / 200.0).epsilon(1e-15));
        CHECK(row.omega0 == dispersion0(lhtl1, row.j));
        CHECK(row.epsilon_over_hbar ==
              doctest::Approx(row.omega0 * chi_factor(lhtl1, row.j))
                  .epsilon(1e-13));
    }
    // The last row is the saturation edge the infrared limit describes.
    CHECK(table.rows.back().omega0 ==
          doctest::Approx(infrared_limit(lhtl1).exact).epsilon(1e-14));

    // chi = 1 for the right-handed families: eps/hbar is omega itself
    // (up to the hbar round trip in the energy).
    const DispersionTable rhtl1 =
        dispersion_table(make_spec(CircuitFamily::RHTL1));
    for (const DispersionRow& row : rhtl1.rows) {
        CHECK(row.epsilon_over_hbar ==
              doctest::Approx(row.omega0).epsilon(1e-14));
    }

    // Tables stand alone, so the batch overload accepts differing N.
    const std::vector<CircuitSpec> mixed = {
        make_spec(CircuitFamily::LHTL1, 200),
        make_spec(CircuitFamily::RHTL1, 64),
    };
    const auto tables = dispersion_table(mixed);
    REQUIRE(tables.size() == 2);
    CHECK(tables[1].rows.size() == 32);
}

TEST_CASE("sequence_trend is strict") {
    CHECK(sequence_trend({}) == Monotonicity::None);
    CHECK(sequence_trend({4.0}) == Monotonicity::None);
    CHECK(sequence_trend({1.0, 2.0, 3.0}) == Monotonicity::Increasing);
    CHECK(sequence_trend({3.0, 1.0, 0.5}) == Monotonicity::Decreasing);
    CHECK(sequence_trend({1.0, 1.0, 2.0}) == Monotonicity::None);
    CHECK(sequence_trend({1.0, 2.0, 1.0}) == Monotonicity::None);
    CHECK(monotonicity_name(Monotonicity::Increasing) ==
          std::string("increasing"));
    CHECK(monotonicity_name(Monotonicity::Decreasing) ==
          std::string("decreasing"));
    CHECK(monotonicity_name(Monotonicity::None) == std::string("none"));
}
