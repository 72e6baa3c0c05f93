#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sspvb/economics.hpp"
#include "sspvb/error.hpp"
#include "sspvb/random.hpp"
#include "sspvb/simulation.hpp"
#include "sspvb/system.hpp"

using namespace sspvb;

namespace {

BatterySpec ideal_battery(double capacity) {
    BatterySpec b;
    b.capacity_per_unit = capacity;
    b.charge_eff = 1.0;
    b.discharge_eff = 1.0;
    b.max_charge_rate = 1e9;
    b.max_discharge_rate = 1e9;
    return b;
}

}  // namespace

TEST_SUITE("system") {
    TEST_CASE("no irradiance gives no power") {
        PVSpec spec;
        for (double temp : {-10.0, 0.0, 25.0, 45.0}) CHECK(pv_power(0.0, temp, spec, 37) == 0.0);
    }

    TEST_CASE("reference conditions give rated output") {
        PVSpec spec;
        spec.derating = 1.0;
        spec.rated_power_per_unit = 0.3;
        // T_cell = 25 when ambient = 25 - 1000 * (noct - 20) / 800
        const double ambient = 25.0 - 1000.0 * (spec.noct - 20.0) / 800.0;
        CHECK(cell_temperature(1000.0, ambient, spec) == doctest::Approx(25.0).epsilon(1e-12));
        CHECK(pv_power(1000.0, ambient, spec, 10) == doctest::Approx(3.0).epsilon(1e-12));
    }

    TEST_CASE("hot cell output") {
        PVSpec spec;
        spec.rated_power_per_unit = 1.0;
        spec.derating = 0.8;
        spec.noct = 45.0;
        spec.temp_coeff = -0.004;
        CHECK(cell_temperature(800.0, 30.0, spec) == doctest::Approx(55.0).epsilon(1e-12));
        const double expected = 1.0 * 0.8 * (800.0 / 1000.0) * (1.0 - 0.004 * (55.0 - 25.0));
        CHECK(expected == doctest::Approx(0.5632).epsilon(1e-12));
        CHECK(pv_power(800.0, 30.0, spec, 1) == doctest::Approx(expected).epsilon(1e-12));
    }

    TEST_CASE("linear in unit count and monotone in irradiance") {
        PVSpec spec;
        Rng rng(5);
        for (int k = 0; k < 200; ++k) {
            const double g = rng.uniform(0.0, 1100.0);
            const double temp = rng.uniform(-5.0, 40.0);
            const double one = pv_power(g, temp, spec, 1);
            CHECK(one >= 0.0);
            for (long n : {2L, 7L, 113L}) CHECK(pv_power(g, temp, spec, n) == doctest::Approx(n * one).epsilon(1e-12));
        }
        for (double temp : {-5.0, 20.0, 40.0}) {
            double prev = 0.0;
            for (double g = 0.0; g <= 1100.0; g += 10.0) {
                const double p = pv_power(g, temp, spec, 1);
                CHECK(p >= prev);
                prev = p;
            }
        }
    }

    TEST_CASE("spec validation") {
        BatterySpec b;
        CHECK_NOTHROW(b.validate());
        b.charge_eff = 1.2;
        CHECK_THROWS_AS(b.validate(), InputError);
        PVSpec p;
        p.rated_power_per_unit = 0.0;
        CHECK_THROWS_AS(p.validate(), InputError);
        CostParams c;
        c.project_life = 0.0;
        CHECK_THROWS_AS(c.validate(), InputError);
        CHECK_THROWS_AS(validate_design({-1, 0, 0.5}), InputError);
        CHECK_THROWS_AS(validate_design({1, 1, 0.9}), InputError);
        AnnualDataset d{{0, 1}, {20, 20}, {1}};
        CHECK_THROWS_AS(d.validate(), InputError);
    }
}

TEST_SUITE("simulation") {
    TEST_CASE("three hour hand trace") {
        const std::vector<double> pv{0, 8, 0};
        const std::vector<double> load{4, 2, 4};
        const auto r = simulate({1, 1, 0.5}, pv, load, ideal_battery(10.0));
        CHECK(r.soc == std::vector<double>{6, 10, 6});
        CHECK(r.deficit == std::vector<double>{0, 0, 0});
        CHECK(r.surplus_dumped == std::vector<double>{0, 2, 0});
        CHECK(r.charge_stored == std::vector<double>{0, 4, 0});
        CHECK(r.total_deficit == 0.0);
        CHECK(r.discharge_throughput == 8.0);
        CHECK(r.soc_min == 5.0);
        CHECK(r.soc_max == 10.0);

        const oracle::Dispatch ref{10.0, 0.5, 1.0, 1.0, 1e9, 1e9};
        const auto steps = ref.run(pv, load);
        for (std::size_t t = 0; t < 3; ++t) CHECK(r.soc[t] == steps[t].soc);
    }

    TEST_CASE("zero load and empty system") {
        const std::vector<double> pv{0.0, 1.0, 0.5};
        const auto idle = simulate({3, 2, 0.5}, pv, std::vector<double>{0, 0, 0}, BatterySpec{});
        CHECK(idle.total_deficit == 0.0);
        CHECK(compute_llp(idle) == 0.0);

        const std::vector<double> load{1.0, 2.0, 3.0};
        const auto none = simulate({0, 0, 0.5}, pv, load, BatterySpec{});
        CHECK(none.deficit == load);
        CHECK(compute_llp(none) == 1.0);
    }

    TEST_CASE("llp from totals") {
        SimulationTotals t;
        t.total_load = 8.0;
        t.total_deficit = 2.0;
        CHECK(compute_llp(t) == 0.25);
        t.total_deficit = 0.0;
        CHECK(compute_llp(t) == 0.0);
    }

    TEST_CASE("randomized traces against the longhand oracle") {
        std::mt19937_64 gen(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t hours = 1 + gen() % 72;
            std::vector<double> pv(hours), load(hours);
            for (std::size_t t = 0; t < hours; ++t) {
                pv[t] = u(gen) < 0.4 ? 0.0 : 6.0 * u(gen);
                load[t] = 4.0 * u(gen);
            }
            BatterySpec b;
            b.capacity_per_unit = 0.5 + 3.0 * u(gen);
            b.charge_eff = 0.7 + 0.3 * u(gen);
            b.discharge_eff = 0.7 + 0.3 * u(gen);
            b.max_charge_rate = 0.1 + 2.0 * u(gen);
            b.max_discharge_rate = 0.1 + 2.0 * u(gen);
            const long n_bes = static_cast<long>(gen() % 6);
            const double dod = 0.1 + 0.9 * u(gen);
            const auto r = simulate({1, n_bes, dod}, pv, load, b);
            const oracle::Dispatch ref{n_bes * b.capacity_per_unit, dod, b.charge_eff, b.discharge_eff,
                                       n_bes * b.max_charge_rate, n_bes * b.max_discharge_rate};
            const auto steps = ref.run(pv, load);
            double deficit = 0.0, drawn = 0.0;
            for (std::size_t t = 0; t < hours; ++t) {
                CHECK(r.soc[t] == doctest::Approx(steps[t].soc).epsilon(1e-12));
                CHECK(r.deficit[t] == doctest::Approx(steps[t].deficit).epsilon(1e-12));
                deficit += steps[t].deficit;
                drawn += steps[t].drawn;
            }
            CHECK(r.total_deficit == doctest::Approx(deficit).epsilon(1e-12));
            CHECK(r.discharge_throughput == doctest::Approx(drawn).epsilon(1e-12));
        }
    }

    TEST_CASE("totals-only path matches the traced path") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> u(0.0, 5.0);
        std::vector<double> pv(500), load(500);
        for (std::size_t t = 0; t < pv.size(); ++t) {
            pv[t] = u(gen);
            load[t] = u(gen);
        }
        const Design d{2, 3, 0.6};
        const auto full = simulate(d, pv, load, BatterySpec{});
        const auto tot = simulate_totals(d, pv, load, BatterySpec{});
        CHECK(full.total_deficit == tot.total_deficit);
        CHECK(full.discharge_throughput == tot.discharge_throughput);
        CHECK(full.served_energy == tot.served_energy);
    }

    TEST_CASE("mismatched series are rejected") {
        std::vector<double> pv{1, 2}, load{1};
        CHECK_THROWS_AS((void)simulate({1, 1, 0.5}, pv, load, BatterySpec{}), InputError);
    }
}

TEST_SUITE("economics") {
    TEST_CASE("capital recovery factor") {
        CHECK(crf(0.0, 20.0) == doctest::Approx(0.05).epsilon(1e-15));
        CHECK(crf(0.05, 1.0) == doctest::Approx(1.05).epsilon(1e-12));
        CHECK(crf(0.05, 20.0) == doctest::Approx(0.0802426).epsilon(1e-6));
        CHECK(crf(0.05, 20.0) == doctest::Approx(oracle::crf(0.05, 20.0)).epsilon(1e-12));
        for (double i : {0.0, 0.01, 0.06, 0.2})
            for (double n : {1.0, 5.0, 20.0, 30.0}) {
                if (i == 0.0)
                    CHECK(crf(i, n) * n == doctest::Approx(1.0));
                else
                    CHECK(crf(i, n) * n > 1.0);
            }
        CHECK_THROWS_AS((void)crf(0.05, 0.0), InputError);
    }

    TEST_CASE("cycle life power law") {
        BatterySpec b;
        b.cycle_life_a = 600.0;
        b.cycle_life_b = 1.3;
        CHECK(battery_cycle_life(1.0, b) == 600.0);
        CHECK(std::fabs(battery_cycle_life(0.5, b) - 1477.37) < 0.1);
        CHECK(battery_cycle_life(0.5, b) == doctest::Approx(600.0 * std::pow(2.0, 1.3)).epsilon(1e-12));
        double prev = 1e300;
        for (double d = 0.05; d <= 1.0; d += 0.05) {
            CHECK(battery_cycle_life(d, b) < prev);
            prev = battery_cycle_life(d, b);
        }
        b.cycle_life_b = 0.0;
        CHECK(battery_cycle_life(0.3, b) == battery_cycle_life(0.9, b));
        CHECK_THROWS_AS((void)battery_cycle_life(0.0, b), InputError);
        CHECK_THROWS_AS((void)battery_cycle_life(1.5, b), InputError);
    }

    TEST_CASE("battery life") {
        BatterySpec b;
        b.float_life = 20.0;
        const Design d{1, 4, 0.5};
        SimulationTotals t;
        t.hours = kHoursPerYear;
        CHECK(battery_life_years(t, d, b) == 20.0);

        // throughput giving cycles/yr = cycle_life / 10
        const double window = 4 * b.capacity_per_unit * 0.5;
        t.discharge_throughput = battery_cycle_life(0.5, b) / 10.0 * window;
        CHECK(cycles_per_year(t, d, b) == doctest::Approx(battery_cycle_life(0.5, b) / 10.0).epsilon(1e-12));
        CHECK(battery_life_years(t, d, b) == doctest::Approx(10.0).epsilon(1e-12));

        t.discharge_throughput = 1e300;
        CHECK(battery_life_years(t, d, b) > 0.0);

        // half a year of data counts twice
        t.hours = kHoursPerYear / 2;
        t.discharge_throughput = battery_cycle_life(0.5, b) / 10.0 * window;
        CHECK(battery_life_years(t, d, b) == doctest::Approx(5.0).epsilon(1e-12));
    }

    TEST_CASE("annualized total cost") {
        CostParams c;
        c.discount_rate = 0.0;
        c.project_life = 20.0;
        c.pv_unit_cost = 9000.0;
        c.bes_unit_cost = 1000.0;
        c.converter_cost = 0.0;
        c.om_frac = 0.01;
        c.bes_replacement_cost = 1000.0;
        const auto out = annualized_total_cost({1, 1, 0.5}, 10.0, c);
        CHECK(out.replacements == 1);
        CHECK(out.atc == doctest::Approx(650.0).epsilon(1e-12));
        CHECK(out.annualized_capital + out.annualized_replacement + out.annual_om == doctest::Approx(out.atc));

        const auto long_life = annualized_total_cost({1, 1, 0.5}, 25.0, c);
        CHECK(long_life.replacements == 0);
        CHECK(long_life.annualized_replacement == 0.0);

        CostParams d;
        CHECK(annualized_total_cost({20, 5, 0.5}, 4.0, d).atc < annualized_total_cost({40, 5, 0.5}, 4.0, d).atc);
        CHECK_THROWS_AS((void)annualized_total_cost({1, 1, 0.5}, 0.0, d), InputError);
    }

    TEST_CASE("discounted replacements match the explicit sum") {
        CostParams c;
        Rng rng(9);
        for (int k = 0; k < 100; ++k) {
            c.discount_rate = rng.uniform(0.0, 0.12);
            const double life = rng.uniform(0.7, 25.0);
            const long n_bes = 1 + static_cast<long>(rng.index(50));
            const auto out = annualized_total_cost({3, n_bes, 0.5}, life, c);
            const int r = life >= c.project_life ? 0 : static_cast<int>(std::ceil(c.project_life / life)) - 1;
            double pv = 0.0;
            for (int j = 1; j <= r; ++j) pv += n_bes * c.bes_replacement_cost * std::pow(1 + c.discount_rate, -j * life);
            CHECK(out.replacements == r);
            CHECK(out.annualized_replacement ==
                  doctest::Approx(pv * crf(c.discount_rate, c.project_life)).epsilon(1e-10));
        }
    }

    TEST_CASE("cost of energy") {
        CHECK(compute_coe(0.0, 100.0) == 0.0);
        CHECK(compute_coe(1000.0, 10000.0) == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(std::isinf(compute_coe(1000.0, 0.0)));
        CHECK(compute_coe(1000.0, 0.0, 99.0) == 99.0);
        CHECK_THROWS_AS((void)compute_coe(1.0, -1.0), InputError);
    }

    TEST_CASE("energy basis") {
        SimulationTotals t;
        t.hours = kHoursPerYear;
        t.total_load = 100.0;
        t.served_energy = 80.0;
        CHECK(annual_energy(t, EnergyBasis::served) == 80.0);
        CHECK(annual_energy(t, EnergyBasis::total_load) == 100.0);
        t.hours = 168;
        CHECK(annual_energy(t, EnergyBasis::served) == doctest::Approx(80.0 * 8760.0 / 168.0));
    }
}
