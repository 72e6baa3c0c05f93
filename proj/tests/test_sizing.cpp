#include <doctest.h>

#include <cmath>
#include <vector>

#include "sspvb/dataset_io.hpp"
#include "sspvb/error.hpp"
#include "sspvb/sizing.hpp"

using namespace sspvb;

namespace {

SizingModel week_model() {
    SyntheticSettings s;
    s.days = 7;
    SizingModel m;
    m.dataset = generate_synthetic(s);
    return m;
}

SizingBounds small_bounds() {
    SizingBounds b;
    b.n_pv_max = 20;
    b.n_bes_max = 10;
    b.dod_step = 0.1;
    return b;
}

OptimizerSettings quick(std::uint64_t seed = 1) {
    OptimizerSettings s;
    s.mopso.swarm_size = 40;
    s.mopso.iterations = 40;
    s.mopso.seed = seed;
    s.nsga2.population = 40;
    s.nsga2.generations = 40;
    s.nsga2.seed = seed;
    return s;
}

}  // namespace

TEST_SUITE("sizing") {
    TEST_CASE("empty system") {
        SizingProblem p(week_model(), small_bounds());
        const auto e = p.evaluate_design({0, 0, 0.5});
        CHECK(e.llp == 1.0);
        CHECK(std::isinf(e.coe));
        const auto obj = p.evaluate(std::vector<double>{0, 0, 0.5});
        CHECK(obj[0] == e.coe);
        CHECK(obj[1] == 1.0);
    }

    TEST_CASE("oversized system on a synthetic year never runs short") {
        SizingModel m;
        m.dataset = generate_synthetic({});
        SizingProblem p(m, default_bounds(m));
        const auto e = p.evaluate_design({p.bounds().n_pv_max, p.bounds().n_bes_max, 0.8});
        CHECK(e.llp == 0.0);
        CHECK(std::isfinite(e.coe));
    }

    TEST_CASE("default bounds scale with the load") {
        auto m = week_model();
        const auto b = default_bounds(m);
        CHECK(b.n_pv_max == static_cast<long>(std::ceil(10.0 * m.dataset.peak_load() / m.pv.rated_power_per_unit)));
        CHECK(b.n_bes_max ==
              static_cast<long>(std::ceil(20.0 * m.dataset.mean_daily_load() / m.battery.capacity_per_unit)));
        CHECK(b.dod.min == 0.2);
        CHECK(b.dod.max == 0.8);
    }

    TEST_CASE("evaluation is pure and composes the model") {
        SizingProblem p(week_model(), small_bounds());
        const Design d{12, 6, 0.6};
        const auto a = p.evaluate_design(d);
        const auto b = p.evaluate_design(d);
        CHECK(a.coe == b.coe);
        CHECK(a.llp == b.llp);
        CHECK(a.coe == a.cost.atc / a.energy);
        CHECK(a.energy == doctest::Approx(a.totals.served_energy * 8760.0 / 168.0));
        CHECK(a.llp == doctest::Approx(a.totals.total_deficit / a.totals.total_load));
    }

    TEST_CASE("more PV never raises LLP") {
        SizingProblem p(week_model(), small_bounds());
        for (long nb : {0L, 2L, 5L, 10L})
            for (double dod : {0.2, 0.5, 0.8}) {
                double prev = 2.0;
                for (long npv = 0; npv <= 20; ++npv) {
                    const double llp = p.evaluate_design({npv, nb, dod}).llp;
                    CHECK(llp <= prev);
                    prev = llp;
                }
            }
    }

    TEST_CASE("no reliability requirement picks the empty system") {
        auto m = week_model();
        m.energy_basis = EnergyBasis::total_load;
        SizingProblem p(m, small_bounds());
        const std::vector<double> dods{0.2, 0.5, 0.8};
        for (auto algo : {Algorithm::mopso, Algorithm::nsga2}) {
            const auto rows = dod_sweep(p, dods, 1.0, algo, quick());
            for (const auto& r : rows) {
                CHECK(r.feasible);
                CHECK(r.n_pv == 0);
                CHECK(r.n_bes == 0);
            }
        }
    }

    TEST_CASE("sweep rows are reproducible and flagged honestly") {
        SizingProblem p(week_model(), small_bounds());
        const std::vector<double> dods{0.3, 0.7};
        for (double eps : {0.0, 0.1}) {
            const auto rows = dod_sweep(p, dods, eps, Algorithm::nsga2, quick());
            REQUIRE(rows.size() == 2);
            for (const auto& r : rows) {
                const auto e = p.evaluate_design({r.n_pv, r.n_bes, r.dod});
                CHECK(e.coe == r.coe);
                CHECK(e.llp == r.llp);
                CHECK(r.feasible == (r.llp <= eps));
            }
        }

        auto tiny = small_bounds();
        tiny.n_pv_max = 1;
        tiny.n_bes_max = 1;
        SizingProblem starved(week_model(), tiny);
        const auto rows = dod_sweep(starved, dods, 0.0, Algorithm::mopso, quick());
        for (const auto& r : rows) {
            CHECK_FALSE(r.feasible);
            CHECK(r.llp > 0.0);
        }
    }

    TEST_CASE("sweep rejects values outside the dod bounds") {
        SizingProblem p(week_model(), small_bounds());
        const std::vector<double> dods{0.9};
        CHECK_THROWS_AS((void)dod_sweep(p, dods, 0.0, Algorithm::nsga2, quick()), InputError);
    }

    TEST_CASE("brute force") {
        SizingProblem p(week_model(), small_bounds());
        DesignGrid one{{5}, {3}, {0.5}};
        const auto single = brute_force_front(p, one);
        REQUIRE(single.size() == 1);
        CHECK(single[0].decision == std::vector<double>{5, 3, 0.5});

        DesignGrid grid{{0, 4, 8, 12, 16, 20}, {0, 2, 4, 6, 8, 10}, {0.2, 0.5, 0.8}};
        const auto front = brute_force_front(p, grid, 2);
        for (const auto& a : front)
            for (const auto& b : front) CHECK_FALSE(dominates(a.objectives, b.objectives));
        CHECK_THROWS_AS((void)brute_force_front(p, grid, 1, 10), InputError);
    }

    TEST_CASE("algorithm names") {
        CHECK(parse_algorithm("mopso") == Algorithm::mopso);
        CHECK(to_string(Algorithm::nsga2) == "nsga2");
        CHECK_THROWS_AS((void)parse_algorithm("pso"), InputError);
    }

    TEST_CASE("ranges") {
        const auto r = linspace_step(0.2, 0.8, 0.1);
        REQUIRE(r.size() == 7);
        CHECK(r.back() == doctest::Approx(0.8));
        CHECK(linspace_step(1, 1, 0.5).size() == 1);
        CHECK_THROWS_AS((void)linspace_step(0, 1, 0), InputError);
    }
}
