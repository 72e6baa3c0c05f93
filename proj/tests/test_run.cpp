#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "scratch.hpp"
#include "sspvb/config.hpp"
#include "sspvb/csv.hpp"
#include "sspvb/dataset_io.hpp"
#include "sspvb/error.hpp"
#include "sspvb/run.hpp"
#include "sspvb/simulation.hpp"

using namespace sspvb;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_rows(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) rows.push_back(csv::split_line(line));
    return rows;
}

double num(const std::string& s) {
    double v = 0.0;
    REQUIRE(csv::parse_double(s, v));
    return v;
}

RunConfig small_config(const fs::path& out) {
    RunConfig c;
    c.synth.days = 7;
    c.n_pv_max = 20;
    c.n_bes_max = 10;
    c.mopso.swarm_size = 30;
    c.mopso.iterations = 25;
    c.nsga2.population = 30;
    c.nsga2.generations = 25;
    c.out_dir = out;
    return c;
}

int run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" SSPVB_CLI_PATH "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("run") {
    TEST_CASE("optimize writes fronts whose numbers re-derive from the library") {
        Scratch dir("optimize");
        auto c = small_config(dir.path());
        const auto outcomes = run_optimize(c);
        REQUIRE(outcomes.size() == 2);
        const auto problem = make_problem(c);
        for (const char* name : {"mopso", "nsga2"}) {
            const auto front = dir / (std::string("front_") + name + ".csv");
            const auto rows = read_rows(front);
            REQUIRE(rows.size() >= 2);
            CHECK(rows[0] == std::vector<std::string>{"n_pv", "n_bes", "dod", "coe_usd_per_kwh", "llp_frac"});
            for (std::size_t r = 1; r < rows.size(); ++r) {
                const Design d{std::stol(rows[r][0]), std::stol(rows[r][1]), num(rows[r][2])};
                const auto e = problem.evaluate_design(d);
                CHECK(e.coe == num(rows[r][3]));
                CHECK(e.llp == num(rows[r][4]));
            }
            const auto back = read_front_csv(front);
            CHECK(back.size() == rows.size() - 1);
            const auto surface = read_rows(dir / (std::string("surface_") + name + ".csv"));
            CHECK(surface[0] == std::vector<std::string>{"dod", "coe_usd_per_kwh", "llp_frac"});
            CHECK(surface.size() == rows.size());
        }
        const auto cmp = read_rows(dir / "comparison.csv");
        REQUIRE(cmp.size() == 3);
        CHECK(cmp[1][0] == "mopso");
        CHECK(cmp[2][0] == "nsga2");
        for (std::size_t r = 1; r < 3; ++r) {
            if (cmp[r][1].empty()) continue;
            const Design d{std::stol(cmp[r][2]), std::stol(cmp[r][3]), num(cmp[r][1])};
            const auto e = problem.evaluate_design(d);
            CHECK(e.coe == num(cmp[r][4]));
            CHECK(e.llp == num(cmp[r][5]));
            CHECK(e.llp <= c.epsilon);
        }
        const auto summary = slurp(dir / "summary.txt");
        CHECK(summary.find("seed: 1") != std::string::npos);
        CHECK(summary.find("knee points:") != std::string::npos);
        CHECK(summary.find("Optimal DOD (%)") != std::string::npos);
    }

    TEST_CASE("reruns are byte-identical, serial or parallel") {
        Scratch a("det_a"), b("det_b");
        auto ca = small_config(a.path());
        auto cb = small_config(b.path());
        cb.threads = 4;
        (void)run_optimize(ca);
        (void)run_optimize(cb);
        for (const char* f : {"front_mopso.csv", "front_nsga2.csv", "surface_mopso.csv", "comparison.csv"})
            CHECK(slurp(a / f) == slurp(b / f));
        (void)run_optimize(ca);
        CHECK(slurp(a / "front_nsga2.csv") == slurp(b / "front_nsga2.csv"));
    }

    TEST_CASE("sweep CSV rows re-derive") {
        Scratch dir("sweep");
        auto c = small_config(dir.path());
        c.algo = "nsga2";
        c.sweep_from = 0.2;
        c.sweep_to = 0.8;
        c.sweep_step = 0.2;
        (void)run_sweep(c);
        const auto rows = read_rows(dir / "sweep_nsga2.csv");
        REQUIRE(rows.size() == 5);
        CHECK(rows[0] == std::vector<std::string>{"dod", "n_pv", "n_bes", "coe_usd_per_kwh", "llp_frac", "feasible"});
        const auto problem = make_problem(c);
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto e = problem.evaluate_design({std::stol(rows[r][1]), std::stol(rows[r][2]), num(rows[r][0])});
            CHECK(e.coe == num(rows[r][3]));
            CHECK(e.llp == num(rows[r][4]));
        }
        CHECK(fs::exists(dir / "sweep_summary.txt"));
    }

    TEST_CASE("simulate trace re-derives") {
        Scratch dir("simulate");
        auto c = small_config(dir.path());
        const Design d{14, 6, 0.6};
        const auto eval = run_simulate(c, d);
        const auto ds = load_dataset(c);
        const auto trace = simulate(d, ds, c.pv, c.battery);
        const auto rows = read_rows(dir / "trace.csv");
        REQUIRE(rows.size() == ds.hours() + 1);
        for (std::size_t t : {std::size_t{0}, std::size_t{13}, ds.hours() - 1}) {
            CHECK(num(rows[t + 1][1]) == trace.pv[t]);
            CHECK(num(rows[t + 1][3]) == trace.soc[t]);
            CHECK(num(rows[t + 1][4]) == trace.deficit[t]);
        }
        CHECK(eval.llp == compute_llp(trace));
    }

    TEST_CASE("gen-data output ingests back to the generator's dataset") {
        Scratch dir("gen");
        SyntheticSettings s;
        s.days = 10;
        s.seed = 5;
        run_gen_data(s, dir.path());
        const auto ds = ingest_dataset(dir / "weather.csv", dir / "load.csv");
        const auto ref = generate_synthetic(s);
        CHECK(ds.irradiance == ref.irradiance);
        CHECK(ds.load == ref.load);

        auto c = small_config(dir / "run");
        c.weather_path = dir / "weather.csv";
        c.load_path = dir / "load.csv";
        CHECK(load_dataset(c).hours() == 240);
    }

    TEST_CASE("brute force and report") {
        Scratch dir("brute");
        auto c = small_config(dir.path());
        const auto grid = parse_grid("n_pv=0:20:2,n_bes=0:10:2,dod=0.2:0.8:0.3");
        CHECK(grid.n_pv.size() == 11);
        CHECK(grid.n_bes.size() == 6);
        CHECK(grid.dod.size() == 3);
        const auto front = run_brute_force(c, grid);
        CHECK(read_front_csv(dir / "front_brute_force.csv").size() == front.size());
        const auto written = run_report(dir.path(), 0.0);
        CHECK(written.back().filename() == "report.txt");
        CHECK(slurp(dir / "report.txt").find("brute_force") != std::string::npos);

        CHECK_THROWS_AS((void)parse_grid("n_pv=0:20:1,n_bes=0:10:1"), InputError);
        CHECK_THROWS_AS((void)parse_grid("n_pv=0:20,n_bes=0:10:1,dod=0.2:0.8:0.1"), InputError);
        CHECK_THROWS_AS((void)run_report(dir / "missing", 0.0), InputError);
    }

    TEST_CASE("unwritable output fails before any work") {
        Scratch dir("unwritable");
        std::ofstream(dir / "file") << "x";
        auto c = small_config(dir / "file" / "sub");
        CHECK_THROWS_AS((void)run_optimize(c), InputError);
    }

    TEST_CASE("percent formatting") {
        CHECK(format_percent(0.0) == "0.0000%");
        CHECK(format_percent(0.123456) == "12.3456%");
    }
}

TEST_SUITE("cli") {
    TEST_CASE("exit status") {
        Scratch dir("cli");
        const std::string out = "--out \"" + dir.path().string() + "\"";
        const std::string quick =
            " --set synth.days=3 --set bounds.n_pv_max=10 --set bounds.n_bes_max=5"
            " --set mopso.iterations=5 --set mopso.swarm_size=10 --set nsga2.generations=5 --set nsga2.population=10 ";
        CHECK(run_cli("optimize " + out + quick) == 0);
        CHECK(fs::exists(dir / "front_mopso.csv"));
        CHECK(run_cli("optimize --algo nsga2 --seed 3 " + out + quick, "SSPVB_BATTERY_FLOAT_LIFE=6") == 0);
        CHECK(slurp(dir / "summary.txt").find("battery.float_life = 6") != std::string::npos);
        CHECK(run_cli("sweep-dod --from 0.4 --to 0.6 --step 0.2 --algo mopso " + out + quick) == 0);
        CHECK(run_cli("simulate --n-pv 5 --n-bes 2 --dod 0.5 " + out + quick) == 0);
        CHECK(run_cli("gen-data --days 2 --out \"" + (dir / "data").string() + "\"") == 0);
        CHECK(run_cli("brute-force --grid n_pv=0:4:2,n_bes=0:2:1,dod=0.2:0.8:0.6 " + out + quick) == 0);
        CHECK(run_cli("report --run-dir \"" + dir.path().string() + "\"") == 0);

        CHECK(run_cli("") != 0);
        CHECK(run_cli("optimize --set nope.key=1 " + out) != 0);
        CHECK(run_cli("optimize --set run.threads=abc " + out) != 0);
        CHECK(run_cli("optimize --algo pso " + out) != 0);
        CHECK(run_cli("optimize " + out + quick, "SSPVB_NOT_A_KEY=1") != 0);
        CHECK(run_cli("optimize --config /nonexistent.cfg " + out) != 0);
        CHECK(run_cli("optimize --set data.weather=/no/w.csv --set data.load=/no/l.csv " + out) != 0);
        CHECK(run_cli("simulate --n-pv -3 " + out + quick) != 0);
        CHECK(run_cli("report --run-dir /nonexistent/dir") != 0);
    }

    TEST_CASE("precedence: file < environment < flags") {
        Scratch dir("precedence");
        std::ofstream(dir / "run.cfg") << "battery.float_life = 3\nrun.seed = 4\nsynth.days = 2\n"
                                          "bounds.n_pv_max = 6\nbounds.n_bes_max = 3\n"
                                          "nsga2.generations = 2\nnsga2.population = 6\n";
        const std::string base =
            "optimize --algo nsga2 --config \"" + (dir / "run.cfg").string() + "\" --out \"" + dir.path().string() + "\"";
        REQUIRE(run_cli(base, "SSPVB_BATTERY_FLOAT_LIFE=5 SSPVB_RUN_SEED=8") == 0);
        auto summary = slurp(dir / "summary.txt");
        CHECK(summary.find("battery.float_life = 5") != std::string::npos);
        CHECK(summary.find("seed: 8") != std::string::npos);
        REQUIRE(run_cli(base + " --seed 11", "SSPVB_RUN_SEED=8") == 0);
        summary = slurp(dir / "summary.txt");
        CHECK(summary.find("seed: 11") != std::string::npos);
        CHECK(summary.find("battery.float_life = 3") != std::string::npos);
    }
}
