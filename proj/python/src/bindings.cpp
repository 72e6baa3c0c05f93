#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sspvb/config.hpp"
#include "sspvb/dataset_io.hpp"
#include "sspvb/economics.hpp"
#include "sspvb/error.hpp"
#include "sspvb/pareto.hpp"
#include "sspvb/run.hpp"
#include "sspvb/simulation.hpp"
#include "sspvb/sizing.hpp"

namespace py = pybind11;
using namespace sspvb;

namespace {

SizingProblem make_sizing_problem(const SizingModel& model, const std::optional<SizingBounds>& bounds) {
    return SizingProblem(model, bounds ? *bounds : default_bounds(model));
}

}  // namespace

PYBIND11_MODULE(_sspvb, m) {
    m.doc() = "Stand-alone PV/battery sizing: simulation, economics and multi-objective optimization.";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    py::class_<AnnualDataset>(m, "AnnualDataset")
        .def(py::init<>())
        .def(py::init([](std::vector<double> irradiance, std::vector<double> ambient_temp, std::vector<double> load) {
                 AnnualDataset d{std::move(irradiance), std::move(ambient_temp), std::move(load)};
                 d.validate();
                 return d;
             }),
             py::arg("irradiance"), py::arg("ambient_temp"), py::arg("load"))
        .def_readwrite("irradiance", &AnnualDataset::irradiance)
        .def_readwrite("ambient_temp", &AnnualDataset::ambient_temp)
        .def_readwrite("load", &AnnualDataset::load)
        .def_property_readonly("hours", &AnnualDataset::hours)
        .def("total_load", &AnnualDataset::total_load)
        .def("peak_load", &AnnualDataset::peak_load)
        .def("mean_daily_load", &AnnualDataset::mean_daily_load)
        .def("validate", &AnnualDataset::validate);

    py::class_<SyntheticSettings>(m, "SyntheticSettings")
        .def(py::init<>())
        .def_readwrite("seed", &SyntheticSettings::seed)
        .def_readwrite("days", &SyntheticSettings::days)
        .def_readwrite("peak_load_kw", &SyntheticSettings::peak_load_kw)
        .def_readwrite("latitude_factor", &SyntheticSettings::latitude_factor);

    m.def("generate_synthetic", &generate_synthetic, py::arg("settings") = SyntheticSettings{});
    m.def("ingest_dataset", &ingest_dataset, py::arg("weather_path"), py::arg("load_path"));
    m.def("write_dataset", &write_dataset, py::arg("dataset"), py::arg("weather_path"), py::arg("load_path"));

    py::class_<PVSpec>(m, "PVSpec")
        .def(py::init<>())
        .def_readwrite("rated_power_per_unit", &PVSpec::rated_power_per_unit)
        .def_readwrite("derating", &PVSpec::derating)
        .def_readwrite("temp_coeff", &PVSpec::temp_coeff)
        .def_readwrite("noct", &PVSpec::noct)
        .def_readwrite("ref_irradiance", &PVSpec::ref_irradiance)
        .def_readwrite("ref_cell_temp", &PVSpec::ref_cell_temp)
        .def("validate", &PVSpec::validate);

    py::class_<BatterySpec>(m, "BatterySpec")
        .def(py::init<>())
        .def_readwrite("capacity_per_unit", &BatterySpec::capacity_per_unit)
        .def_readwrite("charge_eff", &BatterySpec::charge_eff)
        .def_readwrite("discharge_eff", &BatterySpec::discharge_eff)
        .def_readwrite("max_charge_rate", &BatterySpec::max_charge_rate)
        .def_readwrite("max_discharge_rate", &BatterySpec::max_discharge_rate)
        .def_readwrite("float_life", &BatterySpec::float_life)
        .def_readwrite("cycle_life_a", &BatterySpec::cycle_life_a)
        .def_readwrite("cycle_life_b", &BatterySpec::cycle_life_b)
        .def("validate", &BatterySpec::validate);

    py::class_<CostParams>(m, "CostParams")
        .def(py::init<>())
        .def_readwrite("pv_unit_cost", &CostParams::pv_unit_cost)
        .def_readwrite("bes_unit_cost", &CostParams::bes_unit_cost)
        .def_readwrite("converter_cost", &CostParams::converter_cost)
        .def_readwrite("om_frac", &CostParams::om_frac)
        .def_readwrite("discount_rate", &CostParams::discount_rate)
        .def_readwrite("project_life", &CostParams::project_life)
        .def_readwrite("bes_replacement_cost", &CostParams::bes_replacement_cost)
        .def("validate", &CostParams::validate);

    py::class_<Design>(m, "Design")
        .def(py::init<long, long, double>(), py::arg("n_pv") = 0, py::arg("n_bes") = 0, py::arg("dod") = 0.8)
        .def_readwrite("n_pv", &Design::n_pv)
        .def_readwrite("n_bes", &Design::n_bes)
        .def_readwrite("dod", &Design::dod)
        .def("__eq__", [](const Design& a, const Design& b) { return a == b; })
        .def("__repr__", [](const Design& d) {
            return "Design(n_pv=" + std::to_string(d.n_pv) + ", n_bes=" + std::to_string(d.n_bes) +
                   ", dod=" + py::repr(py::float_(d.dod)).cast<std::string>() + ")";
        });

    py::class_<DodBounds>(m, "DodBounds")
        .def(py::init<>())
        .def_readwrite("min", &DodBounds::min)
        .def_readwrite("max", &DodBounds::max);

    py::class_<SimulationTotals>(m, "SimulationTotals")
        .def_readonly("hours", &SimulationTotals::hours)
        .def_readonly("discharge_throughput", &SimulationTotals::discharge_throughput)
        .def_readonly("served_energy", &SimulationTotals::served_energy)
        .def_readonly("total_load", &SimulationTotals::total_load)
        .def_readonly("total_deficit", &SimulationTotals::total_deficit);

    py::class_<SimulationResult, SimulationTotals>(m, "SimulationResult")
        .def_readonly("pv", &SimulationResult::pv)
        .def_readonly("soc", &SimulationResult::soc)
        .def_readonly("deficit", &SimulationResult::deficit)
        .def_readonly("surplus_dumped", &SimulationResult::surplus_dumped)
        .def_readonly("charge_stored", &SimulationResult::charge_stored)
        .def_readonly("battery_delivered", &SimulationResult::battery_delivered)
        .def_readonly("soc_min", &SimulationResult::soc_min)
        .def_readonly("soc_max", &SimulationResult::soc_max);

    m.def("pv_power", &pv_power, py::arg("irradiance"), py::arg("ambient_temp"), py::arg("spec"), py::arg("n_pv"));
    m.def(
        "simulate",
        [](const Design& d, const AnnualDataset& ds, const PVSpec& pv, const BatterySpec& bat) {
            return simulate(d, ds, pv, bat);
        },
        py::arg("design"), py::arg("dataset"), py::arg("pv") = PVSpec{}, py::arg("battery") = BatterySpec{});
    m.def("compute_llp", &compute_llp, py::arg("totals"));

    py::enum_<EnergyBasis>(m, "EnergyBasis")
        .value("served", EnergyBasis::served)
        .value("total_load", EnergyBasis::total_load);

    py::class_<CostBreakdown>(m, "CostBreakdown")
        .def_readonly("annualized_capital", &CostBreakdown::annualized_capital)
        .def_readonly("annualized_replacement", &CostBreakdown::annualized_replacement)
        .def_readonly("annual_om", &CostBreakdown::annual_om)
        .def_readonly("atc", &CostBreakdown::atc)
        .def_readonly("battery_life", &CostBreakdown::battery_life)
        .def_readonly("replacements", &CostBreakdown::replacements);

    m.def("crf", &crf, py::arg("discount_rate"), py::arg("years"));
    m.def("battery_cycle_life", &battery_cycle_life, py::arg("dod"), py::arg("spec") = BatterySpec{});
    m.def("battery_life_years", &battery_life_years, py::arg("totals"), py::arg("design"),
          py::arg("spec") = BatterySpec{});
    m.def("annualized_total_cost", &annualized_total_cost, py::arg("design"), py::arg("battery_life"),
          py::arg("costs") = CostParams{});
    m.def("compute_coe", &compute_coe, py::arg("atc"), py::arg("energy"), py::arg("penalty") = kCoePenalty);

    py::class_<Solution>(m, "Solution")
        .def_readonly("decision", &Solution::decision)
        .def_readonly("objectives", &Solution::objectives)
        .def("__repr__", [](const Solution& s) {
            return "Solution(decision=" + py::repr(py::cast(s.decision)).cast<std::string>() +
                   ", objectives=" + py::repr(py::cast(s.objectives)).cast<std::string>() + ")";
        });

    m.def(
        "dominates", [](const std::vector<double>& a, const std::vector<double>& b) { return dominates(a, b); },
        py::arg("a"), py::arg("b"));
    m.def(
        "non_dominated_sort", [](const std::vector<ObjectivePoint>& p) { return non_dominated_sort(p); },
        py::arg("points"));
    m.def(
        "crowding_distance", [](const std::vector<ObjectivePoint>& p) { return crowding_distance(p); },
        py::arg("front"));
    m.def(
        "hypervolume_2d",
        [](const std::vector<ObjectivePoint>& p, const ObjectivePoint& ref) { return hypervolume_2d(p, ref); },
        py::arg("front"), py::arg("reference"));
    m.def(
        "knee_index", [](const std::vector<ObjectivePoint>& p) { return knee_index(p); }, py::arg("points"));

    py::class_<SizingModel>(m, "SizingModel")
        .def(py::init<>())
        .def(py::init([](AnnualDataset ds) {
                 SizingModel model;
                 model.dataset = std::move(ds);
                 return model;
             }),
             py::arg("dataset"))
        .def_readwrite("dataset", &SizingModel::dataset)
        .def_readwrite("pv", &SizingModel::pv)
        .def_readwrite("battery", &SizingModel::battery)
        .def_readwrite("costs", &SizingModel::costs)
        .def_readwrite("energy_basis", &SizingModel::energy_basis)
        .def_readwrite("coe_penalty", &SizingModel::coe_penalty)
        .def("validate", &SizingModel::validate);

    py::class_<SizingBounds>(m, "SizingBounds")
        .def(py::init<>())
        .def_readwrite("n_pv_max", &SizingBounds::n_pv_max)
        .def_readwrite("n_bes_max", &SizingBounds::n_bes_max)
        .def_readwrite("dod", &SizingBounds::dod)
        .def_readwrite("dod_step", &SizingBounds::dod_step)
        .def("validate", &SizingBounds::validate);
    m.def("default_bounds", &default_bounds, py::arg("model"));

    py::class_<DesignEvaluation>(m, "DesignEvaluation")
        .def_readonly("design", &DesignEvaluation::design)
        .def_readonly("totals", &DesignEvaluation::totals)
        .def_readonly("cost", &DesignEvaluation::cost)
        .def_readonly("energy", &DesignEvaluation::energy)
        .def_readonly("coe", &DesignEvaluation::coe)
        .def_readonly("llp", &DesignEvaluation::llp);

    py::class_<SizingProblem>(m, "SizingProblem")
        .def(py::init(&make_sizing_problem), py::arg("model"), py::arg("bounds") = std::nullopt)
        .def_property_readonly("model", &SizingProblem::model)
        .def_property_readonly("bounds", &SizingProblem::bounds)
        .def("evaluate_design", &SizingProblem::evaluate_design, py::arg("design"))
        .def(
            "evaluate", [](const SizingProblem& p, const std::vector<double>& x) { return p.evaluate(x); },
            py::arg("decision"));

    py::enum_<Algorithm>(m, "Algorithm").value("mopso", Algorithm::mopso).value("nsga2", Algorithm::nsga2);
    m.def("parse_algorithm", &parse_algorithm, py::arg("name"));

    py::class_<MopsoParams>(m, "MopsoParams")
        .def(py::init<>())
        .def_readwrite("swarm_size", &MopsoParams::swarm_size)
        .def_readwrite("iterations", &MopsoParams::iterations)
        .def_readwrite("inertia_start", &MopsoParams::inertia_start)
        .def_readwrite("inertia_end", &MopsoParams::inertia_end)
        .def_readwrite("c1", &MopsoParams::c1)
        .def_readwrite("c2", &MopsoParams::c2)
        .def_readwrite("archive_capacity", &MopsoParams::archive_capacity)
        .def_readwrite("grid_divisions", &MopsoParams::grid_divisions)
        .def_readwrite("mutation_rate", &MopsoParams::mutation_rate)
        .def_readwrite("seed", &MopsoParams::seed)
        .def_readwrite("threads", &MopsoParams::threads);

    py::class_<Nsga2Params>(m, "Nsga2Params")
        .def(py::init<>())
        .def_readwrite("population", &Nsga2Params::population)
        .def_readwrite("generations", &Nsga2Params::generations)
        .def_readwrite("crossover_prob", &Nsga2Params::crossover_prob)
        .def_readwrite("crossover_eta", &Nsga2Params::crossover_eta)
        .def_readwrite("mutation_prob", &Nsga2Params::mutation_prob)
        .def_readwrite("mutation_eta", &Nsga2Params::mutation_eta)
        .def_readwrite("seed", &Nsga2Params::seed)
        .def_readwrite("threads", &Nsga2Params::threads);

    py::class_<OptimizerSettings>(m, "OptimizerSettings")
        .def(py::init<>())
        .def_readwrite("mopso", &OptimizerSettings::mopso)
        .def_readwrite("nsga2", &OptimizerSettings::nsga2);

    m.def(
        "optimize",
        [](const SizingProblem& p, Algorithm algo, const OptimizerSettings& s) {
            py::gil_scoped_release release;
            return optimize(p, algo, s);
        },
        py::arg("problem"), py::arg("algorithm"), py::arg("settings") = OptimizerSettings{});

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("dod", &SweepRow::dod)
        .def_readonly("n_pv", &SweepRow::n_pv)
        .def_readonly("n_bes", &SweepRow::n_bes)
        .def_readonly("coe", &SweepRow::coe)
        .def_readonly("llp", &SweepRow::llp)
        .def_readonly("feasible", &SweepRow::feasible);

    m.def(
        "dod_sweep",
        [](const SizingProblem& p, const std::vector<double>& dods, double eps, Algorithm algo,
           const OptimizerSettings& s) {
            py::gil_scoped_release release;
            return dod_sweep(p, dods, eps, algo, s);
        },
        py::arg("problem"), py::arg("dod_values"), py::arg("epsilon") = 0.0, py::arg("algorithm") = Algorithm::nsga2,
        py::arg("settings") = OptimizerSettings{});

    py::class_<DesignGrid>(m, "DesignGrid")
        .def(py::init<>())
        .def(py::init<std::vector<long>, std::vector<long>, std::vector<double>>(), py::arg("n_pv"),
             py::arg("n_bes"), py::arg("dod"))
        .def_readwrite("n_pv", &DesignGrid::n_pv)
        .def_readwrite("n_bes", &DesignGrid::n_bes)
        .def_readwrite("dod", &DesignGrid::dod)
        .def("size", &DesignGrid::size);
    m.def(
        "brute_force_front",
        [](const SizingProblem& p, const DesignGrid& g, unsigned threads) {
            py::gil_scoped_release release;
            return brute_force_front(p, g, threads);
        },
        py::arg("problem"), py::arg("grid"), py::arg("threads") = 1);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def("set", [](RunConfig& c, const std::string& k, const std::string& v) { c.set(k, v); }, py::arg("key"),
             py::arg("value"))
        .def("entries", &RunConfig::entries)
        .def("validate", &RunConfig::validate)
        .def("apply_file", [](RunConfig& c, const std::filesystem::path& p) { apply_config_file(c, p); },
             py::arg("path"));
    m.def("config_keys", &config_keys);
    m.def("make_problem", &make_problem, py::arg("config"));
    m.def(
        "run_optimize",
        [](const RunConfig& c) {
            py::gil_scoped_release release;
            (void)run_optimize(c);
        },
        py::arg("config"));
    m.def(
        "run_sweep",
        [](const RunConfig& c) {
            py::gil_scoped_release release;
            return run_sweep(c);
        },
        py::arg("config"));
}
