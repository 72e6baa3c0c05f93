#include "sspvb/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "sspvb/csv.hpp"
#include "sspvb/error.hpp"

extern char** environ;

namespace sspvb {

namespace {

struct Field {
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

double to_double(std::string_view text) {
    double v = 0.0;
    if (!csv::parse_double(text, v) || std::isnan(v))
        throw InputError("not a number: '" + std::string(text) + "'");
    return v;
}

std::uint64_t to_unsigned(std::string_view text) {
    text = csv::trim(text);
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
        throw InputError("not a non-negative integer: '" + std::string(text) + "'");
    return v;
}

template <class Access>
Field real(Access access) {
    return {[access](RunConfig& c, std::string_view v) { access(c) = to_double(v); },
            [access](const RunConfig& c) { return csv::format_double(access(const_cast<RunConfig&>(c))); }};
}

template <class T, class Access>
Field count(Access access) {
    return {[access](RunConfig& c, std::string_view v) { access(c) = static_cast<T>(to_unsigned(v)); },
            [access](const RunConfig& c) { return std::to_string(access(const_cast<RunConfig&>(c))); }};
}

template <class Access>
Field text(Access access) {
    return {[access](RunConfig& c, std::string_view v) { access(c) = std::string(csv::trim(v)); },
            [access](const RunConfig& c) { return std::string(access(const_cast<RunConfig&>(c))); }};
}

template <class Access>
Field path(Access access) {
    return {[access](RunConfig& c, std::string_view v) { access(c) = std::filesystem::path(std::string(csv::trim(v))); },
            [access](const RunConfig& c) { return access(const_cast<RunConfig&>(c)).string(); }};
}

template <class Access>
Field optional_count(Access access) {
    return {[access](RunConfig& c, std::string_view v) {
                if (csv::trim(v) == "auto")
                    access(c).reset();
                else
                    access(c) = static_cast<long>(to_unsigned(v));
            },
            [access](const RunConfig& c) {
                const auto& o = access(const_cast<RunConfig&>(c));
                return o ? std::to_string(*o) : std::string("auto");
            }};
}

#define SSPVB_FIELD(member) [](RunConfig& c) -> auto& { return c.member; }

const std::vector<std::pair<std::string, Field>>& field_table() {
    static const std::vector<std::pair<std::string, Field>> table = {
        {"data.weather", path(SSPVB_FIELD(weather_path))},
        {"data.load", path(SSPVB_FIELD(load_path))},
        {"synth.seed", count<std::uint64_t>(SSPVB_FIELD(synth.seed))},
        {"synth.days", count<int>(SSPVB_FIELD(synth.days))},
        {"synth.peak_load_kw", real(SSPVB_FIELD(synth.peak_load_kw))},
        {"synth.latitude_factor", real(SSPVB_FIELD(synth.latitude_factor))},
        {"pv.rated_power_per_unit", real(SSPVB_FIELD(pv.rated_power_per_unit))},
        {"pv.derating", real(SSPVB_FIELD(pv.derating))},
        {"pv.temp_coeff", real(SSPVB_FIELD(pv.temp_coeff))},
        {"pv.noct", real(SSPVB_FIELD(pv.noct))},
        {"pv.ref_irradiance", real(SSPVB_FIELD(pv.ref_irradiance))},
        {"pv.ref_cell_temp", real(SSPVB_FIELD(pv.ref_cell_temp))},
        {"battery.capacity_per_unit", real(SSPVB_FIELD(battery.capacity_per_unit))},
        {"battery.charge_eff", real(SSPVB_FIELD(battery.charge_eff))},
        {"battery.discharge_eff", real(SSPVB_FIELD(battery.discharge_eff))},
        {"battery.max_charge_rate", real(SSPVB_FIELD(battery.max_charge_rate))},
        {"battery.max_discharge_rate", real(SSPVB_FIELD(battery.max_discharge_rate))},
        {"battery.float_life", real(SSPVB_FIELD(battery.float_life))},
        {"battery.cycle_life_a", real(SSPVB_FIELD(battery.cycle_life_a))},
        {"battery.cycle_life_b", real(SSPVB_FIELD(battery.cycle_life_b))},
        {"cost.pv_unit_cost", real(SSPVB_FIELD(costs.pv_unit_cost))},
        {"cost.bes_unit_cost", real(SSPVB_FIELD(costs.bes_unit_cost))},
        {"cost.converter_cost", real(SSPVB_FIELD(costs.converter_cost))},
        {"cost.om_frac", real(SSPVB_FIELD(costs.om_frac))},
        {"cost.discount_rate", real(SSPVB_FIELD(costs.discount_rate))},
        {"cost.project_life", real(SSPVB_FIELD(costs.project_life))},
        {"cost.bes_replacement_cost", real(SSPVB_FIELD(costs.bes_replacement_cost))},
        {"econ.energy_basis",
         {[](RunConfig& c, std::string_view v) {
              const auto s = csv::trim(v);
              if (s == "served")
                  c.energy_basis = EnergyBasis::served;
              else if (s == "total_load")
                  c.energy_basis = EnergyBasis::total_load;
              else
                  throw InputError("econ.energy_basis must be 'served' or 'total_load'");
          },
          [](const RunConfig& c) {
              return std::string(c.energy_basis == EnergyBasis::served ? "served" : "total_load");
          }}},
        {"econ.coe_penalty", real(SSPVB_FIELD(coe_penalty))},
        {"bounds.n_pv_max", optional_count(SSPVB_FIELD(n_pv_max))},
        {"bounds.n_bes_max", optional_count(SSPVB_FIELD(n_bes_max))},
        {"bounds.dod_min", real(SSPVB_FIELD(dod.min))},
        {"bounds.dod_max", real(SSPVB_FIELD(dod.max))},
        {"bounds.dod_step", real(SSPVB_FIELD(dod_step))},
        {"mopso.swarm_size", count<std::size_t>(SSPVB_FIELD(mopso.swarm_size))},
        {"mopso.iterations", count<std::size_t>(SSPVB_FIELD(mopso.iterations))},
        {"mopso.inertia_start", real(SSPVB_FIELD(mopso.inertia_start))},
        {"mopso.inertia_end", real(SSPVB_FIELD(mopso.inertia_end))},
        {"mopso.c1", real(SSPVB_FIELD(mopso.c1))},
        {"mopso.c2", real(SSPVB_FIELD(mopso.c2))},
        {"mopso.archive_capacity", count<std::size_t>(SSPVB_FIELD(mopso.archive_capacity))},
        {"mopso.grid_divisions", count<std::size_t>(SSPVB_FIELD(mopso.grid_divisions))},
        {"mopso.mutation_rate", real(SSPVB_FIELD(mopso.mutation_rate))},
        {"nsga2.population", count<std::size_t>(SSPVB_FIELD(nsga2.population))},
        {"nsga2.generations", count<std::size_t>(SSPVB_FIELD(nsga2.generations))},
        {"nsga2.crossover_prob", real(SSPVB_FIELD(nsga2.crossover_prob))},
        {"nsga2.crossover_eta", real(SSPVB_FIELD(nsga2.crossover_eta))},
        {"nsga2.mutation_prob",
         {[](RunConfig& c, std::string_view v) {
              c.nsga2.mutation_prob = csv::trim(v) == "auto" ? -1.0 : to_double(v);
          },
          [](const RunConfig& c) {
              return c.nsga2.mutation_prob < 0.0 ? std::string("auto") : csv::format_double(c.nsga2.mutation_prob);
          }}},
        {"nsga2.mutation_eta", real(SSPVB_FIELD(nsga2.mutation_eta))},
        {"run.algo",
         {[](RunConfig& c, std::string_view v) {
              const std::string name(csv::trim(v));
              if (name != "both") (void)parse_algorithm(name);
              c.algo = name;
          },
          [](const RunConfig& c) { return c.algo; }}},
        {"run.seed", count<std::uint64_t>(SSPVB_FIELD(seed))},
        {"run.threads", count<unsigned>(SSPVB_FIELD(threads))},
        {"run.epsilon", real(SSPVB_FIELD(epsilon))},
        {"run.out", path(SSPVB_FIELD(out_dir))},
        {"sweep.from", real(SSPVB_FIELD(sweep_from))},
        {"sweep.to", real(SSPVB_FIELD(sweep_to))},
        {"sweep.step", real(SSPVB_FIELD(sweep_step))},
    };
    return table;
}

#undef SSPVB_FIELD

const Field* find_field(std::string_view key) {
    for (const auto& [name, field] : field_table())
        if (name == key) return &field;
    return nullptr;
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
    const Field* field = find_field(csv::trim(key));
    if (field == nullptr) throw InputError("unknown config key '" + std::string(csv::trim(key)) + "'");
    try {
        field->set(*this, value);
    } catch (const InputError& e) {
        throw InputError("config key '" + std::string(csv::trim(key)) + "': " + e.what());
    }
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [name, field] : field_table()) out.emplace_back(name, field.get(*this));
    return out;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, field] : field_table()) k.push_back(name);
        return k;
    }();
    return keys;
}

void RunConfig::validate() const {
    if (weather_path.empty() != load_path.empty())
        throw InputError("data.weather and data.load must be given together");
    for (const auto& p : {weather_path, load_path})
        if (!p.empty() && !std::filesystem::exists(p)) throw InputError("input file does not exist: " + p.string());
    if (synth.days < 1) throw InputError("synth.days must be >= 1");
    if (!(synth.latitude_factor >= 0.0 && synth.latitude_factor <= 1.0))
        throw InputError("synth.latitude_factor must lie in [0, 1]");
    if (!(synth.peak_load_kw >= 0.0)) throw InputError("synth.peak_load_kw must be >= 0");
    pv.validate();
    battery.validate();
    costs.validate();
    SizingBounds b{n_pv_max.value_or(0), n_bes_max.value_or(0), dod, dod_step};
    b.validate();
    mopso.validate();
    nsga2.validate();
    (void)algorithms();
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InputError("run.epsilon must lie in [0, 1]");
    if (!(sweep_step > 0.0) || !(sweep_to >= sweep_from)) throw InputError("sweep range needs step > 0 and to >= from");
}

std::vector<Algorithm> RunConfig::algorithms() const {
    if (algo == "both") return {Algorithm::mopso, Algorithm::nsga2};
    return {parse_algorithm(algo)};
}

OptimizerSettings RunConfig::optimizer_settings() const {
    OptimizerSettings s{mopso, nsga2};
    s.mopso.seed = seed;
    s.nsga2.seed = seed;
    s.mopso.threads = threads;
    s.nsga2.threads = threads;
    return s;
}

void apply_config_text(RunConfig& config, std::string_view text, const std::string& source) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const auto body = csv::trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw InputError(source + ":" + std::to_string(line_no) + ": expected key=value");
        try {
            config.set(body.substr(0, eq), body.substr(eq + 1));
        } catch (const InputError& e) {
            throw InputError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    apply_config_text(config, buffer.str(), path.string());
}

std::string env_name(std::string_view key) {
    std::string name = "SSPVB_";
    for (char ch : key) name += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return name;
}

void apply_env_overrides(RunConfig& config, const EnvLookup& lookup, bool strict) {
    std::map<std::string, std::string> known;
    for (const auto& key : config_keys()) known.emplace(env_name(key), key);

    const EnvLookup get = lookup ? lookup : [](const std::string& name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name.c_str())) return std::string(v);
        return std::nullopt;
    };

    if (strict && !lookup) {
        for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
            const std::string_view entry(*e);
            if (!entry.starts_with("SSPVB_")) continue;
            const auto name = std::string(entry.substr(0, entry.find('=')));
            if (!known.contains(name)) throw InputError("unknown environment override " + name);
        }
    }
    for (const auto& [name, key] : known) {
        if (const auto value = get(name)) {
            try {
                config.set(key, *value);
            } catch (const InputError& e) {
                throw InputError("environment " + name + ": " + e.what());
            }
        }
    }
}

}  // namespace sspvb
