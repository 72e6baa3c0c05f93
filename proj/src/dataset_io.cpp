#include "sspvb/dataset_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "sspvb/csv.hpp"
#include "sspvb/error.hpp"
#include "sspvb/random.hpp"

namespace sspvb {

namespace {

struct Table {
    std::vector<std::vector<double>> columns;
    std::vector<std::size_t> lines;  // 1-based source line of each data row
};

[[noreturn]] void fail_at(const std::filesystem::path& path, std::size_t row, std::size_t line,
                          const std::string& column, const std::string& message) {
    throw InputError(path.string() + ": row " + std::to_string(row) + " (line " + std::to_string(line) +
                     "), column '" + column + "': " + message);
}

/// Reads the named columns of a CSV with a header line.
Table read_columns(const std::filesystem::path& path, const std::vector<std::string>& names) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string() + ": cannot open file");

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!csv::trim(line).empty()) {
            header = csv::split_line(line);
            break;
        }
    }
    if (header.empty()) throw InputError(path.string() + ": missing header line");

    std::vector<std::size_t> index;
    for (const auto& name : names) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw InputError(path.string() + ": missing column '" + name + "'");
        index.push_back(static_cast<std::size_t>(it - header.begin()));
    }

    Table table;
    table.columns.resize(names.size());
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto cells = csv::split_line(line);
        const std::size_t row = table.lines.size();
        for (std::size_t c = 0; c < names.size(); ++c) {
            if (index[c] >= cells.size()) fail_at(path, row, line_no, names[c], "missing cell");
            double value = 0.0;
            if (!csv::parse_double(cells[index[c]], value) || !std::isfinite(value))
                fail_at(path, row, line_no, names[c], "not a finite number: '" + cells[index[c]] + "'");
            table.columns[c].push_back(value);
        }
        table.lines.push_back(line_no);
    }
    return table;
}

void check_hours(const std::filesystem::path& path, const Table& table) {
    const auto& hours = table.columns[0];
    for (std::size_t r = 0; r < hours.size(); ++r)
        if (hours[r] != static_cast<double>(r))
            fail_at(path, r, table.lines[r], "hour", "expected hour " + std::to_string(r));
}

void check_non_negative(const std::filesystem::path& path, const Table& table, std::size_t column,
                        const std::string& name) {
    const auto& values = table.columns[column];
    for (std::size_t r = 0; r < values.size(); ++r)
        if (values[r] < 0.0) fail_at(path, r, table.lines[r], name, "negative value " + csv::format_double(values[r]));
}

constexpr double kBase = 0.40;

double load_shape(double hour) {
    const double morning = 0.35 * std::exp(-std::pow((hour - 7.5) / 1.5, 2.0));
    const double evening = 0.60 * std::exp(-std::pow((hour - 20.0) / 2.0, 2.0));
    return kBase + morning + evening;
}

std::array<double, 24> normalized_load_shape() {
    std::array<double, 24> shape{};
    double peak = 0.0;
    for (int h = 0; h < 24; ++h) {
        shape[static_cast<std::size_t>(h)] = load_shape(h + 0.5);
        peak = std::max(peak, shape[static_cast<std::size_t>(h)]);
    }
    for (auto& v : shape) v /= peak;
    return shape;
}

}  // namespace

AnnualDataset ingest_dataset(const std::filesystem::path& weather_path, const std::filesystem::path& load_path) {
    const auto weather = read_columns(weather_path, {"hour", "ghi_w_m2", "temp_c"});
    const auto load = read_columns(load_path, {"hour", "load_kw"});
    check_hours(weather_path, weather);
    check_hours(load_path, load);
    check_non_negative(weather_path, weather, 1, "ghi_w_m2");
    check_non_negative(load_path, load, 1, "load_kw");
    if (weather.lines.size() != load.lines.size())
        throw InputError("length mismatch: " + weather_path.string() + " has " + std::to_string(weather.lines.size()) +
                         " rows but " + load_path.string() + " has " + std::to_string(load.lines.size()));
    if (weather.lines.empty()) throw InputError(weather_path.string() + ": no data rows");

    AnnualDataset ds{weather.columns[1], weather.columns[2], load.columns[1]};
    ds.validate();
    return ds;
}

void write_dataset(const AnnualDataset& dataset, const std::filesystem::path& weather_path,
                   const std::filesystem::path& load_path) {
    dataset.validate();
    std::ofstream weather(weather_path);
    std::ofstream load(load_path);
    if (!weather) throw InputError(weather_path.string() + ": cannot write");
    if (!load) throw InputError(load_path.string() + ": cannot write");
    weather << "hour,ghi_w_m2,temp_c\n";
    load << "hour,load_kw\n";
    for (std::size_t t = 0; t < dataset.hours(); ++t) {
        weather << t << ',' << csv::format_double(dataset.irradiance[t]) << ','
                << csv::format_double(dataset.ambient_temp[t]) << '\n';
        load << t << ',' << csv::format_double(dataset.load[t]) << '\n';
    }
}

double synthetic_mean_load(double peak_load_kw) {
    const auto shape = normalized_load_shape();
    double sum = 0.0;
    for (double v : shape) sum += v;
    return peak_load_kw * sum / 24.0;
}

AnnualDataset generate_synthetic(const SyntheticSettings& settings) {
    if (settings.days < 1) throw InputError("synthetic generator needs days >= 1");
    if (!(settings.peak_load_kw >= 0.0)) throw InputError("synthetic peak load must be >= 0");
    if (!(settings.latitude_factor >= 0.0 && settings.latitude_factor <= 1.0))
        throw InputError("latitude factor must lie in [0, 1]");

    constexpr double two_pi = 2.0 * std::numbers::pi;
    const auto shape = normalized_load_shape();
    const double lat = settings.latitude_factor;
    const auto hours = static_cast<std::size_t>(settings.days) * 24;

    AnnualDataset ds;
    ds.irradiance.reserve(hours);
    ds.ambient_temp.reserve(hours);
    ds.load.reserve(hours);

    Rng rng(settings.seed);
    double weather_state = 0.0;
    for (int d = 0; d < settings.days; ++d) {
        const double season = std::cos(two_pi * (d - 172) / 365.0);  // +1 near the June solstice
        const double day_length = 12.0 + 3.0 * lat * season;
        const double sunrise = 12.0 - day_length / 2.0;
        const double clear_sky_peak = 1000.0 * (1.0 + 0.15 * lat * season);

        // persistent cloudiness: AR(1) with bounded innovations
        weather_state = 0.6 * weather_state + rng.uniform(-0.5, 0.5);
        const double clearness = std::clamp(0.72 + 0.45 * weather_state, 0.15, 1.0);
        const double mean_temp = 27.0 + 8.0 * lat * season - 2.0 * (1.0 - clearness);

        for (int h = 0; h < 24; ++h) {
            const double t = h + 0.5;
            double ghi = 0.0;
            const double since_sunrise = t - sunrise;
            if (since_sunrise > 0.0 && since_sunrise < day_length) {
                const double noise = rng.uniform(0.85, 1.15);
                ghi = clear_sky_peak * clearness * std::sin(std::numbers::pi * since_sunrise / day_length) * noise;
                ghi = std::clamp(ghi, 0.0, 1100.0);
            }
            ds.irradiance.push_back(ghi);
            ds.ambient_temp.push_back(mean_temp + 4.0 * std::sin(two_pi * (t - 9.0) / 24.0) + rng.uniform(-0.5, 0.5));
            ds.load.push_back(settings.peak_load_kw * shape[static_cast<std::size_t>(h)] * rng.uniform(0.9, 1.1));
        }
    }
    return ds;
}

}  // namespace sspvb
