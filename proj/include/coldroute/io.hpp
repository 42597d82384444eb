#ifndef COLDROUTE_IO_HPP
#define COLDROUTE_IO_HPP

/**
 * @file io.hpp
 * @brief Instance/scenario JSON serialization, tidy CSV emission, and
 *        reproducibility metadata.
 *
 * The instance schema (all matrices row-major arrays of arrays, times in
 * hours, temperatures in degC):
 *
 * {
 *   "name": "...",
 *   "network": { "travel_time_h": [[..]], "delay_h": [..], "distance_km": [[..]]? },
 *   "products": [ { "id", "name", "ideal_temperature_c", "min_temperature_c",
 *                   "max_temperature_c", "initial_shelf_life_h",
 *                   "required_shelf_life_h", "demand", "q10" } ],
 *   "bounds":   { "travel_time_min_h", "travel_time_max_h",
 *                 "delay_min_h", "delay_max_h" }?,
 *   "moments":  { "travel_mean_h", "travel_variance_h2", "delay_mean_h",
 *                 "delay_variance_h2", "risk_aversion" }?,
 *   "scenarios": [ { "id", "probability", "delay_h", "travel_time_h",
 *                    "ambient_shift_c" } ]?,
 *   "adaptive": { "correction_factor", "deviation_penalty", "slack_penalty", "big_m" }
 * }
 *
 * Serialization is canonical: fixed key order, two-space indent, shortest
 * round-trip float formatting. load -> save -> load is byte-stable.
 */

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coldroute/analysis.hpp"
#include "coldroute/domain.hpp"
#include "coldroute/matrix.hpp"
#include "coldroute/scenarios.hpp"

namespace coldroute::io {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

/// Formats a double with 6 significant digits; the fixed CSV float format.
inline std::string format_sig(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

/// FNV-1a 64-bit content hash, reported in run metadata.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file for reading: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes a file atomically (temp file in the same directory, then rename),
/// so interrupted runs never leave half-written artifacts.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open file for writing: " + tmp);
        }
        out << content;
        if (!out) {
            throw std::runtime_error("failed writing: " + tmp);
        }
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Matrix / vector <-> JSON
// ---------------------------------------------------------------------------

inline ordered_json matrix_to_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const ordered_json& j, const char* what) {
    if (!j.is_array() || j.empty()) {
        throw std::runtime_error(std::string("instance schema: ") + what +
                                 " must be a non-empty array of arrays");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j.front().size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            throw std::runtime_error(std::string("instance schema: ragged matrix in ") + what);
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(i, c) = j[i][c].get<double>();
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Instance <-> JSON
// ---------------------------------------------------------------------------

inline ordered_json instance_to_json(const Instance& instance) {
    ordered_json j;
    j["name"] = instance.name;

    ordered_json network;
    network["travel_time_h"] = matrix_to_json(instance.network.travel_time_h);
    network["delay_h"] = instance.network.delay_h;
    if (instance.network.distance_km) {
        network["distance_km"] = matrix_to_json(*instance.network.distance_km);
    }
    j["network"] = std::move(network);

    ordered_json products = ordered_json::array();
    for (const ProductSpec& p : instance.products) {
        ordered_json pj;
        pj["id"] = p.id;
        pj["name"] = p.name;
        pj["ideal_temperature_c"] = p.ideal_temperature_c;
        pj["min_temperature_c"] = p.min_temperature_c;
        pj["max_temperature_c"] = p.max_temperature_c;
        pj["initial_shelf_life_h"] = p.initial_shelf_life_h;
        pj["required_shelf_life_h"] = p.required_shelf_life_h;
        pj["demand"] = p.demand;
        pj["q10"] = p.q10.q10;
        products.push_back(std::move(pj));
    }
    j["products"] = std::move(products);

    if (instance.bounds) {
        ordered_json b;
        b["travel_time_min_h"] = matrix_to_json(instance.bounds->travel_time_min);
        b["travel_time_max_h"] = matrix_to_json(instance.bounds->travel_time_max);
        b["delay_min_h"] = instance.bounds->delay_min;
        b["delay_max_h"] = instance.bounds->delay_max;
        j["bounds"] = std::move(b);
    }
    if (instance.moments) {
        ordered_json m;
        m["travel_mean_h"] = matrix_to_json(instance.moments->travel_mean);
        m["travel_variance_h2"] = matrix_to_json(instance.moments->travel_variance);
        m["delay_mean_h"] = instance.moments->delay_mean;
        m["delay_variance_h2"] = instance.moments->delay_variance;
        m["risk_aversion"] = instance.moments->risk_aversion;
        j["moments"] = std::move(m);
    }
    if (!instance.scenarios.empty()) {
        ordered_json scenarios = ordered_json::array();
        for (const Scenario& s : instance.scenarios) {
            ordered_json sj;
            sj["id"] = s.id;
            sj["probability"] = s.probability;
            sj["delay_h"] = s.delay_h;
            sj["travel_time_h"] = matrix_to_json(s.travel_time_h);
            sj["ambient_shift_c"] = matrix_to_json(s.ambient_shift_c);
            scenarios.push_back(std::move(sj));
        }
        j["scenarios"] = std::move(scenarios);
    }

    ordered_json a;
    a["correction_factor"] = instance.adaptive.correction_factor;
    a["deviation_penalty"] = instance.adaptive.deviation_penalty;
    a["slack_penalty"] = instance.adaptive.slack_penalty;
    a["big_m"] = instance.adaptive.big_m;
    j["adaptive"] = std::move(a);

    return j;
}

inline Scenario scenario_from_json(const ordered_json& sj) {
    Scenario s;
    s.id = sj.at("id").get<int>();
    s.probability = sj.at("probability").get<double>();
    s.delay_h = sj.at("delay_h").get<std::vector<double>>();
    s.travel_time_h = matrix_from_json(sj.at("travel_time_h"), "scenario.travel_time_h");
    s.ambient_shift_c = matrix_from_json(sj.at("ambient_shift_c"), "scenario.ambient_shift_c");
    return s;
}

inline Instance instance_from_json(const ordered_json& j) {
    Instance instance;
    instance.name = j.value("name", "");

    const ordered_json& network = j.at("network");
    instance.network.travel_time_h =
        matrix_from_json(network.at("travel_time_h"), "network.travel_time_h");
    instance.network.delay_h = network.at("delay_h").get<std::vector<double>>();
    if (network.contains("distance_km")) {
        instance.network.distance_km =
            matrix_from_json(network.at("distance_km"), "network.distance_km");
    }

    for (const ordered_json& pj : j.at("products")) {
        ProductSpec p;
        p.id = pj.at("id").get<std::string>();
        p.name = pj.value("name", p.id);
        p.ideal_temperature_c = pj.at("ideal_temperature_c").get<double>();
        p.min_temperature_c = pj.at("min_temperature_c").get<double>();
        p.max_temperature_c = pj.at("max_temperature_c").get<double>();
        p.initial_shelf_life_h = pj.at("initial_shelf_life_h").get<double>();
        p.required_shelf_life_h = pj.at("required_shelf_life_h").get<double>();
        p.demand = pj.value("demand", 1.0);
        p.q10.q10 = pj.value("q10", 2.0);
        instance.products.push_back(std::move(p));
    }

    if (j.contains("bounds")) {
        UncertaintyBounds b;
        b.travel_time_min = matrix_from_json(j["bounds"].at("travel_time_min_h"),
                                             "bounds.travel_time_min_h");
        b.travel_time_max = matrix_from_json(j["bounds"].at("travel_time_max_h"),
                                             "bounds.travel_time_max_h");
        b.delay_min = j["bounds"].at("delay_min_h").get<std::vector<double>>();
        b.delay_max = j["bounds"].at("delay_max_h").get<std::vector<double>>();
        instance.bounds = std::move(b);
    }
    if (j.contains("moments")) {
        MomentInfo m;
        m.travel_mean = matrix_from_json(j["moments"].at("travel_mean_h"),
                                         "moments.travel_mean_h");
        m.travel_variance = matrix_from_json(j["moments"].at("travel_variance_h2"),
                                             "moments.travel_variance_h2");
        m.delay_mean = j["moments"].at("delay_mean_h").get<std::vector<double>>();
        m.delay_variance = j["moments"].at("delay_variance_h2").get<std::vector<double>>();
        m.risk_aversion = j["moments"].at("risk_aversion").get<double>();
        instance.moments = std::move(m);
    }
    if (j.contains("scenarios")) {
        for (const ordered_json& sj : j["scenarios"]) {
            instance.scenarios.push_back(scenario_from_json(sj));
        }
    }
    if (j.contains("adaptive")) {
        const ordered_json& a = j["adaptive"];
        instance.adaptive.correction_factor = a.value("correction_factor", 0.5);
        instance.adaptive.deviation_penalty = a.value("deviation_penalty", 1.0);
        instance.adaptive.slack_penalty = a.value("slack_penalty", 1.0);
        instance.adaptive.big_m = a.value("big_m", 100.0);
    }
    return instance;
}

inline std::string dump_canonical(const ordered_json& j) { return j.dump(2) + "\n"; }

inline void save_instance(const std::string& path, const Instance& instance) {
    atomic_write_file(path, dump_canonical(instance_to_json(instance)));
}

inline Instance load_instance(const std::string& path) {
    const ordered_json j = ordered_json::parse(read_file(path));
    return instance_from_json(j);
}

// ---------------------------------------------------------------------------
// Scenario batch files
// ---------------------------------------------------------------------------

inline ordered_json scenario_batch_to_json(const std::vector<Scenario>& batch,
                                           const scenarios::ScenarioGenConfig& config) {
    ordered_json j;
    j["seed"] = config.seed;
    ordered_json c;
    c["delay_probability"] = config.delay_probability;
    c["delay_mean_h"] = config.delay_mean_h;
    c["delay_std_h"] = config.delay_std_h;
    c["ambient_std_c"] = config.ambient_std_c;
    c["scenario_count"] = config.scenario_count;
    j["config"] = std::move(c);
    ordered_json arr = ordered_json::array();
    for (const Scenario& s : batch) {
        ordered_json sj;
        sj["id"] = s.id;
        sj["probability"] = s.probability;
        sj["delay_h"] = s.delay_h;
        sj["travel_time_h"] = matrix_to_json(s.travel_time_h);
        sj["ambient_shift_c"] = matrix_to_json(s.ambient_shift_c);
        arr.push_back(std::move(sj));
    }
    j["scenarios"] = std::move(arr);
    return j;
}

inline std::vector<Scenario> load_scenario_batch(const std::string& path) {
    const ordered_json j = ordered_json::parse(read_file(path));
    std::vector<Scenario> batch;
    for (const ordered_json& sj : j.at("scenarios")) {
        batch.push_back(scenario_from_json(sj));
    }
    return batch;
}

// ---------------------------------------------------------------------------
// Tidy CSV tables
// ---------------------------------------------------------------------------

inline std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            line += ',';
        }
        line += fields[i];
    }
    line += '\n';
    return line;
}

inline std::string outcomes_to_csv(const std::vector<analysis::ScenarioOutcome>& outcomes,
                                   const std::vector<std::string>& product_ids,
                                   const std::string& label = "") {
    std::string csv = "scenario_id";
    if (!label.empty()) {
        csv += ",model";
    }
    csv += ",trip_hours,freshness_deviation_c,slack_total_c";
    for (const std::string& id : product_ids) {
        csv += ",mean_temp_c_" + id;
    }
    csv += '\n';
    for (const analysis::ScenarioOutcome& o : outcomes) {
        std::vector<std::string> fields;
        fields.push_back(std::to_string(o.scenario_id));
        if (!label.empty()) {
            fields.push_back(label);
        }
        fields.push_back(format_sig(o.trip_hours));
        fields.push_back(format_sig(o.freshness_deviation_c));
        fields.push_back(format_sig(o.slack_total_c));
        for (double t : o.per_product_mean_temp_c) {
            fields.push_back(format_sig(t));
        }
        csv += csv_line(fields);
    }
    return csv;
}

inline std::string comparison_to_csv(const analysis::ModelComparison& table) {
    std::string csv = "model,status,total_hours\n";
    for (const analysis::ModelComparisonRow& row : table.rows) {
        const bool ok = row.status == solver::SolveStatus::optimal;
        csv += csv_line({models::to_string(row.kind), ok ? "optimal" : "infeasible",
                         ok ? format_sig(row.total_hours) : ""});
    }
    return csv;
}

inline std::string sweep_to_csv(const analysis::SweepResult& sweep) {
    std::string csv = sweep.parameter_name + ",mean_deviation_c,mean_final_shelf_life_days\n";
    for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
        csv += csv_line({format_sig(sweep.grid[i]), format_sig(sweep.mean_deviation_c[i]),
                         format_sig(sweep.mean_final_shelf_life_days[i])});
    }
    return csv;
}

// ---------------------------------------------------------------------------
// Run metadata
// ---------------------------------------------------------------------------

/// Writes run_meta.json describing one CLI run: command, fully resolved
/// configuration, seed, and a content hash per artifact. Contains nothing
/// volatile (no timestamps), so identical runs produce identical metadata.
inline void write_run_meta(const std::string& output_dir, const std::string& command,
                           const ordered_json& resolved_config, std::uint64_t seed,
                           const std::vector<std::string>& artifact_names) {
    ordered_json meta;
    meta["command"] = command;
    meta["seed"] = seed;
    meta["config"] = resolved_config;
    ordered_json artifacts = ordered_json::array();
    for (const std::string& name : artifact_names) {
        const std::string content = read_file(output_dir + "/" + name);
        ordered_json a;
        a["file"] = name;
        a["bytes"] = content.size();
        char hex[20];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(content)));
        a["fnv1a64"] = hex;
        artifacts.push_back(std::move(a));
    }
    meta["artifacts"] = std::move(artifacts);
    atomic_write_file(output_dir + "/run_meta.json", dump_canonical(meta));
}

}  // namespace coldroute::io

#endif  // COLDROUTE_IO_HPP
