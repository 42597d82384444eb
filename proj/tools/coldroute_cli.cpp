// coldroute command-line tool: reproducible generation, solving, and
// analysis runs for perishable-produce routing experiments.
//
// Exit codes: 0 success, 1 model infeasible, 2 input/usage error.
//
// Every command writes its artifacts plus a run_meta.json describing the
// fully resolved configuration, the seed, and a content hash per artifact;
// a run is reproducible from that file alone. Output files are written
// atomically and never mutate inputs.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coldroute/coldroute.hpp"

namespace {

using namespace coldroute;
using io::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInputError = 2;

struct CommonOptions {
    std::string output_dir = ".";
    std::uint64_t seed = 0;
    std::vector<std::string> overrides;  // key=value pairs
    std::string config_path;             // optional bulk-override JSON
};

// Override resolution, lowest to highest precedence: compiled defaults,
// --config file entries, --set key=value pairs. Dedicated flags (parsed by
// CLI11) sit at flag level as well and win by being applied last.
class OverrideSet {
public:
    OverrideSet(const std::string& config_path, const std::vector<std::string>& pairs) {
        if (!config_path.empty()) {
            const ordered_json j = ordered_json::parse(io::read_file(config_path));
            for (auto it = j.begin(); it != j.end(); ++it) {
                values_[it.key()] = it.value().is_string()
                                        ? it.value().get<std::string>()
                                        : it.value().dump();
            }
        }
        for (const std::string& pair : pairs) {
            const std::size_t eq = pair.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("--set expects key=value, got '" + pair + "'");
            }
            values_[pair.substr(0, eq)] = pair.substr(eq + 1);
        }
    }

    void apply(const std::string& key, double& target) {
        auto it = values_.find(key);
        if (it != values_.end()) {
            target = std::stod(it->second);
            consumed_.insert(key);
        }
    }
    void apply(const std::string& key, int& target) {
        auto it = values_.find(key);
        if (it != values_.end()) {
            target = std::stoi(it->second);
            consumed_.insert(key);
        }
    }

    void finish() const {
        for (const auto& [key, value] : values_) {
            if (consumed_.find(key) == consumed_.end()) {
                throw std::invalid_argument("unknown override key '" + key + "'");
            }
        }
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> consumed_;
};

void apply_scenario_overrides(OverrideSet& overrides, scenarios::ScenarioGenConfig& config) {
    overrides.apply("delay_probability", config.delay_probability);
    overrides.apply("delay_mean_h", config.delay_mean_h);
    overrides.apply("delay_std_h", config.delay_std_h);
    overrides.apply("ambient_std_c", config.ambient_std_c);
    overrides.apply("scenario_count", config.scenario_count);
}

void apply_synthetic_overrides(OverrideSet& overrides, scenarios::SyntheticConfig& config) {
    overrides.apply("stop_count", config.stop_count);
    overrides.apply("distance_min_km", config.distance_min_km);
    overrides.apply("distance_max_km", config.distance_max_km);
    overrides.apply("vehicle_speed_kmh", config.vehicle_speed_kmh);
    overrides.apply("delay_min_h", config.delay_min_h);
    overrides.apply("delay_max_h", config.delay_max_h);
    overrides.apply("shelf_perturbation", config.shelf_perturbation);
}

void apply_adaptive_overrides(OverrideSet& overrides, AdaptiveParams& params) {
    overrides.apply("correction_factor", params.correction_factor);
    overrides.apply("deviation_penalty", params.deviation_penalty);
    overrides.apply("slack_penalty", params.slack_penalty);
    overrides.apply("big_m", params.big_m);
}

ordered_json scenario_config_json(const scenarios::ScenarioGenConfig& c) {
    ordered_json j;
    j["delay_probability"] = c.delay_probability;
    j["delay_mean_h"] = c.delay_mean_h;
    j["delay_std_h"] = c.delay_std_h;
    j["ambient_std_c"] = c.ambient_std_c;
    j["scenario_count"] = c.scenario_count;
    return j;
}

ordered_json adaptive_config_json(const AdaptiveParams& a) {
    ordered_json j;
    j["correction_factor"] = a.correction_factor;
    j["deviation_penalty"] = a.deviation_penalty;
    j["slack_penalty"] = a.slack_penalty;
    j["big_m"] = a.big_m;
    return j;
}

void ensure_output_dir(const std::string& dir) {
    std::filesystem::create_directories(dir);
}

Instance load_validated_instance(const std::string& path) {
    Instance instance = io::load_instance(path);
    const ValidationReport report = validate_instance(instance);
    for (const ValidationIssue& issue : report) {
        if (issue.severity == ValidationIssue::Severity::warning) {
            std::cerr << "warning: " << issue.path << ": " << issue.message << "\n";
        }
    }
    if (has_errors(report)) {
        std::string message = "instance '" + path + "' failed validation:";
        for (const ValidationIssue& issue : report) {
            if (issue.severity == ValidationIssue::Severity::error) {
                message += "\n  " + issue.path + ": " + issue.message;
            }
        }
        throw std::invalid_argument(message);
    }
    return instance;
}

std::vector<Scenario> resolve_scenarios(Instance& instance, const std::string& scenario_path,
                                        const scenarios::ScenarioGenConfig& config) {
    if (!scenario_path.empty()) {
        return io::load_scenario_batch(scenario_path);
    }
    if (!instance.scenarios.empty()) {
        return instance.scenarios;
    }
    return scenarios::generate_scenarios(config, instance);
}

std::vector<std::string> product_ids(const Instance& instance) {
    std::vector<std::string> ids;
    for (const ProductSpec& p : instance.products) {
        ids.push_back(p.id);
    }
    return ids;
}

std::vector<double> parse_grid(const std::string& text) {
    // Either "start:stop:step" or a comma list "0.25,0.5,1".
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double start = 0.0, stop = 0.0, step = 0.0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0.0) {
            throw std::invalid_argument("grid must be start:stop:step with step > 0");
        }
        for (double v = start; v <= stop + 1e-12; v += step) {
            grid.push_back(v);
        }
        return grid;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) {
            comma = text.size();
        }
        grid.push_back(std::stod(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_generate(const CommonOptions& common, int stops) {
    scenarios::SyntheticConfig config;
    config.stop_count = stops;
    config.seed = common.seed;
    OverrideSet overrides(common.config_path, common.overrides);
    apply_synthetic_overrides(overrides, config);
    overrides.finish();

    const Instance instance = scenarios::generate_instance(config);
    ensure_output_dir(common.output_dir);
    io::save_instance(common.output_dir + "/instance.json", instance);

    ordered_json resolved;
    resolved["stop_count"] = config.stop_count;
    resolved["distance_min_km"] = config.distance_min_km;
    resolved["distance_max_km"] = config.distance_max_km;
    resolved["vehicle_speed_kmh"] = config.vehicle_speed_kmh;
    resolved["delay_min_h"] = config.delay_min_h;
    resolved["delay_max_h"] = config.delay_max_h;
    resolved["shelf_perturbation"] = config.shelf_perturbation;
    io::write_run_meta(common.output_dir, "generate", resolved, common.seed, {"instance.json"});
    std::cout << "wrote " << common.output_dir << "/instance.json ("
              << instance.network.node_count() << " nodes, " << instance.products.size()
              << " products)\n";
    return kExitOk;
}

int cmd_scenarios(const CommonOptions& common, const std::string& instance_path, int count) {
    Instance instance = load_validated_instance(instance_path);
    scenarios::ScenarioGenConfig config;
    config.scenario_count = count;
    config.seed = common.seed;
    OverrideSet overrides(common.config_path, common.overrides);
    apply_scenario_overrides(overrides, config);
    overrides.finish();

    const std::vector<Scenario> batch = scenarios::generate_scenarios(config, instance);
    ensure_output_dir(common.output_dir);
    io::atomic_write_file(common.output_dir + "/scenarios.json",
                          io::dump_canonical(io::scenario_batch_to_json(batch, config)));

    ordered_json resolved = scenario_config_json(config);
    resolved["instance"] = instance_path;
    io::write_run_meta(common.output_dir, "scenarios", resolved, common.seed,
                       {"scenarios.json"});
    std::cout << "wrote " << common.output_dir << "/scenarios.json (" << batch.size()
              << " scenarios)\n";
    return kExitOk;
}

ordered_json route_json(const Route& route) {
    ordered_json j;
    j["order"] = route.order;
    j["leg_costs"] = route.leg_costs;
    j["total_time_h"] = route.total_time;
    return j;
}

ordered_json diagnostics_json(const models::ModelResult& result) {
    ordered_json rows = ordered_json::array();
    for (const models::ConstraintReport& c : result.diagnostics) {
        ordered_json r;
        r["product"] = c.product_id;
        r["lhs_h"] = c.lhs;
        r["bound_h"] = c.bound;
        r["slack_h"] = c.slack;
        rows.push_back(std::move(r));
    }
    return rows;
}

int cmd_solve(const CommonOptions& common, const std::string& instance_path,
              const std::string& model_name, const std::string& scenario_path,
              int scenario_index) {
    Instance instance = load_validated_instance(instance_path);
    OverrideSet overrides(common.config_path, common.overrides);
    apply_adaptive_overrides(overrides, instance.adaptive);
    overrides.finish();

    models::ModelResult result;
    if (model_name == "deterministic") {
        result = models::solve_deterministic(instance);
    } else if (model_name == "robust") {
        result = models::solve_robust(instance);
    } else if (model_name == "stochastic") {
        result = models::solve_stochastic(instance);
    } else if (model_name == "dro") {
        result = models::solve_dro(instance);
    } else if (model_name == "adaptive") {
        std::vector<Scenario> batch;
        if (!scenario_path.empty()) {
            batch = io::load_scenario_batch(scenario_path);
        } else if (!instance.scenarios.empty()) {
            batch = instance.scenarios;
        } else {
            throw std::invalid_argument(
                "adaptive model needs --scenarios or an instance with scenarios");
        }
        if (scenario_index < 0 || static_cast<std::size_t>(scenario_index) >= batch.size()) {
            throw std::invalid_argument("--scenario-index out of range");
        }
        result = models::solve_adaptive(instance, batch[scenario_index]);
    } else {
        throw std::invalid_argument("unknown model '" + model_name + "'");
    }

    ensure_output_dir(common.output_dir);
    ordered_json out;
    out["model"] = model_name;
    out["status"] =
        result.status == solver::SolveStatus::optimal ? "optimal" : "infeasible";
    if (result.status == solver::SolveStatus::optimal) {
        out["objective"] = result.objective;
        out["total_travel_hours"] = result.total_travel_hours;
        out["route"] = route_json(result.route);
    }
    out["diagnostics"] = diagnostics_json(result);
    if (result.trace) {
        ordered_json hops = ordered_json::array();
        for (const models::AdaptiveHop& hop : result.trace->hops) {
            ordered_json h;
            h["from"] = hop.from;
            h["to"] = hop.to;
            h["travel_h"] = hop.travel_h;
            h["hop_cost"] = hop.hop_cost;
            h["temperature_c"] = hop.temperature_c;
            h["deviation_c"] = hop.deviation_c;
            h["slack_c"] = hop.slack_c;
            hops.push_back(std::move(h));
        }
        ordered_json t;
        t["hops"] = std::move(hops);
        t["total_cost"] = result.trace->total_cost;
        t["total_travel_hours"] = result.trace->total_travel_hours;
        t["total_deviation_c"] = result.trace->total_deviation_c;
        t["total_slack_c"] = result.trace->total_slack_c;
        out["trace"] = std::move(t);
    }
    io::atomic_write_file(common.output_dir + "/solution.json", io::dump_canonical(out));

    ordered_json resolved;
    resolved["instance"] = instance_path;
    resolved["model"] = model_name;
    if (model_name == "adaptive") {
        resolved["scenario_index"] = scenario_index;
        if (!scenario_path.empty()) {
            resolved["scenarios"] = scenario_path;
        }
        resolved["adaptive"] = adaptive_config_json(instance.adaptive);
    }
    io::write_run_meta(common.output_dir, "solve", resolved, common.seed, {"solution.json"});

    if (result.status != solver::SolveStatus::optimal) {
        std::cerr << "model '" << model_name << "' is infeasible for this instance\n";
        return kExitInfeasible;
    }
    std::cout << model_name << " objective " << io::format_sig(result.objective) << " over route";
    for (int v : result.route.order) {
        std::cout << ' ' << v;
    }
    std::cout << '\n';
    return kExitOk;
}

int cmd_compare(const CommonOptions& common, const std::string& instance_path,
                const std::string& scenario_path, int eval_index) {
    Instance instance = load_validated_instance(instance_path);
    scenarios::ScenarioGenConfig config;
    config.seed = common.seed;
    OverrideSet overrides(common.config_path, common.overrides);
    apply_scenario_overrides(overrides, config);
    apply_adaptive_overrides(overrides, instance.adaptive);
    overrides.finish();

    // A compare run needs all uncertainty blocks; derive any that the
    // instance does not already carry.
    std::vector<Scenario> batch;
    if (!scenario_path.empty()) {
        batch = io::load_scenario_batch(scenario_path);
    } else if (!instance.scenarios.empty()) {
        batch = instance.scenarios;
    } else {
        if (!instance.bounds || !instance.moments) {
            scenarios::attach_uncertainty(instance, config);
            batch = instance.scenarios;
        } else {
            batch = scenarios::generate_scenarios(config, instance);
        }
    }
    if (!instance.bounds || !instance.moments) {
        Instance derived = instance;
        scenarios::attach_uncertainty(derived, config);
        if (!instance.bounds) {
            instance.bounds = derived.bounds;
        }
        if (!instance.moments) {
            instance.moments = derived.moments;
        }
    }

    const analysis::ModelComparison table = analysis::compare_models(instance, batch, eval_index);
    ensure_output_dir(common.output_dir);
    io::atomic_write_file(common.output_dir + "/comparison.csv", io::comparison_to_csv(table));

    ordered_json resolved = scenario_config_json(config);
    resolved["instance"] = instance_path;
    resolved["evaluation_scenario_index"] = eval_index;
    io::write_run_meta(common.output_dir, "compare", resolved, common.seed, {"comparison.csv"});

    std::cout << io::comparison_to_csv(table);
    return kExitOk;
}

int cmd_pareto(const CommonOptions& common, const std::string& instance_path, int count) {
    Instance instance = load_validated_instance(instance_path);
    scenarios::ScenarioGenConfig config;
    config.scenario_count = count;
    config.seed = common.seed;
    OverrideSet overrides(common.config_path, common.overrides);
    apply_scenario_overrides(overrides, config);
    apply_adaptive_overrides(overrides, instance.adaptive);
    overrides.finish();

    const std::vector<Scenario> batch = resolve_scenarios(instance, "", config);
    const analysis::ScenarioComparison comparison =
        analysis::run_scenario_comparison(instance, batch);

    std::vector<analysis::ScenarioOutcome> adaptive_outcomes;
    std::string outcomes_csv =
        "scenario_id,model,trip_hours,freshness_deviation_c,slack_total_c\n";
    for (const analysis::ScenarioComparisonEntry& entry : comparison.entries) {
        adaptive_outcomes.push_back(entry.adaptive);
        outcomes_csv += io::csv_line({std::to_string(entry.scenario_id), "deterministic",
                                      io::format_sig(entry.deterministic.trip_hours),
                                      io::format_sig(entry.deterministic.freshness_deviation_c),
                                      io::format_sig(entry.deterministic.slack_total_c)});
        outcomes_csv += io::csv_line({std::to_string(entry.scenario_id), "adaptive",
                                      io::format_sig(entry.adaptive.trip_hours),
                                      io::format_sig(entry.adaptive.freshness_deviation_c),
                                      io::format_sig(entry.adaptive.slack_total_c)});
    }
    const std::vector<analysis::ScenarioOutcome> frontier =
        analysis::pareto_frontier(adaptive_outcomes);

    ensure_output_dir(common.output_dir);
    io::atomic_write_file(common.output_dir + "/scenario_outcomes.csv", outcomes_csv);
    io::atomic_write_file(common.output_dir + "/pareto.csv",
                          io::outcomes_to_csv(frontier, product_ids(instance)));

    ordered_json resolved = scenario_config_json(config);
    resolved["instance"] = instance_path;
    resolved["adaptive"] = adaptive_config_json(instance.adaptive);
    io::write_run_meta(common.output_dir, "pareto", resolved, common.seed,
                       {"scenario_outcomes.csv", "pareto.csv"});

    std::cout << "frontier holds " << frontier.size() << " of " << adaptive_outcomes.size()
              << " scenario outcomes";
    if (comparison.mean_deviation_reduction_pct) {
        std::cout << "; mean deviation reduction "
                  << io::format_sig(*comparison.mean_deviation_reduction_pct) << "%";
    }
    std::cout << '\n';
    return kExitOk;
}

int cmd_sweep(const CommonOptions& common, const std::string& instance_path,
              const std::string& param, const std::string& grid_text, int replications,
              double beta_fixed, int stops) {
    Instance instance;
    if (!instance_path.empty()) {
        instance = load_validated_instance(instance_path);
    } else {
        instance = scenarios::make_sensitivity_instance(stops, common.seed);
    }
    scenarios::ScenarioGenConfig noise;
    noise.seed = common.seed;
    OverrideSet overrides(common.config_path, common.overrides);
    apply_scenario_overrides(overrides, noise);
    apply_adaptive_overrides(overrides, instance.adaptive);
    overrides.finish();

    const std::vector<double> grid = parse_grid(grid_text);
    analysis::SweepResult sweep;
    std::string artifact;
    if (param == "beta") {
        sweep = analysis::sweep_beta(instance, grid, replications, noise);
        artifact = "sweep_beta.csv";
    } else if (param == "tau") {
        sweep = analysis::sweep_tau(instance, grid, replications, noise, beta_fixed);
        artifact = "sweep_tau.csv";
    } else {
        throw std::invalid_argument("--param must be 'beta' or 'tau'");
    }

    ensure_output_dir(common.output_dir);
    io::atomic_write_file(common.output_dir + "/" + artifact, io::sweep_to_csv(sweep));

    ordered_json resolved = scenario_config_json(noise);
    resolved["param"] = param;
    resolved["grid"] = grid;
    resolved["replications"] = replications;
    if (param == "tau") {
        resolved["beta_fixed"] = beta_fixed;
    }
    if (!instance_path.empty()) {
        resolved["instance"] = instance_path;
    } else {
        resolved["stops"] = stops;
    }
    io::write_run_meta(common.output_dir, "sweep", resolved, common.seed, {artifact});

    std::cout << "wrote " << common.output_dir << "/" << artifact << " (" << grid.size()
              << " grid points x " << replications << " replications)\n";
    return kExitOk;
}

int cmd_ingest(const CommonOptions& common, const std::string& input_path,
               const std::string& trip_start, double ref_life_days, double ref_temp_c,
               double q10) {
    const ingest::SensorLog log = ingest::parse_sensor_csv(io::read_file(input_path));
    const std::int64_t start = trip_start.empty() ? log.records.front().timestamp_s
                                                  : ingest::parse_iso8601_utc(trip_start);
    const kinetics::TemperatureProfile profile = ingest::log_to_profile(log, start);

    const kinetics::ShelfLifeRef ref = kinetics::ShelfLifeRef::from_celsius(ref_life_days,
                                                                            ref_temp_c);
    const kinetics::Q10Params params{q10};
    const double mean_temp = kinetics::time_weighted_mean_temperature(profile);
    const double shelf_days = kinetics::shelf_life_over_profile(ref, params, profile);

    ensure_output_dir(common.output_dir);
    std::string profile_csv = "time_h,temperature_c\n";
    for (const auto& [t, temp] : profile.samples) {
        profile_csv += io::csv_line({io::format_sig(t), io::format_sig(temp)});
    }
    io::atomic_write_file(common.output_dir + "/profile.csv", profile_csv);

    ordered_json report;
    report["tag_id"] = log.tag_id;
    report["records"] = log.records.size();
    report["span_hours"] = profile.samples.back().first - profile.samples.front().first;
    report["mean_temperature_c"] = mean_temp;
    report["reference_life_days"] = ref_life_days;
    report["reference_temperature_c"] = ref_temp_c;
    report["q10"] = q10;
    report["estimated_shelf_life_days"] = shelf_days;
    io::atomic_write_file(common.output_dir + "/shelf_report.json", io::dump_canonical(report));

    ordered_json resolved;
    resolved["input"] = input_path;
    resolved["trip_start"] = trip_start.empty() ? "first-record" : trip_start;
    resolved["reference_life_days"] = ref_life_days;
    resolved["reference_temperature_c"] = ref_temp_c;
    resolved["q10"] = q10;
    io::write_run_meta(common.output_dir, "ingest", resolved, common.seed,
                       {"profile.csv", "shelf_report.json"});

    std::cout << "tag " << log.tag_id << ": " << log.records.size() << " records, mean "
              << io::format_sig(mean_temp) << " degC, estimated shelf life "
              << io::format_sig(shelf_days) << " days\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coldroute: optimization models for perishable produce routing"};
    app.require_subcommand(1);

    CommonOptions common;

    std::string instance_path;
    std::string scenario_path;
    std::string model_name = "deterministic";
    std::string param = "beta";
    std::string grid_text = "0:0.5:0.1";
    std::string trip_start;
    std::string input_path;
    int stops = 10;
    int count = 50;
    int scenario_index = 0;
    int replications = 200;
    double beta_fixed = 0.5;
    double ref_life_days = 30.0;
    double ref_temp_c = 5.0;
    double q10 = 2.0;

    const auto add_common = [&](CLI::App* cmd, bool seed_required) {
        cmd->add_option("--out", common.output_dir, "Output directory")
            ->capture_default_str();
        auto* seed = cmd->add_option("--seed", common.seed, "Random seed (64-bit)");
        if (seed_required) {
            seed->required();
        }
        cmd->add_option("--set", common.overrides,
                        "Override a generator/controller field, key=value (repeatable)");
        cmd->add_option("--config", common.config_path,
                        "JSON file of overrides (flags win over file entries)");
    };

    CLI::App* generate = app.add_subcommand("generate", "Generate a synthetic instance");
    generate->add_option("--stops", stops, "Delivery stop count")->capture_default_str();
    add_common(generate, true);

    CLI::App* scen = app.add_subcommand("scenarios", "Generate a disruption scenario batch");
    scen->add_option("--instance", instance_path, "Instance JSON")->required();
    scen->add_option("--count", count, "Scenario count")->capture_default_str();
    add_common(scen, true);

    CLI::App* solve = app.add_subcommand("solve", "Solve one model on an instance");
    solve->add_option("--instance", instance_path, "Instance JSON")->required();
    solve->add_option("--model", model_name,
                      "deterministic|robust|stochastic|dro|adaptive")
        ->capture_default_str();
    solve->add_option("--scenarios", scenario_path, "Scenario batch JSON (adaptive)");
    solve->add_option("--scenario-index", scenario_index, "Scenario to run (adaptive)")
        ->capture_default_str();
    add_common(solve, false);

    CLI::App* compare = app.add_subcommand("compare", "Run all five models side by side");
    compare->add_option("--instance", instance_path, "Instance JSON")->required();
    compare->add_option("--scenarios", scenario_path, "Scenario batch JSON");
    compare->add_option("--eval-index", scenario_index,
                        "Scenario the adaptive row is evaluated on")
        ->capture_default_str();
    add_common(compare, false);

    CLI::App* pareto = app.add_subcommand(
        "pareto", "Scenario sweep: outcomes, frontier, deterministic-vs-adaptive");
    pareto->add_option("--instance", instance_path, "Instance JSON")->required();
    pareto->add_option("--count", count, "Scenario count")->capture_default_str();
    add_common(pareto, true);

    CLI::App* sweep = app.add_subcommand("sweep", "Sensitivity sweep over beta or tau");
    sweep->add_option("--instance", instance_path,
                      "Instance JSON (default: built-in sensitivity instance)");
    sweep->add_option("--param", param, "beta|tau")->capture_default_str();
    sweep->add_option("--grid", grid_text, "start:stop:step or comma list")
        ->capture_default_str();
    sweep->add_option("--reps", replications, "Replications per grid point")
        ->capture_default_str();
    sweep->add_option("--beta-fixed", beta_fixed, "Fixed beta for the tau sweep")
        ->capture_default_str();
    sweep->add_option("--stops", stops, "Stops for the built-in instance")
        ->capture_default_str();
    add_common(sweep, true);

    CLI::App* ingest_cmd = app.add_subcommand("ingest", "Parse a temperature-logger CSV export");
    ingest_cmd->add_option("--input", input_path, "Sensor CSV file")->required();
    ingest_cmd->add_option("--trip-start", trip_start,
                           "Trip start (ISO-8601 UTC; default: first record)");
    ingest_cmd->add_option("--ref-life-days", ref_life_days, "Reference shelf life [days]")
        ->capture_default_str();
    ingest_cmd->add_option("--ref-temp", ref_temp_c, "Reference temperature [degC]")
        ->capture_default_str();
    ingest_cmd->add_option("--q10", q10, "Q10 coefficient")->capture_default_str();
    add_common(ingest_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (generate->parsed()) {
            return cmd_generate(common, stops);
        }
        if (scen->parsed()) {
            return cmd_scenarios(common, instance_path, count);
        }
        if (solve->parsed()) {
            return cmd_solve(common, instance_path, model_name, scenario_path, scenario_index);
        }
        if (compare->parsed()) {
            return cmd_compare(common, instance_path, scenario_path, scenario_index);
        }
        if (pareto->parsed()) {
            return cmd_pareto(common, instance_path, count);
        }
        if (sweep->parsed()) {
            return cmd_sweep(common, instance_path, param, grid_text, replications, beta_fixed,
                             stops);
        }
        if (ingest_cmd->parsed()) {
            return cmd_ingest(common, input_path, trip_start, ref_life_days, ref_temp_c, q10);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
