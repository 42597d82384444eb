#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <unistd.h>

#include "coldroute/io.hpp"
#include "coldroute/scenarios.hpp"

using namespace coldroute;

namespace {

Instance rich_instance() {
    scenarios::SyntheticConfig config;
    config.stop_count = 5;
    config.seed = 314;
    Instance instance = scenarios::generate_instance(config);
    scenarios::ScenarioGenConfig gen;
    gen.scenario_count = 4;
    gen.seed = 315;
    scenarios::attach_uncertainty(instance, gen);
    return instance;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("coldroute-io-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("instance json round-trip preserves every field") {
    const Instance original = rich_instance();
    const io::ordered_json j = io::instance_to_json(original);
    const Instance loaded = io::instance_from_json(j);

    CHECK(loaded.name == original.name);
    CHECK(loaded.network.travel_time_h == original.network.travel_time_h);
    CHECK(loaded.network.delay_h == original.network.delay_h);
    REQUIRE(loaded.network.distance_km.has_value());
    CHECK(*loaded.network.distance_km == *original.network.distance_km);

    REQUIRE(loaded.products.size() == original.products.size());
    for (std::size_t k = 0; k < original.products.size(); ++k) {
        CHECK(loaded.products[k].id == original.products[k].id);
        CHECK(loaded.products[k].ideal_temperature_c == original.products[k].ideal_temperature_c);
        CHECK(loaded.products[k].initial_shelf_life_h ==
              original.products[k].initial_shelf_life_h);
        CHECK(loaded.products[k].required_shelf_life_h ==
              original.products[k].required_shelf_life_h);
        CHECK(loaded.products[k].q10.q10 == original.products[k].q10.q10);
    }

    REQUIRE(loaded.bounds.has_value());
    CHECK(loaded.bounds->travel_time_max == original.bounds->travel_time_max);
    CHECK(loaded.bounds->delay_max == original.bounds->delay_max);
    REQUIRE(loaded.moments.has_value());
    CHECK(loaded.moments->delay_mean == original.moments->delay_mean);
    CHECK(loaded.moments->risk_aversion == original.moments->risk_aversion);
    REQUIRE(loaded.scenarios.size() == original.scenarios.size());
    for (std::size_t s = 0; s < original.scenarios.size(); ++s) {
        CHECK(loaded.scenarios[s].probability == original.scenarios[s].probability);
        CHECK(loaded.scenarios[s].delay_h == original.scenarios[s].delay_h);
        CHECK(loaded.scenarios[s].ambient_shift_c == original.scenarios[s].ambient_shift_c);
    }
    CHECK(loaded.adaptive.correction_factor == original.adaptive.correction_factor);
    CHECK(loaded.adaptive.big_m == original.adaptive.big_m);
}

TEST_CASE("save-load-save is byte-stable") {
    TempDir dir;
    const std::string path = (dir.path / "instance.json").string();
    const Instance original = rich_instance();

    io::save_instance(path, original);
    const std::string first = io::read_file(path);

    const Instance loaded = io::load_instance(path);
    io::save_instance(path, loaded);
    const std::string second = io::read_file(path);

    CHECK(first == second);
}

TEST_CASE("scenario batch files round-trip") {
    TempDir dir;
    const Instance instance = rich_instance();
    scenarios::ScenarioGenConfig gen;
    gen.scenario_count = 6;
    gen.seed = 42;
    const std::vector<Scenario> batch = scenarios::generate_scenarios(gen, instance);

    const std::string path = (dir.path / "scenarios.json").string();
    io::atomic_write_file(path, io::dump_canonical(io::scenario_batch_to_json(batch, gen)));
    const std::vector<Scenario> loaded = io::load_scenario_batch(path);

    REQUIRE(loaded.size() == batch.size());
    for (std::size_t s = 0; s < batch.size(); ++s) {
        CHECK(loaded[s].id == batch[s].id);
        CHECK(loaded[s].probability == batch[s].probability);
        CHECK(loaded[s].delay_h == batch[s].delay_h);
        CHECK(loaded[s].travel_time_h == batch[s].travel_time_h);
        CHECK(loaded[s].ambient_shift_c == batch[s].ambient_shift_c);
    }
}

TEST_CASE("csv formatting is fixed at six significant digits") {
    CHECK(io::format_sig(1.0) == "1");
    CHECK(io::format_sig(0.2) == "0.2");
    CHECK(io::format_sig(1.23456789) == "1.23457");
    CHECK(io::format_sig(123456.789) == "123457");
    CHECK(io::format_sig(0.000123456789) == "0.000123457");
}

TEST_CASE("sweep and comparison tables have documented headers") {
    analysis::SweepResult sweep;
    sweep.parameter_name = "beta";
    sweep.grid = {0.0, 0.1};
    sweep.mean_deviation_c = {25.5, 20.25};
    sweep.mean_final_shelf_life_days = {26.0, 27.5};
    sweep.replication_count = 2;
    const std::string text = io::sweep_to_csv(sweep);
    CHECK(text ==
          "beta,mean_deviation_c,mean_final_shelf_life_days\n"
          "0,25.5,26\n"
          "0.1,20.25,27.5\n");

    analysis::ModelComparison table;
    table.rows.push_back({models::ModelKind::deterministic, solver::SolveStatus::optimal, 9.31});
    table.rows.push_back({models::ModelKind::robust, solver::SolveStatus::infeasible, 0.0});
    const std::string comparison = io::comparison_to_csv(table);
    CHECK(comparison ==
          "model,status,total_hours\n"
          "deterministic,optimal,9.31\n"
          "robust,infeasible,\n");
}

TEST_CASE("run metadata captures config, seed, and artifact hashes") {
    TempDir dir;
    io::atomic_write_file((dir.path / "a.csv").string(), "x,y\n1,2\n");

    io::ordered_json config;
    config["instance"] = "demo.json";
    io::write_run_meta(dir.path.string(), "compare", config, 7, {"a.csv"});

    const io::ordered_json meta =
        io::ordered_json::parse(io::read_file((dir.path / "run_meta.json").string()));
    CHECK(meta.at("command") == "compare");
    CHECK(meta.at("seed") == 7);
    CHECK(meta.at("config").at("instance") == "demo.json");
    REQUIRE(meta.at("artifacts").size() == 1);
    CHECK(meta.at("artifacts")[0].at("file") == "a.csv");
    CHECK(meta.at("artifacts")[0].at("bytes") == 8);
    // FNV-1a of the exact bytes; stable across runs.
    CHECK(meta.at("artifacts")[0].at("fnv1a64").get<std::string>() ==
          [] {
              char hex[20];
              std::snprintf(hex, sizeof(hex), "%016llx",
                            static_cast<unsigned long long>(io::fnv1a64("x,y\n1,2\n")));
              return std::string(hex);
          }());
}

TEST_CASE("atomic write replaces content without leaving temp files") {
    TempDir dir;
    const std::string path = (dir.path / "file.txt").string();
    io::atomic_write_file(path, "first");
    io::atomic_write_file(path, "second");
    CHECK(io::read_file(path) == "second");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
}
