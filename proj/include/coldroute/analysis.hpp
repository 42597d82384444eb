#ifndef COLDROUTE_ANALYSIS_HPP
#define COLDROUTE_ANALYSIS_HPP

/**
 * @file analysis.hpp
 * @brief Experiment analytics: Pareto frontier extraction, model
 *        comparison, deterministic-vs-adaptive scenario comparison,
 *        shelf-life comparison, and sensitivity sweeps over the correction
 *        factor beta and the ambient fluctuation severity.
 *
 * Sweeps use common random numbers: one scenario batch is generated per
 * sweep and reused at every grid point, so curves differ only through the
 * parameter under study.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coldroute/domain.hpp"
#include "coldroute/kinetics.hpp"
#include "coldroute/models.hpp"
#include "coldroute/scenarios.hpp"

namespace coldroute::analysis {

/// Bi-objective outcome of one scenario run: total trip time versus total
/// freshness deviation (both minimized).
struct ScenarioOutcome {
    int scenario_id = 0;
    double trip_hours = 0.0;
    double freshness_deviation_c = 0.0;  ///< sum over stops and products of D_ik
    double slack_total_c = 0.0;
    std::vector<double> per_product_mean_temp_c;
};

/// Non-dominated subset under (trip_hours, freshness_deviation)
/// minimization, sorted by trip_hours ascending; along the sort the
/// deviations are strictly decreasing (up to exact duplicates).
inline std::vector<ScenarioOutcome> pareto_frontier(const std::vector<ScenarioOutcome>& outcomes) {
    if (outcomes.empty()) {
        throw std::invalid_argument("pareto_frontier: at least one outcome required");
    }
    std::vector<const ScenarioOutcome*> sorted;
    sorted.reserve(outcomes.size());
    for (const ScenarioOutcome& o : outcomes) {
        sorted.push_back(&o);
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ScenarioOutcome* a, const ScenarioOutcome* b) {
                         if (a->trip_hours != b->trip_hours) {
                             return a->trip_hours < b->trip_hours;
                         }
                         return a->freshness_deviation_c < b->freshness_deviation_c;
                     });

    std::vector<ScenarioOutcome> frontier;
    double best_deviation = std::numeric_limits<double>::infinity();
    double best_hours = std::numeric_limits<double>::infinity();
    for (const ScenarioOutcome* o : sorted) {
        if (o->freshness_deviation_c < best_deviation) {
            frontier.push_back(*o);
            best_deviation = o->freshness_deviation_c;
            best_hours = o->trip_hours;
        } else if (o->freshness_deviation_c == best_deviation && o->trip_hours == best_hours) {
            frontier.push_back(*o);  // exact duplicate: neither dominates the other
        }
    }
    return frontier;
}

struct ModelComparisonRow {
    models::ModelKind kind = models::ModelKind::deterministic;
    solver::SolveStatus status = solver::SolveStatus::infeasible;
    double total_hours = std::numeric_limits<double>::quiet_NaN();
};

struct ModelComparison {
    std::vector<ModelComparisonRow> rows;

    double hours_or_infinity(models::ModelKind kind) const {
        for (const ModelComparisonRow& row : rows) {
            if (row.kind == kind) {
                return row.status == solver::SolveStatus::optimal
                           ? row.total_hours
                           : std::numeric_limits<double>::infinity();
            }
        }
        return std::numeric_limits<double>::infinity();
    }
};

/// Runs all five models on one instance. Static models report the hours
/// their own objectives define (nominal for deterministic/stochastic/DRO,
/// worst-case for robust); the adaptive row reports realized travel hours
/// under the designated evaluation scenario. Per-model infeasibility lands
/// in the row status instead of failing the comparison.
inline ModelComparison compare_models(const Instance& instance,
                                      const std::vector<Scenario>& scenario_batch,
                                      int evaluation_scenario_index = 0) {
    if (scenario_batch.empty()) {
        throw std::invalid_argument("compare_models: at least one scenario required");
    }
    if (evaluation_scenario_index < 0 ||
        static_cast<std::size_t>(evaluation_scenario_index) >= scenario_batch.size()) {
        throw std::invalid_argument("compare_models: evaluation scenario index out of range");
    }

    Instance working = instance;
    working.scenarios = scenario_batch;

    ModelComparison table;
    const auto add_static = [&table](const models::ModelResult& r) {
        table.rows.push_back(ModelComparisonRow{r.kind, r.status, r.total_travel_hours});
    };
    add_static(models::solve_deterministic(working));
    add_static(models::solve_robust(working));
    add_static(models::solve_stochastic(working));
    add_static(models::solve_dro(working));

    const models::ModelResult adaptive =
        models::solve_adaptive(working, scenario_batch[evaluation_scenario_index]);
    table.rows.push_back(
        ModelComparisonRow{adaptive.kind, adaptive.status, adaptive.total_travel_hours});
    return table;
}

struct ScenarioComparisonEntry {
    int scenario_id = 0;
    ScenarioOutcome deterministic;
    ScenarioOutcome adaptive;
};

struct ScenarioComparison {
    std::vector<ScenarioComparisonEntry> entries;
    double mean_deterministic_deviation_c = 0.0;
    double mean_adaptive_deviation_c = 0.0;
    /// Percentage reduction of mean deviation; absent when the deterministic
    /// deviation is zero (reduction undefined).
    std::optional<double> mean_deviation_reduction_pct;
    double mean_travel_increase_h = 0.0;
    double fraction_adaptive_travel_geq = 0.0;
};

inline ScenarioOutcome outcome_from_trace(int scenario_id, const models::AdaptiveTrace& trace,
                                          const Instance& instance) {
    ScenarioOutcome o;
    o.scenario_id = scenario_id;
    o.trip_hours = trace.total_travel_hours;
    o.freshness_deviation_c = trace.total_deviation_c;
    o.slack_total_c = trace.total_slack_c;
    const std::size_t product_count = instance.products.size();
    o.per_product_mean_temp_c.assign(product_count, 0.0);
    int stops = 0;
    for (const models::AdaptiveHop& hop : trace.hops) {
        if (hop.to == 0) {
            continue;
        }
        ++stops;
        for (std::size_t k = 0; k < product_count; ++k) {
            o.per_product_mean_temp_c[k] += hop.temperature_c[k];
        }
    }
    for (std::size_t k = 0; k < product_count; ++k) {
        o.per_product_mean_temp_c[k] = stops > 0
                                           ? o.per_product_mean_temp_c[k] / stops
                                           : instance.products[k].ideal_temperature_c;
    }
    return o;
}

/// Scenario-based comparison between the deterministic plan (fixed optimal
/// route, no temperature feedback) and the adaptive controller. The
/// deterministic route is evaluated with raw temperature drift
/// (apply_correction off); the adaptive model re-solves every scenario.
inline ScenarioComparison run_scenario_comparison(const Instance& instance,
                                                  const std::vector<Scenario>& scenario_batch) {
    if (scenario_batch.empty()) {
        throw std::invalid_argument("run_scenario_comparison: at least one scenario required");
    }
    const models::ModelResult det = models::solve_deterministic(instance);
    if (det.status != solver::SolveStatus::optimal) {
        throw std::domain_error("run_scenario_comparison: deterministic model infeasible");
    }

    ScenarioComparison comparison;
    double det_dev_sum = 0.0;
    double adp_dev_sum = 0.0;
    double travel_increase_sum = 0.0;
    int adaptive_not_faster = 0;

    for (const Scenario& scenario : scenario_batch) {
        const models::RouteEvaluation det_eval =
            models::evaluate_route_under_scenario(det.route, instance, scenario, false);

        ScenarioComparisonEntry entry;
        entry.scenario_id = scenario.id;
        entry.deterministic.scenario_id = scenario.id;
        entry.deterministic.trip_hours = det_eval.travel_hours;
        entry.deterministic.freshness_deviation_c = det_eval.total_deviation_c;
        entry.deterministic.per_product_mean_temp_c = det_eval.mean_temperature_c;

        const models::ModelResult adaptive = models::solve_adaptive(instance, scenario);
        entry.adaptive = outcome_from_trace(scenario.id, *adaptive.trace, instance);

        det_dev_sum += entry.deterministic.freshness_deviation_c;
        adp_dev_sum += entry.adaptive.freshness_deviation_c;
        travel_increase_sum += entry.adaptive.trip_hours - entry.deterministic.trip_hours;
        if (entry.adaptive.trip_hours >= entry.deterministic.trip_hours - 1e-9) {
            ++adaptive_not_faster;
        }
        comparison.entries.push_back(std::move(entry));
    }

    const double count = static_cast<double>(comparison.entries.size());
    comparison.mean_deterministic_deviation_c = det_dev_sum / count;
    comparison.mean_adaptive_deviation_c = adp_dev_sum / count;
    if (comparison.mean_deterministic_deviation_c > 0.0) {
        comparison.mean_deviation_reduction_pct =
            100.0 * (1.0 - comparison.mean_adaptive_deviation_c /
                               comparison.mean_deterministic_deviation_c);
    }
    comparison.mean_travel_increase_h = travel_increase_sum / count;
    comparison.fraction_adaptive_travel_geq = adaptive_not_faster / count;
    return comparison;
}

/// Shelf life implied by a mean transit temperature for one product, in
/// days, through the Q10 law anchored at the product's ideal temperature.
inline double shelf_life_days_at_mean_temp(const ProductSpec& product, double mean_temp_c) {
    const kinetics::ShelfLifeRef ref =
        kinetics::ShelfLifeRef::from_celsius(product.initial_shelf_life_h,
                                             product.ideal_temperature_c);
    return kinetics::q10_shelf_life(ref, product.q10, mean_temp_c) / 24.0;
}

struct ShelfLifeComparison {
    double adaptive_mean_temp_c = 0.0;
    double adaptive_shelf_days = 0.0;
    double deterministic_mean_temp_c = 0.0;
    double deterministic_shelf_days = 0.0;
};

/// The single-product shelf-life experiment: mean transit temperature of
/// the adaptive run versus the uncorrected deterministic route under one
/// scenario, both converted to shelf life via the Q10 law.
inline ShelfLifeComparison shelf_life_comparison(const Instance& instance,
                                                 const Scenario& scenario,
                                                 const ProductSpec& product) {
    std::size_t product_index = instance.products.size();
    for (std::size_t k = 0; k < instance.products.size(); ++k) {
        if (instance.products[k].id == product.id) {
            product_index = k;
            break;
        }
    }
    if (product_index == instance.products.size()) {
        throw std::invalid_argument("shelf_life_comparison: product not part of the instance");
    }

    const models::ModelResult det = models::solve_deterministic(instance);
    if (det.status != solver::SolveStatus::optimal) {
        throw std::domain_error("shelf_life_comparison: deterministic model infeasible");
    }
    const models::RouteEvaluation det_eval =
        models::evaluate_route_under_scenario(det.route, instance, scenario, false);
    const models::ModelResult adaptive = models::solve_adaptive(instance, scenario);
    const ScenarioOutcome adaptive_outcome =
        outcome_from_trace(scenario.id, *adaptive.trace, instance);

    ShelfLifeComparison result;
    result.adaptive_mean_temp_c = adaptive_outcome.per_product_mean_temp_c[product_index];
    result.deterministic_mean_temp_c = det_eval.mean_temperature_c[product_index];
    result.adaptive_shelf_days = shelf_life_days_at_mean_temp(product, result.adaptive_mean_temp_c);
    result.deterministic_shelf_days =
        shelf_life_days_at_mean_temp(product, result.deterministic_mean_temp_c);
    return result;
}

/// One sensitivity sweep: parameter grid, mean total deviation per grid
/// point, and the shelf life implied by each grid point's mean per-stop
/// deviation (treating deviation as warm-side drift, so the shelf-life
/// curve is exactly the inverted image of the deviation curve).
struct SweepResult {
    std::string parameter_name;
    std::vector<double> grid;
    std::vector<double> mean_deviation_c;
    std::vector<double> mean_final_shelf_life_days;
    int replication_count = 0;
};

namespace detail {

inline void require_increasing_grid(const std::vector<double>& grid, const char* op) {
    if (grid.empty()) {
        throw std::invalid_argument(std::string(op) + ": grid must be non-empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument(std::string(op) + ": grid must be strictly increasing");
        }
    }
}

inline double shelf_life_from_mean_deviation(const Instance& instance, double mean_deviation_c) {
    const ProductSpec& p = instance.products.front();
    const int stops = instance.network.node_count() - 1;
    const double per_stop = stops > 0 ? mean_deviation_c / stops : 0.0;
    return shelf_life_days_at_mean_temp(p, p.ideal_temperature_c + per_stop);
}

}  // namespace detail

/// Sensitivity of the adaptive controller to the correction factor beta.
/// Every grid point re-runs the controller over the same `replications`
/// scenario draws (common random numbers).
inline SweepResult sweep_beta(const Instance& instance, const std::vector<double>& grid,
                              int replications, const scenarios::ScenarioGenConfig& noise) {
    detail::require_increasing_grid(grid, "sweep_beta");
    for (double b : grid) {
        if (!(b >= 0.0 && b <= 1.0)) {
            throw std::domain_error("sweep_beta: grid values must lie in [0, 1]");
        }
    }
    if (replications < 1) {
        throw std::invalid_argument("sweep_beta: replications must be >= 1");
    }

    scenarios::ScenarioGenConfig batch_config = noise;
    batch_config.scenario_count = replications;
    const std::vector<Scenario> batch = scenarios::generate_scenarios(batch_config, instance);

    SweepResult result;
    result.parameter_name = "beta";
    result.grid = grid;
    result.replication_count = replications;
    for (double beta : grid) {
        Instance working = instance;
        working.adaptive.correction_factor = beta;
        double deviation_sum = 0.0;
        for (const Scenario& scenario : batch) {
            const models::ModelResult r = models::solve_adaptive(working, scenario);
            deviation_sum += r.trace->total_deviation_c;
        }
        const double mean_dev = deviation_sum / replications;
        result.mean_deviation_c.push_back(mean_dev);
        result.mean_final_shelf_life_days.push_back(
            detail::shelf_life_from_mean_deviation(instance, mean_dev));
    }
    return result;
}

/// Sensitivity to the ambient fluctuation severity sigma_tau, with beta
/// held fixed. The scenario substreams do not depend on sigma, so the same
/// standard draws are rescaled at every grid point (common random numbers).
inline SweepResult sweep_tau(const Instance& instance, const std::vector<double>& grid,
                             int replications, const scenarios::ScenarioGenConfig& noise,
                             double beta_fixed = 0.5) {
    detail::require_increasing_grid(grid, "sweep_tau");
    for (double s : grid) {
        if (!(s >= 0.0)) {
            throw std::domain_error("sweep_tau: grid values must be >= 0");
        }
    }
    if (replications < 1) {
        throw std::invalid_argument("sweep_tau: replications must be >= 1");
    }

    SweepResult result;
    result.parameter_name = "tau_std";
    result.grid = grid;
    result.replication_count = replications;

    Instance working = instance;
    working.adaptive.correction_factor = beta_fixed;

    for (double sigma : grid) {
        scenarios::ScenarioGenConfig batch_config = noise;
        batch_config.scenario_count = replications;
        batch_config.ambient_std_c = sigma;
        const std::vector<Scenario> batch = scenarios::generate_scenarios(batch_config, instance);
        double deviation_sum = 0.0;
        for (const Scenario& scenario : batch) {
            const models::ModelResult r = models::solve_adaptive(working, scenario);
            deviation_sum += r.trace->total_deviation_c;
        }
        const double mean_dev = deviation_sum / replications;
        result.mean_deviation_c.push_back(mean_dev);
        result.mean_final_shelf_life_days.push_back(
            detail::shelf_life_from_mean_deviation(instance, mean_dev));
    }
    return result;
}

}  // namespace coldroute::analysis

#endif  // COLDROUTE_ANALYSIS_HPP
