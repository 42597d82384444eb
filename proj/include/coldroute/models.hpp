#ifndef COLDROUTE_MODELS_HPP
#define COLDROUTE_MODELS_HPP

/**
 * @file models.hpp
 * @brief The five route-planning formulations. The four static models
 *        (deterministic, robust, stochastic, distributionally robust)
 *        compile an Instance into a RouteAdditiveProblem and solve it
 *        exactly; the adaptive model executes a rolling-horizon loop with
 *        per-hop temperature feedback.
 *
 * Static model structure, all sharing the Hamiltonian-tour feasible set:
 *  - deterministic: arc cost t_ij + delta_i; per-product transit-time bound
 *    L_k - R_k with the same weights.
 *  - robust: worst-case parameters T_max,ij + delta_max,i in both the
 *    objective and the shelf constraint (box uncertainty set).
 *  - stochastic: nominal objective; shelf constraint on the expected
 *    transit time sum_s p_s (delta_i^s + t_ij^s).
 *  - DRO (moment ambiguity): nominal objective; shelf constraint weight
 *    (mu_delta_i + mu_T_ij) + z (var_delta_i + var_T_ij), using x^2 = x for
 *    binary arc variables, with bound demand_k * L_k - R_k (demand defaults
 *    to 1, collapsing to L_k - R_k).
 *
 * All solve operations are pure functions of (instance, scenario).
 */

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coldroute/domain.hpp"
#include "coldroute/solver.hpp"

namespace coldroute::models {

enum class ModelKind { deterministic, robust, stochastic, dro, adaptive };

inline const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::deterministic: return "deterministic";
        case ModelKind::robust: return "robust";
        case ModelKind::stochastic: return "stochastic";
        case ModelKind::dro: return "dro";
        case ModelKind::adaptive: return "adaptive";
    }
    return "unknown";
}

/// Per-product shelf-constraint slack on the chosen route.
struct ConstraintReport {
    std::string product_id;
    double lhs = 0.0;    ///< accumulated constraint weight along the route
    double bound = 0.0;
    double slack = 0.0;  ///< bound - lhs
};

/// One hop of the adaptive controller: chosen arc, post-hop product
/// temperatures, deviations from ideal, slack used by clamping, and the
/// cost charged for the hop.
struct AdaptiveHop {
    int from = 0;
    int to = 0;
    double travel_h = 0.0;  ///< T_ij + delta_i under the realized scenario
    std::vector<double> temperature_c;
    std::vector<double> deviation_c;
    std::vector<double> slack_c;
    double hop_cost = 0.0;
};

struct AdaptiveTrace {
    std::vector<AdaptiveHop> hops;
    double total_cost = 0.0;
    double total_travel_hours = 0.0;
    double total_deviation_c = 0.0;
    double total_slack_c = 0.0;
};

struct ModelResult {
    ModelKind kind = ModelKind::deterministic;
    solver::SolveStatus status = solver::SolveStatus::infeasible;
    Route route;
    double objective = std::numeric_limits<double>::quiet_NaN();
    double total_travel_hours = std::numeric_limits<double>::quiet_NaN();
    std::optional<AdaptiveTrace> trace;
    std::vector<ConstraintReport> diagnostics;
};

namespace detail {

inline void require_network(const Instance& instance, const char* op) {
    if (instance.network.node_count() < 2) {
        throw std::domain_error(std::string(op) + ": network with at least 2 nodes required");
    }
    if (instance.products.empty()) {
        throw std::domain_error(std::string(op) + ": at least one product required");
    }
}

/// Arc weight t(i,j) + delta(i): the delay of the departure node is charged
/// to every arc leaving it, so each node's delay is counted once per tour.
inline Matrix departure_weight(const Matrix& travel, const std::vector<double>& delay) {
    const std::size_t n = travel.rows();
    Matrix w = Matrix::square(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                w(i, j) = travel(i, j) + delay[i];
            }
        }
    }
    return w;
}

inline ModelResult solve_static(ModelKind kind, const Instance& instance, const Matrix& arc_cost,
                                const Matrix& constraint_weight,
                                const std::vector<double>& bounds) {
    solver::RouteAdditiveProblem problem;
    problem.arc_cost = arc_cost;
    for (double b : bounds) {
        problem.side_constraints.push_back(solver::SideConstraint{constraint_weight, b});
    }

    const solver::SolveResult solved = solver::solve_exact(problem);

    ModelResult result;
    result.kind = kind;
    result.status = solved.status;
    if (solved.status != solver::SolveStatus::optimal) {
        return result;
    }
    result.route = solved.route;
    result.objective = solved.objective;
    result.total_travel_hours = solved.objective;
    for (std::size_t k = 0; k < instance.products.size(); ++k) {
        double lhs = 0.0;
        for (std::size_t m = 0; m + 1 < result.route.order.size(); ++m) {
            lhs += constraint_weight(result.route.order[m], result.route.order[m + 1]);
        }
        result.diagnostics.push_back(
            ConstraintReport{instance.products[k].id, lhs, bounds[k], bounds[k] - lhs});
    }
    return result;
}

inline const Matrix& scenario_travel(const Instance& instance, const Scenario& scenario) {
    return scenario.travel_time_h.empty() ? instance.network.travel_time_h
                                          : scenario.travel_time_h;
}

}  // namespace detail

/// Baseline model under perfect information: nominal travel times and
/// delays in both the objective and the per-product shelf window
/// constraints. An over-tight window yields an infeasible status, not an
/// error.
inline ModelResult solve_deterministic(const Instance& instance) {
    detail::require_network(instance, "solve_deterministic");
    const Matrix w = detail::departure_weight(instance.network.travel_time_h,
                                              instance.network.delay_h);
    std::vector<double> bounds;
    bounds.reserve(instance.products.size());
    for (const ProductSpec& p : instance.products) {
        bounds.push_back(p.shelf_window_h());
    }
    return detail::solve_static(ModelKind::deterministic, instance, w, w, bounds);
}

/// Worst-case model over the box uncertainty set: maximum travel times and
/// delays replace the nominal values in both objective and constraints.
inline ModelResult solve_robust(const Instance& instance) {
    detail::require_network(instance, "solve_robust");
    if (!instance.bounds) {
        throw std::domain_error("solve_robust: uncertainty bounds required");
    }
    const Matrix w = detail::departure_weight(instance.bounds->travel_time_max,
                                              instance.bounds->delay_max);
    std::vector<double> bounds;
    bounds.reserve(instance.products.size());
    for (const ProductSpec& p : instance.products) {
        bounds.push_back(p.shelf_window_h());
    }
    return detail::solve_static(ModelKind::robust, instance, w, w, bounds);
}

/// Scenario-based model: nominal objective, shelf constraint on the
/// probability-weighted transit time across all scenarios.
inline ModelResult solve_stochastic(const Instance& instance) {
    detail::require_network(instance, "solve_stochastic");
    if (instance.scenarios.empty()) {
        throw std::domain_error("solve_stochastic: scenarios required");
    }
    double probability_sum = 0.0;
    for (const Scenario& s : instance.scenarios) {
        probability_sum += s.probability;
    }
    if (std::abs(probability_sum - 1.0) > 1e-9) {
        throw std::domain_error("solve_stochastic: scenario probabilities must sum to 1");
    }

    const std::size_t n = instance.network.travel_time_h.rows();
    Matrix expected = Matrix::square(n);
    for (const Scenario& s : instance.scenarios) {
        const Matrix& travel = detail::scenario_travel(instance, s);
        if (s.delay_h.size() != n || travel.rows() != n) {
            throw std::domain_error("solve_stochastic: scenario shape mismatch");
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    expected(i, j) += s.probability * (s.delay_h[i] + travel(i, j));
                }
            }
        }
    }

    const Matrix objective = detail::departure_weight(instance.network.travel_time_h,
                                                      instance.network.delay_h);
    std::vector<double> bounds;
    bounds.reserve(instance.products.size());
    for (const ProductSpec& p : instance.products) {
        bounds.push_back(p.shelf_window_h());
    }
    return detail::solve_static(ModelKind::stochastic, instance, objective, expected, bounds);
}

/// Moment-ambiguity model: nominal objective, shelf constraint combining
/// the means and z-scaled variances of delays and travel times.
inline ModelResult solve_dro(const Instance& instance) {
    detail::require_network(instance, "solve_dro");
    if (!instance.moments) {
        throw std::domain_error("solve_dro: moment information required");
    }
    const MomentInfo& m = *instance.moments;
    const std::size_t n = instance.network.travel_time_h.rows();
    if (m.travel_mean.rows() != n || m.delay_mean.size() != n) {
        throw std::domain_error("solve_dro: moment shape mismatch");
    }

    Matrix weight = Matrix::square(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                weight(i, j) = (m.delay_mean[i] + m.travel_mean(i, j)) +
                               m.risk_aversion * (m.delay_variance[i] + m.travel_variance(i, j));
            }
        }
    }

    const Matrix objective = detail::departure_weight(instance.network.travel_time_h,
                                                      instance.network.delay_h);
    std::vector<double> bounds;
    bounds.reserve(instance.products.size());
    for (const ProductSpec& p : instance.products) {
        bounds.push_back(p.demand * p.initial_shelf_life_h - p.required_shelf_life_h);
    }
    return detail::solve_static(ModelKind::dro, instance, objective, weight, bounds);
}

namespace detail {

struct TemperatureStep {
    double stored_c = 0.0;
    double deviation_c = 0.0;
    double slack_c = 0.0;
};

/// One application of the feedback update
///   t' = t + tau + beta * (theta - t),
/// clamped to the product's allowable band. Slack records by how far the
/// unclamped value left the band, which is the minimal slack a penalized
/// optimizer would select.
inline TemperatureStep update_temperature(double current_c, double tau_c,
                                          const ProductSpec& product, double beta) {
    const double raw = current_c + tau_c + beta * (product.ideal_temperature_c - current_c);
    TemperatureStep step;
    if (raw > product.max_temperature_c) {
        step.stored_c = product.max_temperature_c;
        step.slack_c = raw - product.max_temperature_c;
    } else if (raw < product.min_temperature_c) {
        step.stored_c = product.min_temperature_c;
        step.slack_c = product.min_temperature_c - raw;
    } else {
        step.stored_c = raw;
    }
    step.deviation_c = std::abs(step.stored_c - product.ideal_temperature_c);
    return step;
}

}  // namespace detail

/// Rolling-horizon adaptive optimization with temperature feedback.
///
/// Phase 0 initializes every product at its ideal temperature. While
/// unvisited stops remain, the controller scores each candidate stop j by
///   (T_ij + delta_i) + lambda_1 * sum_k D_jk + lambda_2 * sum_k S_jk
/// under the candidate temperature update, commits the cheapest (ties to
/// the lowest node index), and propagates the temperature state. The final
/// leg returns to the warehouse, charging travel only. Travel times and
/// delays are the scenario's realized values; ambient shifts tau_jk come
/// from the scenario as well.
inline ModelResult solve_adaptive(const Instance& instance, const Scenario& scenario) {
    const int n = instance.network.node_count();
    const std::size_t product_count = instance.products.size();
    if (product_count == 0) {
        throw std::domain_error("solve_adaptive: at least one product required");
    }

    ModelResult result;
    result.kind = ModelKind::adaptive;
    result.status = solver::SolveStatus::optimal;

    AdaptiveTrace trace;

    if (n <= 1) {
        // Degenerate network: nothing to visit.
        result.route.order = {0};
        result.objective = 0.0;
        result.total_travel_hours = 0.0;
        result.trace = std::move(trace);
        return result;
    }

    const Matrix& travel = detail::scenario_travel(instance, scenario);
    const std::vector<double>& delay =
        scenario.delay_h.empty() ? instance.network.delay_h : scenario.delay_h;
    if (travel.rows() != static_cast<std::size_t>(n) || delay.size() != static_cast<std::size_t>(n)) {
        throw std::domain_error("solve_adaptive: scenario shape mismatch");
    }
    if (scenario.ambient_shift_c.rows() != static_cast<std::size_t>(n) ||
        scenario.ambient_shift_c.cols() != product_count) {
        throw std::domain_error("solve_adaptive: ambient shift must be nodes x products");
    }

    const AdaptiveParams& params = instance.adaptive;

    std::vector<double> temperature(product_count);
    for (std::size_t k = 0; k < product_count; ++k) {
        temperature[k] = instance.products[k].ideal_temperature_c;
    }

    std::vector<bool> visited(n, false);
    visited[0] = true;
    int current = 0;
    int remaining = n - 1;
    std::vector<int> order{0};

    while (remaining > 0) {
        int best_node = -1;
        double best_cost = std::numeric_limits<double>::infinity();
        std::vector<detail::TemperatureStep> best_steps;

        std::vector<detail::TemperatureStep> steps(product_count);
        for (int j = 1; j < n; ++j) {
            if (visited[j]) {
                continue;
            }
            double deviation_sum = 0.0;
            double slack_sum = 0.0;
            for (std::size_t k = 0; k < product_count; ++k) {
                steps[k] = detail::update_temperature(temperature[k],
                                                      scenario.ambient_shift_c(j, k),
                                                      instance.products[k],
                                                      params.correction_factor);
                deviation_sum += steps[k].deviation_c;
                slack_sum += steps[k].slack_c;
            }
            const double hop_cost = (travel(current, j) + delay[current]) +
                                    params.deviation_penalty * deviation_sum +
                                    params.slack_penalty * slack_sum;
            if (hop_cost < best_cost) {
                best_cost = hop_cost;
                best_node = j;
                best_steps = steps;
            }
        }

        AdaptiveHop hop;
        hop.from = current;
        hop.to = best_node;
        hop.travel_h = travel(current, best_node) + delay[current];
        hop.hop_cost = best_cost;
        hop.temperature_c.resize(product_count);
        hop.deviation_c.resize(product_count);
        hop.slack_c.resize(product_count);
        for (std::size_t k = 0; k < product_count; ++k) {
            temperature[k] = best_steps[k].stored_c;
            hop.temperature_c[k] = best_steps[k].stored_c;
            hop.deviation_c[k] = best_steps[k].deviation_c;
            hop.slack_c[k] = best_steps[k].slack_c;
            trace.total_deviation_c += best_steps[k].deviation_c;
            trace.total_slack_c += best_steps[k].slack_c;
        }
        trace.total_cost += hop.hop_cost;
        trace.total_travel_hours += hop.travel_h;
        trace.hops.push_back(std::move(hop));

        visited[best_node] = true;
        order.push_back(best_node);
        current = best_node;
        --remaining;
    }

    // Return to warehouse: travel cost only, no delivery, no new temperatures.
    AdaptiveHop final_hop;
    final_hop.from = current;
    final_hop.to = 0;
    final_hop.travel_h = travel(current, 0) + delay[current];
    final_hop.hop_cost = final_hop.travel_h;
    final_hop.temperature_c = temperature;
    final_hop.deviation_c.assign(product_count, 0.0);
    final_hop.slack_c.assign(product_count, 0.0);
    trace.total_cost += final_hop.hop_cost;
    trace.total_travel_hours += final_hop.travel_h;
    trace.hops.push_back(std::move(final_hop));
    order.push_back(0);

    Route route;
    route.order = order;
    route.sequencing.assign(n, 0);
    for (std::size_t m = 1; m + 1 < order.size(); ++m) {
        route.sequencing[order[m]] = static_cast<int>(m);
    }
    for (const AdaptiveHop& hop : trace.hops) {
        route.leg_costs.push_back(hop.travel_h);
        route.total_time += hop.travel_h;
    }

    result.route = std::move(route);
    result.objective = trace.total_cost;
    result.total_travel_hours = trace.total_travel_hours;
    result.trace = std::move(trace);
    return result;
}

/// Result of walking a fixed route through one scenario.
struct RouteEvaluation {
    double travel_hours = 0.0;
    double total_deviation_c = 0.0;
    std::vector<double> mean_temperature_c;  ///< per product, over delivery stops
};

/// Walks a fixed route through a scenario, accumulating realized travel
/// time and per-stop temperatures. With apply_correction off the
/// temperature drifts freely (t' = t + tau), modeling a vehicle with no
/// feedback control; with it on, the adaptive update
/// t' = t + tau + beta (theta - t) is applied instead. Neither mode clamps:
/// this evaluates a fixed plan, it does not re-optimize.
inline RouteEvaluation evaluate_route_under_scenario(const Route& route, const Instance& instance,
                                                     const Scenario& scenario,
                                                     bool apply_correction) {
    const int n = instance.network.node_count();
    const std::size_t product_count = instance.products.size();
    const Matrix& travel = detail::scenario_travel(instance, scenario);
    const std::vector<double>& delay =
        scenario.delay_h.empty() ? instance.network.delay_h : scenario.delay_h;
    if (travel.rows() != static_cast<std::size_t>(n) || delay.size() != static_cast<std::size_t>(n) ||
        scenario.ambient_shift_c.rows() != static_cast<std::size_t>(n) ||
        scenario.ambient_shift_c.cols() != product_count) {
        throw std::invalid_argument("evaluate_route_under_scenario: dimension mismatch");
    }
    if (!route_is_valid_tour(route, n)) {
        throw std::invalid_argument("evaluate_route_under_scenario: route is not a valid tour");
    }

    const double beta = instance.adaptive.correction_factor;

    RouteEvaluation eval;
    std::vector<double> temperature(product_count);
    std::vector<double> temperature_sum(product_count, 0.0);
    for (std::size_t k = 0; k < product_count; ++k) {
        temperature[k] = instance.products[k].ideal_temperature_c;
    }

    int stops = 0;
    for (std::size_t m = 0; m + 1 < route.order.size(); ++m) {
        const int a = route.order[m];
        const int b = route.order[m + 1];
        eval.travel_hours += travel(a, b) + delay[a];
        if (b == 0) {
            continue;  // return leg, no delivery
        }
        ++stops;
        for (std::size_t k = 0; k < product_count; ++k) {
            const double theta = instance.products[k].ideal_temperature_c;
            const double tau = scenario.ambient_shift_c(b, k);
            const double corrected = apply_correction
                                         ? temperature[k] + tau + beta * (theta - temperature[k])
                                         : temperature[k] + tau;
            temperature[k] = corrected;
            eval.total_deviation_c += std::abs(corrected - theta);
            temperature_sum[k] += corrected;
        }
    }

    eval.mean_temperature_c.resize(product_count);
    for (std::size_t k = 0; k < product_count; ++k) {
        eval.mean_temperature_c[k] = stops > 0 ? temperature_sum[k] / stops
                                               : instance.products[k].ideal_temperature_c;
    }
    return eval;
}

/// Post-hoc check of the adaptive temperature constraints over the FULL arc
/// set, big-M deactivation included. For a selected arc (i, j) the stored
/// temperature must match the feedback update within the recorded slack;
/// for every unselected arc the inequalities must hold with the M
/// relaxation. Also re-verifies the temperature bounds and that each
/// recorded deviation equals |t_jk - theta_k|.
inline bool trace_satisfies_temperature_constraints(const AdaptiveTrace& trace,
                                                    const Instance& instance,
                                                    const Scenario& scenario) {
    const std::size_t n = static_cast<std::size_t>(instance.network.node_count());
    const std::size_t product_count = instance.products.size();
    const double beta = instance.adaptive.correction_factor;
    const double big_m = instance.adaptive.big_m;
    const double tol = 1e-9;

    // Temperature state at every node, plus the slack granted at each node
    // and the set of selected arcs.
    std::vector<std::vector<double>> node_temp(n, std::vector<double>(product_count));
    std::vector<std::vector<double>> node_slack(n, std::vector<double>(product_count, 0.0));
    for (std::size_t k = 0; k < product_count; ++k) {
        node_temp[0][k] = instance.products[k].ideal_temperature_c;
    }
    std::vector<std::vector<bool>> selected(n, std::vector<bool>(n, false));
    for (const AdaptiveHop& hop : trace.hops) {
        selected[hop.from][hop.to] = true;
        if (hop.to != 0) {
            node_temp[hop.to] = hop.temperature_c;
            node_slack[hop.to] = hop.slack_c;
            for (std::size_t k = 0; k < product_count; ++k) {
                const ProductSpec& p = instance.products[k];
                if (hop.temperature_c[k] < p.min_temperature_c - tol ||
                    hop.temperature_c[k] > p.max_temperature_c + tol) {
                    return false;
                }
                if (std::abs(hop.deviation_c[k] -
                             std::abs(hop.temperature_c[k] - p.ideal_temperature_c)) > tol) {
                    return false;
                }
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 1; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const double relax = selected[i][j] ? 0.0 : big_m;
            for (std::size_t k = 0; k < product_count; ++k) {
                const double theta = instance.products[k].ideal_temperature_c;
                const double predicted = node_temp[i][k] + scenario.ambient_shift_c(j, k) +
                                         beta * (theta - node_temp[i][k]);
                const double stored = node_temp[j][k];
                const double slack = node_slack[j][k];
                if (stored < predicted - relax - slack - tol ||
                    stored > predicted + relax + slack + tol) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace coldroute::models

#endif  // COLDROUTE_MODELS_HPP
