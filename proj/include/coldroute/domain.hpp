#ifndef COLDROUTE_DOMAIN_HPP
#define COLDROUTE_DOMAIN_HPP

/**
 * @file domain.hpp
 * @brief Shared data model: products, delivery network, instance, route and
 *        cost attribution used by every optimization formulation.
 *
 * All types are plain values, immutable by convention after construction,
 * and freely shareable across concurrent evaluators.
 */

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coldroute/kinetics.hpp"
#include "coldroute/matrix.hpp"

namespace coldroute {

/// A perishable product's kinetic and thermal parameters.
struct ProductSpec {
    std::string id;
    std::string name;
    double ideal_temperature_c = 0.0;    ///< theta_k
    double min_temperature_c = 0.0;      ///< theta_k^min
    double max_temperature_c = 0.0;      ///< theta_k^max
    double initial_shelf_life_h = 0.0;   ///< L_k, shelf life at dispatch
    double required_shelf_life_h = 0.0;  ///< R_k, minimum remaining at delivery
    double demand = 1.0;                 ///< Q_k [units]
    kinetics::Q10Params q10{2.0};

    /// The in-transit time budget L_k - R_k.
    double shelf_window_h() const { return initial_shelf_life_h - required_shelf_life_h; }
};

/// The delivery network. Node 0 is the warehouse; every other node is a
/// delivery stop. Travel times are directed (the matrix need not be
/// symmetric); delays are incurred when departing a node.
struct Network {
    Matrix travel_time_h;               ///< t_ij [hours], zero diagonal
    std::vector<double> delay_h;        ///< delta_i [hours]
    std::optional<Matrix> distance_km;  ///< d_ij, carried when known

    int node_count() const { return static_cast<int>(travel_time_h.rows()); }
};

/// Box uncertainty set: elementwise intervals around the nominal travel
/// times and delays.
struct UncertaintyBounds {
    Matrix travel_time_min;
    Matrix travel_time_max;
    std::vector<double> delay_min;
    std::vector<double> delay_max;
};

/// Moment description of the uncertain parameters (means and variances of
/// travel times and delays) plus the risk-aversion multiplier z.
struct MomentInfo {
    Matrix travel_mean;
    Matrix travel_variance;
    std::vector<double> delay_mean;
    std::vector<double> delay_variance;
    double risk_aversion = 0.0;  ///< z >= 0
};

/// One realization of stochastic delays and ambient temperature shifts.
struct Scenario {
    int id = 0;
    double probability = 0.0;
    std::vector<double> delay_h;  ///< realized delta_i^s per node
    Matrix travel_time_h;         ///< realized t_ij^s
    Matrix ambient_shift_c;       ///< tau[node][product] [degC]
};

/// Tuning of the rolling-horizon adaptive controller.
struct AdaptiveParams {
    double correction_factor = 0.5;  ///< beta in [0,1]
    double deviation_penalty = 1.0;  ///< lambda_1
    double slack_penalty = 1.0;      ///< lambda_2
    double big_m = 100.0;            ///< M [degC], used by the post-hoc constraint checker
};

/// The full problem instance shared by all five models. Optional blocks are
/// present exactly when the corresponding model is runnable.
struct Instance {
    std::string name;
    Network network;
    std::vector<ProductSpec> products;
    std::optional<UncertaintyBounds> bounds;
    std::optional<MomentInfo> moments;
    std::vector<Scenario> scenarios;
    AdaptiveParams adaptive;
};

/// An ordered tour starting and ending at the warehouse, with per-leg cost
/// attribution and MTZ sequencing indices for post-hoc verification.
struct Route {
    std::vector<int> order;         ///< 0, v1, ..., v_{n-1}, 0
    std::vector<double> leg_costs;  ///< cost attributed to each traversed arc
    double total_time = 0.0;        ///< sum of leg_costs
    std::vector<int> sequencing;    ///< u_i: visit index of node i (u_0 = 0)
};

struct ValidationIssue {
    enum class Severity { error, warning };
    Severity severity = Severity::error;
    std::string path;     ///< field path, e.g. "products[2].required_shelf_life"
    std::string message;
};

using ValidationReport = std::vector<ValidationIssue>;

namespace detail {

inline void add_issue(ValidationReport& report, std::string path, std::string message,
                      ValidationIssue::Severity severity = ValidationIssue::Severity::error) {
    report.push_back(ValidationIssue{severity, std::move(path), std::move(message)});
}

}  // namespace detail

/// Checks every structural invariant of an instance and returns all
/// violations with their field paths. Empty report means well-formed.
inline ValidationReport validate_instance(const Instance& instance) {
    using detail::add_issue;
    ValidationReport report;

    const Network& net = instance.network;
    const std::size_t n = net.travel_time_h.rows();

    if (!net.travel_time_h.is_square()) {
        add_issue(report, "network.travel_time", "matrix must be square");
        return report;  // sizes unusable; nothing below is meaningful
    }
    if (n < 2) {
        add_issue(report, "network.node_count", "at least 2 nodes required (warehouse + 1 stop)");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (net.travel_time_h(i, i) != 0.0) {
            add_issue(report, "network.travel_time[" + std::to_string(i) + "][" + std::to_string(i) + "]",
                      "diagonal must be zero");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (net.travel_time_h(i, j) < 0.0) {
                add_issue(report, "network.travel_time[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                          "travel time must be non-negative");
            }
        }
    }
    if (net.delay_h.size() != n) {
        add_issue(report, "network.delay", "delay vector size must equal node count");
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (net.delay_h[i] < 0.0) {
                add_issue(report, "network.delay[" + std::to_string(i) + "]", "delay must be non-negative");
            }
        }
    }
    if (net.distance_km && !(net.distance_km->rows() == n && net.distance_km->cols() == n)) {
        add_issue(report, "network.distance", "distance matrix size must match node count");
    }

    if (instance.products.empty()) {
        add_issue(report, "products", "at least one product required");
    }
    double max_temperature_spread = 0.0;
    for (std::size_t k = 0; k < instance.products.size(); ++k) {
        const ProductSpec& p = instance.products[k];
        const std::string base = "products[" + std::to_string(k) + "]";
        if (!(p.min_temperature_c <= p.ideal_temperature_c &&
              p.ideal_temperature_c <= p.max_temperature_c)) {
            add_issue(report, base + ".ideal_temperature",
                      "must satisfy min <= ideal <= max temperature");
        }
        if (!(p.required_shelf_life_h >= 0.0)) {
            add_issue(report, base + ".required_shelf_life", "must be >= 0");
        }
        if (!(p.required_shelf_life_h < p.initial_shelf_life_h)) {
            add_issue(report, base + ".required_shelf_life",
                      "models assume a positive shelf window L_k - R_k > 0");
        }
        if (p.demand < 0.0) {
            add_issue(report, base + ".demand", "must be >= 0");
        }
        if (!(p.q10.q10 > 1.0)) {
            add_issue(report, base + ".q10", "must be > 1");
        } else if (kinetics::q10_outside_typical_range(p.q10)) {
            add_issue(report, base + ".q10",
                      "outside the typical food range [1.5, 3]; double-check the coefficient",
                      ValidationIssue::Severity::warning);
        }
        max_temperature_spread =
            std::max(max_temperature_spread, p.max_temperature_c - p.min_temperature_c);
    }

    if (instance.bounds) {
        const UncertaintyBounds& b = *instance.bounds;
        if (b.travel_time_min.rows() != n || b.travel_time_min.cols() != n ||
            b.travel_time_max.rows() != n || b.travel_time_max.cols() != n ||
            b.delay_min.size() != n || b.delay_max.size() != n) {
            add_issue(report, "bounds", "bound shapes must match the network");
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double nominal = net.travel_time_h(i, j);
                    if (!(b.travel_time_min(i, j) <= nominal && nominal <= b.travel_time_max(i, j))) {
                        add_issue(report,
                                  "bounds.travel_time[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                                  "must satisfy min <= nominal <= max");
                    }
                }
                if (i < net.delay_h.size() &&
                    !(b.delay_min[i] <= net.delay_h[i] && net.delay_h[i] <= b.delay_max[i])) {
                    add_issue(report, "bounds.delay[" + std::to_string(i) + "]",
                              "must satisfy min <= nominal <= max");
                }
            }
        }
    }

    if (instance.moments) {
        const MomentInfo& m = *instance.moments;
        if (m.travel_mean.rows() != n || m.travel_mean.cols() != n ||
            m.travel_variance.rows() != n || m.travel_variance.cols() != n ||
            m.delay_mean.size() != n || m.delay_variance.size() != n) {
            add_issue(report, "moments", "moment shapes must match the network");
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (m.travel_variance(i, j) < 0.0) {
                        add_issue(report,
                                  "moments.travel_variance[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                                  "variance must be >= 0");
                    }
                }
                if (m.delay_variance[i] < 0.0) {
                    add_issue(report, "moments.delay_variance[" + std::to_string(i) + "]",
                              "variance must be >= 0");
                }
            }
        }
        if (m.risk_aversion < 0.0) {
            add_issue(report, "moments.risk_aversion", "must be >= 0");
        }
    }

    double max_ambient_shift = 0.0;
    if (!instance.scenarios.empty()) {
        double probability_sum = 0.0;
        for (std::size_t s = 0; s < instance.scenarios.size(); ++s) {
            const Scenario& sc = instance.scenarios[s];
            const std::string base = "scenarios[" + std::to_string(s) + "]";
            if (!(sc.probability >= 0.0 && sc.probability <= 1.0)) {
                add_issue(report, base + ".probability", "must lie in [0, 1]");
            }
            probability_sum += sc.probability;
            if (sc.delay_h.size() != n) {
                add_issue(report, base + ".delays", "size must equal node count");
            } else {
                for (std::size_t i = 0; i < n; ++i) {
                    if (sc.delay_h[i] < 0.0) {
                        add_issue(report, base + ".delays[" + std::to_string(i) + "]",
                                  "must be non-negative");
                    }
                }
            }
            if (sc.travel_time_h.rows() != n || sc.travel_time_h.cols() != n) {
                add_issue(report, base + ".travel_times", "shape must match the network");
            }
            if (sc.ambient_shift_c.rows() != n ||
                sc.ambient_shift_c.cols() != instance.products.size()) {
                add_issue(report, base + ".ambient_shift", "shape must be nodes x products");
            } else {
                for (std::size_t i = 0; i < sc.ambient_shift_c.rows(); ++i) {
                    for (std::size_t k = 0; k < sc.ambient_shift_c.cols(); ++k) {
                        max_ambient_shift =
                            std::max(max_ambient_shift, std::abs(sc.ambient_shift_c(i, k)));
                    }
                }
            }
        }
        if (std::abs(probability_sum - 1.0) > 1e-9) {
            add_issue(report, "scenarios", "probabilities must sum to 1 (within 1e-9)");
        }
    }

    const AdaptiveParams& a = instance.adaptive;
    if (!(a.correction_factor >= 0.0 && a.correction_factor <= 1.0)) {
        add_issue(report, "adaptive.correction_factor", "must lie in [0, 1]");
    }
    if (a.deviation_penalty < 0.0) {
        add_issue(report, "adaptive.deviation_penalty", "must be >= 0");
    }
    if (a.slack_penalty < 0.0) {
        add_issue(report, "adaptive.slack_penalty", "must be >= 0");
    }
    if (!(a.big_m > max_temperature_spread + max_ambient_shift)) {
        add_issue(report, "adaptive.big_m",
                  "must exceed the widest product temperature band plus the largest ambient shift");
    }

    return report;
}

inline bool has_errors(const ValidationReport& report) {
    for (const ValidationIssue& issue : report) {
        if (issue.severity == ValidationIssue::Severity::error) {
            return true;
        }
    }
    return false;
}

/// Total tour time per the transportation objective: the sum over traversed
/// arcs (i, j) of t_ij + delta_i. Every node's departure delay, including
/// the warehouse's, is counted exactly once per tour.
inline double route_total_time(const Route& route, const Network& network) {
    const std::size_t n = network.travel_time_h.rows();
    if (route.order.size() < 2) {
        throw std::invalid_argument("route_total_time: route must contain at least one arc");
    }
    double total = 0.0;
    for (std::size_t m = 0; m + 1 < route.order.size(); ++m) {
        const int a = route.order[m];
        const int b = route.order[m + 1];
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
            throw std::invalid_argument("route_total_time: node index out of range for network");
        }
        total += network.travel_time_h(a, b) + network.delay_h[a];
    }
    return total;
}

/// Builds a Route from a closed visit order, attributing arc costs from the
/// given matrix and filling MTZ sequencing indices.
inline Route build_route(std::vector<int> order, const Matrix& arc_cost) {
    Route route;
    route.order = std::move(order);
    route.sequencing.assign(arc_cost.rows(), 0);
    route.leg_costs.reserve(route.order.size());
    for (std::size_t m = 0; m + 1 < route.order.size(); ++m) {
        const double c = arc_cost(route.order[m], route.order[m + 1]);
        route.leg_costs.push_back(c);
        route.total_time += c;
        if (route.order[m + 1] != 0) {
            route.sequencing[route.order[m + 1]] = static_cast<int>(m + 1);
        }
    }
    return route;
}

/// Structural tour check: starts and ends at the warehouse, visits every
/// other node exactly once, and has no self-loops.
inline bool route_is_valid_tour(const Route& route, int node_count) {
    if (route.order.size() != static_cast<std::size_t>(node_count) + 1) {
        return false;
    }
    if (route.order.front() != 0 || route.order.back() != 0) {
        return false;
    }
    std::vector<bool> seen(node_count, false);
    seen[0] = true;
    for (std::size_t m = 1; m + 1 < route.order.size(); ++m) {
        const int v = route.order[m];
        if (v <= 0 || v >= node_count || seen[v]) {
            return false;
        }
        if (v == route.order[m - 1]) {
            return false;
        }
        seen[v] = true;
    }
    for (int v = 0; v < node_count; ++v) {
        if (!seen[v]) {
            return false;
        }
    }
    return true;
}

/// Post-hoc Miller-Tucker-Zemlin check: with u_i the stored visit indices
/// and x_ij the route's arc set, verifies u_i - u_j + n*x_ij <= n - 1 for
/// all distinct non-warehouse pairs.
inline bool route_satisfies_mtz(const Route& route, int node_count) {
    const int n = node_count;
    std::vector<std::vector<bool>> arc(n, std::vector<bool>(n, false));
    for (std::size_t m = 0; m + 1 < route.order.size(); ++m) {
        arc[route.order[m]][route.order[m + 1]] = true;
    }
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const int x = arc[i][j] ? 1 : 0;
            if (route.sequencing[i] - route.sequencing[j] + n * x > n - 1) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace coldroute

#endif  // COLDROUTE_DOMAIN_HPP
