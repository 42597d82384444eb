#ifndef COLDROUTE_SOLVER_HPP
#define COLDROUTE_SOLVER_HPP

/**
 * @file solver.hpp
 * @brief Exact optimizer for the shared combinatorial core: minimize a
 *        route-additive objective over Hamiltonian tours rooted at the
 *        warehouse (node 0), subject to route-additive side constraints.
 *
 * solve_exact runs depth-first branch-and-bound over partial tours with
 * accumulated-cost pruning and an admissible lower bound built from each
 * pending node's cheapest outgoing arc. Subtour-freeness is structural in
 * tour enumeration; the MTZ inequalities are still verified post-hoc on
 * every returned route (see route_satisfies_mtz).
 *
 * brute_force_oracle enumerates all (n-1)! tours and exists so tests can
 * cross-check the branch-and-bound; it shares the exact tie-break rule
 * (lexicographically smallest visit order among optimal tours).
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "coldroute/domain.hpp"
#include "coldroute/matrix.hpp"

namespace coldroute::solver {

/// Tolerance for side-constraint feasibility: a tour is feasible when its
/// accumulated weight is <= bound + kFeasibilityTol.
inline constexpr double kFeasibilityTol = 1e-9;

/// One route-additive side constraint: sum of arc weights along the tour
/// must not exceed the bound.
struct SideConstraint {
    Matrix weight;
    double bound = 0.0;
};

struct RouteAdditiveProblem {
    Matrix arc_cost;
    std::vector<SideConstraint> side_constraints;

    void validate() const {
        if (!arc_cost.is_square() || arc_cost.rows() < 2) {
            throw std::domain_error("RouteAdditiveProblem: arc_cost must be square with dimension >= 2");
        }
        for (const SideConstraint& c : side_constraints) {
            if (c.weight.rows() != arc_cost.rows() || c.weight.cols() != arc_cost.cols()) {
                throw std::invalid_argument("RouteAdditiveProblem: side-constraint shape mismatch");
            }
            if (!std::isfinite(c.bound)) {
                throw std::invalid_argument("RouteAdditiveProblem: side-constraint bound must be finite");
            }
        }
    }
};

enum class SolveStatus { optimal, infeasible };

struct SolveResult {
    SolveStatus status = SolveStatus::infeasible;
    Route route;
    double objective = std::numeric_limits<double>::quiet_NaN();
    long long nodes_explored = 0;
};

namespace detail {

struct Search {
    const RouteAdditiveProblem& problem;
    int n;
    std::vector<double> min_out;            // cheapest outgoing arc per node
    std::vector<bool> constraint_prunable;  // all weights >= 0 -> partial pruning valid
    std::vector<int> path;
    std::vector<bool> visited;
    std::vector<double> side_acc;
    double best_objective = std::numeric_limits<double>::infinity();
    std::vector<int> best_order;
    bool found = false;
    long long nodes_explored = 0;

    explicit Search(const RouteAdditiveProblem& p)
        : problem(p), n(static_cast<int>(p.arc_cost.rows())) {
        min_out.assign(n, std::numeric_limits<double>::infinity());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j) {
                    min_out[i] = std::min(min_out[i], problem.arc_cost(i, j));
                }
            }
        }
        constraint_prunable.reserve(problem.side_constraints.size());
        for (const SideConstraint& c : problem.side_constraints) {
            bool nonneg = true;
            for (double w : c.weight.data()) {
                if (w < 0.0) {
                    nonneg = false;
                    break;
                }
            }
            constraint_prunable.push_back(nonneg);
        }
        path.reserve(n + 1);
        path.push_back(0);
        visited.assign(n, false);
        visited[0] = true;
        side_acc.assign(problem.side_constraints.size(), 0.0);
    }

    bool partial_feasible(int from, int to) const {
        for (std::size_t c = 0; c < side_acc.size(); ++c) {
            if (!constraint_prunable[c]) {
                continue;
            }
            const double acc = side_acc[c] + problem.side_constraints[c].weight(from, to);
            if (acc > problem.side_constraints[c].bound + kFeasibilityTol) {
                return false;
            }
        }
        return true;
    }

    bool complete_feasible(int last) const {
        for (std::size_t c = 0; c < side_acc.size(); ++c) {
            const double acc = side_acc[c] + problem.side_constraints[c].weight(last, 0);
            if (acc > problem.side_constraints[c].bound + kFeasibilityTol) {
                return false;
            }
        }
        return true;
    }

    void dfs(int current, double cost, int remaining) {
        ++nodes_explored;
        if (remaining == 0) {
            const double total = cost + problem.arc_cost(current, 0);
            if (total < best_objective && complete_feasible(current)) {
                best_objective = total;
                best_order = path;
                best_order.push_back(0);
                found = true;
            }
            return;
        }
        for (int j = 1; j < n; ++j) {
            if (visited[j]) {
                continue;
            }
            const double step_cost = cost + problem.arc_cost(current, j);
            if (found && step_cost + completion_bound_after(j) >= best_objective) {
                continue;
            }
            if (!partial_feasible(current, j)) {
                continue;
            }
            visited[j] = true;
            path.push_back(j);
            for (std::size_t c = 0; c < side_acc.size(); ++c) {
                side_acc[c] += problem.side_constraints[c].weight(current, j);
            }
            dfs(j, step_cost, remaining - 1);
            for (std::size_t c = 0; c < side_acc.size(); ++c) {
                side_acc[c] -= problem.side_constraints[c].weight(current, j);
            }
            path.pop_back();
            visited[j] = false;
        }
    }

    // Admissible completion bound as if j had just been visited: j and every
    // still-unvisited node each need exactly one more outgoing arc, so the
    // sum of their cheapest outgoing arcs cannot exceed the true completion.
    double completion_bound_after(int j) const {
        double bound = min_out[j];
        for (int v = 1; v < n; ++v) {
            if (!visited[v] && v != j) {
                bound += min_out[v];
            }
        }
        return bound;
    }
};

inline SolveResult finish(const RouteAdditiveProblem& problem, bool found, double objective,
                          const std::vector<int>& order, long long explored) {
    SolveResult result;
    result.nodes_explored = explored;
    if (!found) {
        result.status = SolveStatus::infeasible;
        return result;
    }
    result.status = SolveStatus::optimal;
    result.objective = objective;
    result.route = build_route(order, problem.arc_cost);
    return result;
}

}  // namespace detail

/// Global optimum over all Hamiltonian tours rooted at node 0, or
/// infeasible when no tour satisfies every side constraint. Deterministic:
/// ties are broken toward the lexicographically smallest visit order.
inline SolveResult solve_exact(const RouteAdditiveProblem& problem) {
    problem.validate();
    detail::Search search(problem);
    search.dfs(0, 0.0, search.n - 1);
    return detail::finish(problem, search.found, search.best_objective, search.best_order,
                          search.nodes_explored);
}

/// Exhaustive enumeration of all (n-1)! tours with the same tie-break rule
/// as solve_exact. Refuses dimensions above 10 to guard against factorial
/// blowup; this operation exists as an independent cross-check.
inline SolveResult brute_force_oracle(const RouteAdditiveProblem& problem) {
    problem.validate();
    const int n = static_cast<int>(problem.arc_cost.rows());
    if (n > 10) {
        throw std::invalid_argument("brute_force_oracle: dimension must be <= 10");
    }

    std::vector<int> perm(n - 1);
    std::iota(perm.begin(), perm.end(), 1);

    double best_objective = std::numeric_limits<double>::infinity();
    std::vector<int> best_order;
    bool found = false;
    long long explored = 0;

    do {
        ++explored;
        double cost = problem.arc_cost(0, perm.front());
        std::vector<double> side(problem.side_constraints.size(), 0.0);
        for (std::size_t c = 0; c < side.size(); ++c) {
            side[c] += problem.side_constraints[c].weight(0, perm.front());
        }
        for (std::size_t m = 0; m + 1 < perm.size(); ++m) {
            cost += problem.arc_cost(perm[m], perm[m + 1]);
            for (std::size_t c = 0; c < side.size(); ++c) {
                side[c] += problem.side_constraints[c].weight(perm[m], perm[m + 1]);
            }
        }
        cost += problem.arc_cost(perm.back(), 0);
        for (std::size_t c = 0; c < side.size(); ++c) {
            side[c] += problem.side_constraints[c].weight(perm.back(), 0);
        }

        bool feasible = true;
        for (std::size_t c = 0; c < side.size(); ++c) {
            if (side[c] > problem.side_constraints[c].bound + kFeasibilityTol) {
                feasible = false;
                break;
            }
        }
        if (feasible && cost < best_objective) {
            best_objective = cost;
            best_order.clear();
            best_order.push_back(0);
            best_order.insert(best_order.end(), perm.begin(), perm.end());
            best_order.push_back(0);
            found = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return detail::finish(problem, found, best_objective, best_order, explored);
}

}  // namespace coldroute::solver

#endif  // COLDROUTE_SOLVER_HPP
