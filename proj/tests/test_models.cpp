#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "coldroute/models.hpp"
#include "coldroute/rng.hpp"
#include "coldroute/scenarios.hpp"

using namespace coldroute;
using namespace coldroute::models;

namespace {

ProductSpec product_with_window(double window_h, const std::string& id = "apple") {
    ProductSpec p{id, id, 5.0, 2.0, 8.0, 720.0, 720.0 - window_h, 1.0, kinetics::Q10Params{2.0}};
    return p;
}

Instance two_node_instance(double shelf_window_h) {
    Instance instance;
    instance.network.travel_time_h = Matrix::square(2);
    instance.network.travel_time_h(0, 1) = 1.0;
    instance.network.travel_time_h(1, 0) = 1.0;
    instance.network.delay_h = {0.0, 0.0};
    instance.products = {product_with_window(shelf_window_h)};
    return instance;
}

Instance random_instance(rng::SplitMix64& g, int n, double shelf_window_h) {
    Instance instance;
    instance.network.travel_time_h = Matrix::square(n);
    instance.network.delay_h.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        instance.network.delay_h[i] = g.uniform(0.0, 0.3);
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                instance.network.travel_time_h(i, j) = g.uniform(0.3, 2.0);
            }
        }
    }
    instance.products = {product_with_window(shelf_window_h)};
    return instance;
}

Scenario nominal_scenario(const Instance& instance) {
    Scenario s;
    s.id = 0;
    s.probability = 1.0;
    s.delay_h = instance.network.delay_h;
    s.travel_time_h = instance.network.travel_time_h;
    s.ambient_shift_c = Matrix(instance.network.travel_time_h.rows(),
                               instance.products.size(), 0.0);
    return s;
}

void attach_degenerate_uncertainty(Instance& instance) {
    UncertaintyBounds b;
    b.travel_time_min = instance.network.travel_time_h;
    b.travel_time_max = instance.network.travel_time_h;
    b.delay_min = instance.network.delay_h;
    b.delay_max = instance.network.delay_h;
    instance.bounds = std::move(b);

    const std::size_t n = instance.network.travel_time_h.rows();
    MomentInfo m;
    m.travel_mean = instance.network.travel_time_h;
    m.travel_variance = Matrix::square(n);
    m.delay_mean = instance.network.delay_h;
    m.delay_variance.assign(n, 0.0);
    m.risk_aversion = 0.0;
    instance.moments = std::move(m);

    instance.scenarios = {nominal_scenario(instance)};
}

}  // namespace

TEST_CASE("deterministic model on the 2-node instance") {
    const Instance feasible = two_node_instance(10.0);
    const ModelResult r = solve_deterministic(feasible);
    REQUIRE(r.status == solver::SolveStatus::optimal);
    CHECK(r.objective == 2.0);
    CHECK(r.total_travel_hours == 2.0);
    CHECK(r.route.order == std::vector<int>{0, 1, 0});
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].lhs == 2.0);
    CHECK(r.diagnostics[0].bound == 10.0);
    CHECK(r.diagnostics[0].slack == 8.0);

    // The tour needs 2.0 hours; a 1.5 hour window is infeasible.
    const Instance tight = two_node_instance(1.5);
    CHECK(solve_deterministic(tight).status == solver::SolveStatus::infeasible);
}

TEST_CASE("deterministic model matches a hand-built brute force on 10 stops") {
    rng::SplitMix64 g(90210);
    const Instance instance = random_instance(g, 10, 40.0);
    const ModelResult r = solve_deterministic(instance);
    REQUIRE(r.status == solver::SolveStatus::optimal);

    // Independent compile of the transportation objective and shelf
    // constraint, enumerated exhaustively.
    solver::RouteAdditiveProblem p;
    const std::size_t n = instance.network.travel_time_h.rows();
    p.arc_cost = Matrix::square(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                p.arc_cost(i, j) =
                    instance.network.travel_time_h(i, j) + instance.network.delay_h[i];
            }
        }
    }
    p.side_constraints.push_back(
        solver::SideConstraint{p.arc_cost, instance.products[0].shelf_window_h()});
    const solver::SolveResult oracle = solver::brute_force_oracle(p);

    CHECK(std::abs(r.objective - oracle.objective) <= 1e-9);
    CHECK(r.route.order == oracle.route.order);
}

TEST_CASE("robust model collapses to deterministic under a degenerate box") {
    rng::SplitMix64 g(1111);
    Instance instance = random_instance(g, 6, 30.0);
    attach_degenerate_uncertainty(instance);

    const ModelResult det = solve_deterministic(instance);
    const ModelResult rob = solve_robust(instance);
    REQUIRE(det.status == solver::SolveStatus::optimal);
    REQUIRE(rob.status == solver::SolveStatus::optimal);
    CHECK(rob.objective == Catch::Approx(det.objective).epsilon(1e-12));
    CHECK(rob.route.order == det.route.order);
}

TEST_CASE("robust objective dominates deterministic when bounds dominate") {
    rng::SplitMix64 g(2222);
    for (int trial = 0; trial < 25; ++trial) {
        Instance instance = random_instance(g, 6, 60.0);
        UncertaintyBounds b;
        b.travel_time_min = instance.network.travel_time_h;
        b.travel_time_max = instance.network.travel_time_h;
        b.delay_min = instance.network.delay_h;
        b.delay_max = instance.network.delay_h;
        const std::size_t n = instance.network.travel_time_h.rows();
        for (std::size_t i = 0; i < n; ++i) {
            b.delay_max[i] += g.uniform(0.0, 0.5);
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    b.travel_time_max(i, j) *= 1.0 + g.uniform(0.0, 0.6);
                }
            }
        }
        instance.bounds = std::move(b);

        const ModelResult det = solve_deterministic(instance);
        const ModelResult rob = solve_robust(instance);
        REQUIRE(det.status == solver::SolveStatus::optimal);
        if (rob.status == solver::SolveStatus::optimal) {
            CHECK(rob.objective >= det.objective - 1e-12);
        }
    }
}

TEST_CASE("robust model equals constrained brute force under worst-case parameters") {
    rng::SplitMix64 g(3333);
    Instance instance = random_instance(g, 9, 25.0);
    UncertaintyBounds b;
    b.travel_time_min = instance.network.travel_time_h;
    b.travel_time_max = instance.network.travel_time_h;
    b.delay_min = instance.network.delay_h;
    b.delay_max = instance.network.delay_h;
    const std::size_t n = instance.network.travel_time_h.rows();
    for (std::size_t i = 0; i < n; ++i) {
        b.delay_max[i] += 0.2;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                b.travel_time_max(i, j) *= 1.3;
            }
        }
    }
    instance.bounds = b;

    const ModelResult rob = solve_robust(instance);
    REQUIRE(rob.status == solver::SolveStatus::optimal);

    solver::RouteAdditiveProblem p;
    p.arc_cost = Matrix::square(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                p.arc_cost(i, j) = b.travel_time_max(i, j) + b.delay_max[i];
            }
        }
    }
    p.side_constraints.push_back(
        solver::SideConstraint{p.arc_cost, instance.products[0].shelf_window_h()});
    const solver::SolveResult oracle = solver::brute_force_oracle(p);
    CHECK(std::abs(rob.objective - oracle.objective) <= 1e-9);
    CHECK(rob.route.order == oracle.route.order);
}

TEST_CASE("stochastic model with a single nominal scenario equals deterministic") {
    rng::SplitMix64 g(4444);
    Instance instance = random_instance(g, 6, 30.0);
    instance.scenarios = {nominal_scenario(instance)};

    const ModelResult det = solve_deterministic(instance);
    const ModelResult sp = solve_stochastic(instance);
    REQUIRE(sp.status == solver::SolveStatus::optimal);
    CHECK(sp.objective == Catch::Approx(det.objective).epsilon(1e-12));
    CHECK(sp.route.order == det.route.order);
}

TEST_CASE("stochastic expected weights match a hand expectation") {
    Instance instance = two_node_instance(10.0);
    Scenario calm = nominal_scenario(instance);
    calm.probability = 0.5;
    Scenario delayed = calm;
    delayed.id = 1;
    delayed.delay_h = {1.0, 1.0};

    instance.scenarios = {calm, delayed};
    const ModelResult sp = solve_stochastic(instance);
    REQUIRE(sp.status == solver::SolveStatus::optimal);
    // Expected weight per arc: t + 0.5 * (0 + 1) = t + 0.5; the tour carries
    // two arcs so the constraint side is 2 + 2 * 0.5 = 3.
    REQUIRE(sp.diagnostics.size() == 1);
    CHECK(sp.diagnostics[0].lhs == Catch::Approx(3.0).epsilon(1e-12));
    // Objective stays nominal.
    CHECK(sp.objective == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("stochastic constraint equals the scenario average of tour times") {
    rng::SplitMix64 g(5555);
    Instance instance = random_instance(g, 7, 60.0);
    scenarios::ScenarioGenConfig config;
    config.scenario_count = 50;
    config.seed = 987;
    instance.scenarios = scenarios::generate_scenarios(config, instance);

    const ModelResult sp = solve_stochastic(instance);
    REQUIRE(sp.status == solver::SolveStatus::optimal);

    // Average the realized tour time of the returned route across scenarios.
    double average = 0.0;
    for (const Scenario& s : instance.scenarios) {
        double tour = 0.0;
        for (std::size_t m = 0; m + 1 < sp.route.order.size(); ++m) {
            const int a = sp.route.order[m];
            const int b = sp.route.order[m + 1];
            tour += s.travel_time_h(a, b) + s.delay_h[a];
        }
        average += s.probability * tour;
    }
    REQUIRE(sp.diagnostics.size() == 1);
    CHECK(std::abs(sp.diagnostics[0].lhs - average) <= 1e-9);
}

TEST_CASE("stochastic model rejects probabilities that do not sum to one") {
    Instance instance = two_node_instance(10.0);
    Scenario s = nominal_scenario(instance);
    s.probability = 0.7;
    instance.scenarios = {s};
    CHECK_THROWS_AS(solve_stochastic(instance), std::domain_error);
}

TEST_CASE("dro with zero risk aversion and nominal moments equals deterministic") {
    rng::SplitMix64 g(6666);
    Instance instance = random_instance(g, 6, 30.0);
    attach_degenerate_uncertainty(instance);

    const ModelResult det = solve_deterministic(instance);
    const ModelResult dro = solve_dro(instance);
    REQUIRE(dro.status == solver::SolveStatus::optimal);
    CHECK(dro.objective == Catch::Approx(det.objective).epsilon(1e-12));
    CHECK(dro.route.order == det.route.order);
}

TEST_CASE("doubling z tightens the dro constraint") {
    rng::SplitMix64 g(7777);
    Instance instance = random_instance(g, 6, 9.0);
    attach_degenerate_uncertainty(instance);
    MomentInfo& m = *instance.moments;
    const std::size_t n = instance.network.travel_time_h.rows();
    for (std::size_t i = 0; i < n; ++i) {
        m.delay_variance[i] = 0.2;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                m.travel_variance(i, j) = 0.3;
            }
        }
    }

    m.risk_aversion = 1.0;
    const ModelResult z1 = solve_dro(instance);
    m.risk_aversion = 2.0;
    const ModelResult z2 = solve_dro(instance);

    if (z1.status == solver::SolveStatus::optimal && z2.status == solver::SolveStatus::optimal) {
        CHECK(z2.objective >= z1.objective - 1e-12);
        CHECK(z2.diagnostics[0].lhs >= z1.diagnostics[0].lhs - 1e-12);
    } else {
        // Feasibility can only shrink as z grows.
        CHECK(z1.status == solver::SolveStatus::optimal);
        CHECK(z2.status == solver::SolveStatus::infeasible);
    }
}

TEST_CASE("dro route matches brute force under the composed weights") {
    rng::SplitMix64 g(8888);
    Instance instance = random_instance(g, 8, 14.0);
    attach_degenerate_uncertainty(instance);
    MomentInfo& m = *instance.moments;
    const std::size_t n = instance.network.travel_time_h.rows();
    for (std::size_t i = 0; i < n; ++i) {
        m.delay_mean[i] += 0.05;
        m.delay_variance[i] = g.uniform(0.0, 0.1);
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                m.travel_variance(i, j) = g.uniform(0.0, 0.2);
            }
        }
    }
    m.risk_aversion = 1.0;

    const ModelResult dro = solve_dro(instance);
    REQUIRE(dro.status == solver::SolveStatus::optimal);

    solver::RouteAdditiveProblem p;
    p.arc_cost = Matrix::square(n);
    Matrix weight = Matrix::square(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                p.arc_cost(i, j) =
                    instance.network.travel_time_h(i, j) + instance.network.delay_h[i];
                weight(i, j) = m.delay_mean[i] + m.travel_mean(i, j) +
                               m.risk_aversion * (m.delay_variance[i] + m.travel_variance(i, j));
            }
        }
    }
    p.side_constraints.push_back(solver::SideConstraint{
        weight, instance.products[0].demand * instance.products[0].initial_shelf_life_h -
                    instance.products[0].required_shelf_life_h});
    const solver::SolveResult oracle = solver::brute_force_oracle(p);

    CHECK(std::abs(dro.objective - oracle.objective) <= 1e-9);
    CHECK(dro.route.order == oracle.route.order);
}

TEST_CASE("dro honors an explicit demand multiplier") {
    Instance instance = two_node_instance(10.0);
    attach_degenerate_uncertainty(instance);
    instance.moments->risk_aversion = 0.0;

    // With demand 2 the bound becomes 2 * 720 - 710 = 730, still feasible;
    // with demand 0 it becomes -710, infeasible.
    instance.products[0].demand = 2.0;
    CHECK(solve_dro(instance).status == solver::SolveStatus::optimal);
    instance.products[0].demand = 0.0;
    CHECK(solve_dro(instance).status == solver::SolveStatus::infeasible);
}

TEST_CASE("all four static models coincide under degenerate uncertainty") {
    rng::SplitMix64 g(13579);
    Instance instance = random_instance(g, 7, 30.0);
    attach_degenerate_uncertainty(instance);

    const ModelResult det = solve_deterministic(instance);
    const ModelResult rob = solve_robust(instance);
    const ModelResult sp = solve_stochastic(instance);
    const ModelResult dro = solve_dro(instance);

    REQUIRE(det.status == solver::SolveStatus::optimal);
    for (const ModelResult* r : {&rob, &sp, &dro}) {
        REQUIRE(r->status == solver::SolveStatus::optimal);
        CHECK(std::abs(r->objective - det.objective) <= 1e-9);
        CHECK(r->route.order == det.route.order);
    }
}

TEST_CASE("adaptive with no disturbance follows nearest neighbor at ideal temps") {
    rng::SplitMix64 g(24680);
    Instance instance = random_instance(g, 6, 100.0);
    instance.adaptive.correction_factor = 0.0;
    Scenario scenario = nominal_scenario(instance);

    const ModelResult r = solve_adaptive(instance, scenario);
    REQUIRE(r.status == solver::SolveStatus::optimal);
    REQUIRE(r.trace.has_value());
    CHECK(r.trace->total_deviation_c == 0.0);
    CHECK(r.trace->total_slack_c == 0.0);

    // Hand-run nearest neighbor on (T_ij + delta_i).
    const int n = instance.network.node_count();
    std::vector<bool> visited(n, false);
    visited[0] = true;
    int current = 0;
    std::vector<int> expected{0};
    for (int step = 0; step < n - 1; ++step) {
        int best = -1;
        double best_cost = 1e300;
        for (int j = 1; j < n; ++j) {
            if (!visited[j]) {
                const double c = instance.network.travel_time_h(current, j) +
                                 instance.network.delay_h[current];
                if (c < best_cost) {
                    best_cost = c;
                    best = j;
                }
            }
        }
        visited[best] = true;
        expected.push_back(best);
        current = best;
    }
    expected.push_back(0);
    CHECK(r.route.order == expected);

    // Every product pinned at its ideal temperature on every hop.
    for (const AdaptiveHop& hop : r.trace->hops) {
        for (std::size_t k = 0; k < instance.products.size(); ++k) {
            CHECK(hop.temperature_c[k] == instance.products[k].ideal_temperature_c);
        }
    }

    // Greedy travel time cannot beat the deterministic optimum on the same
    // realized parameters.
    const ModelResult det = solve_deterministic(instance);
    CHECK(r.total_travel_hours >= det.total_travel_hours - 1e-9);
}

TEST_CASE("full correction resets to ideal plus local shift each hop") {
    rng::SplitMix64 g(11223);
    Instance instance = random_instance(g, 5, 100.0);
    instance.adaptive.correction_factor = 1.0;
    Scenario scenario = nominal_scenario(instance);
    for (std::size_t i = 1; i < scenario.ambient_shift_c.rows(); ++i) {
        scenario.ambient_shift_c(i, 0) = g.uniform(-2.0, 2.0);
    }

    const ModelResult r = solve_adaptive(instance, scenario);
    REQUIRE(r.trace.has_value());
    for (const AdaptiveHop& hop : r.trace->hops) {
        if (hop.to == 0) {
            continue;
        }
        const double expected = instance.products[0].ideal_temperature_c +
                                scenario.ambient_shift_c(hop.to, 0);
        CHECK(hop.temperature_c[0] == Catch::Approx(expected).margin(1e-12));
    }
}

TEST_CASE("large deviation penalty flips the greedy choice, matching a hand trace") {
    // 3 nodes, 1 product. Node 1 is nearer but suffers a +4 shift; node 2 is
    // farther with zero shift. With lambda_1 = 10 the controller must visit
    // node 2 first.
    Instance instance;
    instance.network.travel_time_h = Matrix::square(3);
    instance.network.travel_time_h(0, 1) = 1.0;
    instance.network.travel_time_h(0, 2) = 2.0;
    instance.network.travel_time_h(1, 0) = 1.0;
    instance.network.travel_time_h(1, 2) = 1.0;
    instance.network.travel_time_h(2, 0) = 2.0;
    instance.network.travel_time_h(2, 1) = 1.0;
    instance.network.delay_h = {0.0, 0.0, 0.0};
    instance.products = {ProductSpec{"p", "p", 5.0, 2.0, 8.0, 720.0, 96.0, 1.0,
                                     kinetics::Q10Params{2.0}}};
    instance.adaptive.correction_factor = 0.5;
    instance.adaptive.deviation_penalty = 10.0;
    instance.adaptive.slack_penalty = 10.0;

    Scenario scenario = nominal_scenario(instance);
    scenario.ambient_shift_c(1, 0) = 4.0;
    scenario.ambient_shift_c(2, 0) = 0.0;

    // Hand-executed rolling horizon:
    //   Stage 1 candidates from node 0 (t = 5.0):
    //     j=1: raw 5 + 4 + 0.5*(5-5) = 9 -> clamp to 8, S = 1, D = 3;
    //          cost 1 + 10*3 + 10*1 = 41.
    //     j=2: raw 5 -> D = 0; cost 2.
    //   Pick j=2, temperature stays 5.
    //   Stage 2 from node 2 to node 1 (forced):
    //     raw 5 + 4 + 0 = 9 -> clamp to 8, S = 1, D = 3;
    //     cost 1 + 30 + 10 = 41.
    //   Return 1 -> 0 adds 1.
    const ModelResult r = solve_adaptive(instance, scenario);
    REQUIRE(r.trace.has_value());
    CHECK(r.route.order == std::vector<int>{0, 2, 1, 0});
    REQUIRE(r.trace->hops.size() == 3);
    CHECK(r.trace->hops[0].hop_cost == Catch::Approx(2.0));
    CHECK(r.trace->hops[0].temperature_c[0] == 5.0);
    CHECK(r.trace->hops[1].temperature_c[0] == 8.0);
    CHECK(r.trace->hops[1].deviation_c[0] == 3.0);
    CHECK(r.trace->hops[1].slack_c[0] == Catch::Approx(1.0));
    CHECK(r.trace->hops[1].hop_cost == Catch::Approx(41.0));
    CHECK(r.trace->hops[2].hop_cost == Catch::Approx(1.0));
    CHECK(r.trace->total_cost == Catch::Approx(44.0));
    CHECK(r.trace->total_travel_hours == Catch::Approx(4.0));
    CHECK(r.trace->total_deviation_c == Catch::Approx(3.0));
    CHECK(r.trace->total_slack_c == Catch::Approx(1.0));

    // Without the penalty the greedy choice goes to the nearer node 1 first.
    Instance cheap = instance;
    cheap.adaptive.deviation_penalty = 0.0;
    cheap.adaptive.slack_penalty = 0.0;
    CHECK(solve_adaptive(cheap, scenario).route.order == std::vector<int>{0, 1, 2, 0});

    // The finished trace satisfies the full temperature constraint system,
    // big-M relaxation included.
    CHECK(trace_satisfies_temperature_constraints(*r.trace, instance, scenario));
}

TEST_CASE("adaptive trace totals and bounds invariants hold on random runs") {
    rng::SplitMix64 g(86420);
    for (int trial = 0; trial < 20; ++trial) {
        Instance instance = random_instance(g, 7, 100.0);
        instance.adaptive.correction_factor = g.uniform(0.0, 1.0);
        instance.adaptive.deviation_penalty = g.uniform(0.0, 3.0);
        instance.adaptive.slack_penalty = g.uniform(0.0, 3.0);
        Scenario scenario = nominal_scenario(instance);
        for (std::size_t i = 1; i < scenario.ambient_shift_c.rows(); ++i) {
            for (std::size_t k = 0; k < scenario.ambient_shift_c.cols(); ++k) {
                scenario.ambient_shift_c(i, k) = g.normal(0.0, 1.5);
            }
        }

        const ModelResult r = solve_adaptive(instance, scenario);
        REQUIRE(r.trace.has_value());
        const AdaptiveTrace& trace = *r.trace;

        CHECK(route_is_valid_tour(r.route, instance.network.node_count()));
        CHECK(route_satisfies_mtz(r.route, instance.network.node_count()));

        double cost = 0.0, travel = 0.0, dev = 0.0, slack = 0.0;
        for (const AdaptiveHop& hop : trace.hops) {
            cost += hop.hop_cost;
            travel += hop.travel_h;
            for (std::size_t k = 0; k < instance.products.size(); ++k) {
                dev += hop.deviation_c[k];
                slack += hop.slack_c[k];
                const ProductSpec& p = instance.products[k];
                CHECK(hop.temperature_c[k] >= p.min_temperature_c - 1e-12);
                CHECK(hop.temperature_c[k] <= p.max_temperature_c + 1e-12);
                if (hop.to != 0) {  // the return leg delivers nothing
                    CHECK(hop.deviation_c[k] ==
                          Catch::Approx(std::abs(hop.temperature_c[k] - p.ideal_temperature_c))
                              .margin(1e-12));
                }
            }
        }
        CHECK(trace.total_cost == Catch::Approx(cost).margin(1e-9));
        CHECK(trace.total_travel_hours == Catch::Approx(travel).margin(1e-9));
        CHECK(trace.total_deviation_c == Catch::Approx(dev).margin(1e-9));
        CHECK(trace.total_slack_c == Catch::Approx(slack).margin(1e-9));

        CHECK(trace_satisfies_temperature_constraints(trace, instance, scenario));
    }
}

TEST_CASE("adaptive on a single-node network returns a degenerate empty trace") {
    Instance instance;
    instance.network.travel_time_h = Matrix::square(1);
    instance.network.delay_h = {0.0};
    instance.products = {product_with_window(10.0)};
    Scenario s;
    s.ambient_shift_c = Matrix(1, 1, 0.0);
    s.travel_time_h = instance.network.travel_time_h;
    s.delay_h = {0.0};

    const ModelResult r = solve_adaptive(instance, s);
    CHECK(r.status == solver::SolveStatus::optimal);
    CHECK(r.objective == 0.0);
    REQUIRE(r.trace.has_value());
    CHECK(r.trace->hops.empty());
}

TEST_CASE("route evaluation accumulates drift exactly as the update rules state") {
    Instance instance;
    instance.network.travel_time_h = Matrix::square(3, 1.0);
    for (int i = 0; i < 3; ++i) {
        instance.network.travel_time_h(i, i) = 0.0;
    }
    instance.network.delay_h = {0.0, 0.0, 0.0};
    instance.products = {product_with_window(100.0)};
    instance.adaptive.correction_factor = 0.5;

    Scenario scenario = nominal_scenario(instance);
    scenario.ambient_shift_c(1, 0) = 1.0;
    scenario.ambient_shift_c(2, 0) = 1.0;

    Route route;
    route.order = {0, 1, 2, 0};

    // tau == 0 everywhere: zero deviation in both modes.
    Scenario calm = nominal_scenario(instance);
    CHECK(models::evaluate_route_under_scenario(route, instance, calm, false)
              .total_deviation_c == 0.0);
    CHECK(models::evaluate_route_under_scenario(route, instance, calm, true)
              .total_deviation_c == 0.0);

    // Raw drift: +1 at each stop accumulates to deviations 1 and 2.
    const RouteEvaluation off =
        models::evaluate_route_under_scenario(route, instance, scenario, false);
    CHECK(off.total_deviation_c == Catch::Approx(3.0));
    CHECK(off.mean_temperature_c[0] == Catch::Approx(5.0 + 1.5));

    // Corrected drift with beta = 0.5: 5 -> 6 -> 6.5.
    const RouteEvaluation on =
        models::evaluate_route_under_scenario(route, instance, scenario, true);
    CHECK(on.total_deviation_c == Catch::Approx(2.5));

    // Scenario-deterministic: repeated evaluation is bit-identical.
    const RouteEvaluation again =
        models::evaluate_route_under_scenario(route, instance, scenario, false);
    CHECK(again.total_deviation_c == off.total_deviation_c);
    CHECK(again.travel_hours == off.travel_hours);
    CHECK(again.mean_temperature_c == off.mean_temperature_c);
}

TEST_CASE("corrected evaluation contracts inherited deviation with tau zero") {
    Instance instance;
    instance.network.travel_time_h = Matrix::square(5, 1.0);
    for (int i = 0; i < 5; ++i) {
        instance.network.travel_time_h(i, i) = 0.0;
    }
    instance.network.delay_h.assign(5, 0.0);
    instance.products = {product_with_window(100.0)};

    for (double beta : {0.25, 0.5, 1.0}) {
        instance.adaptive.correction_factor = beta;
        Scenario scenario = nominal_scenario(instance);
        scenario.ambient_shift_c(1, 0) = 2.0;  // one shock at the first stop

        Route route;
        route.order = {0, 1, 2, 3, 4, 0};
        const RouteEvaluation eval =
            models::evaluate_route_under_scenario(route, instance, scenario, true);
        // After the shock the deviation contracts by (1 - beta) per hop:
        // 2, 2(1-b), 2(1-b)^2, 2(1-b)^3.
        double expected = 0.0;
        double e = 2.0;
        for (int stop = 0; stop < 4; ++stop) {
            expected += e;
            e *= (1.0 - beta);
        }
        CHECK(eval.total_deviation_c == Catch::Approx(expected).margin(1e-12));
    }
}

TEST_CASE("models require their uncertainty blocks") {
    Instance instance = two_node_instance(10.0);
    CHECK_THROWS_AS(solve_robust(instance), std::domain_error);
    CHECK_THROWS_AS(solve_stochastic(instance), std::domain_error);
    CHECK_THROWS_AS(solve_dro(instance), std::domain_error);
}
