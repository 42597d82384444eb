#ifndef COLDROUTE_SCENARIOS_HPP
#define COLDROUTE_SCENARIOS_HPP

/**
 * @file scenarios.hpp
 * @brief Seedable random generation of disruption scenarios and synthetic
 *        delivery instances.
 *
 * Every random quantity is drawn from its own SplitMix64 substream keyed by
 * (purpose, scenario id, stop, product), so output is bit-identical for a
 * given seed regardless of generation order, and adding products or stops
 * never perturbs existing draws. See rng.hpp.
 */

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "coldroute/domain.hpp"
#include "coldroute/rng.hpp"

namespace coldroute::scenarios {

/// Disruption model: each delivery stop independently suffers a delay with
/// probability delay_probability, of magnitude max(0, Normal(mean, std)),
/// and an ambient temperature shift Normal(0, ambient_std) per product.
struct ScenarioGenConfig {
    double delay_probability = 0.2;  ///< p_d
    double delay_mean_h = 0.5;       ///< mu_d
    double delay_std_h = 0.2;        ///< sigma_d
    double ambient_std_c = 1.0;      ///< sigma_tau
    int scenario_count = 50;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(delay_probability >= 0.0 && delay_probability <= 1.0)) {
            throw std::invalid_argument("ScenarioGenConfig: delay_probability must lie in [0, 1]");
        }
        if (delay_std_h < 0.0 || ambient_std_c < 0.0) {
            throw std::invalid_argument("ScenarioGenConfig: standard deviations must be >= 0");
        }
        if (scenario_count < 1) {
            throw std::invalid_argument("ScenarioGenConfig: scenario_count must be >= 1");
        }
    }
};

/// Synthetic network generator configuration. Stops are placed on circles
/// of radius U(distance_min, distance_max) around the warehouse at uniform
/// random angles; all pairwise distances are Euclidean, so the geometry is
/// triangle-inequality consistent and warehouse legs match the sampled
/// radii exactly.
struct SyntheticConfig {
    int stop_count = 10;
    double distance_min_km = 15.0;
    double distance_max_km = 60.0;
    double vehicle_speed_kmh = 40.0;
    double delay_min_h = 0.0;
    double delay_max_h = 0.05;
    double shelf_perturbation = 0.05;  ///< alpha: L_k = L_k^0 (1 + U(-alpha, alpha))
    std::vector<ProductSpec> product_catalog;  ///< empty selects default_paper_catalog()
    std::uint64_t seed = 0;

    void validate() const {
        if (stop_count < 1) {
            throw std::invalid_argument("SyntheticConfig: stop_count must be >= 1");
        }
        if (!(distance_min_km > 0.0 && distance_min_km <= distance_max_km)) {
            throw std::invalid_argument("SyntheticConfig: need 0 < distance_min <= distance_max");
        }
        if (!(vehicle_speed_kmh > 0.0)) {
            throw std::invalid_argument("SyntheticConfig: vehicle_speed must be > 0");
        }
        if (!(delay_min_h >= 0.0 && delay_min_h <= delay_max_h)) {
            throw std::invalid_argument("SyntheticConfig: need 0 <= delay_min <= delay_max");
        }
        if (!(shelf_perturbation >= 0.0 && shelf_perturbation < 1.0)) {
            throw std::invalid_argument("SyntheticConfig: shelf_perturbation must lie in [0, 1)");
        }
    }
};

/// The four-product catalog used by the experiments. Apple parameters come
/// from the cold-chain literature (30-day practical shelf life at 5 degC
/// with fluctuations allowed within +/-3 degC, Q10 = 2). The other three
/// carry standard carrying-temperature bands: bananas 13-14 degC (chilling
/// injury below, ripening above), ripe tomatoes 10-13 degC, strawberries
/// 0-2 degC. Shelf windows are repository defaults, kept stable across
/// versions.
inline std::vector<ProductSpec> default_paper_catalog() {
    std::vector<ProductSpec> catalog;
    catalog.push_back(ProductSpec{"apple", "apple", 5.0, 2.0, 8.0, 720.0, 96.0, 1.0,
                                  kinetics::Q10Params{2.0}});
    catalog.push_back(ProductSpec{"banana", "banana", 13.5, 13.0, 14.0, 336.0, 168.0, 1.0,
                                  kinetics::Q10Params{2.5}});
    catalog.push_back(ProductSpec{"tomato", "tomato", 11.5, 10.0, 13.0, 240.0, 120.0, 1.0,
                                  kinetics::Q10Params{2.0}});
    catalog.push_back(ProductSpec{"strawberry", "strawberry", 1.0, 0.0, 2.0, 48.0, 24.0, 1.0,
                                  kinetics::Q10Params{2.5}});
    return catalog;
}

/// Generates scenario_count independent disruption scenarios for the given
/// instance. Delays hit delivery stops only (never the warehouse); the
/// truncation at zero keeps its probability mass (no resampling). Scenario
/// travel times are the nominal matrix. Probabilities are uniform with the
/// last one compensated so the sum is exactly 1.
inline std::vector<Scenario> generate_scenarios(const ScenarioGenConfig& config,
                                                const Instance& instance) {
    config.validate();
    const std::size_t n = instance.network.travel_time_h.rows();
    if (n < 1) {
        throw std::invalid_argument("generate_scenarios: instance network required");
    }
    const std::size_t product_count = instance.products.size();

    std::vector<Scenario> batch;
    batch.reserve(config.scenario_count);
    for (int s = 0; s < config.scenario_count; ++s) {
        Scenario sc;
        sc.id = s;
        sc.probability = 1.0 / config.scenario_count;
        sc.delay_h.assign(n, 0.0);
        sc.travel_time_h = instance.network.travel_time_h;
        sc.ambient_shift_c = Matrix(n, product_count, 0.0);

        for (std::size_t i = 1; i < n; ++i) {
            rng::SplitMix64 g(rng::substream(config.seed, {rng::kDelayDraw,
                                                           static_cast<std::uint64_t>(s), i}));
            if (g.uniform01() < config.delay_probability) {
                sc.delay_h[i] = std::max(0.0, config.delay_mean_h + config.delay_std_h * g.normal());
            }
            for (std::size_t k = 0; k < product_count; ++k) {
                rng::SplitMix64 a(rng::substream(config.seed, {rng::kAmbientDraw,
                                                               static_cast<std::uint64_t>(s), i, k}));
                sc.ambient_shift_c(i, k) = config.ambient_std_c * a.normal();
            }
        }
        batch.push_back(std::move(sc));
    }
    if (!batch.empty()) {
        double head = 0.0;
        for (std::size_t s = 0; s + 1 < batch.size(); ++s) {
            head += batch[s].probability;
        }
        batch.back().probability = 1.0 - head;
    }
    return batch;
}

/// Builds a synthetic instance: stop geometry, nominal travel times
/// t_ij = d_ij / v, nominal per-stop delays U(delay_min, delay_max), and
/// the product catalog with shelf lives perturbed by U(-alpha, alpha).
inline Instance generate_instance(const SyntheticConfig& config) {
    config.validate();
    const int n = config.stop_count + 1;

    std::vector<double> x(n, 0.0);
    std::vector<double> y(n, 0.0);
    for (int i = 1; i < n; ++i) {
        rng::SplitMix64 gr(rng::substream(config.seed, {rng::kStopRadius,
                                                        static_cast<std::uint64_t>(i)}));
        rng::SplitMix64 ga(rng::substream(config.seed, {rng::kStopAngle,
                                                        static_cast<std::uint64_t>(i)}));
        const double radius = gr.uniform(config.distance_min_km, config.distance_max_km);
        const double angle = ga.uniform(0.0, 2.0 * 3.14159265358979323846);
        x[i] = radius * std::cos(angle);
        y[i] = radius * std::sin(angle);
    }

    Instance instance;
    instance.name = "synthetic-" + std::to_string(config.stop_count) + "stops-seed" +
                    std::to_string(config.seed);

    Matrix distance = Matrix::square(n);
    Matrix travel = Matrix::square(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                const double dx = x[i] - x[j];
                const double dy = y[i] - y[j];
                distance(i, j) = std::sqrt(dx * dx + dy * dy);
                travel(i, j) = distance(i, j) / config.vehicle_speed_kmh;
            }
        }
    }

    instance.network.travel_time_h = std::move(travel);
    instance.network.distance_km = std::move(distance);
    instance.network.delay_h.assign(n, 0.0);
    for (int i = 1; i < n; ++i) {
        rng::SplitMix64 gd(rng::substream(config.seed, {rng::kNominalDelay,
                                                        static_cast<std::uint64_t>(i)}));
        instance.network.delay_h[i] = gd.uniform(config.delay_min_h, config.delay_max_h);
    }

    const std::vector<ProductSpec> catalog =
        config.product_catalog.empty() ? default_paper_catalog() : config.product_catalog;
    instance.products.reserve(catalog.size());
    for (std::size_t k = 0; k < catalog.size(); ++k) {
        ProductSpec p = catalog[k];
        rng::SplitMix64 ge(rng::substream(config.seed, {rng::kShelfPerturbation, k}));
        const double epsilon = ge.uniform(-config.shelf_perturbation, config.shelf_perturbation);
        p.initial_shelf_life_h = catalog[k].initial_shelf_life_h * (1.0 + epsilon);
        if (!(p.required_shelf_life_h < p.initial_shelf_life_h)) {
            throw std::invalid_argument(
                "generate_instance: shelf perturbation pushed required >= initial shelf life for "
                "product '" + p.id + "'; lower shelf_perturbation or the catalog's R_k");
        }
        instance.products.push_back(std::move(p));
    }

    return instance;
}

/// How the uncertainty blocks for the robust / stochastic / DRO models are
/// derived from a scenario batch.
struct UncertaintyDerivation {
    double travel_spread = 0.5;    ///< box: T_max = (1 + spread) * nominal, T_min = (1 - spread) * nominal
    double delay_box_h = 0.7;      ///< box: delay_max_i = max(nominal_i, this)
    double risk_aversion = 1.0;    ///< z for the moment constraint
};

/// Generates a scenario batch and attaches it to the instance together with
/// a consistent box uncertainty set and empirical moment information, so
/// that all five models become runnable. Moments are the empirical mean and
/// variance of the attached batch; the box delay ceiling is a calibrated
/// envelope, not a hard bound on the unbounded truncated-normal draws.
inline void attach_uncertainty(Instance& instance, const ScenarioGenConfig& config,
                               const UncertaintyDerivation& derivation = {}) {
    instance.scenarios = generate_scenarios(config, instance);

    const std::size_t n = instance.network.travel_time_h.rows();

    UncertaintyBounds bounds;
    bounds.travel_time_min = Matrix::square(n);
    bounds.travel_time_max = Matrix::square(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                const double nominal = instance.network.travel_time_h(i, j);
                bounds.travel_time_min(i, j) = (1.0 - derivation.travel_spread) * nominal;
                bounds.travel_time_max(i, j) = (1.0 + derivation.travel_spread) * nominal;
            }
        }
    }
    bounds.delay_min.assign(n, 0.0);
    bounds.delay_max.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        bounds.delay_max[i] = std::max(instance.network.delay_h[i],
                                       i == 0 ? 0.0 : derivation.delay_box_h);
    }
    instance.bounds = std::move(bounds);

    MomentInfo moments;
    moments.travel_mean = Matrix::square(n);
    moments.travel_variance = Matrix::square(n);
    moments.delay_mean.assign(n, 0.0);
    moments.delay_variance.assign(n, 0.0);
    moments.risk_aversion = derivation.risk_aversion;

    const double count = static_cast<double>(instance.scenarios.size());
    for (const Scenario& s : instance.scenarios) {
        for (std::size_t i = 0; i < n; ++i) {
            moments.delay_mean[i] += s.delay_h[i];
            for (std::size_t j = 0; j < n; ++j) {
                moments.travel_mean(i, j) += s.travel_time_h(i, j);
            }
        }
    }
    for (double& v : moments.delay_mean) {
        v /= count;
    }
    for (double& v : moments.travel_mean.data()) {
        v /= count;
    }
    for (const Scenario& s : instance.scenarios) {
        for (std::size_t i = 0; i < n; ++i) {
            const double dd = s.delay_h[i] - moments.delay_mean[i];
            moments.delay_variance[i] += dd * dd / count;
            for (std::size_t j = 0; j < n; ++j) {
                const double dt = s.travel_time_h(i, j) - moments.travel_mean(i, j);
                moments.travel_variance(i, j) += dt * dt / count;
            }
        }
    }
    instance.moments = std::move(moments);
}

/// The single-product sensitivity-analysis setup: goods held near 5 degC
/// within [2, 8] degC, Q10 = 2, 30-day reference shelf life, over a
/// synthetic stop geometry.
inline Instance make_sensitivity_instance(int stop_count, std::uint64_t seed) {
    SyntheticConfig config;
    config.stop_count = stop_count;
    config.seed = seed;
    config.shelf_perturbation = 0.0;
    config.product_catalog = {ProductSpec{"produce", "reference produce", 5.0, 2.0, 8.0, 720.0,
                                          96.0, 1.0, kinetics::Q10Params{2.0}}};
    return generate_instance(config);
}

}  // namespace coldroute::scenarios

#endif  // COLDROUTE_SCENARIOS_HPP
