#ifndef COLDROUTE_KINETICS_HPP
#define COLDROUTE_KINETICS_HPP

/**
 * @file kinetics.hpp
 * @brief Closed-form shelf-life and degradation-rate models for perishable
 *        produce: Arrhenius kinetics and the Q10 temperature-coefficient law,
 *        plus shelf-life estimation over a realized temperature profile.
 *
 * Unit policy: Arrhenius functions take absolute temperature in Kelvin (the
 * formula requires it), Q10 functions take Celsius (the formula only uses a
 * temperature difference, so the unit just has to match the reference).
 * Conversions are always explicit at call boundaries.
 */

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace coldroute::kinetics {

inline constexpr double kGasConstant = 8.314;  // J/(mol*K)
inline constexpr double kCelsiusOffset = 273.15;

inline double celsius_to_kelvin(double celsius) { return celsius + kCelsiusOffset; }
inline double kelvin_to_celsius(double kelvin) { return kelvin - kCelsiusOffset; }

/// Parameters of the Arrhenius degradation-rate law
///   k = k0 * exp(-Ea / (R * T)).
struct ArrheniusParams {
    double preexponential_factor = 0.0;  ///< k0 [1/hour]
    double activation_energy = 0.0;      ///< Ea [J/mol]
    double gas_constant = kGasConstant;  ///< R [J/(mol*K)], fixed

    void validate() const {
        if (!(preexponential_factor > 0.0)) {
            throw std::invalid_argument("ArrheniusParams: preexponential_factor must be > 0");
        }
        if (!(activation_energy > 0.0)) {
            throw std::invalid_argument("ArrheniusParams: activation_energy must be > 0");
        }
        if (gas_constant != kGasConstant) {
            throw std::invalid_argument("ArrheniusParams: gas_constant must be 8.314 J/(mol*K)");
        }
    }
};

/// Q10 temperature coefficient: the factor by which the deterioration rate
/// multiplies per 10 degC rise. Food products typically sit in [1.5, 3].
struct Q10Params {
    double q10 = 2.0;

    void validate() const {
        if (!(q10 > 1.0)) {
            throw std::invalid_argument("Q10Params: q10 must be > 1");
        }
    }
};

inline constexpr double kQ10TypicalMin = 1.5;
inline constexpr double kQ10TypicalMax = 3.0;

/// True when q10 is valid but outside the typical food range [1.5, 3].
/// Callers surface this as a diagnostic warning, never an error.
inline bool q10_outside_typical_range(const Q10Params& params) {
    return params.q10 < kQ10TypicalMin || params.q10 > kQ10TypicalMax;
}

/// Known shelf life under a reference storage temperature.
struct ShelfLifeRef {
    double reference_life = 0.0;           ///< L_T0, any duration unit
    double reference_temperature_k = 0.0;  ///< T0 [K]

    static ShelfLifeRef from_celsius(double life, double reference_celsius) {
        return ShelfLifeRef{life, celsius_to_kelvin(reference_celsius)};
    }

    double reference_temperature_c() const { return kelvin_to_celsius(reference_temperature_k); }

    void validate() const {
        if (!(reference_life > 0.0)) {
            throw std::invalid_argument("ShelfLifeRef: reference_life must be > 0");
        }
        if (!(reference_temperature_k > 0.0)) {
            throw std::invalid_argument("ShelfLifeRef: reference_temperature must be > 0 K");
        }
    }
};

/// Realized temperature history: (time [hours], temperature [degC]) samples
/// with strictly increasing times.
struct TemperatureProfile {
    std::vector<std::pair<double, double>> samples;

    void validate() const {
        if (samples.empty()) {
            throw std::domain_error("TemperatureProfile: at least one sample required");
        }
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (!(samples[i].first > samples[i - 1].first)) {
                throw std::domain_error("TemperatureProfile: sample times must be strictly increasing");
            }
        }
    }
};

/// Degradation rate constant k = k0 * exp(-Ea / (R*T)). Strictly increasing
/// in T for Ea > 0.
inline double arrhenius_rate(const ArrheniusParams& params, double temperature_k) {
    params.validate();
    if (!(temperature_k > 0.0)) {
        throw std::domain_error("arrhenius_rate: temperature must be > 0 K");
    }
    return params.preexponential_factor *
           std::exp(-params.activation_energy / (params.gas_constant * temperature_k));
}

/// Shelf life at temperature T from a known reference:
///   L_T = L_T0 * exp[(Ea/R) * (1/T - 1/T0)].
/// Equals L_T0 exactly at T = T0 and is strictly decreasing in T for Ea > 0.
inline double arrhenius_shelf_life(const ShelfLifeRef& ref, const ArrheniusParams& params,
                                   double temperature_k) {
    ref.validate();
    params.validate();
    if (!(temperature_k > 0.0)) {
        throw std::domain_error("arrhenius_shelf_life: temperature must be > 0 K");
    }
    const double exponent = (params.activation_energy / params.gas_constant) *
                            (1.0 / temperature_k - 1.0 / ref.reference_temperature_k);
    return ref.reference_life * std::exp(exponent);
}

/// Q10 shelf-life law: L_T = L_T0 * Q10^((T0 - T) / 10). Temperatures in
/// Celsius; only the difference to the reference matters. The difference is
/// taken in Kelvin so that T = T0 yields an exponent of exactly zero (both
/// sides go through the same Celsius-to-Kelvin conversion).
inline double q10_shelf_life(const ShelfLifeRef& ref, const Q10Params& params,
                             double temperature_c) {
    ref.validate();
    params.validate();
    const double exponent =
        (ref.reference_temperature_k - celsius_to_kelvin(temperature_c)) / 10.0;
    return ref.reference_life * std::pow(params.q10, exponent);
}

/// Time-weighted mean temperature of a profile: trapezoidal weighting of
/// segment midpoints. A single sample is its own mean.
inline double time_weighted_mean_temperature(const TemperatureProfile& profile) {
    profile.validate();
    if (profile.samples.size() == 1) {
        return profile.samples.front().second;
    }
    double weighted = 0.0;
    double span = 0.0;
    for (std::size_t i = 1; i < profile.samples.size(); ++i) {
        const double dt = profile.samples[i].first - profile.samples[i - 1].first;
        const double mid = 0.5 * (profile.samples[i].second + profile.samples[i - 1].second);
        weighted += mid * dt;
        span += dt;
    }
    return weighted / span;
}

/// Shelf life over a realized profile: evaluates the Q10 law once at the
/// profile's time-weighted mean temperature. This mirrors the
/// average-transit-temperature methodology used by the experiments.
inline double shelf_life_over_profile(const ShelfLifeRef& ref, const Q10Params& params,
                                      const TemperatureProfile& profile) {
    return q10_shelf_life(ref, params, time_weighted_mean_temperature(profile));
}

/// Rate-integral alternative: consumes life at instantaneous rate 1/L(T(t))
/// and reports the equivalent constant-temperature shelf life
/// span / integral(dt / L(T(t))). Agrees with shelf_life_over_profile on
/// constant profiles; exposed for comparison, not used by the experiment
/// pipeline.
inline double shelf_life_rate_integrated(const ShelfLifeRef& ref, const Q10Params& params,
                                         const TemperatureProfile& profile) {
    profile.validate();
    if (profile.samples.size() == 1) {
        return q10_shelf_life(ref, params, profile.samples.front().second);
    }
    double consumed = 0.0;
    double span = 0.0;
    for (std::size_t i = 1; i < profile.samples.size(); ++i) {
        const double dt = profile.samples[i].first - profile.samples[i - 1].first;
        const double rate_a = 1.0 / q10_shelf_life(ref, params, profile.samples[i - 1].second);
        const double rate_b = 1.0 / q10_shelf_life(ref, params, profile.samples[i].second);
        consumed += 0.5 * (rate_a + rate_b) * dt;
        span += dt;
    }
    return span / consumed;
}

}  // namespace coldroute::kinetics

#endif  // COLDROUTE_KINETICS_HPP
