#pragma once

#include <cstdint>

#include "forecastlab/series.hpp"

namespace forecastlab {

/// The 144 monthly international airline passenger counts (Jan 1949 - Dec 1960,
/// thousands), bundled with a period hint of 12.
TimeSeries airline_series();

/**
 * @brief Deterministic seasonal test fixture.
 *
 * y_t = (base + trend*t) * profile(t mod s) + e_t with a positive sinusoidal
 * profile, base 100 and e_t ~ N(0, noise_sd^2). Requires n >= 2s.
 */
TimeSeries generate_synthetic(int s, int n, double trend, double noise_sd,
                              std::uint64_t seed);

}  // namespace forecastlab
