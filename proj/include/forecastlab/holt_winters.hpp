#pragma once

#include <vector>

#include "forecastlab/series.hpp"

namespace forecastlab::stats {

struct HwParams {
	double alpha = 0.5;
	double gamma = 0.5;
	double delta = 0.5;
};

/**
 * @brief Multiplicative Holt-Winters state: local level, trend and a ring of
 *        s seasonal indices (slot = time phase, advanced one slot per update).
 */
struct HoltWintersState {
	double level = 0.0;
	double trend = 0.0;
	std::vector<double> seasonal_indices;  // indices_[phase], phase = t mod s
	int phase = 0;                         // phase of the last absorbed observation
	HwParams params;

	int season() const { return static_cast<int>(seasonal_indices.size()); }
};

/**
 * @brief Initial state from the first two seasons: level = mean of season 1,
 *        trend = (mean season 2 - mean season 1)/s, indices averaged over both
 *        seasons and renormalised to sum to s. Positioned after observation
 *        2s-1.
 */
HoltWintersState hw_init(const TimeSeries& series, int s, HwParams params);

/// One smoothing update absorbing the next observation y_t (> 0 required).
HoltWintersState hw_update(const HoltWintersState& state, double y_t);

/// k-step-ahead forecast (L + k T) I_{t-s+k}; ring indices reused cyclically.
double hw_forecast(const HoltWintersState& state, int k);

/**
 * @brief Optimises (alpha, gamma, delta) over [0,1]^3 by grid + simplex
 *        refinement on one-step-ahead SSE, then returns the end-of-series
 *        state under the best parameters.
 */
HoltWintersState fit_hw(const TimeSeries& series, int s);

/// One-step-ahead SSE over the post-initialisation range for fixed parameters.
double hw_one_step_sse(const TimeSeries& series, int s, HwParams params);

}  // namespace forecastlab::stats
