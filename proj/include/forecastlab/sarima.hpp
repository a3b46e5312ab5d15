#pragma once

#include <vector>

#include "forecastlab/series.hpp"

namespace forecastlab::stats {

/**
 * @brief Airline-form SARIMA(0,1,1)x(0,1,1)_s.
 *
 * Sign convention: the MA polynomials are (1 - theta B)(1 - Theta B^s), i.e.
 * W_t = Z_t - theta Z_{t-1} - Theta Z_{t-s} + theta Theta Z_{t-s-1}.
 */
struct SarimaAirline {
	double theta = 0.0;
	double Theta = 0.0;
	int s = 2;
	double residual_variance = 0.0;
};

/// W_t = (1-B)^d (1-B^s)^D y_t with d, D in {0, 1}; output length - d - D*s.
TimeSeries difference(const TimeSeries& series, int d, int D, int s);

/**
 * @brief Conditional sum of squares: differences the series (d=D=1), inverts
 *        the MA recursion with pre-sample residuals zeroed, returns sum Z^2.
 */
double sarima_css(const TimeSeries& series, double theta, double Theta, int s);

/// Minimises CSS over the invertibility box (-0.99, 0.99)^2 by a coarse grid
/// followed by simplex refinement. Requires length >= 3s.
SarimaAirline fit_sarima(const TimeSeries& series, int s);

/// Iterated forecast with future residuals set to zero; with theta = Theta = 0
/// reduces to y_{t+1} = y_t + y_{t+1-s} - y_{t-s}.
std::vector<double> forecast_sarima(const SarimaAirline& model,
                                    const TimeSeries& history, int horizon);

}  // namespace forecastlab::stats
