#include "forecastlab/holt_winters.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "detail/nelder_mead.hpp"

namespace forecastlab::stats {

namespace {

void check_params(const HwParams& p) {
	const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
	if (!in_unit(p.alpha) || !in_unit(p.gamma) || !in_unit(p.delta)) {
		throw std::invalid_argument("HwParams: smoothing parameters must lie in [0, 1]");
	}
}

}  // namespace

HoltWintersState hw_init(const TimeSeries& series, int s, HwParams params) {
	check_params(params);
	if (s < 2) {
		throw std::invalid_argument("hw_init: period must be >= 2");
	}
	const auto& y = series.values();
	const std::size_t su = static_cast<std::size_t>(s);
	if (y.size() < 2 * su) {
		throw std::invalid_argument("hw_init: need at least two seasons");
	}
	for (std::size_t i = 0; i < 2 * su; ++i) {
		if (y[i] <= 0.0) {
			throw std::domain_error("hw_init: multiplicative model requires positive observations");
		}
	}

	double mean1 = 0.0;
	double mean2 = 0.0;
	for (std::size_t i = 0; i < su; ++i) {
		mean1 += y[i];
		mean2 += y[su + i];
	}
	mean1 /= static_cast<double>(s);
	mean2 /= static_cast<double>(s);

	HoltWintersState state;
	state.level = mean1;
	state.trend = (mean2 - mean1) / static_cast<double>(s);
	state.params = params;
	state.seasonal_indices.resize(su);
	double sum = 0.0;
	for (std::size_t i = 0; i < su; ++i) {
		const double idx = 0.5 * (y[i] / mean1 + y[su + i] / mean2);
		state.seasonal_indices[i] = idx;
		sum += idx;
	}
	for (double& idx : state.seasonal_indices) {
		idx *= static_cast<double>(s) / sum;
	}
	state.phase = s - 1;  // last absorbed observation is y_{2s-1}
	return state;
}

HoltWintersState hw_update(const HoltWintersState& state, double y_t) {
	if (y_t <= 0.0) {
		throw std::domain_error("hw_update: multiplicative model requires y > 0");
	}
	const int s = state.season();
	if (s < 2) {
		throw std::invalid_argument("hw_update: uninitialised state");
	}
	HoltWintersState next = state;
	next.phase = (state.phase + 1) % s;
	const double index_prev = state.seasonal_indices[static_cast<std::size_t>(next.phase)];
	const HwParams& p = state.params;

	next.level = p.alpha * (y_t / index_prev) +
	             (1.0 - p.alpha) * (state.level + state.trend);
	next.trend = p.gamma * (next.level - state.level) + (1.0 - p.gamma) * state.trend;
	next.seasonal_indices[static_cast<std::size_t>(next.phase)] =
	    p.delta * (y_t / next.level) + (1.0 - p.delta) * index_prev;
	return next;
}

double hw_forecast(const HoltWintersState& state, int k) {
	if (k < 1) {
		throw std::invalid_argument("hw_forecast: k must be >= 1");
	}
	const int s = state.season();
	const int slot = (state.phase + k) % s;
	return (state.level + static_cast<double>(k) * state.trend) *
	       state.seasonal_indices[static_cast<std::size_t>(slot)];
}

double hw_one_step_sse(const TimeSeries& series, int s, HwParams params) {
	HoltWintersState state = hw_init(series, s, params);
	const auto& y = series.values();
	double sse = 0.0;
	for (std::size_t t = 2 * static_cast<std::size_t>(s); t < y.size(); ++t) {
		const double err = y[t] - hw_forecast(state, 1);
		sse += err * err;
		state = hw_update(state, y[t]);
	}
	return sse;
}

HoltWintersState fit_hw(const TimeSeries& series, int s) {
	if (series.size() < static_cast<std::size_t>(3 * s)) {
		throw std::invalid_argument("fit_hw: need at least 3 seasons of data");
	}
	for (double v : series.values()) {
		if (v <= 0.0) {
			throw std::domain_error("fit_hw: multiplicative model requires positive observations");
		}
	}

	HwParams best;
	double best_sse = std::numeric_limits<double>::infinity();
	for (double a = 0.0; a <= 1.0001; a += 0.1) {
		for (double g = 0.0; g <= 1.0001; g += 0.1) {
			for (double d = 0.0; d <= 1.0001; d += 0.1) {
				const HwParams p{std::min(a, 1.0), std::min(g, 1.0), std::min(d, 1.0)};
				const double sse = hw_one_step_sse(series, s, p);
				if (sse < best_sse) {
					best_sse = sse;
					best = p;
				}
			}
		}
	}
	if (!std::isfinite(best_sse)) {
		throw std::runtime_error("fit_hw: grid search failed");
	}

	const auto refined = detail::nelder_mead(
	    [&](const std::vector<double>& x) {
		    return hw_one_step_sse(series, s, HwParams{x[0], x[1], x[2]});
	    },
	    {best.alpha, best.gamma, best.delta}, 0.05, {0.0, 0.0, 0.0},
	    {1.0, 1.0, 1.0}, 1e-6);
	const HwParams best_refined{refined[0], refined[1], refined[2]};

	HoltWintersState state = hw_init(series, s, best_refined);
	const auto& y = series.values();
	for (std::size_t t = 2 * static_cast<std::size_t>(s); t < y.size(); ++t) {
		state = hw_update(state, y[t]);
	}
	return state;
}

}  // namespace forecastlab::stats
