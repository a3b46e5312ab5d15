#include "forecastlab/sarima.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "detail/nelder_mead.hpp"

namespace forecastlab::stats {

TimeSeries difference(const TimeSeries& series, int d, int D, int s) {
	if (d < 0 || d > 1 || D < 0 || D > 1) {
		throw std::invalid_argument("difference: d and D must be 0 or 1");
	}
	if (D > 0 && s < 2) {
		throw std::invalid_argument("difference: seasonal differencing needs s >= 2");
	}
	std::vector<double> w = series.values();
	if (w.size() <= static_cast<std::size_t>(d + D * s)) {
		throw std::invalid_argument("difference: series too short for requested differencing");
	}
	if (d == 1) {
		for (std::size_t t = w.size() - 1; t >= 1; --t) w[t] -= w[t - 1];
		w.erase(w.begin());
	}
	if (D == 1) {
		const std::size_t su = static_cast<std::size_t>(s);
		for (std::size_t t = w.size() - 1; t >= su; --t) w[t] -= w[t - su];
		w.erase(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(su));
	}
	return TimeSeries(std::move(w));
}

namespace {

double css_of_diff(const std::vector<double>& w, double theta, double Theta, int s) {
	const std::size_t n = w.size();
	const std::size_t su = static_cast<std::size_t>(s);
	std::vector<double> z(n, 0.0);
	double acc = 0.0;
	for (std::size_t t = 0; t < n; ++t) {
		double zt = w[t];
		if (t >= 1) zt += theta * z[t - 1];
		if (t >= su) zt += Theta * z[t - su];
		if (t >= su + 1) zt -= theta * Theta * z[t - su - 1];
		z[t] = zt;
		acc += zt * zt;
	}
	if (!std::isfinite(acc)) {
		throw std::runtime_error("sarima_css: residual recursion diverged");
	}
	return acc;
}

}  // namespace

double sarima_css(const TimeSeries& series, double theta, double Theta, int s) {
	if (std::abs(theta) >= 1.0 || std::abs(Theta) >= 1.0) {
		throw std::invalid_argument("sarima_css: coefficients must be inside (-1, 1)");
	}
	const TimeSeries w = difference(series, 1, 1, s);
	return css_of_diff(w.values(), theta, Theta, s);
}

SarimaAirline fit_sarima(const TimeSeries& series, int s) {
	if (series.size() < static_cast<std::size_t>(3 * s)) {
		throw std::invalid_argument("fit_sarima: need at least 3 seasons of data");
	}
	const TimeSeries wseries = difference(series, 1, 1, s);
	const std::vector<double>& w = wseries.values();

	const auto objective = [&](double theta, double Theta) {
		return css_of_diff(w, theta, Theta, s);
	};

	double best_theta = 0.0;
	double best_Theta = 0.0;
	double best = std::numeric_limits<double>::infinity();
	for (double theta = -0.95; theta <= 0.9501; theta += 0.05) {
		for (double Theta = -0.95; Theta <= 0.9501; Theta += 0.05) {
			const double c = objective(theta, Theta);
			if (c < best) {
				best = c;
				best_theta = theta;
				best_Theta = Theta;
			}
		}
	}

	const auto boxed = detail::nelder_mead(
	    [&](const std::vector<double>& x) { return objective(x[0], x[1]); },
	    {best_theta, best_Theta}, 0.05, {-0.99, -0.99}, {0.99, 0.99}, 1e-6);
	const double refined = objective(boxed[0], boxed[1]);
	if (!std::isfinite(refined)) {
		throw std::runtime_error("fit_sarima: optimiser produced non-finite CSS");
	}

	SarimaAirline model;
	model.theta = boxed[0];
	model.Theta = boxed[1];
	model.s = s;
	model.residual_variance = refined / static_cast<double>(w.size());
	return model;
}

std::vector<double> forecast_sarima(const SarimaAirline& model,
                                    const TimeSeries& history, int horizon) {
	if (horizon < 1) {
		throw std::invalid_argument("forecast_sarima: horizon must be >= 1");
	}
	const int s = model.s;
	if (history.size() < static_cast<std::size_t>(s + 1)) {
		throw std::invalid_argument("forecast_sarima: history shorter than s + 1");
	}

	std::vector<double> y = history.values();
	const std::size_t n = y.size();
	const std::size_t su = static_cast<std::size_t>(s);

	// time-aligned in-sample residuals, zero before the first complete window
	std::vector<double> z(n, 0.0);
	for (std::size_t t = su + 1; t < n; ++t) {
		double zt = y[t] - y[t - 1] - y[t - su] + y[t - su - 1];
		zt += model.theta * z[t - 1];
		zt += model.Theta * z[t - su];
		zt -= model.theta * model.Theta * z[t - su - 1];
		z[t] = zt;
	}

	const auto z_at = [&](std::size_t t) { return t < n ? z[t] : 0.0; };

	std::vector<double> out;
	out.reserve(static_cast<std::size_t>(horizon));
	for (int h = 0; h < horizon; ++h) {
		const std::size_t t = n + static_cast<std::size_t>(h);
		double pred = y[t - 1] + y[t - su] - y[t - su - 1];
		pred -= model.theta * z_at(t - 1);
		pred -= model.Theta * z_at(t - su);
		pred += model.theta * model.Theta * z_at(t - su - 1);
		y.push_back(pred);
		out.push_back(pred);
	}
	return out;
}

}  // namespace forecastlab::stats
