#include "forecastlab/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace forecastlab {

TimeSeries::TimeSeries(std::vector<double> values, std::optional<int> period_hint)
    : values_(std::move(values)), period_hint_(period_hint) {
	if (values_.empty()) {
		throw std::invalid_argument("TimeSeries: series must contain at least one observation");
	}
	for (std::size_t i = 0; i < values_.size(); ++i) {
		if (!std::isfinite(values_[i])) {
			throw std::invalid_argument("TimeSeries: non-finite value at index " + std::to_string(i));
		}
	}
	if (period_hint_) {
		const int s = *period_hint_;
		if (s < 2 || static_cast<std::size_t>(s) * 2 > values_.size()) {
			throw std::invalid_argument("TimeSeries: period hint must satisfy 2 <= s <= length/2");
		}
	}
}

namespace {

double centered_sum_of_squares(const std::vector<double>& y, double mean) {
	double den = 0.0;
	for (double v : y) {
		den += (v - mean) * (v - mean);
	}
	return den;
}

}  // namespace

double autocorrelation(const TimeSeries& series, int lag) {
	const auto& y = series.values();
	const std::size_t n = y.size();
	if (n < 2) {
		throw std::invalid_argument("autocorrelation: series must have length >= 2");
	}
	if (lag < 0 || static_cast<std::size_t>(lag) > n - 1) {
		throw std::invalid_argument("autocorrelation: lag out of range");
	}

	double mean = 0.0;
	for (double v : y) mean += v;
	mean /= static_cast<double>(n);

	const double den = centered_sum_of_squares(y, mean);
	if (den <= 0.0) {
		throw std::domain_error("autocorrelation: constant series has degenerate variance");
	}

	double num = 0.0;
	for (std::size_t t = 0; t + lag < n; ++t) {
		num += (y[t] - mean) * (y[t + lag] - mean);
	}
	return num / den;
}

double seasonality_threshold(std::size_t n) {
	return 2.0 / std::sqrt(static_cast<double>(n));
}

bool detect_seasonality(const TimeSeries& series, int candidate_s) {
	const std::size_t n = series.size();
	if (candidate_s < 1) {
		throw std::invalid_argument("detect_seasonality: candidate period must be positive");
	}
	const double threshold = seasonality_threshold(n);
	if (n <= 60) {
		if (static_cast<std::size_t>(candidate_s) > n - 1) {
			throw std::invalid_argument("detect_seasonality: candidate period too large for series length");
		}
		return autocorrelation(series, candidate_s) > threshold;
	}
	if (static_cast<std::size_t>(candidate_s) * 2 > n - 1) {
		throw std::invalid_argument("detect_seasonality: candidate period too large for series length");
	}
	return autocorrelation(series, candidate_s) > threshold &&
	       autocorrelation(series, 2 * candidate_s) > threshold;
}

std::pair<TimeSeries, NormalizationMap> normalize(const TimeSeries& series) {
	const auto& y = series.values();
	double lo = y.front();
	double hi = y.front();
	for (double v : y) {
		lo = std::min(lo, v);
		hi = std::max(hi, v);
	}
	if (!(lo < hi)) {
		throw std::domain_error("normalize: constant series has degenerate range");
	}
	const NormalizationMap map{lo, hi};
	return {TimeSeries(apply_normalization(y, map), series.period_hint()), map};
}

std::vector<double> apply_normalization(std::span<const double> values,
                                        const NormalizationMap& map) {
	if (!(map.y_min < map.y_max)) {
		throw std::invalid_argument("apply_normalization: invalid map (y_min >= y_max)");
	}
	std::vector<double> out;
	out.reserve(values.size());
	for (double v : values) {
		out.push_back((v - map.y_min) / map.range());
	}
	return out;
}

std::vector<double> denormalize(std::span<const double> values,
                                const NormalizationMap& map) {
	if (!(map.y_min < map.y_max)) {
		throw std::invalid_argument("denormalize: invalid map (y_min >= y_max)");
	}
	std::vector<double> out;
	out.reserve(values.size());
	for (double v : values) {
		out.push_back(v * map.range() + map.y_min);
	}
	return out;
}

std::pair<TimeSeries, TimeSeries> split(const TimeSeries& series, std::size_t n_train) {
	const auto& y = series.values();
	if (n_train < 1 || n_train >= y.size()) {
		throw std::invalid_argument("split: n_train must satisfy 1 <= n_train < length");
	}
	std::vector<double> head(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n_train));
	std::vector<double> tail(y.begin() + static_cast<std::ptrdiff_t>(n_train), y.end());
	return {TimeSeries(std::move(head)), TimeSeries(std::move(tail))};
}

ErrorMetrics evaluate(std::span<const double> actual, std::span<const double> forecast) {
	if (actual.empty() || actual.size() != forecast.size()) {
		throw std::invalid_argument("evaluate: sequences must have equal nonzero length");
	}
	double abs_sum = 0.0;
	double sq_sum = 0.0;
	for (std::size_t i = 0; i < actual.size(); ++i) {
		const double e = actual[i] - forecast[i];
		abs_sum += std::abs(e);
		sq_sum += e * e;
	}
	const double n = static_cast<double>(actual.size());
	return {abs_sum / n, sq_sum / n};
}

}  // namespace forecastlab
