#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace forecastlab {

/**
 * @brief Ordered sequence of finite real observations with an optional
 *        seasonal period hint.
 *
 * Construction validates that the series is non-empty, that every value is
 * finite, and that a period hint s (if given) satisfies 2 <= s <= length/2.
 */
class TimeSeries {
public:
	TimeSeries() = default;
	explicit TimeSeries(std::vector<double> values,
	                    std::optional<int> period_hint = std::nullopt);

	const std::vector<double>& values() const { return values_; }
	std::size_t size() const { return values_.size(); }
	double operator[](std::size_t i) const { return values_[i]; }
	double front() const { return values_.front(); }
	double back() const { return values_.back(); }
	std::optional<int> period_hint() const { return period_hint_; }

private:
	std::vector<double> values_;
	std::optional<int> period_hint_;
};

/// Affine map between the original scale and [0, 1]; y_min < y_max required.
struct NormalizationMap {
	double y_min = 0.0;
	double y_max = 1.0;

	double range() const { return y_max - y_min; }
};

struct ErrorMetrics {
	double mae = 0.0;
	double mse = 0.0;
};

/**
 * @brief Sample autocorrelation coefficient r_k with the full-series mean in
 *        both numerator and denominator.
 *
 * Requires 0 <= lag <= length-1, length >= 2 and a non-constant series.
 */
double autocorrelation(const TimeSeries& series, int lag);

/**
 * @brief Rule-of-thumb seasonality test at a candidate period.
 *
 * For N <= 60 fires when r_s > 2/sqrt(N); for N > 60 both r_s and r_2s must
 * exceed the threshold. Ties fail.
 */
bool detect_seasonality(const TimeSeries& series, int candidate_s);

/// Threshold 2/sqrt(N) used by detect_seasonality.
double seasonality_threshold(std::size_t n);

/// Maps a non-constant series onto [0, 1]; returns the series and its map.
std::pair<TimeSeries, NormalizationMap> normalize(const TimeSeries& series);

/// Applies an existing map; values outside the original range extrapolate linearly.
std::vector<double> apply_normalization(std::span<const double> values,
                                        const NormalizationMap& map);

/// Exact inverse of apply_normalization.
std::vector<double> denormalize(std::span<const double> values,
                                const NormalizationMap& map);

/// Order-preserving prefix/suffix split; 1 <= n_train < length.
std::pair<TimeSeries, TimeSeries> split(const TimeSeries& series,
                                        std::size_t n_train);

/// MAE and MSE of a forecast against actuals of equal nonzero length.
ErrorMetrics evaluate(std::span<const double> actual,
                      std::span<const double> forecast);

}  // namespace forecastlab
