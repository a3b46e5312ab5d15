#pragma once

#include <string>

#include "forecastlab/series.hpp"

namespace forecastlab {

/**
 * @brief Loads a univariate series from a CSV/text file.
 *
 * Accepts one observation per row, an optional header row and an optional
 * leading date column (the last field of each row is the value). The builtin
 * name "airline" is resolved by the callers, not here.
 *
 * Throws std::runtime_error naming the offending row on unreadable files,
 * non-numeric rows or empty series.
 */
TimeSeries load_series_csv(const std::string& path);

/// Writes `t,actual,forecast` rows; forecast is blank over the training range.
void write_plot_csv(const TimeSeries& series, std::span<const double> forecast,
                    const std::string& path);

}  // namespace forecastlab
