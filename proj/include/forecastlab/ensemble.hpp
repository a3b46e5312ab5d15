#pragma once

#include <string>
#include <vector>

namespace forecastlab::ensemble {

enum class CombineMethod { Average, Median };

/// Equal-length forecast vectors with unique labels.
struct ForecastSet {
	std::vector<std::vector<double>> forecasts;
	std::vector<std::string> labels;
};

/// Element-wise mean or median (even counts average the two central values).
std::vector<double> combine(const ForecastSet& set, CombineMethod method);

}  // namespace forecastlab::ensemble
