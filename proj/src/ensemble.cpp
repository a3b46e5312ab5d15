#include "forecastlab/ensemble.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace forecastlab::ensemble {

std::vector<double> combine(const ForecastSet& set, CombineMethod method) {
	if (set.forecasts.empty()) {
		throw std::invalid_argument("combine: forecast set is empty");
	}
	const std::size_t horizon = set.forecasts.front().size();
	for (const auto& f : set.forecasts) {
		if (f.size() != horizon) {
			throw std::invalid_argument("combine: ragged forecast lengths");
		}
	}
	if (!set.labels.empty()) {
		if (set.labels.size() != set.forecasts.size()) {
			throw std::invalid_argument("combine: label count does not match forecasts");
		}
		const std::set<std::string> unique(set.labels.begin(), set.labels.end());
		if (unique.size() != set.labels.size()) {
			throw std::invalid_argument("combine: duplicate labels");
		}
	}

	const std::size_t members = set.forecasts.size();
	std::vector<double> out(horizon, 0.0);
	if (method == CombineMethod::Average) {
		for (std::size_t t = 0; t < horizon; ++t) {
			double acc = 0.0;
			for (const auto& f : set.forecasts) acc += f[t];
			out[t] = acc / static_cast<double>(members);
		}
		return out;
	}

	std::vector<double> column(members);
	for (std::size_t t = 0; t < horizon; ++t) {
		for (std::size_t i = 0; i < members; ++i) column[i] = set.forecasts[i][t];
		std::sort(column.begin(), column.end());
		out[t] = members % 2 == 1
		             ? column[members / 2]
		             : 0.5 * (column[members / 2 - 1] + column[members / 2]);
	}
	return out;
}

}  // namespace forecastlab::ensemble
