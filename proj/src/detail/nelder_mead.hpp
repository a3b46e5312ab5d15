#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace forecastlab::detail {

// Small box-constrained Nelder-Mead used by the statistical model fitters.
// Out-of-box points are clamped before evaluation.
inline std::vector<double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> start, double step, const std::vector<double>& lo,
    const std::vector<double>& hi, double tol = 1e-6, int max_iter = 2000) {
	const std::size_t n = start.size();
	const auto clamp = [&](std::vector<double> x) {
		for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
		return x;
	};

	std::vector<std::vector<double>> simplex{clamp(start)};
	for (std::size_t i = 0; i < n; ++i) {
		auto v = simplex[0];
		v[i] += step;
		simplex.push_back(clamp(std::move(v)));
	}
	std::vector<double> value(simplex.size());
	for (std::size_t i = 0; i < simplex.size(); ++i) value[i] = f(simplex[i]);

	for (int iter = 0; iter < max_iter; ++iter) {
		std::vector<std::size_t> order(simplex.size());
		std::iota(order.begin(), order.end(), 0u);
		std::sort(order.begin(), order.end(),
		          [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
		const std::size_t best = order.front();
		const std::size_t worst = order.back();
		const std::size_t second_worst = order[order.size() - 2];

		if (value[worst] - value[best] < tol) break;

		std::vector<double> centroid(n, 0.0);
		for (std::size_t k : order) {
			if (k == worst) continue;
			for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i];
		}
		for (double& c : centroid) c /= static_cast<double>(n);

		const auto point = [&](double coeff) {
			std::vector<double> x(n);
			for (std::size_t i = 0; i < n; ++i) {
				x[i] = centroid[i] + coeff * (centroid[i] - simplex[worst][i]);
			}
			return clamp(std::move(x));
		};

		auto reflected = point(1.0);
		const double fr = f(reflected);
		if (fr < value[best]) {
			auto expanded = point(2.0);
			const double fe = f(expanded);
			if (fe < fr) {
				simplex[worst] = std::move(expanded);
				value[worst] = fe;
			} else {
				simplex[worst] = std::move(reflected);
				value[worst] = fr;
			}
		} else if (fr < value[second_worst]) {
			simplex[worst] = std::move(reflected);
			value[worst] = fr;
		} else {
			auto contracted = point(-0.5);
			const double fc = f(contracted);
			if (fc < value[worst]) {
				simplex[worst] = std::move(contracted);
				value[worst] = fc;
			} else {
				for (std::size_t k = 0; k < simplex.size(); ++k) {
					if (k == best) continue;
					for (std::size_t i = 0; i < n; ++i) {
						simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
					}
					value[k] = f(simplex[k]);
				}
			}
		}
	}

	const std::size_t best = static_cast<std::size_t>(
	    std::min_element(value.begin(), value.end()) - value.begin());
	return simplex[best];
}

}  // namespace forecastlab::detail
