#include "forecastlab/datasets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace forecastlab {

TimeSeries airline_series() {
	static const std::vector<double> kAirline = {
	    112, 118, 132, 129, 121, 135, 148, 148, 136, 119, 104, 118,
	    115, 126, 141, 135, 125, 149, 170, 170, 158, 133, 114, 140,
	    145, 150, 178, 163, 172, 178, 199, 199, 184, 162, 146, 166,
	    171, 180, 193, 181, 183, 218, 230, 242, 209, 191, 172, 194,
	    196, 196, 236, 235, 229, 243, 264, 272, 237, 211, 180, 201,
	    204, 188, 235, 227, 234, 264, 302, 293, 259, 229, 203, 229,
	    242, 233, 267, 269, 270, 315, 364, 347, 312, 274, 237, 278,
	    284, 277, 317, 313, 318, 374, 413, 405, 355, 306, 271, 306,
	    315, 301, 356, 348, 355, 422, 465, 467, 404, 347, 305, 336,
	    340, 318, 362, 348, 363, 435, 491, 505, 404, 359, 310, 337,
	    360, 342, 406, 396, 420, 472, 548, 559, 463, 407, 362, 405,
	    417, 391, 419, 461, 472, 535, 622, 606, 508, 461, 390, 432,
	};
	return TimeSeries(kAirline, 12);
}

TimeSeries generate_synthetic(int s, int n, double trend, double noise_sd,
                              std::uint64_t seed) {
	if (s < 2 || n < 2 * s) {
		throw std::invalid_argument("generate_synthetic: need s >= 2 and n >= 2s");
	}
	if (noise_sd < 0.0) {
		throw std::invalid_argument("generate_synthetic: noise_sd must be nonnegative");
	}
	constexpr double kBase = 100.0;
	std::mt19937_64 rng(seed);
	std::normal_distribution<double> noise(0.0, noise_sd > 0.0 ? noise_sd : 1.0);

	std::vector<double> y(static_cast<std::size_t>(n));
	for (int t = 0; t < n; ++t) {
		const double phase = static_cast<double>(t % s) / static_cast<double>(s);
		const double profile = 1.0 + 0.4 * std::sin(2.0 * std::numbers::pi * phase);
		double v = (kBase + trend * static_cast<double>(t)) * profile;
		if (noise_sd > 0.0) {
			v += noise(rng);
		}
		y[static_cast<std::size_t>(t)] = v;
	}
	return TimeSeries(std::move(y), s);
}

}  // namespace forecastlab
