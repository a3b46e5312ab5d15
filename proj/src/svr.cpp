#include "forecastlab/svr.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace forecastlab::svr {

double rbf_kernel(std::span<const double> x, std::span<const double> y, double sigma) {
	if (x.size() != y.size()) {
		throw std::invalid_argument("rbf_kernel: dimension mismatch");
	}
	if (sigma <= 0.0) {
		throw std::invalid_argument("rbf_kernel: sigma must be positive");
	}
	double dist2 = 0.0;
	for (std::size_t i = 0; i < x.size(); ++i) {
		const double d = x[i] - y[i];
		dist2 += d * d;
	}
	return std::exp(-dist2 / (2.0 * sigma * sigma));
}

namespace {

constexpr double kKktTol = 1e-4;
constexpr double kTau = 1e-12;

// SMO over the 2N-variable form: z = (alpha, alpha*), q = (+1, -1),
// minimising 1/2 z^T Q z + p^T z with Q[t][u] = q_t q_u K(t%N, u%N),
// p_t = eps - q_t y_{t%N}, subject to q^T z = 0 and 0 <= z <= C.
struct DualProblem {
	std::size_t n = 0;
	double c = 0.0;
	std::vector<double> kernel;  // n x n, row-major
	std::vector<double> p;       // 2n
	std::vector<double> z;       // 2n
	std::vector<double> grad;    // 2n

	double q(std::size_t t) const { return t < n ? 1.0 : -1.0; }
	double k(std::size_t t, std::size_t u) const {
		return kernel[(t % n) * n + (u % n)];
	}
	double qq(std::size_t t, std::size_t u) const {
		return kernel[(t % n) * n + (u % n)] * q(t) * q(u);
	}

	bool in_up(std::size_t t) const {
		return t < n ? z[t] < c - kTau : z[t] > kTau;
	}
	bool in_low(std::size_t t) const {
		return t < n ? z[t] > kTau : z[t] < c - kTau;
	}
};

}  // namespace

SvrModel solve_dual(const std::vector<std::vector<double>>& inputs,
                    const std::vector<double>& targets, const SvrHyper& hyper) {
	const std::size_t n = inputs.size();
	if (n < 2 || targets.size() != n) {
		throw std::invalid_argument("solve_dual: need >= 2 training pairs with matching targets");
	}
	if (hyper.C <= 0.0 || hyper.sigma <= 0.0 || hyper.epsilon < 0.0) {
		throw std::invalid_argument("solve_dual: invalid hyperparameters");
	}
	for (double t : targets) {
		if (!std::isfinite(t)) {
			throw std::invalid_argument("solve_dual: non-finite target");
		}
	}

	DualProblem d;
	d.n = n;
	d.c = hyper.C;
	d.kernel.resize(n * n);
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = i; j < n; ++j) {
			const double v = rbf_kernel(inputs[i], inputs[j], hyper.sigma);
			d.kernel[i * n + j] = v;
			d.kernel[j * n + i] = v;
		}
	}
	const std::size_t m = 2 * n;
	d.p.resize(m);
	for (std::size_t t = 0; t < m; ++t) {
		d.p[t] = hyper.epsilon - d.q(t) * targets[t % n];
	}
	d.z.assign(m, 0.0);
	d.grad = d.p;  // gradient at z = 0

	const long max_pairs = 200000;
	bool converged = false;
	double m_val = 0.0;
	double big_m_val = 0.0;
	for (long iter = 0; iter < max_pairs; ++iter) {
		// first index: maximal -q G over the upward-feasible set
		std::size_t i = m;
		m_val = -std::numeric_limits<double>::infinity();
		for (std::size_t t = 0; t < m; ++t) {
			if (!d.in_up(t)) continue;
			const double v = -d.q(t) * d.grad[t];
			if (v > m_val) {
				m_val = v;
				i = t;
			}
		}
		big_m_val = std::numeric_limits<double>::infinity();
		for (std::size_t t = 0; t < m; ++t) {
			if (!d.in_low(t)) continue;
			big_m_val = std::min(big_m_val, -d.q(t) * d.grad[t]);
		}
		if (i == m || m_val - big_m_val < kKktTol) {
			converged = true;
			break;
		}

		// second index: best second-order decrease among violating candidates
		std::size_t j = m;
		double best_gain = 0.0;
		for (std::size_t t = 0; t < m; ++t) {
			if (!d.in_low(t)) continue;
			const double diff = m_val - (-d.q(t) * d.grad[t]);
			if (diff <= 0.0) continue;
			double a = d.k(i, i) + d.k(t, t) - 2.0 * d.k(i, t);
			if (a <= 0.0) a = kTau;
			const double gain = diff * diff / a;
			if (gain > best_gain) {
				best_gain = gain;
				j = t;
			}
		}
		if (j == m) {
			converged = true;
			break;
		}

		// analytic pair update: z_i moves by q_i * delta, z_j by -q_j * delta;
		// curvature along that direction is K_ii + K_jj - 2 K_ij
		double a = d.k(i, i) + d.k(j, j) - 2.0 * d.k(i, j);
		if (a <= 0.0) a = kTau;
		const double diff = m_val - (-d.q(j) * d.grad[j]);
		double delta = diff / a;
		// box limits along the feasible direction
		const double room_i = d.q(i) > 0.0 ? d.c - d.z[i] : d.z[i];
		const double room_j = d.q(j) > 0.0 ? d.z[j] : d.c - d.z[j];
		delta = std::min(delta, std::min(room_i, room_j));
		if (delta <= 0.0) {
			converged = true;
			break;
		}
		const double dz_i = d.q(i) * delta;
		const double dz_j = -d.q(j) * delta;
		d.z[i] += dz_i;
		d.z[j] += dz_j;
		for (std::size_t t = 0; t < m; ++t) {
			d.grad[t] += d.qq(t, i) * dz_i + d.qq(t, j) * dz_j;
		}
	}

	// beta_i = alpha_i - alpha_i*
	std::vector<double> beta(n);
	for (std::size_t t = 0; t < n; ++t) {
		beta[t] = d.z[t] - d.z[t + n];
	}

	// bias: average over unbounded support vectors, else midpoint of the
	// feasibility interval [m, M] in -qG terms
	double bias = 0.0;
	{
		const auto f_nb = [&](std::size_t t) {
			double acc = 0.0;
			for (std::size_t u = 0; u < n; ++u) acc += beta[u] * d.kernel[t * n + u];
			return acc;
		};
		double sum = 0.0;
		int count = 0;
		for (std::size_t t = 0; t < n; ++t) {
			if (d.z[t] > kTau && d.z[t] < d.c - kTau) {
				sum += targets[t] - f_nb(t) - hyper.epsilon;
				++count;
			}
			if (d.z[t + n] > kTau && d.z[t + n] < d.c - kTau) {
				sum += targets[t] - f_nb(t) + hyper.epsilon;
				++count;
			}
		}
		if (count > 0) {
			bias = sum / count;
		} else {
			double lo = -std::numeric_limits<double>::infinity();
			double hi = std::numeric_limits<double>::infinity();
			for (std::size_t t = 0; t < 2 * n; ++t) {
				const double v = -d.q(t) * d.grad[t];
				if (d.in_up(t)) lo = std::max(lo, v);
				if (d.in_low(t)) hi = std::min(hi, v);
			}
			if (std::isfinite(lo) && std::isfinite(hi)) {
				bias = 0.5 * (lo + hi);
			}
		}
	}

	SvrModel model;
	model.hyper = hyper;
	model.bias = bias;
	model.converged = converged;
	for (std::size_t t = 0; t < n; ++t) {
		if (std::abs(beta[t]) > kTau) {
			model.support_inputs.push_back(inputs[t]);
			model.beta.push_back(beta[t]);
		}
	}
	return model;
}

double predict(const SvrModel& model, std::span<const double> x) {
	double acc = model.bias;
	for (std::size_t i = 0; i < model.beta.size(); ++i) {
		if (x.size() != model.support_inputs[i].size()) {
			throw std::invalid_argument("predict: dimension mismatch");
		}
		acc += model.beta[i] * rbf_kernel(x, model.support_inputs[i], model.hyper.sigma);
	}
	return acc;
}

SvrGrid default_grid() {
	SvrGrid grid;
	for (int e = -2; e <= 10; ++e) grid.c_values.push_back(std::ldexp(1.0, e));
	for (int e = -3; e <= 4; ++e) grid.sigma_values.push_back(std::ldexp(1.0, e));
	return grid;
}

SvrHyper grid_search(const std::vector<std::vector<double>>& inputs,
                     const std::vector<double>& targets, const SvrGrid& grid,
                     std::size_t validation_count) {
	if (grid.c_values.empty() || grid.sigma_values.empty()) {
		throw std::invalid_argument("grid_search: empty grid");
	}
	const std::size_t n = inputs.size();
	if (validation_count < 1 || validation_count >= n) {
		throw std::invalid_argument("grid_search: validation count must be in [1, n)");
	}
	const std::size_t n_fit = n - validation_count;
	const std::vector<std::vector<double>> fit_in(inputs.begin(),
	                                              inputs.begin() + static_cast<std::ptrdiff_t>(n_fit));
	const std::vector<double> fit_t(targets.begin(),
	                                targets.begin() + static_cast<std::ptrdiff_t>(n_fit));

	SvrHyper best;
	double best_mse = std::numeric_limits<double>::infinity();
	bool found = false;
	for (double c : grid.c_values) {
		for (double sigma : grid.sigma_values) {
			const SvrHyper hyper{c, sigma, grid.epsilon};
			double mse = 0.0;
			try {
				const SvrModel model = solve_dual(fit_in, fit_t, hyper);
				for (std::size_t v = n_fit; v < n; ++v) {
					const double e = targets[v] - predict(model, inputs[v]);
					mse += e * e;
				}
				mse /= static_cast<double>(validation_count);
			} catch (const std::exception&) {
				continue;
			}
			const bool better =
			    mse < best_mse ||
			    (mse == best_mse && (c < best.C || (c == best.C && sigma > best.sigma)));
			if (better || !found) {
				best = hyper;
				best_mse = mse;
				found = true;
			}
		}
	}
	if (!found) {
		throw std::runtime_error("grid_search: every grid cell failed to fit");
	}
	return best;
}

}  // namespace forecastlab::svr
