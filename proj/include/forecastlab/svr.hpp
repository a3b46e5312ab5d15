#pragma once

#include <span>
#include <vector>

namespace forecastlab::svr {

struct SvrHyper {
	double C = 1.0;
	double sigma = 1.0;
	double epsilon = 0.01;
};

/**
 * @brief Trained epsilon-SVR in dual form: beta_i = alpha_i - alpha_i* over
 *        the support vectors only (zero-coefficient points are pruned).
 *
 * Feasibility: sum beta = 0 within 1e-8 and |beta_i| <= C.
 */
struct SvrModel {
	std::vector<std::vector<double>> support_inputs;
	std::vector<double> beta;
	double bias = 0.0;
	SvrHyper hyper;
	bool converged = true;
};

/// K(x, y) = exp(-||x - y||^2 / (2 sigma^2)).
double rbf_kernel(std::span<const double> x, std::span<const double> y, double sigma);

/**
 * @brief Maximises the epsilon-SVR dual by pairwise SMO with second-order
 *        working-set selection, stopping when the maximal KKT violation falls
 *        below 1e-4 (or at the iteration cap, flagged non-converged).
 *
 * Bias from unbounded support vectors (averaged); bound midpoint when none.
 */
SvrModel solve_dual(const std::vector<std::vector<double>>& inputs,
                    const std::vector<double>& targets, const SvrHyper& hyper);

/// y(x) = sum beta_i K(x, x_i) + bias.
double predict(const SvrModel& model, std::span<const double> x);

struct SvrGrid {
	std::vector<double> c_values;
	std::vector<double> sigma_values;
	double epsilon = 0.01;
};

/// Default grid: C in 2^-2..2^10, sigma in 2^-3..2^4.
SvrGrid default_grid();

/**
 * @brief Selects the (C, sigma) cell minimising validation MSE on the
 *        chronological tail (`validation_count` pairs); ties break toward
 *        smaller C, then larger sigma.
 */
SvrHyper grid_search(const std::vector<std::vector<double>>& inputs,
                     const std::vector<double>& targets, const SvrGrid& grid,
                     std::size_t validation_count);

}  // namespace forecastlab::svr
