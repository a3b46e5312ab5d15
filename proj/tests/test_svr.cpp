#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "forecastlab/svr.hpp"
#include "support/qp_oracle.hpp"

using namespace forecastlab::svr;

namespace {

using svr_oracle::make_dual;
using svr_oracle::model_dual_objective;
using svr_oracle::oracle_best_objective;

std::vector<std::vector<double>> random_inputs(std::size_t n, std::size_t dim,
                                               std::mt19937_64& rng) {
	std::uniform_real_distribution<double> uni(-1.0, 1.0);
	std::vector<std::vector<double>> x(n, std::vector<double>(dim));
	for (auto& row : x) {
		for (double& v : row) v = uni(rng);
	}
	return x;
}

}  // namespace

TEST_CASE("rbf_kernel basics") {
	const std::vector<double> x{0.3, -0.7};
	CHECK(rbf_kernel(x, x, 2.0) == doctest::Approx(1.0));
	CHECK(rbf_kernel(std::vector<double>{0.0}, std::vector<double>{1.0}, 1.0) ==
	      doctest::Approx(std::exp(-0.5)));
	CHECK_THROWS_AS(rbf_kernel(x, std::vector<double>{1.0}, 1.0), std::invalid_argument);
	CHECK_THROWS_AS(rbf_kernel(x, x, 0.0), std::invalid_argument);

	std::mt19937_64 rng(4);
	for (int rep = 0; rep < 100; ++rep) {
		const auto pts = random_inputs(2, 3, rng);
		CHECK(rbf_kernel(pts[0], pts[1], 0.7) ==
		      doctest::Approx(rbf_kernel(pts[1], pts[0], 0.7)));
		CHECK(rbf_kernel(pts[0], pts[1], 0.7) > 0.0);
		CHECK(rbf_kernel(pts[0], pts[1], 0.7) <= 1.0);
	}
}

TEST_CASE("two points inside the tube give a pure-bias model") {
	const std::vector<std::vector<double>> inputs{{0.0}, {1.0}};
	const std::vector<double> targets{0.50, 0.52};
	const SvrHyper hyper{10.0, 1.0, 0.1};
	const auto model = solve_dual(inputs, targets, hyper);
	CHECK(model.beta.empty());
	CHECK(predict(model, std::vector<double>{0.4}) == doctest::Approx(model.bias));
	// bias sits inside the feasible band around the mean
	CHECK(model.bias == doctest::Approx(0.51).epsilon(0.05));
}

TEST_CASE("dual feasibility after solve") {
	std::mt19937_64 rng(11);
	std::uniform_real_distribution<double> uni(-1.0, 1.0);
	for (int rep = 0; rep < 10; ++rep) {
		const std::size_t n = 8;
		const auto inputs = random_inputs(n, 2, rng);
		std::vector<double> targets(n);
		for (double& v : targets) v = uni(rng);
		const SvrHyper hyper{4.0, 0.8, 0.05};
		const auto model = solve_dual(inputs, targets, hyper);

		double sum = 0.0;
		for (double b : model.beta) {
			sum += b;
			CHECK(std::abs(b) <= hyper.C + 1e-8);
			CHECK(std::abs(b) > 0.0);  // support set excludes zeros
		}
		CHECK(std::abs(sum) < 1e-8);
	}
}

TEST_CASE("solver matches the brute-force QP oracle on small instances") {
	std::mt19937_64 rng(2025);
	std::uniform_real_distribution<double> uni(-1.0, 1.0);
	for (int rep = 0; rep < 10; ++rep) {
		const std::size_t n = 3 + static_cast<std::size_t>(rep % 4);  // 3..6 points
		const auto inputs = random_inputs(n, 2, rng);
		std::vector<double> targets(n);
		for (double& v : targets) v = uni(rng);
		const SvrHyper hyper{2.0, 1.0, 0.05};

		const auto model = solve_dual(inputs, targets, hyper);
		const auto dual = make_dual(inputs, targets, hyper);
		const double oracle = oracle_best_objective(dual);
		const double mine = model_dual_objective(model, inputs, targets);
		CHECK(mine <= oracle + 1e-4);
		CHECK(mine >= oracle - 1e-3);  // oracle itself is approximate
	}
}

TEST_CASE("duplicated training point behaves like a doubled box on its beta") {
	std::mt19937_64 rng(31);
	const auto base = random_inputs(5, 2, rng);
	std::uniform_real_distribution<double> uni(-1.0, 1.0);
	std::vector<double> targets(5);
	for (double& v : targets) v = uni(rng);

	auto dup_inputs = base;
	dup_inputs.push_back(base[0]);
	auto dup_targets = targets;
	dup_targets.push_back(targets[0]);

	// production solver on the duplicated instance vs the oracle on the
	// deduplicated instance with the box doubled on that point's variables
	const SvrHyper hyper{1.0, 0.9, 0.05};
	const auto model_dup = solve_dual(dup_inputs, dup_targets, hyper);

	auto dual = svr_oracle::make_dual(base, targets, hyper);
	dual.cap.assign(2 * dual.n, hyper.C);
	dual.cap[0] = 2.0 * hyper.C;           // alpha side of the duplicated point
	dual.cap[dual.n] = 2.0 * hyper.C;      // alpha* side
	const auto z = svr_oracle::oracle_solution(dual, 200000);

	for (int rep = 0; rep < 20; ++rep) {
		const auto probe = random_inputs(1, 2, rng)[0];
		const double merged =
		    svr_oracle::oracle_predict(dual, z, base, hyper.sigma, probe);
		CHECK(predict(model_dup, probe) == doctest::Approx(merged).epsilon(2e-3));
	}
}

TEST_CASE("predict equals the unpruned expansion") {
	std::mt19937_64 rng(7);
	const auto inputs = random_inputs(10, 3, rng);
	std::uniform_real_distribution<double> uni(-1.0, 1.0);
	std::vector<double> targets(10);
	for (double& v : targets) v = uni(rng);
	const SvrHyper hyper{3.0, 1.2, 0.1};
	const auto model = solve_dual(inputs, targets, hyper);

	// single support vector sanity: one beta=1 point at x predicts K(x,x)=1
	SvrModel single;
	single.hyper = hyper;
	single.support_inputs = {{0.5, 0.5, 0.5}};
	single.beta = {1.0};
	single.bias = 0.0;
	CHECK(predict(single, std::vector<double>{0.5, 0.5, 0.5}) == doctest::Approx(1.0));

	// pruning is lossless: add explicit zero-beta members and compare
	SvrModel padded = model;
	padded.support_inputs.push_back(inputs[0]);
	padded.beta.push_back(0.0);
	for (int rep = 0; rep < 10; ++rep) {
		const auto probe = random_inputs(1, 3, rng)[0];
		CHECK(predict(model, probe) == doctest::Approx(predict(padded, probe)).epsilon(1e-12));
	}

	CHECK_THROWS_AS(predict(model, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("predictions are invariant under permuting the training set") {
	std::mt19937_64 rng(13);
	const auto inputs = random_inputs(8, 2, rng);
	std::uniform_real_distribution<double> uni(-1.0, 1.0);
	std::vector<double> targets(8);
	for (double& v : targets) v = uni(rng);

	auto perm_inputs = inputs;
	auto perm_targets = targets;
	std::vector<std::size_t> order{5, 2, 7, 0, 4, 1, 6, 3};
	for (std::size_t i = 0; i < order.size(); ++i) {
		perm_inputs[i] = inputs[order[i]];
		perm_targets[i] = targets[order[i]];
	}

	const SvrHyper hyper{2.0, 0.7, 0.05};
	const auto a = solve_dual(inputs, targets, hyper);
	const auto b = solve_dual(perm_inputs, perm_targets, hyper);
	for (int rep = 0; rep < 20; ++rep) {
		const auto probe = random_inputs(1, 2, rng)[0];
		CHECK(predict(a, probe) == doctest::Approx(predict(b, probe)).epsilon(1e-5));
	}
}

TEST_CASE("a huge tube empties the support set") {
	std::mt19937_64 rng(17);
	const auto inputs = random_inputs(6, 2, rng);
	std::uniform_real_distribution<double> uni(-1.0, 1.0);
	std::vector<double> targets(6);
	for (double& v : targets) v = uni(rng);
	const auto model = solve_dual(inputs, targets, SvrHyper{5.0, 1.0, 10.0});
	CHECK(model.beta.empty());
	CHECK(predict(model, inputs[0]) == doctest::Approx(model.bias));
}

TEST_CASE("grid_search selects the argmin cell") {
	// noiseless RBF-representable target from a known generator cell
	std::mt19937_64 rng(23);
	const auto inputs = random_inputs(30, 2, rng);
	const SvrHyper truth{8.0, 1.0, 0.0};
	SvrModel generator;
	generator.hyper = truth;
	generator.support_inputs = {{0.2, 0.2}, {-0.5, 0.4}, {0.6, -0.6}};
	generator.beta = {1.0, -0.6, -0.4};
	generator.bias = 0.3;
	std::vector<double> targets;
	targets.reserve(inputs.size());
	for (const auto& x : inputs) targets.push_back(predict(generator, x));

	SvrGrid grid;
	grid.c_values = {0.25, 1.0, 8.0};
	grid.sigma_values = {0.25, 1.0, 4.0};
	grid.epsilon = 0.01;
	const auto chosen = grid_search(inputs, targets, grid, 6);

	// the chosen cell's validation MSE must be minimal across the whole grid
	const auto validation_mse = [&](const SvrHyper& hyper) {
		const std::size_t n_fit = inputs.size() - 6;
		const std::vector<std::vector<double>> fit_in(inputs.begin(),
		                                              inputs.begin() + n_fit);
		const std::vector<double> fit_t(targets.begin(), targets.begin() + n_fit);
		const auto model = solve_dual(fit_in, fit_t, hyper);
		double mse = 0.0;
		for (std::size_t v = n_fit; v < inputs.size(); ++v) {
			const double e = targets[v] - predict(model, inputs[v]);
			mse += e * e;
		}
		return mse / 6.0;
	};
	const double chosen_mse = validation_mse(chosen);
	for (double c : grid.c_values) {
		for (double sigma : grid.sigma_values) {
			CHECK(chosen_mse <= validation_mse({c, sigma, grid.epsilon}) + 1e-9);
		}
	}

	// single-cell grid returns that cell
	SvrGrid single;
	single.c_values = {2.0};
	single.sigma_values = {0.5};
	const auto only = grid_search(inputs, targets, single, 6);
	CHECK(only.C == 2.0);
	CHECK(only.sigma == 0.5);

	CHECK_THROWS_AS(grid_search(inputs, targets, SvrGrid{}, 6), std::invalid_argument);
}

TEST_CASE("dual objective is non-increasing across SMO-style refinement") {
	// monotonicity witnessed through the oracle objective of progressively
	// tighter solves: the final model is at least as good as a 2-point start
	std::mt19937_64 rng(41);
	const auto inputs = random_inputs(6, 2, rng);
	std::uniform_real_distribution<double> uni(-1.0, 1.0);
	std::vector<double> targets(6);
	for (double& v : targets) v = uni(rng);
	const SvrHyper hyper{2.0, 1.0, 0.05};
	const auto model = solve_dual(inputs, targets, hyper);
	const double final_obj = model_dual_objective(model, inputs, targets);
	CHECK(final_obj <= 0.0 + 1e-12);  // z = 0 scores 0; the solver only improves
}
