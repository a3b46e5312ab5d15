#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "forecastlab/sann.hpp"

namespace forecastlab::bp {

struct TrainOptions {
	int max_epochs = 1000;
	std::uint64_t seed = 1;
	/// Fraction of trailing patterns held out for early stopping.
	/// Negative = automatic (patterns covering the last season); 0 = none.
	double validation_fraction = -1.0;
	int patience = 6;
	double lm_lambda0 = 1e-3;
	double lm_factor = 10.0;
	double gdx_lr0 = 0.01;
	double gdx_momentum = 0.9;
	double gdx_inc = 1.05;
	double gdx_dec = 0.7;
	double gdx_max_perf_inc = 1.04;
};

enum class StopReason { MaxEpochs, EarlyStop, Converged };

struct TrainTrace {
	std::vector<double> train_sse;
	std::vector<double> validation_sse;  // NaN entries when no validation split
	std::vector<char> accepted;
	StopReason stop = StopReason::MaxEpochs;
};

/**
 * @brief dSSE/dw in ParameterVector layout.
 *
 * Elman gradients are truncated: the context sequence produced by the forward
 * sweep is treated as constant input at each step (no backprop through time).
 */
ann::ParameterVector gradient(const ann::ParameterVector& params,
                              const ann::SannTopology& topology,
                              const ann::PatternSet& patterns);

/// Residuals out - target, flattened pattern-major (pattern_count * s entries).
Eigen::VectorXd residuals(const ann::ParameterVector& params,
                          const ann::SannTopology& topology,
                          const ann::PatternSet& patterns);

/// Jacobian of the residual vector; feedforward topologies only.
Eigen::MatrixXd jacobian(const ann::ParameterVector& params,
                         const ann::SannTopology& topology,
                         const ann::PatternSet& patterns);

/// Levenberg-Marquardt for feedforward nets; accepted steps strictly decrease SSE.
std::pair<ann::ParameterVector, TrainTrace> train_lm(
    const ann::SannTopology& topology, const ann::PatternSet& patterns,
    const TrainOptions& opts);

/// Gradient descent with momentum and adaptive learning rate (any topology).
std::pair<ann::ParameterVector, TrainTrace> train_gdx(
    const ann::SannTopology& topology, const ann::PatternSet& patterns,
    const TrainOptions& opts);

/// i.i.d. uniform [-0.5, 0.5] initial parameters; deterministic per seed.
ann::ParameterVector init_params(const ann::SannTopology& topology,
                                 std::uint64_t seed);

/// Number of trailing validation patterns implied by the options.
std::size_t validation_count(const ann::PatternSet& patterns,
                             const TrainOptions& opts);

}  // namespace forecastlab::bp
