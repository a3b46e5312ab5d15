#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "forecastlab/series.hpp"

namespace forecastlab::ann {

enum class NetworkKind { Feedforward, Elman };

/**
 * @brief s x h x s seasonal network shape: s input and s output nodes (one
 *        seasonal period each side), h logistic hidden nodes, identity
 *        output activation. The Elman kind adds a context layer of size h
 *        fed back from the hidden layer.
 */
struct SannTopology {
	int s = 2;
	int h = 1;
	NetworkKind kind = NetworkKind::Feedforward;
};

/// Throws unless s >= 2 and h >= 1.
void validate(const SannTopology& topology);

/**
 * @brief Number of free parameters (= PSO particle dimension).
 *
 * Feedforward: s + h(2s+1). Elman: h(s+h+1) + s(h+1).
 */
std::size_t param_count(const SannTopology& topology);

/**
 * Flat parameter layout, in order:
 *   [0, h)              hidden biases
 *   [h, h+s*h)          input-to-hidden weights, w(i,j) at h + i*h + j
 *   (Elman only) +h*h   context-to-hidden weights, w(k,j) at offset + k*h + j
 *   next s              output biases
 *   last h*s            hidden-to-output weights, w(j,m) at offset + j*s + m
 */
using ParameterVector = std::vector<double>;

/// Block offsets within the flat parameter layout (see above).
struct ParamLayout {
	std::size_t hidden_bias;
	std::size_t input_hidden;
	std::size_t ctx_hidden;
	std::size_t output_bias;
	std::size_t hidden_output;
};

ParamLayout param_layout(const SannTopology& topology);

/// Context layer activations (length h); initialised to 0.5 at sequence start.
using ElmanContext = std::vector<double>;

ElmanContext initial_context(const SannTopology& topology);

/// Logistic hidden activations for one input window (context used for Elman).
std::vector<double> hidden_layer(const ParameterVector& params,
                                 const SannTopology& topology,
                                 std::span<const double> input,
                                 const ElmanContext* context = nullptr);

/**
 * @brief Input/target window pairs for seasonal network training.
 *
 * Windows are chronological; pattern i's target window starts exactly s steps
 * after its input window. `stride` records the construction step (1 for
 * sliding windows, s for non-overlapping season blocks).
 */
struct PatternSet {
	std::vector<std::vector<double>> inputs;
	std::vector<std::vector<double>> targets;
	int season = 0;
	int stride = 1;
	bool chronological = true;

	std::size_t size() const { return inputs.size(); }

	/// Number of trailing patterns whose targets cover the final season;
	/// used as the default early-stopping validation block. Capped at size-1.
	std::size_t validation_tail() const;
};

/// Sliding windows with stride 1: count = length - 2s + 1. Requires length >= 2s.
PatternSet build_patterns(const TimeSeries& series, int s);

/**
 * @brief Phase-aligned season-to-season blocks (stride s): pattern i maps
 *        season i onto season i+1; count = floor((length - s) / s).
 *
 * This is the construction the benchmark pipeline trains on: each
 * post-first-season observation appears as a target exactly once, matching
 * the effective-observation count n = N - s used by the BIC.
 */
PatternSet build_seasonal_patterns(const TimeSeries& series, int s);

/// One feedforward pass; input length s, returns the s outputs.
std::vector<double> forward_sfann(const ParameterVector& params,
                                  const SannTopology& topology,
                                  std::span<const double> input);

/// One Elman pass; returns the outputs and the new context (hidden activations).
std::pair<std::vector<double>, ElmanContext> forward_seann(
    const ParameterVector& params, const SannTopology& topology,
    std::span<const double> input, const ElmanContext& context);

/**
 * @brief Sum squared error over a pattern set.
 *
 * For the Elman kind the context starts at 0.5 and threads through the
 * patterns in chronological order.
 */
double sse(const ParameterVector& params, const SannTopology& topology,
           const PatternSet& patterns);

/// Fit/validation SSE of the first n_fit and remaining patterns, computed in
/// one chronological sweep (so Elman context threads across the boundary).
std::pair<double, double> sse_split(const ParameterVector& params,
                                    const SannTopology& topology,
                                    const PatternSet& patterns,
                                    std::size_t n_fit);

/// BIC = N_{s,h} + N_{s,h} ln(n) + n ln(S/n); S floored at 1e-12.
double bic(const SannTopology& topology, std::size_t n, double sse_value);

using Trainer =
    std::function<ParameterVector(const SannTopology&, const PatternSet&)>;

/**
 * @brief Trains a feedforward net per candidate hidden count and returns the
 *        BIC-minimising h (ties toward smaller h).
 *
 * BIC uses the full training-pattern SSE of each trained candidate with
 * n = N - s effective observations. Candidates whose training throws are
 * skipped with a warning; throws if every candidate fails.
 */
int select_hidden_nodes(const TimeSeries& training, int s,
                        std::span<const int> h_candidates, const Trainer& trainer);

/**
 * @brief Multi-season forecast by feeding each predicted season back as the
 *        next input. The final block is truncated to exactly `horizon`.
 *
 * `history` must be at least one season long (same scale the network was
 * trained on). For the Elman kind the context is warmed by a forward sweep
 * over `warmup` (the training patterns) when given, else over the seasonal
 * blocks of `history`.
 */
std::vector<double> forecast_iterated(const ParameterVector& params,
                                      const SannTopology& topology,
                                      std::span<const double> history,
                                      int horizon,
                                      const PatternSet* warmup = nullptr);

}  // namespace forecastlab::ann
