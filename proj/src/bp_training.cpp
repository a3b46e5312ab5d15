#include "forecastlab/bp_training.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace forecastlab::bp {

using ann::ElmanContext;
using ann::NetworkKind;
using ann::ParameterVector;
using ann::PatternSet;
using ann::SannTopology;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_inputs(const ParameterVector& params, const SannTopology& topology,
                  const PatternSet& patterns) {
	ann::validate(topology);
	if (params.size() != ann::param_count(topology)) {
		throw std::invalid_argument("parameter vector length does not match topology");
	}
	if (patterns.size() == 0) {
		throw std::invalid_argument("empty pattern set");
	}
	if (patterns.season != topology.s) {
		throw std::invalid_argument("pattern width does not match topology");
	}
}

PatternSet head_patterns(const PatternSet& patterns, std::size_t n) {
	PatternSet out = patterns;
	out.inputs.assign(patterns.inputs.begin(), patterns.inputs.begin() + static_cast<std::ptrdiff_t>(n));
	out.targets.assign(patterns.targets.begin(), patterns.targets.begin() + static_cast<std::ptrdiff_t>(n));
	return out;
}

}  // namespace

std::size_t validation_count(const PatternSet& patterns, const TrainOptions& opts) {
	if (opts.validation_fraction == 0.0) return 0;
	if (patterns.size() < 2) return 0;
	if (opts.validation_fraction < 0.0) return patterns.validation_tail();
	auto n = static_cast<std::size_t>(
	    std::lround(opts.validation_fraction * static_cast<double>(patterns.size())));
	n = std::max<std::size_t>(n, 1);
	return std::min(n, patterns.size() - 1);
}

ParameterVector init_params(const SannTopology& topology, std::uint64_t seed) {
	ann::validate(topology);
	std::mt19937_64 rng(seed);
	std::uniform_real_distribution<double> uni(-0.5, 0.5);
	ParameterVector w(ann::param_count(topology));
	for (double& v : w) v = uni(rng);
	return w;
}

ParameterVector gradient(const ParameterVector& params, const SannTopology& topology,
                         const PatternSet& patterns) {
	check_inputs(params, topology, patterns);
	const auto layout = ann::param_layout(topology);
	const int s = topology.s;
	const int h = topology.h;
	const bool elman = topology.kind == NetworkKind::Elman;

	ParameterVector grad(params.size(), 0.0);
	ElmanContext ctx = elman ? ann::initial_context(topology) : ElmanContext{};

	for (std::size_t p = 0; p < patterns.size(); ++p) {
		const auto& x = patterns.inputs[p];
		const auto& target = patterns.targets[p];
		const auto hidden =
		    ann::hidden_layer(params, topology, x, elman ? &ctx : nullptr);

		// residuals r_m = out_m - target_m
		std::vector<double> r(static_cast<std::size_t>(s));
		for (int m = 0; m < s; ++m) {
			double v = params[layout.output_bias + static_cast<std::size_t>(m)];
			for (int j = 0; j < h; ++j) {
				v += params[layout.hidden_output + static_cast<std::size_t>(j * s + m)] *
				     hidden[static_cast<std::size_t>(j)];
			}
			r[static_cast<std::size_t>(m)] = v - target[static_cast<std::size_t>(m)];
		}

		for (int m = 0; m < s; ++m) {
			grad[layout.output_bias + static_cast<std::size_t>(m)] += 2.0 * r[static_cast<std::size_t>(m)];
		}
		for (int j = 0; j < h; ++j) {
			const double hj = hidden[static_cast<std::size_t>(j)];
			double delta = 0.0;  // dSSE/dz_j for this pattern
			for (int m = 0; m < s; ++m) {
				const double a_jm = params[layout.hidden_output + static_cast<std::size_t>(j * s + m)];
				grad[layout.hidden_output + static_cast<std::size_t>(j * s + m)] +=
				    2.0 * r[static_cast<std::size_t>(m)] * hj;
				delta += 2.0 * r[static_cast<std::size_t>(m)] * a_jm;
			}
			delta *= hj * (1.0 - hj);
			grad[layout.hidden_bias + static_cast<std::size_t>(j)] += delta;
			for (int i = 0; i < s; ++i) {
				grad[layout.input_hidden + static_cast<std::size_t>(i * h + j)] +=
				    delta * x[static_cast<std::size_t>(i)];
			}
			if (elman) {
				for (int k = 0; k < h; ++k) {
					grad[layout.ctx_hidden + static_cast<std::size_t>(k * h + j)] +=
					    delta * ctx[static_cast<std::size_t>(k)];
				}
			}
		}
		if (elman) ctx = hidden;
	}
	return grad;
}

Eigen::VectorXd residuals(const ParameterVector& params, const SannTopology& topology,
                          const PatternSet& patterns) {
	check_inputs(params, topology, patterns);
	const int s = topology.s;
	Eigen::VectorXd r(static_cast<Eigen::Index>(patterns.size()) * s);
	const bool elman = topology.kind == NetworkKind::Elman;
	ElmanContext ctx = elman ? ann::initial_context(topology) : ElmanContext{};
	for (std::size_t p = 0; p < patterns.size(); ++p) {
		std::vector<double> out;
		if (elman) {
			auto [o, next] = ann::forward_seann(params, topology, patterns.inputs[p], ctx);
			out = std::move(o);
			ctx = std::move(next);
		} else {
			out = ann::forward_sfann(params, topology, patterns.inputs[p]);
		}
		for (int m = 0; m < s; ++m) {
			r(static_cast<Eigen::Index>(p) * s + m) =
			    out[static_cast<std::size_t>(m)] - patterns.targets[p][static_cast<std::size_t>(m)];
		}
	}
	return r;
}

Eigen::MatrixXd jacobian(const ParameterVector& params, const SannTopology& topology,
                         const PatternSet& patterns) {
	if (topology.kind != NetworkKind::Feedforward) {
		throw std::invalid_argument("jacobian: feedforward topology required");
	}
	check_inputs(params, topology, patterns);
	const auto layout = ann::param_layout(topology);
	const int s = topology.s;
	const int h = topology.h;
	const Eigen::Index dim = static_cast<Eigen::Index>(params.size());

	Eigen::MatrixXd jac =
	    Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(patterns.size()) * s, dim);
	for (std::size_t p = 0; p < patterns.size(); ++p) {
		const auto& x = patterns.inputs[p];
		const auto hidden = ann::hidden_layer(params, topology, x);
		for (int m = 0; m < s; ++m) {
			const Eigen::Index row = static_cast<Eigen::Index>(p) * s + m;
			jac(row, static_cast<Eigen::Index>(layout.output_bias) + m) = 1.0;
			for (int j = 0; j < h; ++j) {
				const double hj = hidden[static_cast<std::size_t>(j)];
				const double a_jm =
				    params[layout.hidden_output + static_cast<std::size_t>(j * s + m)];
				const double dz = a_jm * hj * (1.0 - hj);
				jac(row, static_cast<Eigen::Index>(layout.hidden_output) + j * s + m) = hj;
				jac(row, static_cast<Eigen::Index>(layout.hidden_bias) + j) = dz;
				for (int i = 0; i < s; ++i) {
					jac(row, static_cast<Eigen::Index>(layout.input_hidden) + i * h + j) =
					    dz * x[static_cast<std::size_t>(i)];
				}
			}
		}
	}
	return jac;
}

namespace {

// Shared early-stopping bookkeeping: returns best-validation parameters when a
// validation split is active, the final parameters otherwise.
class StopMonitor {
public:
	StopMonitor(std::size_t n_val, int patience)
	    : n_val_(n_val), patience_(patience) {}

	bool has_validation() const { return n_val_ > 0; }

	// Returns true when early stopping fires.
	bool observe(double val_sse, const ParameterVector& current) {
		if (n_val_ == 0) return false;
		if (val_sse < best_val_) {
			best_val_ = val_sse;
			best_params_ = current;
			streak_ = 0;
			return false;
		}
		++streak_;
		return streak_ >= patience_;
	}

	ParameterVector result(const ParameterVector& final_params) const {
		if (n_val_ > 0 && !best_params_.empty()) return best_params_;
		return final_params;
	}

private:
	std::size_t n_val_;
	int patience_;
	double best_val_ = std::numeric_limits<double>::infinity();
	ParameterVector best_params_;
	int streak_ = 0;
};

}  // namespace

std::pair<ParameterVector, TrainTrace> train_lm(const SannTopology& topology,
                                                const PatternSet& patterns,
                                                const TrainOptions& opts) {
	if (topology.kind != NetworkKind::Feedforward) {
		throw std::invalid_argument("train_lm: feedforward topology required");
	}
	const std::size_t n_val = validation_count(patterns, opts);
	const std::size_t n_fit = patterns.size() - n_val;
	const PatternSet fit = n_val > 0 ? head_patterns(patterns, n_fit) : patterns;

	ParameterVector w = init_params(topology, opts.seed);
	const Eigen::Index dim = static_cast<Eigen::Index>(w.size());
	double lambda = opts.lm_lambda0;
	double current = ann::sse(w, topology, fit);
	if (!std::isfinite(current)) {
		throw std::runtime_error("train_lm: non-finite SSE at initial parameters");
	}

	TrainTrace trace;
	StopMonitor monitor(n_val, opts.patience);
	{
		const double v = n_val > 0 ? ann::sse_split(w, topology, patterns, n_fit).second : kNaN;
		monitor.observe(v, w);
	}
	trace.stop = StopReason::MaxEpochs;

	for (int epoch = 0; epoch < opts.max_epochs; ++epoch) {
		const Eigen::VectorXd r = residuals(w, topology, fit);
		const Eigen::MatrixXd jac = jacobian(w, topology, fit);
		const Eigen::MatrixXd normal = jac.transpose() * jac;
		const Eigen::VectorXd rhs = -(jac.transpose() * r);

		bool stepped = false;
		ParameterVector candidate = w;
		double candidate_sse = current;
		while (lambda <= 1e12) {
			Eigen::MatrixXd damped = normal;
			damped.diagonal().array() += lambda;
			Eigen::LLT<Eigen::MatrixXd> llt(damped);
			if (llt.info() != Eigen::Success) {
				damped.diagonal().array() += 1e-10;
				llt.compute(damped);
				if (llt.info() != Eigen::Success) {
					lambda *= opts.lm_factor;
					continue;
				}
			}
			const Eigen::VectorXd delta = llt.solve(rhs);
			for (Eigen::Index i = 0; i < dim; ++i) {
				candidate[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] + delta(i);
			}
			candidate_sse = ann::sse(candidate, topology, fit);
			if (!std::isfinite(candidate_sse)) {
				throw std::runtime_error("train_lm: non-finite SSE during step search");
			}
			if (candidate_sse < current) {
				stepped = true;
				lambda = std::max(lambda / opts.lm_factor, 1e-12);
				break;
			}
			lambda *= opts.lm_factor;
		}

		if (!stepped) {
			trace.stop = StopReason::Converged;
			break;
		}
		w = candidate;
		current = candidate_sse;
		const double val =
		    n_val > 0 ? ann::sse_split(w, topology, patterns, n_fit).second : kNaN;
		trace.train_sse.push_back(current);
		trace.validation_sse.push_back(val);
		trace.accepted.push_back(1);
		if (monitor.observe(val, w)) {
			trace.stop = StopReason::EarlyStop;
			break;
		}
	}
	return {monitor.result(w), trace};
}

std::pair<ParameterVector, TrainTrace> train_gdx(const SannTopology& topology,
                                                 const PatternSet& patterns,
                                                 const TrainOptions& opts) {
	const std::size_t n_val = validation_count(patterns, opts);
	const std::size_t n_fit = patterns.size() - n_val;
	const PatternSet fit = n_val > 0 ? head_patterns(patterns, n_fit) : patterns;

	ParameterVector w = init_params(topology, opts.seed);
	ParameterVector step(w.size(), 0.0);
	double lr = opts.gdx_lr0;
	double current = ann::sse(w, topology, fit);
	if (!std::isfinite(current)) {
		throw std::runtime_error("train_gdx: non-finite SSE at initial parameters");
	}

	TrainTrace trace;
	StopMonitor monitor(n_val, opts.patience);
	{
		const double v = n_val > 0 ? ann::sse_split(w, topology, patterns, n_fit).second : kNaN;
		monitor.observe(v, w);
	}
	trace.stop = StopReason::MaxEpochs;

	for (int epoch = 0; epoch < opts.max_epochs; ++epoch) {
		const ParameterVector grad = gradient(w, topology, fit);
		double grad_norm = 0.0;
		for (double g : grad) grad_norm += g * g;
		if (grad_norm <= 1e-24) {
			trace.stop = StopReason::Converged;
			break;
		}

		ParameterVector candidate(w.size());
		for (std::size_t i = 0; i < w.size(); ++i) {
			step[i] = opts.gdx_momentum * step[i] - lr * grad[i];
			candidate[i] = w[i] + step[i];
		}
		const double next = ann::sse(candidate, topology, fit);
		if (!std::isfinite(next)) {
			throw std::runtime_error("train_gdx: non-finite SSE during training");
		}

		bool accepted = true;
		if (next > opts.gdx_max_perf_inc * current) {
			// reject: keep weights, damp the rate, clear momentum
			accepted = false;
			lr *= opts.gdx_dec;
			std::fill(step.begin(), step.end(), 0.0);
		} else {
			w = candidate;
			if (next < current) lr *= opts.gdx_inc;
			current = next;
		}

		const double val =
		    n_val > 0 ? ann::sse_split(w, topology, patterns, n_fit).second : kNaN;
		trace.train_sse.push_back(current);
		trace.validation_sse.push_back(val);
		trace.accepted.push_back(accepted ? 1 : 0);
		if (accepted && monitor.observe(val, w)) {
			trace.stop = StopReason::EarlyStop;
			break;
		}
	}
	return {monitor.result(w), trace};
}

}  // namespace forecastlab::bp
