#include "forecastlab/sann.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace forecastlab::ann {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

using Layout = ParamLayout;

Layout layout_of(const SannTopology& t) {
	const std::size_t s = static_cast<std::size_t>(t.s);
	const std::size_t h = static_cast<std::size_t>(t.h);
	Layout l{};
	l.hidden_bias = 0;
	l.input_hidden = h;
	l.ctx_hidden = l.input_hidden + s * h;
	const std::size_t ctx = t.kind == NetworkKind::Elman ? h * h : 0;
	l.output_bias = l.ctx_hidden + ctx;
	l.hidden_output = l.output_bias + s;
	return l;
}

void check_params(const ParameterVector& params, const SannTopology& t) {
	if (params.size() != param_count(t)) {
		throw std::invalid_argument("parameter vector length does not match topology");
	}
}

void hidden_activations(const ParameterVector& w, const SannTopology& t,
                        const Layout& l, std::span<const double> input,
                        const double* context, std::vector<double>& hidden) {
	const int s = t.s;
	const int h = t.h;
	hidden.assign(static_cast<std::size_t>(h), 0.0);
	for (int j = 0; j < h; ++j) {
		double z = w[l.hidden_bias + static_cast<std::size_t>(j)];
		for (int i = 0; i < s; ++i) {
			z += w[l.input_hidden + static_cast<std::size_t>(i * h + j)] * input[static_cast<std::size_t>(i)];
		}
		if (context != nullptr) {
			for (int k = 0; k < h; ++k) {
				z += w[l.ctx_hidden + static_cast<std::size_t>(k * h + j)] * context[k];
			}
		}
		hidden[static_cast<std::size_t>(j)] = logistic(z);
	}
}

std::vector<double> output_layer(const ParameterVector& w, const SannTopology& t,
                                 const Layout& l, const std::vector<double>& hidden) {
	const int s = t.s;
	const int h = t.h;
	std::vector<double> out(static_cast<std::size_t>(s));
	for (int m = 0; m < s; ++m) {
		double v = w[l.output_bias + static_cast<std::size_t>(m)];
		for (int j = 0; j < h; ++j) {
			v += w[l.hidden_output + static_cast<std::size_t>(j * s + m)] * hidden[static_cast<std::size_t>(j)];
		}
		out[static_cast<std::size_t>(m)] = v;
	}
	return out;
}

}  // namespace

void validate(const SannTopology& topology) {
	if (topology.s < 2 || topology.h < 1) {
		throw std::invalid_argument("SannTopology: need s >= 2 and h >= 1");
	}
}

std::size_t param_count(const SannTopology& topology) {
	validate(topology);
	const std::size_t s = static_cast<std::size_t>(topology.s);
	const std::size_t h = static_cast<std::size_t>(topology.h);
	if (topology.kind == NetworkKind::Feedforward) {
		return s + h * (2 * s + 1);
	}
	return h * (s + h + 1) + s * (h + 1);
}

ParamLayout param_layout(const SannTopology& topology) {
	validate(topology);
	return layout_of(topology);
}

ElmanContext initial_context(const SannTopology& topology) {
	validate(topology);
	return ElmanContext(static_cast<std::size_t>(topology.h), 0.5);
}

std::vector<double> hidden_layer(const ParameterVector& params,
                                 const SannTopology& topology,
                                 std::span<const double> input,
                                 const ElmanContext* context) {
	validate(topology);
	check_params(params, topology);
	if (input.size() != static_cast<std::size_t>(topology.s)) {
		throw std::invalid_argument("hidden_layer: input length must equal s");
	}
	const Layout l = layout_of(topology);
	std::vector<double> hidden;
	hidden_activations(params, topology, l, input,
	                   context != nullptr ? context->data() : nullptr, hidden);
	return hidden;
}

std::size_t PatternSet::validation_tail() const {
	if (size() < 2 || season <= 0 || stride <= 0) return 0;
	const std::size_t want =
	    static_cast<std::size_t>((season + stride - 1) / stride);
	return std::min(want, size() - 1);
}

namespace {

PatternSet build_with_stride(const TimeSeries& series, int s, int stride) {
	if (s < 2) {
		throw std::invalid_argument("build_patterns: period must be >= 2");
	}
	const auto& y = series.values();
	if (y.size() < 2 * static_cast<std::size_t>(s)) {
		throw std::invalid_argument("build_patterns: series shorter than two seasons");
	}
	PatternSet set;
	set.season = s;
	set.stride = stride;
	const std::size_t su = static_cast<std::size_t>(s);
	for (std::size_t i = 0; i + 2 * su <= y.size(); i += static_cast<std::size_t>(stride)) {
		set.inputs.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(i),
		                        y.begin() + static_cast<std::ptrdiff_t>(i + su));
		set.targets.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(i + su),
		                         y.begin() + static_cast<std::ptrdiff_t>(i + 2 * su));
	}
	return set;
}

}  // namespace

PatternSet build_patterns(const TimeSeries& series, int s) {
	return build_with_stride(series, s, 1);
}

PatternSet build_seasonal_patterns(const TimeSeries& series, int s) {
	return build_with_stride(series, s, s);
}

std::vector<double> forward_sfann(const ParameterVector& params,
                                  const SannTopology& topology,
                                  std::span<const double> input) {
	validate(topology);
	if (topology.kind != NetworkKind::Feedforward) {
		throw std::invalid_argument("forward_sfann: feedforward topology required");
	}
	check_params(params, topology);
	if (input.size() != static_cast<std::size_t>(topology.s)) {
		throw std::invalid_argument("forward_sfann: input length must equal s");
	}
	const Layout l = layout_of(topology);
	std::vector<double> hidden;
	hidden_activations(params, topology, l, input, nullptr, hidden);
	return output_layer(params, topology, l, hidden);
}

std::pair<std::vector<double>, ElmanContext> forward_seann(
    const ParameterVector& params, const SannTopology& topology,
    std::span<const double> input, const ElmanContext& context) {
	validate(topology);
	if (topology.kind != NetworkKind::Elman) {
		throw std::invalid_argument("forward_seann: Elman topology required");
	}
	check_params(params, topology);
	if (input.size() != static_cast<std::size_t>(topology.s)) {
		throw std::invalid_argument("forward_seann: input length must equal s");
	}
	if (context.size() != static_cast<std::size_t>(topology.h)) {
		throw std::invalid_argument("forward_seann: context length must equal h");
	}
	const Layout l = layout_of(topology);
	std::vector<double> hidden;
	hidden_activations(params, topology, l, input, context.data(), hidden);
	auto out = output_layer(params, topology, l, hidden);
	return {std::move(out), std::move(hidden)};
}

std::pair<double, double> sse_split(const ParameterVector& params,
                                    const SannTopology& topology,
                                    const PatternSet& patterns,
                                    std::size_t n_fit) {
	validate(topology);
	check_params(params, topology);
	if (patterns.size() == 0) {
		throw std::invalid_argument("sse: empty pattern set");
	}
	if (n_fit > patterns.size()) {
		throw std::invalid_argument("sse_split: n_fit exceeds pattern count");
	}
	const Layout l = layout_of(topology);
	const bool elman = topology.kind == NetworkKind::Elman;
	ElmanContext ctx = elman ? initial_context(topology) : ElmanContext{};
	std::vector<double> hidden;

	double fit = 0.0;
	double val = 0.0;
	for (std::size_t p = 0; p < patterns.size(); ++p) {
		const auto& x = patterns.inputs[p];
		if (x.size() != static_cast<std::size_t>(topology.s)) {
			throw std::invalid_argument("sse: pattern width does not match topology");
		}
		hidden_activations(params, topology, l, x, elman ? ctx.data() : nullptr, hidden);
		const auto out = output_layer(params, topology, l, hidden);
		double acc = 0.0;
		const auto& target = patterns.targets[p];
		for (std::size_t m = 0; m < out.size(); ++m) {
			const double r = out[m] - target[m];
			acc += r * r;
		}
		(p < n_fit ? fit : val) += acc;
		if (elman) ctx = hidden;
	}
	return {fit, val};
}

double sse(const ParameterVector& params, const SannTopology& topology,
           const PatternSet& patterns) {
	return sse_split(params, topology, patterns, patterns.size()).first;
}

double bic(const SannTopology& topology, std::size_t n, double sse_value) {
	validate(topology);
	if (n < 1) {
		throw std::invalid_argument("bic: effective observation count must be >= 1");
	}
	const double s_floor = std::max(sse_value, 1e-12);
	const double params = static_cast<double>(param_count(topology));
	const double nn = static_cast<double>(n);
	return params + params * std::log(nn) + nn * std::log(s_floor / nn);
}

int select_hidden_nodes(const TimeSeries& training, int s,
                        std::span<const int> h_candidates, const Trainer& trainer) {
	if (h_candidates.empty()) {
		throw std::invalid_argument("select_hidden_nodes: no candidates");
	}
	const PatternSet patterns = build_seasonal_patterns(training, s);
	const std::size_t n_effective = training.size() - static_cast<std::size_t>(s);

	int best_h = -1;
	double best_bic = std::numeric_limits<double>::infinity();
	for (int h : h_candidates) {
		const SannTopology topology{s, h, NetworkKind::Feedforward};
		double candidate_bic = 0.0;
		try {
			const ParameterVector trained = trainer(topology, patterns);
			candidate_bic = bic(topology, n_effective, sse(trained, topology, patterns));
		} catch (const std::exception& e) {
			std::cerr << "select_hidden_nodes: candidate h=" << h
			          << " skipped: " << e.what() << "\n";
			continue;
		}
		if (candidate_bic < best_bic || (candidate_bic == best_bic && h < best_h)) {
			best_bic = candidate_bic;
			best_h = h;
		}
	}
	if (best_h < 0) {
		throw std::runtime_error("select_hidden_nodes: every candidate failed to train");
	}
	return best_h;
}

std::vector<double> forecast_iterated(const ParameterVector& params,
                                      const SannTopology& topology,
                                      std::span<const double> history,
                                      int horizon, const PatternSet* warmup) {
	validate(topology);
	check_params(params, topology);
	if (horizon < 1) {
		throw std::invalid_argument("forecast_iterated: horizon must be >= 1");
	}
	const std::size_t s = static_cast<std::size_t>(topology.s);
	if (history.size() < s) {
		throw std::invalid_argument("forecast_iterated: history shorter than one season");
	}

	const Layout l = layout_of(topology);
	const bool elman = topology.kind == NetworkKind::Elman;
	ElmanContext ctx;
	std::vector<double> hidden;
	if (elman) {
		ctx = initial_context(topology);
		if (warmup != nullptr) {
			for (const auto& x : warmup->inputs) {
				hidden_activations(params, topology, l, x, ctx.data(), hidden);
				ctx = hidden;
			}
		} else if (history.size() >= 2 * s) {
			for (std::size_t i = 0; i + 2 * s <= history.size(); i += s) {
				hidden_activations(params, topology, l, history.subspan(i, s), ctx.data(), hidden);
				ctx = hidden;
			}
		}
	}

	std::vector<double> window(history.end() - static_cast<std::ptrdiff_t>(s), history.end());
	std::vector<double> out;
	out.reserve(static_cast<std::size_t>(horizon));
	while (out.size() < static_cast<std::size_t>(horizon)) {
		std::vector<double> season;
		if (elman) {
			hidden_activations(params, topology, l, window, ctx.data(), hidden);
			season = output_layer(params, topology, l, hidden);
			ctx = hidden;
		} else {
			hidden_activations(params, topology, l, window, nullptr, hidden);
			season = output_layer(params, topology, l, hidden);
		}
		for (double v : season) {
			if (out.size() == static_cast<std::size_t>(horizon)) break;
			out.push_back(v);
		}
		window = std::move(season);
		window.resize(s);
	}
	return out;
}

}  // namespace forecastlab::ann
