#include "forecastlab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "forecastlab/bp_training.hpp"
#include "forecastlab/csv.hpp"
#include "forecastlab/datasets.hpp"
#include "forecastlab/ensemble.hpp"
#include "forecastlab/holt_winters.hpp"
#include "forecastlab/pso_training.hpp"
#include "forecastlab/sann.hpp"
#include "forecastlab/sarima.hpp"
#include "forecastlab/svr.hpp"

namespace forecastlab::bench {

namespace {

std::uint64_t fnv1a(std::string_view text) {
	std::uint64_t h = 1469598103934665603ULL;
	for (unsigned char c : text) {
		h ^= c;
		h *= 1099511628211ULL;
	}
	return h;
}

// stable per-(seed, label) stream so rows are independent of model-list order
std::uint64_t row_seed(std::uint64_t seed, std::string_view label) {
	std::uint64_t x = fnv1a(label) ^ (seed * 0x9e3779b97f4a7c15ULL + 0xbf58476d1ce4e5b9ULL);
	x ^= x >> 33;
	x *= 0xff51afd7ed558ccdULL;
	x ^= x >> 33;
	return x;
}

std::string format_double(double v, int precision = 6) {
	std::ostringstream out;
	out.precision(precision);
	out << v;
	return out.str();
}

struct Prepared {
	TimeSeries train;
	TimeSeries test;
	int period;
	NormalizationMap map;
	std::vector<double> norm_train;
};

Prepared prepare(const TimeSeries& series, std::size_t n_train, int period) {
	if (period < 2) {
		throw std::invalid_argument("run: seasonal period must be >= 2");
	}
	auto [train, test] = split(series, n_train);
	auto [norm_series, map] = normalize(train);
	return Prepared{std::move(train), std::move(test), period, map,
	                norm_series.values()};
}

ModelOutcome run_sarima(const Prepared& p) {
	const auto model = stats::fit_sarima(p.train, p.period);
	ModelOutcome out;
	out.forecast = stats::forecast_sarima(model, p.train, static_cast<int>(p.test.size()));
	out.trained_params = {model.theta, model.Theta};
	out.row.hyper = "theta=" + format_double(model.theta) +
	                " Theta=" + format_double(model.Theta) +
	                " s=" + std::to_string(p.period);
	return out;
}

ModelOutcome run_hw(const Prepared& p) {
	const auto state = stats::fit_hw(p.train, p.period);
	ModelOutcome out;
	out.forecast.reserve(p.test.size());
	for (int k = 1; k <= static_cast<int>(p.test.size()); ++k) {
		out.forecast.push_back(stats::hw_forecast(state, k));
	}
	out.trained_params = {state.params.alpha, state.params.gamma, state.params.delta,
	                      state.level, state.trend};
	out.trained_params.insert(out.trained_params.end(), state.seasonal_indices.begin(),
	                          state.seasonal_indices.end());
	out.row.hyper = "alpha=" + format_double(state.params.alpha) +
	                " gamma=" + format_double(state.params.gamma) +
	                " delta=" + format_double(state.params.delta);
	return out;
}

ModelOutcome run_svr(const Prepared& p) {
	const int s = p.period;
	const std::size_t n = p.norm_train.size();
	if (n < 2 * static_cast<std::size_t>(s)) {
		throw std::invalid_argument("svr: training series shorter than two seasons");
	}
	std::vector<std::vector<double>> inputs;
	std::vector<double> targets;
	for (std::size_t i = 0; i + s < n; ++i) {
		inputs.emplace_back(p.norm_train.begin() + static_cast<std::ptrdiff_t>(i),
		                    p.norm_train.begin() + static_cast<std::ptrdiff_t>(i + s));
		targets.push_back(p.norm_train[i + static_cast<std::size_t>(s)]);
	}

	svr::SvrGrid grid = svr::default_grid();
	const svr::SvrHyper hyper =
	    svr::grid_search(inputs, targets, grid, static_cast<std::size_t>(s));
	const svr::SvrModel model = svr::solve_dual(inputs, targets, hyper);

	std::vector<double> window(p.norm_train.end() - s, p.norm_train.end());
	std::vector<double> norm_forecast;
	for (std::size_t h = 0; h < p.test.size(); ++h) {
		const double pred = svr::predict(model, window);
		norm_forecast.push_back(pred);
		window.erase(window.begin());
		window.push_back(pred);
	}

	ModelOutcome out;
	out.forecast = denormalize(norm_forecast, p.map);
	out.trained_params = model.beta;
	out.trained_params.push_back(model.bias);
	out.row.hyper = "C=" + format_double(hyper.C) + " sigma=" + format_double(hyper.sigma) +
	                " eps=" + format_double(hyper.epsilon) +
	                " nsv=" + std::to_string(model.beta.size());
	return out;
}

pso::PsoVariant pso_variant_for(const std::string& tag, const std::string& update_mode) {
	const bool toolbox = update_mode != "deterministic";
	if (tag == "trelea1") {
		return toolbox ? pso::basic_trelea1() : pso::trelea1();
	}
	if (tag == "trelea2") {
		return toolbox ? pso::basic_trelea2() : pso::trelea2();
	}
	if (tag == "clerc") {
		return pso::clerc_type1();
	}
	throw std::invalid_argument("unknown PSO variant tag '" + tag + "'");
}

ModelOutcome run_network(const Prepared& p, ann::NetworkKind kind,
                         const std::string& trainer_tag, std::uint64_t mixed_seed,
                         const TrainerOptions& trainer) {
	const int s = p.period;
	const TimeSeries norm_series(p.norm_train);
	const ann::PatternSet patterns = ann::build_seasonal_patterns(norm_series, s);

	int hidden = trainer.hidden;
	if (hidden <= 0) {
		if (kind == ann::NetworkKind::Elman) {
			hidden = 2 * s;  // fixed at 2s, not BIC-selected
		} else {
			const std::vector<int> candidates{1, 2, 3, 4};
			const ann::Trainer quick_lm = [&](const ann::SannTopology& topo,
			                                  const ann::PatternSet& pats) {
				bp::TrainOptions opts;
				opts.max_epochs = 100;
				opts.patience = 6;
				opts.seed = row_seed(mixed_seed, "bic-h" + std::to_string(topo.h));
				return bp::train_lm(topo, pats, opts).first;
			};
			hidden = ann::select_hidden_nodes(norm_series, s, candidates, quick_lm);
		}
	}

	const ann::SannTopology topology{s, hidden, kind};
	ann::ParameterVector params;
	std::string trainer_note;
	if (trainer_tag == "bp") {
		bp::TrainOptions opts;
		opts.max_epochs = trainer.bp_max_epochs;
		opts.patience = trainer.bp_patience;
		opts.seed = mixed_seed;
		if (kind == ann::NetworkKind::Feedforward) {
			params = bp::train_lm(topology, patterns, opts).first;
			trainer_note = "lm";
		} else {
			opts.max_epochs = std::max(opts.max_epochs, 500);
			params = bp::train_gdx(topology, patterns, opts).first;
			trainer_note = "gdx";
		}
	} else {
		pso::PsoOptions opts;
		opts.swarm_size = trainer.swarm_size;
		opts.max_iter = trainer.pso_max_iter;
		opts.seed = mixed_seed;
		opts.bound = trainer.pso_bound;
		opts.v_max = trainer.pso_vmax;
		opts.patience = trainer.pso_patience;
		const pso::PsoVariant variant = pso_variant_for(trainer_tag, trainer.pso_update);
		params = pso::train_pso(topology, patterns, variant, opts).first;
		trainer_note = "pso-" + trainer_tag + "/" + trainer.pso_update;
	}

	const std::vector<double> norm_forecast = ann::forecast_iterated(
	    params, topology, p.norm_train, static_cast<int>(p.test.size()), &patterns);

	ModelOutcome out;
	out.forecast = denormalize(norm_forecast, p.map);
	out.trained_params = params;
	out.row.hyper = "s=" + std::to_string(s) + " h=" + std::to_string(hidden) +
	                " D=" + std::to_string(ann::param_count(topology)) +
	                " trainer=" + trainer_note;
	return out;
}

struct LabelParts {
	bool network = false;
	ann::NetworkKind kind = ann::NetworkKind::Feedforward;
	std::string trainer_tag;  // "bp", "trelea1", "trelea2", "clerc", "average", "median"
};

LabelParts parse_label(const std::string& label) {
	LabelParts parts;
	if (label == "sarima" || label == "hw" || label == "svr") {
		parts.trainer_tag = label;
		return parts;
	}
	std::string rest;
	if (label.rfind("sfann-", 0) == 0) {
		parts.network = true;
		parts.kind = ann::NetworkKind::Feedforward;
		rest = label.substr(6);
	} else if (label.rfind("seann-", 0) == 0) {
		parts.network = true;
		parts.kind = ann::NetworkKind::Elman;
		rest = label.substr(6);
	} else {
		throw std::invalid_argument("unknown model label '" + label + "'");
	}
	if (rest == "bp") {
		parts.trainer_tag = "bp";
	} else if (rest.rfind("pso-", 0) == 0) {
		parts.trainer_tag = rest.substr(4);
	} else {
		throw std::invalid_argument("unknown model label '" + label + "'");
	}
	return parts;
}

}  // namespace

const std::vector<std::string>& all_model_labels() {
	static const std::vector<std::string> kLabels = {
	    "sarima",
	    "hw",
	    "svr",
	    "sfann-bp",
	    "sfann-pso-trelea1",
	    "sfann-pso-trelea2",
	    "sfann-pso-clerc",
	    "sfann-pso-average",
	    "sfann-pso-median",
	    "seann-bp",
	    "seann-pso-trelea1",
	    "seann-pso-trelea2",
	    "seann-pso-clerc",
	    "seann-pso-average",
	    "seann-pso-median",
	};
	return kLabels;
}

ModelOutcome run_single_model(const TimeSeries& series, std::size_t n_train,
                              int period, const std::string& label,
                              std::uint64_t seed, const TrainerOptions& trainer) {
	const LabelParts parts = parse_label(label);
	const Prepared p = prepare(series, n_train, period);
	const std::uint64_t mixed = row_seed(seed, label);

	const auto start = std::chrono::steady_clock::now();
	ModelOutcome out;
	if (!parts.network) {
		if (parts.trainer_tag == "sarima") {
			out = run_sarima(p);
		} else if (parts.trainer_tag == "hw") {
			out = run_hw(p);
		} else {
			out = run_svr(p);
		}
	} else if (parts.trainer_tag == "average" || parts.trainer_tag == "median") {
		const std::string prefix =
		    parts.kind == ann::NetworkKind::Feedforward ? "sfann" : "seann";
		ensemble::ForecastSet set;
		for (const char* tag : {"trelea1", "trelea2", "clerc"}) {
			const std::string member = prefix + "-pso-" + tag;
			auto member_out = run_single_model(series, n_train, period, member, seed, trainer);
			set.forecasts.push_back(std::move(member_out.forecast));
			set.labels.push_back(member);
		}
		out.forecast = ensemble::combine(set, parts.trainer_tag == "average"
		                                          ? ensemble::CombineMethod::Average
		                                          : ensemble::CombineMethod::Median);
		out.row.hyper = "members=3 method=" + parts.trainer_tag;
	} else {
		out = run_network(p, parts.kind, parts.trainer_tag, mixed, trainer);
	}
	const auto end = std::chrono::steady_clock::now();

	const ErrorMetrics metrics = evaluate(p.test.values(), out.forecast);
	out.row.model = label;
	out.row.seed = seed;
	out.row.mae = metrics.mae;
	out.row.mse = metrics.mse;
	out.row.seconds = std::chrono::duration<double>(end - start).count();
	out.row.ok = true;
	return out;
}

std::vector<ModelOutcome> run_experiment(const ExperimentConfig& config) {
	ExperimentConfig cfg = config;
	const TimeSeries series = load_dataset(cfg);
	resolve_defaults(cfg, series);
	if (cfg.models.empty()) cfg.models = all_model_labels();
	if (cfg.seeds.empty()) {
		throw std::invalid_argument("run_experiment: seed list must not be empty");
	}

	// member forecasts feeding ensemble rows, cached per (label, seed)
	std::map<std::pair<std::string, std::uint64_t>, ModelOutcome> cache;
	const auto run_cached = [&](const std::string& label,
	                            std::uint64_t seed) -> const ModelOutcome& {
		const auto key = std::make_pair(label, seed);
		auto it = cache.find(key);
		if (it == cache.end()) {
			it = cache
			         .emplace(key, run_single_model(series, cfg.n_train, cfg.period,
			                                        label, seed, cfg.trainer))
			         .first;
		}
		return it->second;
	};

	std::vector<ModelOutcome> outcomes;
	for (const auto& label : cfg.models) {
		for (const std::uint64_t seed : cfg.seeds) {
			ModelOutcome outcome;
			try {
				if (label.find("-pso-average") != std::string::npos ||
				    label.find("-pso-median") != std::string::npos) {
					// warm the member cache so ensembles reuse the member rows
					const std::string prefix = label.substr(0, 5);
					const auto start = std::chrono::steady_clock::now();
					ensemble::ForecastSet set;
					for (const char* tag : {"trelea1", "trelea2", "clerc"}) {
						const std::string member = prefix + "-pso-" + tag;
						const ModelOutcome& m = run_cached(member, seed);
						if (!m.row.ok) {
							throw std::runtime_error("ensemble member failed: " + member);
						}
						set.forecasts.push_back(m.forecast);
						set.labels.push_back(member);
					}
					const bool avg = label.find("average") != std::string::npos;
					outcome.forecast = ensemble::combine(
					    set, avg ? ensemble::CombineMethod::Average
					             : ensemble::CombineMethod::Median);
					const auto [train, test] = split(series, cfg.n_train);
					const ErrorMetrics metrics = evaluate(test.values(), outcome.forecast);
					const auto end = std::chrono::steady_clock::now();
					outcome.row.model = label;
					outcome.row.seed = seed;
					outcome.row.mae = metrics.mae;
					outcome.row.mse = metrics.mse;
					outcome.row.seconds = std::chrono::duration<double>(end - start).count();
					outcome.row.hyper = "members=3 method=" + label.substr(label.rfind('-') + 1);
					outcome.row.ok = true;
				} else {
					outcome = run_cached(label, seed);
				}
			} catch (const std::exception& e) {
				outcome = ModelOutcome{};
				outcome.row.model = label;
				outcome.row.seed = seed;
				outcome.row.ok = false;
				outcome.row.diagnostic = e.what();
			}
			if (cfg.scale_note && outcome.row.ok) {
				outcome.row.mae /= 1e2;
				outcome.row.mse /= 1e4;
			}
			if (cfg.single_thread) {
				outcome.row.seconds = 0.0;  // timing suppressed for reproducible reports
			}
			outcomes.push_back(std::move(outcome));
		}
	}
	return outcomes;
}

TimeSeries load_dataset(const ExperimentConfig& config) {
	if (config.dataset == "airline") {
		return airline_series();
	}
	return load_series_csv(config.dataset);
}

void resolve_defaults(ExperimentConfig& config, const TimeSeries& series) {
	if (config.dataset == "airline") {
		if (config.n_train == 0) config.n_train = 132;
		if (config.period == 0) config.period = 12;
	}
	if (config.n_train == 0) {
		throw std::invalid_argument("config: n_train is required for file datasets");
	}
	if (config.n_train >= series.size()) {
		throw std::invalid_argument("config: n_train must be smaller than the series length");
	}
	if (config.period == 0 && series.period_hint()) {
		config.period = *series.period_hint();
	}
	if (config.period < 2) {
		throw std::invalid_argument("config: seasonal period (>= 2) is required");
	}
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
	std::vector<std::string> out;
	std::string item;
	std::istringstream in(text);
	while (std::getline(in, item, ',')) {
		const auto a = item.find_first_not_of(" \t");
		const auto b = item.find_last_not_of(" \t");
		if (a == std::string::npos) continue;
		out.push_back(item.substr(a, b - a + 1));
	}
	return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
	std::vector<std::uint64_t> seeds;
	for (const auto& item : split_list(text)) {
		seeds.push_back(std::stoull(item));
	}
	return seeds;
}

bool parse_bool(const std::string& text) {
	return text == "1" || text == "true" || text == "yes" || text == "on";
}

void apply_key(ExperimentConfig& config, const std::string& key,
               const std::string& value, bool& seeds_set) {
	if (key == "dataset") {
		config.dataset = value;
	} else if (key == "n_train") {
		config.n_train = static_cast<std::size_t>(std::stoull(value));
	} else if (key == "period") {
		config.period = std::stoi(value);
	} else if (key == "models") {
		config.models = value == "all" ? all_model_labels() : split_list(value);
	} else if (key == "seeds") {
		config.seeds = parse_seeds(value);
		seeds_set = true;
	} else if (key == "hidden") {
		config.trainer.hidden = std::stoi(value);
	} else if (key == "swarm_size") {
		config.trainer.swarm_size = std::stoi(value);
	} else if (key == "pso_max_iter") {
		config.trainer.pso_max_iter = std::stoi(value);
	} else if (key == "pso_bound") {
		config.trainer.pso_bound = std::stod(value);
	} else if (key == "pso_vmax") {
		config.trainer.pso_vmax = std::stod(value);
	} else if (key == "pso_patience") {
		config.trainer.pso_patience = std::stoi(value);
	} else if (key == "pso_update") {
		if (value != "toolbox" && value != "deterministic") {
			throw std::invalid_argument("config: pso_update must be 'toolbox' or 'deterministic'");
		}
		config.trainer.pso_update = value;
	} else if (key == "bp_max_epochs") {
		config.trainer.bp_max_epochs = std::stoi(value);
	} else if (key == "bp_patience") {
		config.trainer.bp_patience = std::stoi(value);
	} else if (key == "out_dir") {
		config.out_dir = value;
	} else if (key == "scale_note") {
		config.scale_note = parse_bool(value);
	} else if (key == "single_thread") {
		config.single_thread = parse_bool(value);
	} else {
		throw std::invalid_argument("config: unknown key '" + key + "'");
	}
}

void apply_env_seeds(ExperimentConfig& config) {
	if (const char* env = std::getenv("FORECAST_LAB_SEED")) {
		const auto seeds = parse_seeds(env);
		if (!seeds.empty()) config.seeds = seeds;
	}
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, bool is_json) {
	ExperimentConfig config;
	bool seeds_set = false;
	apply_env_seeds(config);

	if (is_json) {
		const nlohmann::json doc = nlohmann::json::parse(text);
		for (const auto& [key, value] : doc.items()) {
			std::string str;
			if (value.is_string()) {
				str = value.get<std::string>();
			} else if (value.is_boolean()) {
				str = value.get<bool>() ? "true" : "false";
			} else if (value.is_array()) {
				std::ostringstream joined;
				bool first = true;
				for (const auto& item : value) {
					if (!first) joined << ',';
					first = false;
					if (item.is_string()) {
						joined << item.get<std::string>();
					} else {
						joined << item.dump();
					}
				}
				str = joined.str();
			} else {
				str = value.dump();
			}
			apply_key(config, key, str, seeds_set);
		}
		return config;
	}

	std::istringstream in(text);
	std::string line;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		const auto hash = line.find('#');
		if (hash != std::string::npos) line = line.substr(0, hash);
		const auto a = line.find_first_not_of(" \t\r");
		if (a == std::string::npos) continue;
		const auto eq = line.find('=');
		if (eq == std::string::npos) {
			throw std::invalid_argument("config: expected key=value at line " +
			                            std::to_string(line_no));
		}
		const auto trim = [](std::string s) {
			const auto x = s.find_first_not_of(" \t\r");
			const auto y = s.find_last_not_of(" \t\r");
			return x == std::string::npos ? std::string{} : s.substr(x, y - x + 1);
		};
		apply_key(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), seeds_set);
	}
	return config;
}

ExperimentConfig load_config(const std::string& path) {
	std::ifstream in(path);
	if (!in) {
		throw std::runtime_error("load_config: cannot open '" + path + "'");
	}
	std::ostringstream buffer;
	buffer << in.rdbuf();
	const std::string text = buffer.str();
	const auto first = text.find_first_not_of(" \t\r\n");
	const bool is_json = first != std::string::npos && text[first] == '{';
	return parse_config_text(text, is_json);
}

}  // namespace forecastlab::bench
