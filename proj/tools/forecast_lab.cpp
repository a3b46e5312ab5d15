#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "forecastlab/csv.hpp"
#include "forecastlab/datasets.hpp"
#include "forecastlab/report.hpp"
#include "forecastlab/runner.hpp"
#include "forecastlab/series.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitModel = 3;

forecastlab::TimeSeries load_input(const std::string& name) {
	if (name == "airline") {
		return forecastlab::airline_series();
	}
	return forecastlab::load_series_csv(name);
}

int cmd_detect(const std::string& input, int period) {
	const auto series = load_input(input);
	const double threshold = forecastlab::seasonality_threshold(series.size());
	const double r_s = forecastlab::autocorrelation(series, period);
	std::cout << "n=" << series.size() << " s=" << period << "\n";
	std::cout << "r_" << period << " = " << r_s << "\n";
	if (series.size() > 60) {
		std::cout << "r_" << 2 * period << " = "
		          << forecastlab::autocorrelation(series, 2 * period) << "\n";
	}
	std::cout << "threshold 2/sqrt(n) = " << threshold << "\n";
	const bool seasonal = forecastlab::detect_seasonality(series, period);
	std::cout << (seasonal ? "seasonal" : "not seasonal") << " at period " << period
	          << "\n";
	return kExitOk;
}

void write_series_csv(const forecastlab::TimeSeries& series, const std::string& path) {
	std::ofstream out(path);
	if (!out) {
		throw std::runtime_error("synth: cannot open '" + path + "' for writing");
	}
	out << "value\n";
	out.precision(12);
	for (double v : series.values()) out << v << "\n";
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"Seasonal time-series forecasting laboratory"};
	app.require_subcommand(1);

	// ---- detect ----
	auto* detect = app.add_subcommand("detect", "Correlogram-based seasonality test");
	std::string detect_input;
	int detect_period = 12;
	detect->add_option("input", detect_input, "CSV path or 'airline'")->required();
	detect->add_option("--period", detect_period, "candidate seasonal period")
	    ->required();

	// ---- fit / forecast ----
	auto* fit = app.add_subcommand("fit", "Fit one model and report test errors");
	auto* forecast = app.add_subcommand("forecast", "Fit one model and print forecasts");
	std::string model_label;
	std::string model_input;
	forecastlab::bench::ExperimentConfig single_cfg;
	single_cfg.seeds.clear();  // single-model commands default to one seed
	std::string plot_path;
	for (CLI::App* sub : {fit, forecast}) {
		sub->add_option("model", model_label, "model label (see --list-models)")->required();
		sub->add_option("input", model_input, "CSV path or 'airline'")->required();
		sub->add_option("--n-train", single_cfg.n_train, "training prefix length");
		sub->add_option("--period", single_cfg.period, "seasonal period");
		sub->add_option("--seed", single_cfg.seeds, "seed list")->delimiter(',');
		sub->add_option("--hidden", single_cfg.trainer.hidden,
		                "hidden nodes (0 = automatic)");
		sub->add_option("--pso-max-iter", single_cfg.trainer.pso_max_iter, "PSO iterations");
		sub->add_option("--pso-update", single_cfg.trainer.pso_update,
		                "toolbox | deterministic");
	}
	forecast->add_option("--plot", plot_path, "write t,actual,forecast CSV here");

	// ---- bench ----
	auto* bench = app.add_subcommand("bench", "Run the full model-matrix benchmark");
	std::string config_path;
	std::string out_path;
	std::string format = "csv";
	bool single_thread = false;
	bool timing = false;
	bench->add_option("--config", config_path, "key=value or JSON config file")
	    ->required();
	bench->add_option("--out", out_path, "report output path (default: report.<fmt>)");
	bench->add_option("--format", format, "csv | json | markdown")
	    ->check(CLI::IsMember({"csv", "json", "markdown"}));
	bench->add_flag("--single-thread", single_thread,
	                "bit-reproducible mode (timing suppressed)");
	bench->add_flag("--timing", timing, "report measured wall times");

	// ---- synth ----
	auto* synth = app.add_subcommand("synth", "Generate a synthetic seasonal series");
	int synth_s = 12;
	int synth_n = 144;
	double synth_trend = 1.0;
	double synth_noise = 2.0;
	std::uint64_t synth_seed = 1;
	std::string synth_out = "synthetic.csv";
	synth->add_option("--period", synth_s, "seasonal period")->required();
	synth->add_option("--n", synth_n, "series length")->required();
	synth->add_option("--trend", synth_trend, "linear trend per step");
	synth->add_option("--noise-sd", synth_noise, "noise standard deviation");
	synth->add_option("--seed", synth_seed, "generator seed");
	synth->add_option("-o,--out", synth_out, "output CSV path");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? kExitOk : kExitUsage;
	}

	try {
		if (detect->parsed()) {
			return cmd_detect(detect_input, detect_period);
		}
		if (fit->parsed() || forecast->parsed()) {
			single_cfg.dataset = model_input;
			single_cfg.models = {model_label};
			if (single_cfg.seeds.empty()) single_cfg.seeds = {1};
			const auto series = forecastlab::bench::load_dataset(single_cfg);
			forecastlab::bench::resolve_defaults(single_cfg, series);
			bool failed = false;
			for (const auto seed : single_cfg.seeds) {
				const auto outcome = forecastlab::bench::run_single_model(
				    series, single_cfg.n_train, single_cfg.period, model_label, seed,
				    single_cfg.trainer);
				std::cout << outcome.row.model << " seed=" << seed
				          << " mae=" << outcome.row.mae << " mse=" << outcome.row.mse
				          << " [" << outcome.row.hyper << "]\n";
				if (forecast->parsed()) {
					std::cout << "forecast:";
					for (double v : outcome.forecast) std::cout << ' ' << v;
					std::cout << "\n";
					if (!plot_path.empty()) {
						forecastlab::write_plot_csv(series, outcome.forecast, plot_path);
						std::cout << "plot data written to " << plot_path << "\n";
					}
				}
				failed = failed || !outcome.row.ok;
			}
			return failed ? kExitModel : kExitOk;
		}
		if (bench->parsed()) {
			auto config = forecastlab::bench::load_config(config_path);
			if (single_thread) config.single_thread = true;
			if (timing) config.single_thread = false;
			const auto outcomes = forecastlab::bench::run_experiment(config);
			std::vector<forecastlab::bench::ReportRow> rows;
			rows.reserve(outcomes.size());
			bool any_failed = false;
			for (const auto& outcome : outcomes) {
				rows.push_back(outcome.row);
				any_failed = any_failed || !outcome.row.ok;
			}
			const auto fmt = format == "json"
			                     ? forecastlab::bench::ReportFormat::Json
			                     : format == "markdown"
			                           ? forecastlab::bench::ReportFormat::Markdown
			                           : forecastlab::bench::ReportFormat::Csv;
			std::string path = out_path;
			if (path.empty()) {
				const std::string ext = format == "markdown" ? "md" : format;
				path = (std::filesystem::path(config.out_dir) / ("report." + ext)).string();
			}
			forecastlab::bench::emit_report(rows, fmt, path);
			std::cout << "report written to " << path << "\n";
			return any_failed ? kExitModel : kExitOk;
		}
		if (synth->parsed()) {
			const auto series = forecastlab::generate_synthetic(synth_s, synth_n, synth_trend,
			                                                    synth_noise, synth_seed);
			write_series_csv(series, synth_out);
			std::cout << "series written to " << synth_out << "\n";
			return kExitOk;
		}
	} catch (const std::invalid_argument& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const std::runtime_error& e) {
		std::cerr << "error: " << e.what() << "\n";
		const std::string what = e.what();
		if (what.find("load") != std::string::npos || what.find("open") != std::string::npos ||
		    what.find("csv") != std::string::npos) {
			return kExitData;
		}
		return kExitModel;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitModel;
	}
	return kExitUsage;
}
