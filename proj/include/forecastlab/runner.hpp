#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forecastlab/report.hpp"
#include "forecastlab/series.hpp"

namespace forecastlab::bench {

/// Per-trainer knobs shared by every network row of a run.
struct TrainerOptions {
	int hidden = 0;             // 0 = automatic (BIC for SFANN, 2s for SEANN)
	int swarm_size = 24;
	int pso_max_iter = 500;
	double pso_bound = 10.0;
	double pso_vmax = 2.0;
	int pso_patience = 100;
	std::string pso_update = "toolbox";  // "toolbox" | "deterministic"
	int bp_max_epochs = 200;
	int bp_patience = 6;
};

struct ExperimentConfig {
	std::string dataset = "airline";  // builtin name or CSV path
	std::size_t n_train = 0;          // 0 = builtin default / required for files
	int period = 0;                   // 0 = use the dataset's known period
	std::vector<std::string> models;  // empty = all
	std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
	TrainerOptions trainer;
	std::string out_dir = ".";
	bool scale_note = false;    // display scaling MAE*1e-2 / MSE*1e-4
	bool single_thread = true;  // reproducible reports (timing suppressed)
};

/// All model labels, in report order.
const std::vector<std::string>& all_model_labels();

/// Fitted model plus everything the tests need to inspect a single row.
struct ModelOutcome {
	ReportRow row;
	std::vector<double> forecast;        // original scale, test horizon
	std::vector<double> trained_params;  // trainer-family specific snapshot
};

/**
 * @brief Runs one model label on a prepared split. Exposed so tests can drive
 *        single rows directly (leakage and determinism checks).
 */
ModelOutcome run_single_model(const TimeSeries& series, std::size_t n_train,
                              int period, const std::string& label,
                              std::uint64_t seed, const TrainerOptions& trainer);

/// Runs the full model matrix; one row per (model, seed), failures flagged.
std::vector<ModelOutcome> run_experiment(const ExperimentConfig& config);

/// Loads the configured dataset ("airline" builtin or CSV path).
TimeSeries load_dataset(const ExperimentConfig& config);

/// Resolves n_train/period defaults for the dataset (airline: 132/12).
void resolve_defaults(ExperimentConfig& config, const TimeSeries& series);

/**
 * @brief Parses a flat key=value or JSON config file. The FORECAST_LAB_SEED
 *        environment variable (comma-separated) overrides the default seed
 *        list when the config does not set one.
 */
ExperimentConfig load_config(const std::string& path);

/// Same parsing on in-memory text (extension hint: ".json" or ".cfg").
ExperimentConfig parse_config_text(const std::string& text, bool is_json);

}  // namespace forecastlab::bench
