#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "forecastlab/bp_training.hpp"
#include "forecastlab/sann.hpp"

namespace forecastlab::pso {

/// Randomised update: v <- a v + b1 r1 (p_i - x) + b2 r2 (p_g - x).
struct BasicParams {
	double inertia;
	double b1;
	double b2;
};

/// Deterministic update: v <- a v + b (p_d - x), p_d = (b1 p_i + b2 p_g)/(b1+b2)
/// collapsed to b1 = b2, i.e. the midpoint. Consumes no randomness.
struct TreleaParams {
	double inertia;
	double b;
};

/// Constriction form: v <- chi [v + b1 r1 (p_i - x) + b2 r2 (p_g - x)], unit
/// inertia inside the bracket.
struct ClercParams {
	double kappa = 0.729;
	double phi = 4.0;
	double b1 = 2.0;
	double b2 = 2.0;
};

using PsoVariant = std::variant<BasicParams, TreleaParams, ClercParams>;

/// Deterministic Trelea parameter set 1 (a=0.6, b=1.7).
PsoVariant trelea1();
/// Deterministic Trelea parameter set 2 (a=0.729, b=1.494).
PsoVariant trelea2();
/// Clerc Type-1 preset (phi=4, kappa=0.729, b1=b2=phi/2).
PsoVariant clerc_type1();
/// Randomised basic update carrying the Trelea-I coefficient set
/// (a=0.6, b1=b2=1.7) -- the toolbox realisation of that preset.
PsoVariant basic_trelea1();
/// Randomised basic update with the Trelea-II coefficient set (0.729, 1.494).
PsoVariant basic_trelea2();

/// chi = 2 kappa / (phi - 2 + sqrt(phi^2 - 4 phi)) for phi >= 4, else kappa.
double constriction_factor(double kappa, double phi);

struct Particle {
	std::vector<double> position;
	std::vector<double> velocity;
	std::vector<double> best_position;
	double best_fitness = 0.0;
};

struct Swarm {
	std::vector<Particle> particles;
	std::vector<double> global_best_position;
	double global_best_fitness = 0.0;
	int iteration = 0;
};

struct PsoOptions {
	int swarm_size = 24;
	int max_iter = 500;
	std::uint64_t seed = 1;
	double v_max = 2.0;
	double bound = 10.0;     // positions clamped to [-bound, bound]
	double init_pos = 1.0;   // initial positions uniform in [-init_pos, init_pos]
	double init_vel = 0.5;   // initial velocities uniform in [-init_vel, init_vel]
	int patience = 100;
	double validation_fraction = -1.0;  // same semantics as bp::TrainOptions
};

/// Kinematic update of every particle (no fitness evaluation). Velocities are
/// clamped to +-v_max; positions are clamped to the bounds and the offending
/// velocity component zeroed. `rngs` holds one stream per particle; the
/// Trelea variant consumes none of them.
void step(Swarm& swarm, const PsoVariant& variant,
          std::span<std::mt19937_64> rngs, double v_max, double bound);

void step_basic(Swarm& swarm, const BasicParams& p,
                std::span<std::mt19937_64> rngs, double v_max, double bound);
void step_trelea(Swarm& swarm, const TreleaParams& p, double v_max, double bound);
void step_clerc(Swarm& swarm, const ClercParams& p,
                std::span<std::mt19937_64> rngs, double v_max, double bound);

using Objective = std::function<double(std::span<const double>)>;

struct MinimizeResult {
	std::vector<double> best_position;
	double best_fitness = 0.0;
	std::vector<double> history;  // global best fitness per iteration
	int iterations = 0;
};

/**
 * @brief Generic swarm minimisation of an objective over [-bound, bound]^dim.
 *
 * `on_iteration`, when set, is called after each swarm update with the current
 * swarm; returning true stops the run early.
 */
MinimizeResult minimize(const Objective& objective, int dim,
                        const PsoVariant& variant, const PsoOptions& opts,
                        const std::function<bool(const Swarm&)>& on_iteration = nullptr);

/**
 * @brief Trains a network by swarm search: fitness is the training SSE over
 *        the fit patterns; validation SSE of the global best is monitored for
 *        early stopping. Returns the global best parameters.
 */
std::pair<ann::ParameterVector, bp::TrainTrace> train_pso(
    const ann::SannTopology& topology, const ann::PatternSet& patterns,
    const PsoVariant& variant, const PsoOptions& opts);

}  // namespace forecastlab::pso
