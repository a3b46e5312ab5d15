#include "forecastlab/pso_training.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace forecastlab::pso {

PsoVariant trelea1() { return TreleaParams{0.6, 1.7}; }
PsoVariant trelea2() { return TreleaParams{0.729, 1.494}; }
PsoVariant clerc_type1() { return ClercParams{0.729, 4.0, 2.0, 2.0}; }
PsoVariant basic_trelea1() { return BasicParams{0.6, 1.7, 1.7}; }
PsoVariant basic_trelea2() { return BasicParams{0.729, 1.494, 1.494}; }

double constriction_factor(double kappa, double phi) {
	if (kappa <= 0.0 || kappa > 1.0 || phi <= 0.0) {
		throw std::invalid_argument("constriction_factor: need kappa in (0,1] and phi > 0");
	}
	if (phi >= 4.0) {
		return 2.0 * kappa / (phi - 2.0 + std::sqrt(phi * phi - 4.0 * phi));
	}
	return kappa;
}

namespace {

void clamp_particle(Particle& particle, double v_max, double bound) {
	for (std::size_t d = 0; d < particle.position.size(); ++d) {
		double& v = particle.velocity[d];
		double& x = particle.position[d];
		if (v > v_max) v = v_max;
		if (v < -v_max) v = -v_max;
		x += v;
		if (x > bound) {
			x = bound;
			v = 0.0;
		} else if (x < -bound) {
			x = -bound;
			v = 0.0;
		}
	}
}

// mixes the run seed with the particle index so streams are stable whether
// particles are stepped serially or in parallel
std::uint64_t stream_seed(std::uint64_t seed, std::size_t index) {
	std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
	x ^= x >> 30;
	x *= 0xbf58476d1ce4e5b9ULL;
	x ^= x >> 27;
	x *= 0x94d049bb133111ebULL;
	x ^= x >> 31;
	return x;
}

}  // namespace

void step_basic(Swarm& swarm, const BasicParams& p,
                std::span<std::mt19937_64> rngs, double v_max, double bound) {
	std::uniform_real_distribution<double> uni(0.0, 1.0);
	for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
		Particle& particle = swarm.particles[i];
		auto& rng = rngs[i];
		for (std::size_t d = 0; d < particle.position.size(); ++d) {
			const double r1 = uni(rng);
			const double r2 = uni(rng);
			particle.velocity[d] =
			    p.inertia * particle.velocity[d] +
			    p.b1 * r1 * (particle.best_position[d] - particle.position[d]) +
			    p.b2 * r2 * (swarm.global_best_position[d] - particle.position[d]);
		}
		clamp_particle(particle, v_max, bound);
	}
	++swarm.iteration;
}

void step_trelea(Swarm& swarm, const TreleaParams& p, double v_max, double bound) {
	for (Particle& particle : swarm.particles) {
		for (std::size_t d = 0; d < particle.position.size(); ++d) {
			const double attractor =
			    0.5 * (particle.best_position[d] + swarm.global_best_position[d]);
			particle.velocity[d] = p.inertia * particle.velocity[d] +
			                       p.b * (attractor - particle.position[d]);
		}
		clamp_particle(particle, v_max, bound);
	}
	++swarm.iteration;
}

void step_clerc(Swarm& swarm, const ClercParams& p,
                std::span<std::mt19937_64> rngs, double v_max, double bound) {
	const double chi = constriction_factor(p.kappa, p.phi);
	std::uniform_real_distribution<double> uni(0.0, 1.0);
	for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
		Particle& particle = swarm.particles[i];
		auto& rng = rngs[i];
		for (std::size_t d = 0; d < particle.position.size(); ++d) {
			const double r1 = uni(rng);
			const double r2 = uni(rng);
			particle.velocity[d] =
			    chi * (particle.velocity[d] +
			           p.b1 * r1 * (particle.best_position[d] - particle.position[d]) +
			           p.b2 * r2 * (swarm.global_best_position[d] - particle.position[d]));
		}
		clamp_particle(particle, v_max, bound);
	}
	++swarm.iteration;
}

void step(Swarm& swarm, const PsoVariant& variant, std::span<std::mt19937_64> rngs,
          double v_max, double bound) {
	std::visit(
	    [&](const auto& p) {
		    using T = std::decay_t<decltype(p)>;
		    if constexpr (std::is_same_v<T, BasicParams>) {
			    step_basic(swarm, p, rngs, v_max, bound);
		    } else if constexpr (std::is_same_v<T, TreleaParams>) {
			    step_trelea(swarm, p, v_max, bound);
		    } else {
			    step_clerc(swarm, p, rngs, v_max, bound);
		    }
	    },
	    variant);
}

namespace {

void refresh_bests(Swarm& swarm, const Objective& objective) {
	bool any_finite = false;
	for (Particle& particle : swarm.particles) {
		const double f = objective(particle.position);
		if (std::isfinite(f)) any_finite = true;
		if (f < particle.best_fitness) {
			particle.best_fitness = f;
			particle.best_position = particle.position;
		}
		if (f < swarm.global_best_fitness) {
			swarm.global_best_fitness = f;
			swarm.global_best_position = particle.position;
		}
	}
	if (!any_finite && !std::isfinite(swarm.global_best_fitness)) {
		throw std::runtime_error("pso: fitness non-finite for every particle");
	}
}

}  // namespace

MinimizeResult minimize(const Objective& objective, int dim, const PsoVariant& variant,
                        const PsoOptions& opts,
                        const std::function<bool(const Swarm&)>& on_iteration) {
	if (dim < 1 || opts.swarm_size < 1) {
		throw std::invalid_argument("pso::minimize: need dim >= 1 and swarm_size >= 1");
	}
	std::vector<std::mt19937_64> rngs;
	rngs.reserve(static_cast<std::size_t>(opts.swarm_size));
	for (int i = 0; i < opts.swarm_size; ++i) {
		rngs.emplace_back(stream_seed(opts.seed, static_cast<std::size_t>(i)));
	}

	Swarm swarm;
	swarm.particles.resize(static_cast<std::size_t>(opts.swarm_size));
	swarm.global_best_fitness = std::numeric_limits<double>::infinity();
	for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
		Particle& particle = swarm.particles[i];
		std::uniform_real_distribution<double> pos_dist(-opts.init_pos, opts.init_pos);
		std::uniform_real_distribution<double> vel_dist(-opts.init_vel, opts.init_vel);
		particle.position.resize(static_cast<std::size_t>(dim));
		particle.velocity.resize(static_cast<std::size_t>(dim));
		for (int d = 0; d < dim; ++d) {
			particle.position[static_cast<std::size_t>(d)] = pos_dist(rngs[i]);
			particle.velocity[static_cast<std::size_t>(d)] = vel_dist(rngs[i]);
		}
		particle.best_position = particle.position;
		particle.best_fitness = std::numeric_limits<double>::infinity();
	}
	refresh_bests(swarm, objective);

	MinimizeResult result;
	result.history.reserve(static_cast<std::size_t>(opts.max_iter));
	for (int it = 0; it < opts.max_iter; ++it) {
		step(swarm, variant, rngs, opts.v_max, opts.bound);
		refresh_bests(swarm, objective);
		result.history.push_back(swarm.global_best_fitness);
		result.iterations = it + 1;
		if (on_iteration && on_iteration(swarm)) break;
	}
	result.best_position = swarm.global_best_position;
	result.best_fitness = swarm.global_best_fitness;
	return result;
}

std::pair<ann::ParameterVector, bp::TrainTrace> train_pso(
    const ann::SannTopology& topology, const ann::PatternSet& patterns,
    const PsoVariant& variant, const PsoOptions& opts) {
	ann::validate(topology);
	if (patterns.size() == 0) {
		throw std::invalid_argument("train_pso: empty pattern set");
	}
	bp::TrainOptions val_opts;
	val_opts.validation_fraction = opts.validation_fraction;
	const std::size_t n_val = bp::validation_count(patterns, val_opts);
	const std::size_t n_fit = patterns.size() - n_val;

	const int dim = static_cast<int>(ann::param_count(topology));
	const Objective fitness = [&](std::span<const double> x) {
		ann::ParameterVector w(x.begin(), x.end());
		return ann::sse_split(w, topology, patterns, n_fit).first;
	};

	bp::TrainTrace trace;
	trace.stop = bp::StopReason::MaxEpochs;
	double best_val = std::numeric_limits<double>::infinity();
	int val_streak = 0;
	double last_gbest = std::numeric_limits<double>::infinity();
	double last_val = std::numeric_limits<double>::quiet_NaN();

	const auto monitor = [&](const Swarm& swarm) {
		double val = last_val;
		if (n_val > 0) {
			if (swarm.global_best_fitness < last_gbest || std::isnan(val)) {
				ann::ParameterVector w(swarm.global_best_position.begin(),
				                       swarm.global_best_position.end());
				val = ann::sse_split(w, topology, patterns, n_fit).second;
			}
			last_val = val;
		}
		last_gbest = swarm.global_best_fitness;
		trace.train_sse.push_back(swarm.global_best_fitness);
		trace.validation_sse.push_back(n_val > 0 ? val : std::numeric_limits<double>::quiet_NaN());
		trace.accepted.push_back(1);
		if (n_val == 0) return false;
		if (val < best_val) {
			best_val = val;
			val_streak = 0;
			return false;
		}
		++val_streak;
		if (val_streak >= opts.patience) {
			trace.stop = bp::StopReason::EarlyStop;
			return true;
		}
		return false;
	};

	const MinimizeResult res = minimize(fitness, dim, variant, opts, monitor);
	ann::ParameterVector best(res.best_position.begin(), res.best_position.end());
	return {std::move(best), std::move(trace)};
}

}  // namespace forecastlab::pso
