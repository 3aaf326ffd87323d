// Standard particle swarm baseline: linearly decaying inertia weight,
// per-dimension stochastic pulls toward the personal and global bests,
// zero initial velocities, synchronous global-best update at iteration end.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "angio/core.hpp"

namespace angio {

struct PsoParams {
    double c1 = 2.0;  // individual coefficient
    double c2 = 2.0;  // social coefficient
    double w_max = 0.9;
    double w_min = 0.4;
    std::size_t population_size = 100;
    std::size_t max_iterations = 500;

    void validate() const {
        if (!(0.0 <= w_min && w_min <= w_max))
            throw std::invalid_argument("PsoParams: requires 0 <= w_min <= w_max");
        if (c1 < 0.0 || c2 < 0.0)
            throw std::invalid_argument("PsoParams: coefficients must be non-negative");
        if (population_size < 2)
            throw std::invalid_argument("PsoParams: population_size must be at least 2");
    }
};

struct ParticleState {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_fitness = 0.0;
};

struct PsoState {
    std::vector<ParticleState> particles;
    std::vector<double> global_best_position;
    double global_best_fitness = 0.0;
    std::size_t iteration = 0;
};

/// Linear decay from w_max at t = 0 to w_min at t = t_max.
inline double inertia_weight(std::size_t t, std::size_t t_max, double w_max, double w_min) {
    if (t_max < 1)
        throw std::invalid_argument("inertia_weight: t_max must be at least 1");
    if (t > t_max)
        throw std::invalid_argument("inertia_weight: t out of range");
    return w_max - (w_max - w_min) / static_cast<double>(t_max) * static_cast<double>(t);
}

inline PsoState pso_init(const BoundedProblem& problem, const PsoParams& params, RandomSource& rng) {
    params.validate();
    PsoState state;
    state.particles.resize(params.population_size);
    std::size_t best = 0;
    for (std::size_t i = 0; i < state.particles.size(); ++i) {
        auto& part = state.particles[i];
        part.position = uniform_in_box(rng, problem.bounds);
        part.velocity.assign(problem.dimension(), 0.0);
        part.best_position = part.position;
        part.best_fitness = detail::evaluate_checked(problem, part.position, i);
        if (part.best_fitness < state.particles[best].best_fitness)
            best = i;
    }
    state.global_best_position = state.particles[best].best_position;
    state.global_best_fitness = state.particles[best].best_fitness;
    state.iteration = 0;
    return state;
}

/// One synchronous iteration: every particle moves against the previous
/// global best; the global best is refreshed after the whole sweep.
inline PsoState pso_iterate(PsoState state, const BoundedProblem& problem, const PsoParams& params,
                            RandomSource& rng) {
    const double w = inertia_weight(state.iteration, params.max_iterations, params.w_max, params.w_min);
    for (std::size_t i = 0; i < state.particles.size(); ++i) {
        auto& part = state.particles[i];
        for (std::size_t h = 0; h < part.position.size(); ++h) {
            const double r1 = rng.next_unit();
            const double r2 = rng.next_unit();
            part.velocity[h] = w * part.velocity[h] +
                               params.c1 * r1 * (part.best_position[h] - part.position[h]) +
                               params.c2 * r2 * (state.global_best_position[h] - part.position[h]);
            part.position[h] += part.velocity[h];
        }
        clamp_to_bounds_inplace(part.position, problem.bounds);
        const double f = detail::evaluate_checked(problem, part.position, i);
        if (f < part.best_fitness) {
            part.best_fitness = f;
            part.best_position = part.position;
        }
    }
    for (const auto& part : state.particles) {
        if (part.best_fitness < state.global_best_fitness) {
            state.global_best_fitness = part.best_fitness;
            state.global_best_position = part.best_position;
        }
    }
    ++state.iteration;
    return state;
}

inline RunRecord pso_run(const BoundedProblem& problem, const PsoParams& params, RandomSource& rng) {
    PsoState state = pso_init(problem, params, rng);
    RunRecord record;
    record.trial_seed = rng.seed();
    record.best_fitness_trace.reserve(params.max_iterations);
    for (std::size_t t = 0; t < params.max_iterations; ++t) {
        state = pso_iterate(std::move(state), problem, params, rng);
        record.best_fitness_trace.push_back(state.global_best_fitness);
    }
    record.final_best_position = state.global_best_position;
    record.final_best_fitness = state.global_best_fitness;
    record.iterations_used = state.iteration;
    return record;
}

}  // namespace angio
