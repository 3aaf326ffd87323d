// Tumoral angiogenesis optimizer: a population of cells migrates toward the
// incumbent best ("the tumor") with two-state stochastic speeds and
// directions, a decaying random branching term, a traveled-length restriction
// on the leading cell, and pruning of traveled lengths on tumor renewal.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "angio/core.hpp"

namespace angio {

struct TaoParams {
    double v1 = 5.332;        // fast migration speed
    double v2 = 0.938;        // slow migration speed, v2 < v1
    double p = 0.0416891;     // P(speed v1 -> v2)
    double q = 0.234;         // P(speed v2 -> v1)
    double r_dir = 0.194;     // P(direction -1 -> +1)
    double s = 0.240;         // P(direction +1 -> -1)
    double d = 55.0;          // tip-follower threshold, traveled-length units
    double gamma = 0.7;       // branching decay, in [0.5, 1)
    double branch_scale = 0.1;  // branching amplitude as a fraction of box half-range
    std::size_t population_size = 100;
    std::size_t max_iterations = 500;

    void validate() const {
        if (!(0.0 < v2 && v2 < v1))
            throw std::invalid_argument("TaoParams: requires 0 < v2 < v1");
        for (double prob : {p, q, r_dir, s})
            if (!(prob >= 0.0 && prob <= 1.0))
                throw std::invalid_argument("TaoParams: probabilities must lie in [0,1]");
        if (!(gamma >= 0.5 && gamma < 1.0))
            throw std::invalid_argument("TaoParams: gamma must lie in [0.5, 1)");
        if (!(d > 0.0))
            throw std::invalid_argument("TaoParams: d must be positive");
        if (branch_scale < 0.0)
            throw std::invalid_argument("TaoParams: branch_scale must be non-negative");
        if (population_size < 2)
            throw std::invalid_argument("TaoParams: population_size must be at least 2");
    }
};

/// One search agent. speed is exactly v1 or v2; direction is +1 or -1;
/// traveled accumulates path length since the last pruning event.
struct CellState {
    std::vector<double> position;
    double speed = 0.0;
    int direction = +1;
    double traveled = 0.0;
};

struct TaoState {
    std::vector<CellState> cells;
    std::vector<double> tumor_position;
    double tumor_fitness = 0.0;
    std::size_t iteration = 0;
};

/// Speed transition kernel given one uniform draw u in [0,1):
/// v1 switches to v2 when u < p, v2 switches to v1 when u < q.
inline double apply_speed_rule(double current_speed, const TaoParams& params, double u) {
    if (current_speed == params.v1)
        return u < params.p ? params.v2 : params.v1;
    if (current_speed == params.v2)
        return u < params.q ? params.v1 : params.v2;
    throw std::logic_error("apply_speed_rule: speed is neither v1 nor v2");
}

inline double apply_speed_rule(double current_speed, const TaoParams& params, RandomSource& rng) {
    return apply_speed_rule(current_speed, params, rng.next_unit());
}

/// Direction transition kernel: -1 flips to +1 when u < r_dir, +1 flips to
/// -1 when u < s.
inline int apply_direction_rule(int current_direction, const TaoParams& params, double u) {
    if (current_direction == -1)
        return u < params.r_dir ? +1 : -1;
    if (current_direction == +1)
        return u < params.s ? -1 : +1;
    throw std::logic_error("apply_direction_rule: direction is neither +1 nor -1");
}

inline int apply_direction_rule(int current_direction, const TaoParams& params, RandomSource& rng) {
    return apply_direction_rule(current_direction, params, rng.next_unit());
}

struct TipCheck {
    bool active = false;
    std::size_t tip_index = 0;
};

/// The restriction fires when the largest traveled length leads the second
/// largest by more than d. Ties for the maximum give a zero gap, so the
/// condition is never active on ties.
inline TipCheck tip_restriction(std::span<const double> traveled_lengths, double d) {
    if (traveled_lengths.size() < 2)
        throw std::invalid_argument("tip_restriction: needs at least 2 traveled lengths");
    std::size_t tip = traveled_lengths[0] >= traveled_lengths[1] ? 0 : 1;
    double first = traveled_lengths[tip];
    double second = traveled_lengths[1 - tip];
    for (std::size_t i = 2; i < traveled_lengths.size(); ++i) {
        const double L = traveled_lengths[i];
        if (L > first) {
            second = first;
            first = L;
            tip = i;
        } else if (L > second) {
            second = L;
        }
    }
    return TipCheck{first - second > d, tip};
}

/// Zero-mean branching perturbation: component h uniform in
/// [-branch_scale * range_h / 2, +branch_scale * range_h / 2].
inline std::vector<double> branch_vector(RandomSource& rng, const Bounds& bounds, double branch_scale) {
    if (branch_scale < 0.0)
        throw std::invalid_argument("branch_vector: branch_scale must be non-negative");
    std::vector<double> r(bounds.dimension());
    for (std::size_t h = 0; h < r.size(); ++h) {
        const double half = branch_scale * bounds.range(h) / 2.0;
        r[h] = rng.uniform(-half, half);
    }
    return r;
}

inline TaoState tao_init(const BoundedProblem& problem, const TaoParams& params, RandomSource& rng) {
    params.validate();
    TaoState state;
    state.cells.resize(params.population_size);
    std::size_t best = 0;
    double best_fitness = 0.0;
    for (std::size_t i = 0; i < state.cells.size(); ++i) {
        auto& cell = state.cells[i];
        cell.position = uniform_in_box(rng, problem.bounds);
        cell.speed = params.v1;
        cell.direction = +1;
        cell.traveled = 0.0;
        const double f = detail::evaluate_checked(problem, cell.position, i);
        if (i == 0 || f < best_fitness) {
            best = i;
            best_fitness = f;
        }
    }
    state.tumor_position = state.cells[best].position;
    state.tumor_fitness = best_fitness;
    state.iteration = 0;
    return state;
}

/// One sweep over the population in index order. Cells sitting exactly on
/// the tumor position are skipped. A strictly better cell replaces the tumor
/// immediately and resets every traveled length to zero.
inline TaoState tao_iterate(TaoState state, const BoundedProblem& problem, const TaoParams& params,
                            RandomSource& rng) {
    const double gamma_t = std::pow(params.gamma, static_cast<double>(state.iteration));
    std::vector<double> lengths(state.cells.size());
    std::vector<double> next(problem.dimension());
    for (std::size_t i = 0; i < state.cells.size(); ++i) {
        auto& cell = state.cells[i];
        if (cell.position == state.tumor_position)
            continue;

        for (std::size_t j = 0; j < state.cells.size(); ++j)
            lengths[j] = state.cells[j].traveled;
        const TipCheck tip = tip_restriction(lengths, params.d);
        if (tip.active && tip.tip_index == i)
            cell.speed = params.v2;  // mature cells rein in the leading tip
        else
            cell.speed = apply_speed_rule(cell.speed, params, rng);
        cell.direction = apply_direction_rule(cell.direction, params, rng);

        const std::vector<double> r = branch_vector(rng, problem.bounds, params.branch_scale);
        const double step = cell.speed * static_cast<double>(cell.direction);
        for (std::size_t h = 0; h < next.size(); ++h)
            next[h] = cell.position[h] + step * (state.tumor_position[h] - cell.position[h]) +
                      gamma_t * r[h];
        clamp_to_bounds_inplace(next, problem.bounds);

        cell.traveled += euclidean_distance(next, cell.position);
        cell.position = next;

        const double f = detail::evaluate_checked(problem, cell.position, i);
        if (f < state.tumor_fitness) {
            state.tumor_position = cell.position;
            state.tumor_fitness = f;
            for (auto& c : state.cells)
                c.traveled = 0.0;  // capillaries are pruned on tumor renewal
        }
    }
    ++state.iteration;
    return state;
}

inline RunRecord tao_run(const BoundedProblem& problem, const TaoParams& params, RandomSource& rng) {
    TaoState state = tao_init(problem, params, rng);
    RunRecord record;
    record.trial_seed = rng.seed();
    record.best_fitness_trace.reserve(params.max_iterations);
    for (std::size_t t = 0; t < params.max_iterations; ++t) {
        state = tao_iterate(std::move(state), problem, params, rng);
        record.best_fitness_trace.push_back(state.tumor_fitness);
    }
    record.final_best_position = state.tumor_position;
    record.final_best_fitness = state.tumor_fitness;
    record.iterations_used = state.iteration;
    return record;
}

}  // namespace angio
