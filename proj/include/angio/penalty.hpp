// Static penalty strategies that convert constrained problems into
// box-bounded ones: an additive violation penalty and a feasibility-count
// score with a large constant.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "angio/core.hpp"

namespace angio {

using ConstraintFn = std::function<double(std::span<const double>)>;

/// Inequalities are feasible at g(x) <= 0, equalities at |h(x)| <= tol.
struct ConstraintSet {
    std::vector<ConstraintFn> inequalities;
    std::vector<ConstraintFn> equalities;
    double equality_tolerance = 1e-6;

    std::size_t size() const { return inequalities.size() + equalities.size(); }
};

enum class PenaltyStrategy { additive, feasibility_count };

struct PenaltySpec {
    PenaltyStrategy strategy = PenaltyStrategy::additive;
    std::vector<double> r_weights;  // per inequality
    std::vector<double> c_weights;  // per equality
    double K = 1e9;                 // feasibility-count constant
    std::size_t m = 0;              // total constraint count

    static PenaltySpec additive_for(const ConstraintSet& cs) {
        PenaltySpec spec;
        spec.strategy = PenaltyStrategy::additive;
        spec.r_weights.assign(cs.inequalities.size(), 1.0);
        spec.c_weights.assign(cs.equalities.size(), 1.0);
        spec.m = cs.size();
        return spec;
    }

    static PenaltySpec feasibility_count_for(const ConstraintSet& cs, double K = 1e9) {
        if (!(K > 0.0))
            throw std::invalid_argument("PenaltySpec: K must be positive");
        PenaltySpec spec;
        spec.strategy = PenaltyStrategy::feasibility_count;
        spec.K = K;
        spec.m = cs.size();
        return spec;
    }
};

/// f(x) plus weighted violation measures; equals f(x) exactly on feasible
/// points.
inline double additive_penalized(double f_value, std::span<const double> x,
                                 const ConstraintSet& cs, const PenaltySpec& spec) {
    if (spec.strategy != PenaltyStrategy::additive)
        throw std::invalid_argument("additive_penalized: spec strategy mismatch");
    if (spec.r_weights.size() != cs.inequalities.size() ||
        spec.c_weights.size() != cs.equalities.size())
        throw std::invalid_argument("additive_penalized: weight count mismatch");
    double total = f_value;
    for (std::size_t i = 0; i < cs.inequalities.size(); ++i)
        total += spec.r_weights[i] * std::max(cs.inequalities[i](x), 0.0);
    for (std::size_t j = 0; j < cs.equalities.size(); ++j)
        total += spec.c_weights[j] * std::abs(cs.equalities[j](x));
    return total;
}

/// f(x) when every constraint holds; otherwise K - s * K / m where s counts
/// the satisfied constraints.
inline double feasibility_count_penalized(double f_value, std::span<const double> x,
                                          const ConstraintSet& cs, const PenaltySpec& spec) {
    if (spec.strategy != PenaltyStrategy::feasibility_count)
        throw std::invalid_argument("feasibility_count_penalized: spec strategy mismatch");
    if (spec.m == 0 || cs.size() != spec.m)
        throw std::invalid_argument("feasibility_count_penalized: m must equal the constraint count and be positive");
    std::size_t satisfied = 0;
    for (const auto& g : cs.inequalities)
        if (g(x) <= 0.0) ++satisfied;
    for (const auto& h : cs.equalities)
        if (std::abs(h(x)) <= cs.equality_tolerance) ++satisfied;
    if (satisfied == spec.m)
        return f_value;
    return spec.K - static_cast<double>(satisfied) * (spec.K / static_cast<double>(spec.m));
}

/// Wraps a raw objective and a constraint set into a box-bounded problem
/// scoring candidates with the chosen penalty strategy.
inline BoundedProblem make_penalized_problem(std::string name, Bounds bounds, ObjectiveFn raw,
                                             ConstraintSet cs, PenaltySpec spec,
                                             std::optional<double> known_optimum = std::nullopt,
                                             std::optional<std::vector<double>> known_optimizer = std::nullopt) {
    auto shared_cs = std::make_shared<const ConstraintSet>(std::move(cs));
    auto shared_spec = std::make_shared<const PenaltySpec>(std::move(spec));
    ObjectiveFn penalized = [raw = std::move(raw), shared_cs, shared_spec](std::span<const double> x) {
        const double f = raw(x);
        if (shared_spec->strategy == PenaltyStrategy::additive)
            return additive_penalized(f, x, *shared_cs, *shared_spec);
        return feasibility_count_penalized(f, x, *shared_cs, *shared_spec);
    };
    return BoundedProblem{std::move(name), std::move(bounds), std::move(penalized),
                          known_optimum, std::move(known_optimizer)};
}

}  // namespace angio
