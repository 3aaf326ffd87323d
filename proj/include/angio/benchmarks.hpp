// Seven classical benchmark functions with their canonical dimensions,
// ranges and known minima.
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "angio/core.hpp"

namespace angio {

enum class BenchmarkId { F1, F2, F3, F4, F5, F6, F7 };

struct BenchmarkDef {
    BenchmarkId id;
    std::string_view name;
    std::size_t dimension;
    double lower;
    double upper;
    double known_minimum;
    bool dimension_generic;  // evaluable at any length; F3 is strictly 2-D
};

inline const std::array<BenchmarkDef, 7>& benchmark_table() {
    static const std::array<BenchmarkDef, 7> table{{
        {BenchmarkId::F1, "Sphere", 20, -100.0, 100.0, 0.0, true},
        {BenchmarkId::F2, "Rosenbrock", 10, -30.0, 30.0, 0.0, true},
        {BenchmarkId::F3, "Eggcrate", 2, -2.0 * std::numbers::pi, 2.0 * std::numbers::pi, 0.0, false},
        {BenchmarkId::F4, "Step", 30, -5.12, 5.12, 0.0, true},
        {BenchmarkId::F5, "Rastrigin", 10, -5.12, 5.12, 0.0, true},
        {BenchmarkId::F6, "Michalewicz", 5, 0.0, std::numbers::pi, -4.6877, true},
        {BenchmarkId::F7, "SumSquares", 30, -10.0, 10.0, 0.0, true},
    }};
    return table;
}

inline const BenchmarkDef& benchmark_def(BenchmarkId id) {
    return benchmark_table()[static_cast<std::size_t>(id)];
}

inline std::optional<BenchmarkId> parse_benchmark_id(std::string_view text) {
    for (const auto& def : benchmark_table()) {
        const auto idx = static_cast<std::size_t>(def.id) + 1;
        if (text == ("F" + std::to_string(idx)) || text == ("f" + std::to_string(idx)))
            return def.id;
    }
    return std::nullopt;
}

/// F4 as printed is the continuous shifted sphere; the classical variant
/// floors each coordinate first.
enum class StepVariant { continuous, floor };

inline double evaluate(BenchmarkId id, std::span<const double> x,
                       StepVariant step = StepVariant::continuous) {
    const auto& def = benchmark_def(id);
    if (x.empty() || (!def.dimension_generic && x.size() != def.dimension))
        throw std::invalid_argument(std::string("evaluate: bad input length for ") +
                                    std::string(def.name));
    switch (id) {
        case BenchmarkId::F1: {
            double sum = 0.0;
            for (double xi : x) sum += xi * xi;
            return sum;
        }
        case BenchmarkId::F2: {
            double sum = 0.0;
            for (std::size_t i = 1; i < x.size(); ++i) {
                const double a = x[i] - x[i - 1] * x[i - 1];
                const double b = x[i - 1] - 1.0;
                sum += 100.0 * a * a + b * b;
            }
            return sum;
        }
        case BenchmarkId::F3: {
            const double sx = std::sin(x[0]);
            const double sy = std::sin(x[1]);
            return x[0] * x[0] + x[1] * x[1] + 25.0 * (sx * sx + sy * sy);
        }
        case BenchmarkId::F4: {
            double sum = 0.0;
            for (double xi : x) {
                const double term = step == StepVariant::floor ? std::floor(xi + 0.5) : xi + 0.5;
                sum += term * term;
            }
            return sum;
        }
        case BenchmarkId::F5: {
            double sum = 10.0 * static_cast<double>(x.size());
            for (double xi : x)
                sum += xi * xi - 10.0 * std::cos(2.0 * std::numbers::pi * xi);
            return sum;
        }
        case BenchmarkId::F6: {
            double sum = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double k = static_cast<double>(i + 1);
                const double arg = std::sin(k * x[i] * x[i] / std::numbers::pi);
                sum += std::sin(x[i]) * std::pow(arg, 20.0);
            }
            return -sum;
        }
        case BenchmarkId::F7: {
            double sum = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                sum += static_cast<double>(i + 1) * x[i] * x[i];
            return sum;
        }
    }
    throw std::invalid_argument("evaluate: unknown benchmark id");
}

/// A point achieving the known minimum (for F6, the commonly cited
/// five-dimensional optimizer of the m = 10 Michalewicz function).
inline std::vector<double> benchmark_optimizer(BenchmarkId id) {
    const auto& def = benchmark_def(id);
    switch (id) {
        case BenchmarkId::F2:
            return std::vector<double>(def.dimension, 1.0);
        case BenchmarkId::F4:
            return std::vector<double>(def.dimension, -0.5);
        case BenchmarkId::F6:
            return {2.202906, 1.570796, 1.284992, 1.923058, 1.720470};
        default:
            return std::vector<double>(def.dimension, 0.0);
    }
}

inline BoundedProblem benchmark_problem(BenchmarkId id, StepVariant step = StepVariant::continuous) {
    const auto& def = benchmark_def(id);
    return BoundedProblem{
        std::string(def.name),
        Bounds::uniform_box(def.dimension, def.lower, def.upper),
        [id, step](std::span<const double> x) { return evaluate(id, x, step); },
        def.known_minimum,
        benchmark_optimizer(id),
    };
}

}  // namespace angio
