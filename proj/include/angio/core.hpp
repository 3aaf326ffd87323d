// Problem abstraction, box bounds, seedable random source and run records
// shared by every optimizer in this library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace angio {

/// Per-dimension box constraints. lower[h] < upper[h] is enforced on
/// construction; all optimizers in this library clamp into the box.
class Bounds {
public:
    Bounds(std::vector<double> lower, std::vector<double> upper)
        : lower_(std::move(lower)), upper_(std::move(upper)) {
        if (lower_.empty() || lower_.size() != upper_.size())
            throw std::invalid_argument("Bounds: lower/upper must be non-empty and equally sized");
        for (std::size_t h = 0; h < lower_.size(); ++h)
            if (!(lower_[h] < upper_[h]))
                throw std::invalid_argument("Bounds: lower[" + std::to_string(h) +
                                            "] must be strictly below upper[" + std::to_string(h) + "]");
    }

    /// n copies of the same [lo, hi] interval.
    static Bounds uniform_box(std::size_t n, double lo, double hi) {
        return Bounds(std::vector<double>(n, lo), std::vector<double>(n, hi));
    }

    std::size_t dimension() const { return lower_.size(); }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    double lower(std::size_t h) const { return lower_[h]; }
    double upper(std::size_t h) const { return upper_[h]; }
    double range(std::size_t h) const { return upper_[h] - lower_[h]; }

    bool contains(std::span<const double> x) const {
        if (x.size() != dimension()) return false;
        for (std::size_t h = 0; h < x.size(); ++h)
            if (x[h] < lower_[h] || x[h] > upper_[h]) return false;
        return true;
    }

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// A box-bounded minimization problem. Maximization problems are negated at
/// the problem-definition layer so that every algorithm minimizes.
struct BoundedProblem {
    std::string name;
    Bounds bounds;
    ObjectiveFn objective;
    std::optional<double> known_optimum;
    std::optional<std::vector<double>> known_optimizer;

    std::size_t dimension() const { return bounds.dimension(); }
};

/// Seedable uniform generator. Identical seeds yield bit-identical draw
/// sequences; draws are in [0,1) with 53-bit resolution, independent of the
/// standard library's distribution implementations.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform in [0,1).
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    /// splitmix64 finalizer; the avalanche mix behind per-trial seeds.
    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    /// Seed for trial i of an experiment:
    ///   trial_seed = mix64(master_seed + (i + 1) * 0x9E3779B97F4A7C15).
    /// Depends only on (master_seed, i), so any single trial can be replayed.
    static std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
        return mix64(master_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ULL);
    }

    static RandomSource for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
        return RandomSource(trial_seed(master_seed, trial_index));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

/// Best-so-far trace of one trial. The trace is monotone non-increasing and
/// its last entry (when non-empty) equals final_best_fitness.
struct RunRecord {
    std::uint64_t trial_seed = 0;
    std::vector<double> best_fitness_trace;
    std::vector<double> final_best_position;
    double final_best_fitness = 0.0;
    std::size_t iterations_used = 0;
};

/// Best/mean/std aggregate of final fitnesses over trials. std is the
/// population standard deviation (divisor n).
struct StatsSummary {
    double best = 0.0;
    double mean = 0.0;
    double std = 0.0;
    std::size_t n_trials = 0;
};

inline std::vector<double> clamp_to_bounds(std::span<const double> x, const Bounds& b) {
    if (x.size() != b.dimension())
        throw std::invalid_argument("clamp_to_bounds: dimension mismatch");
    std::vector<double> out(x.size());
    for (std::size_t h = 0; h < x.size(); ++h)
        out[h] = std::clamp(x[h], b.lower(h), b.upper(h));
    return out;
}

inline void clamp_to_bounds_inplace(std::vector<double>& x, const Bounds& b) {
    if (x.size() != b.dimension())
        throw std::invalid_argument("clamp_to_bounds: dimension mismatch");
    for (std::size_t h = 0; h < x.size(); ++h)
        x[h] = std::clamp(x[h], b.lower(h), b.upper(h));
}

/// One point with each coordinate independently uniform in its interval.
inline std::vector<double> uniform_in_box(RandomSource& rng, const Bounds& b) {
    std::vector<double> x(b.dimension());
    for (std::size_t h = 0; h < x.size(); ++h)
        x[h] = rng.uniform(b.lower(h), b.upper(h));
    return x;
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t h = 0; h < a.size(); ++h) {
        const double diff = a[h] - b[h];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

namespace detail {

/// Objectives must stay finite; a NaN or infinity aborts the run with the
/// offending agent index and position in the message.
inline double evaluate_checked(const BoundedProblem& problem, std::span<const double> x,
                               std::size_t agent_index) {
    const double f = problem.objective(x);
    if (!std::isfinite(f)) {
        std::string msg = "objective returned non-finite value for cell " +
                          std::to_string(agent_index) + " at (";
        for (std::size_t h = 0; h < x.size(); ++h) {
            if (h) msg += ", ";
            msg += std::to_string(x[h]);
        }
        msg += ")";
        throw std::runtime_error(msg);
    }
    return f;
}

}  // namespace detail

inline StatsSummary summarize(std::span<const RunRecord> records) {
    if (records.empty())
        throw std::invalid_argument("summarize: empty record list");
    StatsSummary s;
    s.n_trials = records.size();
    s.best = records[0].final_best_fitness;
    double sum = 0.0;
    for (const auto& r : records) {
        s.best = std::min(s.best, r.final_best_fitness);
        sum += r.final_best_fitness;
    }
    s.mean = sum / static_cast<double>(records.size());
    double sq = 0.0;
    for (const auto& r : records) {
        const double d = r.final_best_fitness - s.mean;
        sq += d * d;
    }
    s.std = std::sqrt(sq / static_cast<double>(records.size()));
    return s;
}

}  // namespace angio
