// Experiment harness: registry of problems addressable by id, multi-trial
// experiment execution with per-trial derived seeds, aggregation, and CSV /
// SVG emission for stats tables, convergence curves and harvesting reports.
#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "angio/benchmarks.hpp"
#include "angio/core.hpp"
#include "angio/problems.hpp"
#include "angio/pso.hpp"
#include "angio/tao.hpp"

namespace angio {

enum class Algorithm { tao, pso };

inline std::string_view algorithm_name(Algorithm a) {
    return a == Algorithm::tao ? "tao" : "pso";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view text) {
    if (text == "tao") return Algorithm::tao;
    if (text == "pso") return Algorithm::pso;
    return std::nullopt;
}

/// Master seed committed for the reproducible experiment defaults.
inline constexpr std::uint64_t kDefaultMasterSeed = 1729;

using Overrides = std::map<std::string, double>;

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::tao;
    std::string problem_id;
    std::size_t n_trials = 50;
    std::size_t population_size = 100;
    std::size_t max_iterations = 500;
    std::uint64_t master_seed = kDefaultMasterSeed;
    Overrides overrides;
    std::filesystem::path output_directory;  // empty: keep results in memory only
};

// ---------------------------------------------------------------------------
// Problem registry

inline const std::vector<std::string>& known_problem_ids() {
    static const std::vector<std::string> ids = {
        "F1", "F2", "F3", "F4", "F5", "F6", "F7",
        "rosenbrock-constrained", "cantilever", "pressure-vessel", "spring", "fishery",
    };
    return ids;
}

namespace detail {

inline double get_or(const Overrides& ov, const std::string& key, double fallback) {
    auto it = ov.find(key);
    return it == ov.end() ? fallback : it->second;
}

inline const std::vector<std::string>& fishery_override_keys() {
    static const std::vector<std::string> keys = {
        "B0", "r_growth", "K_cap", "q_catch", "price", "cost", "rho",
        "T", "Bu", "Bs", "Emin", "Emax", "enforce_bs", "penalty_weight",
    };
    return keys;
}

}  // namespace detail

inline FisheryModel fishery_model_from_overrides(const Overrides& ov) {
    FisheryModel m;
    m.initial_biomass = detail::get_or(ov, "B0", m.initial_biomass);
    m.growth_rate = detail::get_or(ov, "r_growth", m.growth_rate);
    m.carrying_capacity = detail::get_or(ov, "K_cap", m.carrying_capacity);
    m.catchability = detail::get_or(ov, "q_catch", m.catchability);
    m.price = detail::get_or(ov, "price", m.price);
    m.cost = detail::get_or(ov, "cost", m.cost);
    m.discount = detail::get_or(ov, "rho", m.discount);
    m.horizon = static_cast<std::size_t>(detail::get_or(ov, "T", static_cast<double>(m.horizon)));
    m.min_biomass = detail::get_or(ov, "Bu", m.min_biomass);
    m.max_biomass = detail::get_or(ov, "Bs", m.max_biomass);
    m.effort_min = detail::get_or(ov, "Emin", m.effort_min);
    m.effort_max = detail::get_or(ov, "Emax", m.effort_max);
    m.enforce_max_biomass = detail::get_or(ov, "enforce_bs", 0.0) != 0.0;
    m.penalty_weight = detail::get_or(ov, "penalty_weight", m.penalty_weight);
    m.validate();
    return m;
}

/// Builds the problem for an id, applying problem-level overrides.
/// Unknown ids raise a configuration error listing the valid ones.
inline BoundedProblem resolve_problem(const std::string& id, const Overrides& ov = {}) {
    if (auto bench = parse_benchmark_id(id)) {
        const auto variant =
            detail::get_or(ov, "f4_floor", 0.0) != 0.0 ? StepVariant::floor : StepVariant::continuous;
        return benchmark_problem(*bench, variant);
    }
    if (id == "rosenbrock-constrained") return rosenbrock_constrained_problem();
    if (id == "cantilever") return cantilever_problem();
    if (id == "pressure-vessel") {
        PressureVesselConfig cfg;
        cfg.leading_coefficient = detail::get_or(ov, "pv_c0", cfg.leading_coefficient);
        return pressure_vessel_problem(cfg);
    }
    if (id == "spring") return spring_problem();
    if (id == "fishery") return fishery_problem(fishery_model_from_overrides(ov));

    std::string msg = "unknown problem id '" + id + "'; valid ids are:";
    for (const auto& known : known_problem_ids()) msg += " " + known;
    throw std::invalid_argument(msg);
}

inline TaoParams tao_params_from(const ExperimentConfig& cfg) {
    TaoParams p;
    p.v1 = detail::get_or(cfg.overrides, "v1", p.v1);
    p.v2 = detail::get_or(cfg.overrides, "v2", p.v2);
    p.p = detail::get_or(cfg.overrides, "p", p.p);
    p.q = detail::get_or(cfg.overrides, "q", p.q);
    p.r_dir = detail::get_or(cfg.overrides, "r_dir", p.r_dir);
    p.s = detail::get_or(cfg.overrides, "s", p.s);
    p.d = detail::get_or(cfg.overrides, "d", p.d);
    p.gamma = detail::get_or(cfg.overrides, "gamma", p.gamma);
    p.branch_scale = detail::get_or(cfg.overrides, "branch_scale", p.branch_scale);
    p.population_size = cfg.population_size;
    p.max_iterations = cfg.max_iterations;
    p.validate();
    return p;
}

inline PsoParams pso_params_from(const ExperimentConfig& cfg) {
    PsoParams p;
    p.c1 = detail::get_or(cfg.overrides, "c1", p.c1);
    p.c2 = detail::get_or(cfg.overrides, "c2", p.c2);
    p.w_max = detail::get_or(cfg.overrides, "w_max", p.w_max);
    p.w_min = detail::get_or(cfg.overrides, "w_min", p.w_min);
    p.population_size = cfg.population_size;
    p.max_iterations = cfg.max_iterations;
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------
// Number formatting and atomic file output

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int precision) {
    char buf[512];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
    if (res.ec != std::errc{})
        throw std::runtime_error("format_fixed: value does not fit the buffer");
    return std::string(buf, res.ptr);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Configuration files: one `key = value` per line, '#' starts a comment,
// blank lines are ignored. Repeated keys accumulate in file order.

namespace detail {

inline std::string trim(std::string_view text) {
    const auto begin = text.find_first_not_of(" \t\r");
    const auto end = text.find_last_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    return std::string(text.substr(begin, end - begin + 1));
}

}  // namespace detail

inline std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config file: " + path.string());
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.resize(comment);
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_number) +
                                        ": expected key = value");
        entries.emplace_back(detail::trim(stripped.substr(0, eq)),
                             detail::trim(stripped.substr(eq + 1)));
    }
    return entries;
}

/// Writes content to a sibling temp file, then renames it into place, so a
/// partially written file is never observed under the final name.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// CSV emission

/// Long-format per-trial convergence plus a companion "<stem>_mean" file with
/// the per-iteration mean and population std across trials.
inline void emit_convergence_csv(std::span<const RunRecord> records,
                                 const std::filesystem::path& path) {
    if (records.empty())
        throw std::invalid_argument("emit_convergence_csv: no records");
    const std::size_t iterations = records[0].best_fitness_trace.size();
    for (const auto& r : records)
        if (r.best_fitness_trace.size() != iterations)
            throw std::invalid_argument("emit_convergence_csv: trace lengths differ");

    std::string body = "iteration,trial,best_fitness\n";
    for (std::size_t t = 0; t < iterations; ++t)
        for (std::size_t trial = 0; trial < records.size(); ++trial) {
            body += std::to_string(t);
            body += ',';
            body += std::to_string(trial);
            body += ',';
            body += detail::format_double(records[trial].best_fitness_trace[t]);
            body += '\n';
        }
    write_file_atomic(path, body);

    std::string mean_body = "iteration,mean_best,std_best\n";
    const double n = static_cast<double>(records.size());
    for (std::size_t t = 0; t < iterations; ++t) {
        double sum = 0.0;
        for (const auto& r : records) sum += r.best_fitness_trace[t];
        const double mean = sum / n;
        double sq = 0.0;
        for (const auto& r : records) {
            const double d = r.best_fitness_trace[t] - mean;
            sq += d * d;
        }
        mean_body += std::to_string(t);
        mean_body += ',';
        mean_body += detail::format_double(mean);
        mean_body += ',';
        mean_body += detail::format_double(std::sqrt(sq / n));
        mean_body += '\n';
    }
    std::filesystem::path mean_path = path;
    mean_path.replace_filename(path.stem().string() + "_mean" + path.extension().string());
    write_file_atomic(mean_path, mean_body);
}

/// Stats table in the 7-decimal print style: one row per (function, algorithm).
inline void emit_stats_table(const std::map<std::string, std::map<std::string, StatsSummary>>& summaries,
                             const std::filesystem::path& path) {
    if (summaries.empty())
        throw std::invalid_argument("emit_stats_table: empty summary map");
    std::string body = "function,algorithm,best,mean,std\n";
    for (const auto& [problem, per_algo] : summaries)
        for (const auto& [algo, s] : per_algo) {
            body += problem;
            body += ',';
            body += algo;
            body += ',';
            body += detail::format_fixed(s.best, 7);
            body += ',';
            body += detail::format_fixed(s.mean, 7);
            body += ',';
            body += detail::format_fixed(s.std, 7);
            body += '\n';
        }
    write_file_atomic(path, body);
}

/// effort.csv (years 1..T) and biomass.csv (years 0..T) for one solution.
inline void emit_fishery_report(std::span<const double> best_effort, const FisheryModel& model,
                                const std::filesystem::path& directory) {
    const std::vector<double> biomass = simulate_biomass(best_effort, model);
    std::string effort_body = "year,effort\n";
    for (std::size_t t = 0; t < best_effort.size(); ++t) {
        effort_body += std::to_string(t + 1);
        effort_body += ',';
        effort_body += detail::format_double(best_effort[t]);
        effort_body += '\n';
    }
    write_file_atomic(directory / "effort.csv", effort_body);

    std::string biomass_body = "year,biomass\n";
    for (std::size_t t = 0; t < biomass.size(); ++t) {
        biomass_body += std::to_string(t);
        biomass_body += ',';
        biomass_body += detail::format_double(biomass[t]);
        biomass_body += '\n';
    }
    write_file_atomic(directory / "biomass.csv", biomass_body);
}

/// Mean effort and mean biomass trajectory across trial solutions, written as
/// effort_mean.csv / biomass_mean.csv.
inline void emit_fishery_mean_report(std::span<const std::vector<double>> efforts,
                                     const FisheryModel& model,
                                     const std::filesystem::path& directory) {
    if (efforts.empty())
        throw std::invalid_argument("emit_fishery_mean_report: no solutions");
    std::vector<double> mean_effort(model.horizon, 0.0);
    std::vector<double> mean_biomass(model.horizon + 1, 0.0);
    for (const auto& e : efforts) {
        const std::vector<double> biomass = simulate_biomass(e, model);
        for (std::size_t t = 0; t < model.horizon; ++t) mean_effort[t] += e[t];
        for (std::size_t t = 0; t <= model.horizon; ++t) mean_biomass[t] += biomass[t];
    }
    const double n = static_cast<double>(efforts.size());
    for (auto& v : mean_effort) v /= n;
    for (auto& v : mean_biomass) v /= n;

    std::string effort_body = "year,effort\n";
    for (std::size_t t = 0; t < mean_effort.size(); ++t) {
        effort_body += std::to_string(t + 1);
        effort_body += ',';
        effort_body += detail::format_double(mean_effort[t]);
        effort_body += '\n';
    }
    write_file_atomic(directory / "effort_mean.csv", effort_body);

    std::string biomass_body = "year,biomass\n";
    for (std::size_t t = 0; t < mean_biomass.size(); ++t) {
        biomass_body += std::to_string(t);
        biomass_body += ',';
        biomass_body += detail::format_double(mean_biomass[t]);
        biomass_body += '\n';
    }
    write_file_atomic(directory / "biomass_mean.csv", biomass_body);
}

// ---------------------------------------------------------------------------
// SVG emission (optional plot output; no external process involved)

struct SvgSeries {
    std::string label;
    std::vector<double> values;  // plotted against their index
};

inline void emit_svg_line_chart(const std::filesystem::path& path, const std::string& title,
                                const std::string& x_label, std::string y_label,
                                std::span<const SvgSeries> series) {
    if (series.empty())
        throw std::invalid_argument("emit_svg_line_chart: no series");
    // Switch to log10 when everything is positive and spans several decades.
    bool log_scale = true;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::size_t max_len = 0;
    for (const auto& s : series) {
        max_len = std::max(max_len, s.values.size());
        for (double v : s.values) {
            if (!(v > 0.0)) log_scale = false;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (max_len < 2 || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("emit_svg_line_chart: need at least two finite points");
    log_scale = log_scale && hi / lo > 1e3;
    if (log_scale) {
        lo = std::log10(lo);
        hi = std::log10(hi);
        y_label = "log10(" + y_label + ")";
    }
    if (hi == lo) hi = lo + 1.0;

    const double width = 640, height = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;
    const auto x_of = [&](std::size_t i) {
        return ml + pw * static_cast<double>(i) / static_cast<double>(max_len - 1);
    };
    const auto y_of = [&](double v) {
        if (log_scale) v = std::log10(v);
        return mt + ph * (1.0 - (v - lo) / (hi - lo));
    };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
           "viewBox=\"0 0 640 420\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + title + "</text>\n";
    svg += "<rect x=\"" + detail::format_double(ml) + "\" y=\"" + detail::format_double(mt) +
           "\" width=\"" + detail::format_double(pw) + "\" height=\"" + detail::format_double(ph) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double v = lo + (hi - lo) * k / 4.0;
        const double y = mt + ph * (1.0 - static_cast<double>(k) / 4.0);
        svg += "<text x=\"" + detail::format_double(ml - 6) + "\" y=\"" +
               detail::format_double(y + 4) + "\" text-anchor=\"end\">" +
               detail::format_fixed(v, 2) + "</text>\n";
        const std::size_t xi = max_len == 1 ? 0 : (max_len - 1) * k / 4;
        svg += "<text x=\"" + detail::format_double(x_of(xi)) + "\" y=\"" +
               detail::format_double(mt + ph + 16) + "\" text-anchor=\"middle\">" +
               std::to_string(xi) + "</text>\n";
    }
    svg += "<text x=\"320\" y=\"" + detail::format_double(height - 12) +
           "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"230\" text-anchor=\"middle\" transform=\"rotate(-90 16 230)\">" +
           y_label + "</text>\n";
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        if (s.values.size() < 2) continue;
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += palette[si % 5];
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            svg += detail::format_fixed(x_of(i), 1);
            svg += ',';
            svg += detail::format_fixed(y_of(s.values[i]), 1);
            svg += ' ';
        }
        svg += "\"/>\n";
        svg += "<text x=\"" + detail::format_double(ml + 8) + "\" y=\"" +
               detail::format_double(mt + 16 + 14 * static_cast<double>(si)) + "\" fill=\"";
        svg += palette[si % 5];
        svg += "\">" + s.label + "</text>\n";
    }
    svg += "</svg>\n";
    write_file_atomic(path, svg);
}

// ---------------------------------------------------------------------------
// Experiment execution

namespace detail {

/// Runs fn(0..n-1) on up to hardware_concurrency() worker threads. Each index
/// owns its slot, so results land deterministically regardless of schedule.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline void ensure_writable_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw std::runtime_error("output directory is not usable: " + dir.string());
    const std::filesystem::path probe = dir / ".write_probe.tmp";
    {
        std::ofstream out(probe);
        if (!out)
            throw std::runtime_error("output directory is not writable: " + dir.string());
    }
    std::filesystem::remove(probe, ec);
}

inline void validate_override_keys(const ExperimentConfig& cfg) {
    std::vector<std::string> allowed;
    if (cfg.algorithm == Algorithm::tao)
        allowed = {"v1", "v2", "p", "q", "r_dir", "s", "d", "gamma", "branch_scale"};
    else
        allowed = {"c1", "c2", "w_max", "w_min"};
    if (cfg.problem_id == "fishery")
        allowed.insert(allowed.end(), fishery_override_keys().begin(), fishery_override_keys().end());
    if (cfg.problem_id == "pressure-vessel") allowed.push_back("pv_c0");
    if (parse_benchmark_id(cfg.problem_id)) allowed.push_back("f4_floor");
    for (const auto& [key, value] : cfg.overrides) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            std::string msg = "unknown parameter override '" + key + "'; valid keys here:";
            for (const auto& k : allowed) msg += " " + k;
            throw std::invalid_argument(msg);
        }
    }
}

}  // namespace detail

/// Runs n_trials independent trials with seeds derived from the master seed,
/// writes convergence files when an output directory is configured, and
/// returns the aggregate plus every per-trial record.
inline std::pair<StatsSummary, std::vector<RunRecord>> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.n_trials < 1)
        throw std::invalid_argument("run_experiment: n_trials must be at least 1");
    detail::validate_override_keys(cfg);
    const BoundedProblem problem = resolve_problem(cfg.problem_id, cfg.overrides);

    if (!cfg.output_directory.empty())
        detail::ensure_writable_directory(cfg.output_directory);

    std::vector<RunRecord> records(cfg.n_trials);
    if (cfg.algorithm == Algorithm::tao) {
        const TaoParams params = tao_params_from(cfg);
        detail::parallel_for(cfg.n_trials, [&](std::size_t i) {
            RandomSource rng = RandomSource::for_trial(cfg.master_seed, i);
            records[i] = tao_run(problem, params, rng);
        });
    } else {
        const PsoParams params = pso_params_from(cfg);
        detail::parallel_for(cfg.n_trials, [&](std::size_t i) {
            RandomSource rng = RandomSource::for_trial(cfg.master_seed, i);
            records[i] = pso_run(problem, params, rng);
        });
    }
    StatsSummary summary = summarize(records);

    if (!cfg.output_directory.empty()) {
        const std::string stem = cfg.problem_id + "_" + std::string(algorithm_name(cfg.algorithm));
        emit_convergence_csv(records, cfg.output_directory / (stem + "_convergence.csv"));
    }
    return {summary, std::move(records)};
}

}  // namespace angio
