#pragma once
// Runtime measurement: wraps a problem with evaluation counting and
// first-hit recording per target, runs baseline optimizers with restarts,
// and writes line-delimited result files. Runtime of an algorithm on a
// problem is the evaluation count when a target is first reached or
// surpassed (f <= target); an unsolved target has undefined runtime, bounded
// from below by the evaluations spent.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bbls/suite.hpp"
#include "bbls/text.hpp"

namespace bbls {

struct RunRecord {
    ProblemDescriptor descriptor;
    std::int64_t evaluations = 0;
    double best_f = std::numeric_limits<double>::infinity();
    std::vector<double> precisions;        // copy of the target grid
    std::vector<std::int64_t> first_hit;   // parallel to precisions, -1 unhit
    std::int64_t restarts = 0;

    std::int64_t hit_count() const {
        return std::count_if(first_hit.begin(), first_hit.end(),
                             [](std::int64_t h) { return h >= 0; });
    }
};

struct RuntimeResult {
    std::optional<std::int64_t> runtime;  // nullopt: undefined (never hit)
    std::int64_t lower_bound = 0;         // evaluations spent so far
};

inline RuntimeResult runtime_to_target(const RunRecord& record,
                                       double precision) {
    const auto it = std::find(record.precisions.begin(),
                              record.precisions.end(), precision);
    if (it == record.precisions.end())
        throw std::invalid_argument("runtime_to_target: precision not in target set");
    const std::size_t k =
        static_cast<std::size_t>(it - record.precisions.begin());
    RuntimeResult r;
    r.lower_bound = record.evaluations;
    if (record.first_hit[k] >= 0) r.runtime = record.first_hit[k];
    return r;
}

// Counting wrapper around a problem. Single-owner; the wrapped Problem must
// outlive it.
class ObservedProblem {
public:
    ObservedProblem(const Problem& problem, TargetSet targets)
        : problem_(&problem), targets_(std::move(targets)) {
        record_.descriptor = problem.descriptor;
        record_.precisions = targets_.precisions;
        record_.first_hit.assign(targets_.count(), -1);
    }

    double evaluate(std::span<const double> x) {
        const double f = (*problem_)(x);
        ++record_.evaluations;
        if (f < record_.best_f) record_.best_f = f;
        // Targets are strictly decreasing, so hits advance a single cursor.
        while (next_target_ < targets_.count() &&
               f <= targets_.target(next_target_)) {
            record_.first_hit[next_target_] = record_.evaluations;
            ++next_target_;
        }
        return f;
    }

    void count_restart() { ++record_.restarts; }

    const Problem& problem() const { return *problem_; }
    const TargetSet& targets() const { return targets_; }
    const RunRecord& record() const { return record_; }
    int dimension() const { return problem_->dimension(); }

private:
    const Problem* problem_;
    TargetSet targets_;
    RunRecord record_;
    std::size_t next_target_ = 0;
};

inline ObservedProblem observe(const Problem& problem, TargetSet targets) {
    return ObservedProblem(problem, std::move(targets));
}

struct Budget {
    std::int64_t max_evaluations = 0;
};

// Pure random search: uniform samples in [-5, 5]^n. One call is one run; an
// optional stagnation window ends the run early when the run's best has not
// improved by at least 1e-12 within that many evaluations.
inline RunRecord random_search(
    ObservedProblem& problem, Budget budget, RngState& rng,
    std::optional<std::int64_t> stagnation_window = std::nullopt) {
    const int n = problem.dimension();
    std::vector<double> x(static_cast<std::size_t>(n));
    double run_best = std::numeric_limits<double>::infinity();
    std::int64_t last_improvement = 0;
    for (std::int64_t t = 0; t < budget.max_evaluations; ++t) {
        for (auto& v : x)
            v = kLowerBound + (kUpperBound - kLowerBound) * rng.next_uniform();
        const double f = problem.evaluate(x);
        if (f < run_best - 1e-12) {
            run_best = f;
            last_improvement = t;
        }
        if (stagnation_window && t - last_improvement >= *stagnation_window)
            break;
    }
    return problem.record();
}

// (1+1)-ES with multiplicative step-size adaptation: isotropic Gaussian
// mutation, sigma scaled by exp(+-1/sqrt(n+1)) on success/failure. Initial
// point uniform in [-4, 4]^n, initial step 2.
inline RunRecord one_plus_one_es(
    ObservedProblem& problem, Budget budget, RngState& rng,
    std::optional<std::int64_t> stagnation_window = std::nullopt) {
    const int n = problem.dimension();
    if (budget.max_evaluations <= 0) return problem.record();
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = -4.0 + 8.0 * rng.next_uniform();
    double fx = problem.evaluate(x);
    double sigma = 2.0;
    const double up = std::exp(1.0 / std::sqrt(static_cast<double>(n) + 1.0));
    const double down = 1.0 / up;
    double run_best = fx;
    std::int64_t evals = 1, last_improvement = 1;
    std::vector<double> y(static_cast<std::size_t>(n));
    while (evals < budget.max_evaluations) {
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] = x[i] + sigma * rng.next_gaussian();
        const double fy = problem.evaluate(y);
        ++evals;
        if (fy <= fx) {
            x = y;
            fx = fy;
            sigma *= up;
        } else {
            sigma *= down;
        }
        if (fy < run_best - 1e-12) {
            run_best = fy;
            last_improvement = evals;
        }
        if (stagnation_window && evals - last_improvement >= *stagnation_window)
            break;
    }
    return problem.record();
}

enum class BaselineOptimizer { random_search, one_plus_one_es };

inline const char* optimizer_name(BaselineOptimizer o) {
    return o == BaselineOptimizer::random_search ? "random-search"
                                                 : "one-plus-one-es";
}

inline BaselineOptimizer parse_optimizer(const std::string& name) {
    if (name == "random-search") return BaselineOptimizer::random_search;
    if (name == "one-plus-one-es") return BaselineOptimizer::one_plus_one_es;
    throw std::invalid_argument("unknown optimizer: " + name);
}

namespace detail {

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Per-problem seed: mix of optimizer-name hash, flat problem index and the
// user seed, so results do not depend on run order or worker count.
inline std::uint64_t problem_seed(std::uint64_t optimizer_hash,
                                  std::uint64_t flat_index,
                                  std::uint64_t base_seed) {
    std::uint64_t h = optimizer_hash;
    for (std::uint64_t v : {flat_index, base_seed}) {
        h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        std::uint64_t z = h;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        h = z ^ (z >> 31);
    }
    return h;
}

}  // namespace detail

// One record per problem: identity, totals, then precision:first_hit pairs
// for the targets that were hit.
inline std::string format_record(const RunRecord& r, double f_opt) {
    std::string line = std::to_string(r.descriptor.function_id) + ' ' +
                       std::to_string(r.descriptor.dimension) + ' ' +
                       std::to_string(r.descriptor.instance) + ' ' +
                       std::to_string(r.evaluations) + ' ' +
                       format_g17(r.best_f - f_opt) + ' ' +
                       std::to_string(r.restarts) + " |";
    for (std::size_t k = 0; k < r.precisions.size(); ++k) {
        if (r.first_hit[k] < 0) continue;
        line += ' ';
        line += format_g17(r.precisions[k]);
        line += ':';
        line += std::to_string(r.first_hit[k]);
    }
    return line;
}

struct ExperimentConfig {
    SuiteConfig suite;
    BaselineOptimizer optimizer = BaselineOptimizer::random_search;
    std::int64_t budget_multiplier = 100;
    int workers = 1;
    std::uint64_t base_seed = 0;
};

struct ExperimentSummary {
    std::size_t problems_run = 0;
    std::int64_t targets_hit = 0;
    std::vector<RunRecord> records;
};

// Runs every problem of the config with independent restarts inside the
// per-problem budget. Problems are distributed over worker threads; records
// are keyed by flat index, so worker count never changes the output.
inline ExperimentSummary run_experiment_collect(const ExperimentConfig& cfg) {
    if (cfg.budget_multiplier <= 0)
        throw std::invalid_argument("budget multiplier must be positive");
    if (cfg.workers < 1)
        throw std::invalid_argument("workers must be >= 1");
    const auto descriptors = suite_iter(cfg.suite);
    const std::uint64_t opt_hash =
        detail::fnv1a64(optimizer_name(cfg.optimizer));

    std::vector<RunRecord> records(descriptors.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= descriptors.size()) break;
            const auto& d = descriptors[i];
            const Problem problem =
                build_problem(d.function_id, d.dimension, d.instance);
            ObservedProblem obs =
                observe(problem, default_targets(problem.f_opt));
            RngState rng(detail::problem_seed(opt_hash, i, cfg.base_seed));
            const std::int64_t budget =
                cfg.budget_multiplier * static_cast<std::int64_t>(d.dimension);
            const std::int64_t window = 50 * d.dimension;
            bool first_run = true;
            while (obs.record().evaluations < budget) {
                if (!first_run) obs.count_restart();
                first_run = false;
                const Budget remaining{budget - obs.record().evaluations};
                if (cfg.optimizer == BaselineOptimizer::random_search)
                    random_search(obs, remaining, rng, window);
                else
                    one_plus_one_es(obs, remaining, rng, window);
            }
            records[i] = obs.record();
        }
    };

    std::vector<std::thread> pool;
    for (int w = 1; w < cfg.workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    ExperimentSummary summary;
    summary.problems_run = records.size();
    for (const auto& r : records) summary.targets_hit += r.hit_count();
    summary.records = std::move(records);
    return summary;
}

inline std::string experiment_header(const ExperimentConfig& cfg) {
    auto join = [](const auto& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(v[i]);
        }
        return s;
    };
    return std::string("# suite=bbls optimizer=") +
           optimizer_name(cfg.optimizer) +
           " budget_multiplier=" + std::to_string(cfg.budget_multiplier) +
           " seed=" + std::to_string(cfg.base_seed) +
           " dimensions=" + join(cfg.suite.dimensions) +
           " functions=" + join(cfg.suite.function_ids) +
           " instances=" + join(cfg.suite.instances);
}

inline std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Header (config line + timestamp line), then one record line per problem.
// The record body is byte-identical across reruns and worker counts.
inline ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                        const std::string& output_path) {
    ExperimentSummary summary = run_experiment_collect(cfg);
    std::ofstream out(output_path);
    if (!out) throw std::runtime_error("cannot open output file: " + output_path);
    out << experiment_header(cfg) << '\n';
    out << "# timestamp=" << utc_timestamp() << '\n';
    for (std::size_t i = 0; i < summary.records.size(); ++i) {
        const auto& d = summary.records[i].descriptor;
        const double f_opt =
            instance_parameters(d.function_id, d.dimension, d.instance).f_opt;
        out << format_record(summary.records[i], f_opt) << '\n';
        if (!out) {
            out << "# ABORTED: write failure\n";
            throw std::runtime_error("write failure on " + output_path);
        }
    }
    return summary;
}

// Median wall time per evaluation, measured over batches at random points.
inline double median_seconds_per_eval(const Problem& problem,
                                      std::int64_t evaluations,
                                      RngState& rng) {
    using clock = std::chrono::steady_clock;
    const int n = problem.dimension();
    const std::int64_t batches = 100;
    const std::int64_t per_batch = std::max<std::int64_t>(1, evaluations / batches);
    std::vector<std::vector<double>> points(
        static_cast<std::size_t>(per_batch),
        std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& p : points)
        for (auto& v : p)
            v = kLowerBound + (kUpperBound - kLowerBound) * rng.next_uniform();
    volatile double sink = 0.0;
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(batches));
    for (std::int64_t b = 0; b < batches; ++b) {
        const auto start = clock::now();
        for (const auto& p : points) sink = sink + problem(p);
        const auto stop = clock::now();
        times.push_back(std::chrono::duration<double>(stop - start).count() /
                        static_cast<double>(per_batch));
    }
    std::nth_element(times.begin(), times.begin() + times.size() / 2,
                     times.end());
    return times[times.size() / 2];
}

}  // namespace bbls
