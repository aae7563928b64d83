#ifndef BATCHSCHED_GRASP_HPP
#define BATCHSCHED_GRASP_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "batchsched/construction.hpp"
#include "batchsched/core.hpp"
#include "batchsched/local_search.hpp"
#include "batchsched/path_relinking.hpp"
#include "batchsched/rng.hpp"
#include "batchsched/schedule.hpp"

namespace batchsched {

struct GraspConfig {
    int max_iters = 1000;
    int pr_iters = 1000;
    RclConfig rcl = RclConfig::fraction(0.10);
    double alpha = 0.0;                    // threshold of the extract move
    std::optional<long long> ls_budget;    // samples per sweep, default 50 per job
    int num_runs = 1;
    std::optional<int> no_improve_limit;   // stop a run after this many stale iterations
    std::uint64_t seed = 1;
    int threads = 1;
    int pool_capacity = 10;
};

struct IterationLogEntry {
    int iter = 0;        // 1-based, counted across runs
    int best_tardy = 0;  // incumbent objective after this iteration
    double elapsed_ms = 0;
};

struct SolveReport {
    BatchSchedule best;
    int construction_best = 0;               // best objective straight out of construction
    int local_search_best = 0;               // best objective after local search
    std::optional<int> path_relinking_best;  // absent when relinking never ran
    std::vector<IterationLogEntry> log;
    int iterations_run = 0;
    double elapsed_ms = 0;
};

// Relative objective improvement of a candidate over a reference value.
// A zero reference with a zero candidate counts as no change; a worsened
// zero reference has no finite ratio and yields an empty result.
inline std::optional<double> improvement(long long reference, long long candidate) {
    if (reference == 0) {
        if (candidate == 0) return 0.0;
        return std::nullopt;
    }
    return static_cast<double>(reference - candidate) / static_cast<double>(reference);
}

namespace detail {

// Everything one iteration contributes, computed independently of all other
// iterations so blocks of iterations can run on worker threads and still
// fold in iteration order.
struct IterBundle {
    std::vector<std::vector<int>> pick_orders;  // one per priority rule
    std::vector<int> pick_tardy;
    int construction_tardy = 0;
    BatchSchedule ls_schedule;
    std::vector<int> ls_sequence;
    int ls_fitness = 0;  // tardy count of the sequence under the decoding policy
};

inline IterBundle compute_bundle(const Instance& inst, const GraspConfig& cfg, int run,
                                 int iter) {
    IterBundle out;
    out.pick_orders.reserve(kAllRules.size());
    out.pick_tardy.reserve(kAllRules.size());
    BatchSchedule best_constr;
    int best_tardy = -1;
    for (std::size_t k = 0; k < kAllRules.size(); ++k) {
        Rng rng = make_stream(cfg.seed, {1, static_cast<std::uint32_t>(run),
                                         static_cast<std::uint32_t>(iter),
                                         static_cast<std::uint32_t>(k)});
        ConstructionResult res = improved_greedy(inst, kAllRules[k], cfg.rcl, rng);
        const int tardy = res.schedule.tardy_count();
        out.pick_orders.push_back(std::move(res.pick_order));
        out.pick_tardy.push_back(tardy);
        if (best_tardy < 0 || tardy < best_tardy) {
            best_tardy = tardy;
            best_constr = std::move(res.schedule);
        }
    }
    out.construction_tardy = best_tardy;

    Rng ls_rng = make_stream(cfg.seed, {2, static_cast<std::uint32_t>(run),
                                        static_cast<std::uint32_t>(iter)});
    out.ls_schedule = local_search(inst, std::move(best_constr),
                                   {cfg.ls_budget, cfg.alpha}, ls_rng);
    out.ls_sequence = encode_sequence(out.ls_schedule);
    BatchAssigner scratch(inst, true);
    out.ls_fitness = decode_tardy_count(inst, out.ls_sequence, scratch);
    return out;
}

}  // namespace detail

// Multi-start search: every iteration builds one randomized schedule per
// priority rule, polishes the best of them with local search, and feeds the
// resulting sequences into an elite pool; path relinking then mines the pool.
// Results depend only on the instance, the config and the seed. Iterations
// are computed in blocks (in parallel when threads > 1) but always folded in
// iteration order, so the thread count never changes the answer.
inline SolveReport solve(const Instance& inst, const GraspConfig& cfg) {
    if (cfg.max_iters < 1) throw Error("solve: max_iters must be at least 1");
    if (cfg.pr_iters < 0) throw Error("solve: pr_iters must be non-negative");
    if (cfg.num_runs < 1) throw Error("solve: num_runs must be at least 1");
    if (cfg.threads < 1) throw Error("solve: threads must be at least 1");
    if (cfg.rcl.mode == RclConfig::Mode::Fraction &&
        (cfg.rcl.k_frac <= 0.0 || cfg.rcl.k_frac > 1.0)) {
        throw Error("solve: rcl fraction must be in (0, 1]");
    }
    if (cfg.rcl.mode == RclConfig::Mode::Absolute && cfg.rcl.k_abs < 1) {
        throw Error("solve: rcl width must be at least 1");
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&t0]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    SolveReport report;
    bool have_best = false;
    report.construction_best = -1;
    report.local_search_best = -1;
    int global_iter = 0;

    BatchAssigner fitness_scratch(inst, true);
    const SequenceEval fitness = [&](const std::vector<int>& seq) {
        return decode_tardy_count(inst, seq, fitness_scratch);
    };

    for (int run = 0; run < cfg.num_runs; ++run) {
        ElitePool pool(cfg.pool_capacity);
        int run_best = -1;
        int no_improve = 0;
        bool stopped = false;

        std::vector<detail::IterBundle> block;
        for (int base = 0; base < cfg.max_iters && !stopped; ) {
            const int count = std::min(cfg.max_iters - base, std::max(cfg.threads, 1) * 4);
            block.assign(static_cast<std::size_t>(count), {});
            if (cfg.threads > 1) {
                std::atomic<int> next{0};
                std::vector<std::thread> workers;
                workers.reserve(static_cast<std::size_t>(cfg.threads));
                for (int w = 0; w < cfg.threads; ++w) {
                    workers.emplace_back([&]() {
                        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                            block[static_cast<std::size_t>(i)] =
                                detail::compute_bundle(inst, cfg, run, base + i);
                        }
                    });
                }
                for (auto& w : workers) w.join();
            } else {
                for (int i = 0; i < count; ++i) {
                    block[static_cast<std::size_t>(i)] = detail::compute_bundle(inst, cfg, run, base + i);
                }
            }

            for (int i = 0; i < count && !stopped; ++i) {
                detail::IterBundle& bundle = block[static_cast<std::size_t>(i)];
                for (std::size_t k = 0; k < bundle.pick_orders.size(); ++k) {
                    pool.insert({std::move(bundle.pick_orders[k]), bundle.pick_tardy[k]});
                }
                pool.insert({std::move(bundle.ls_sequence), bundle.ls_fitness});

                if (report.construction_best < 0 ||
                    bundle.construction_tardy < report.construction_best) {
                    report.construction_best = bundle.construction_tardy;
                }
                const int ls_tardy = bundle.ls_schedule.tardy_count();
                if (report.local_search_best < 0 || ls_tardy < report.local_search_best) {
                    report.local_search_best = ls_tardy;
                }
                if (!have_best || ls_tardy < report.best.tardy_count()) {
                    report.best = std::move(bundle.ls_schedule);
                    have_best = true;
                }
                if (run_best < 0 || ls_tardy < run_best) {
                    run_best = ls_tardy;
                    no_improve = 0;
                } else {
                    ++no_improve;
                }
                ++global_iter;
                report.log.push_back({global_iter, report.best.tardy_count(), elapsed_ms()});
                if (cfg.no_improve_limit && no_improve >= *cfg.no_improve_limit) stopped = true;
            }
            base += count;
        }

        if (cfg.pr_iters > 0 && pool.size() >= 2) {
            Rng pr_rng = make_stream(cfg.seed, {3, static_cast<std::uint32_t>(run)});
            EliteEntry best_entry = run_path_relinking(pool, cfg.pr_iters, pr_rng, fitness);
            if (!report.path_relinking_best || best_entry.tardy < *report.path_relinking_best) {
                report.path_relinking_best = best_entry.tardy;
            }
            if (!have_best || best_entry.tardy < report.best.tardy_count()) {
                report.best = decode_sequence(inst, best_entry.sequence, DecodeMode::Improved);
                have_best = true;
            }
        }
    }

    report.iterations_run = global_iter;
    report.elapsed_ms = elapsed_ms();
    return report;
}

}  // namespace batchsched

#endif
