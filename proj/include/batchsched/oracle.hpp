#ifndef BATCHSCHED_ORACLE_HPP
#define BATCHSCHED_ORACLE_HPP

#include <algorithm>
#include <bit>
#include <string>
#include <utility>
#include <vector>

#include "batchsched/core.hpp"
#include "batchsched/schedule.hpp"

namespace batchsched {

struct OracleResult {
    int optimum = 0;
    BatchSchedule witness;
    long long nodes = 0;  // feasible partitions examined
};

namespace detail {

// Minimal tardy count over all processing orders of a fixed set of batches,
// by dynamic programming over batch subsets: a subset occupies the first
// positions, its last batch completes at the subset's total processing time.
class BatchOrderDp {
  public:
    // batch_p[b], batch_due[b] = dues of members of batch b (flattened via
    // offsets). Returns optimal tardy count; fills `order` with batch
    // indices in optimal processing order.
    int solve(const std::vector<int>& batch_p, const std::vector<int>& due_flat,
              const std::vector<int>& due_off, std::vector<int>& order) {
        const int m = static_cast<int>(batch_p.size());
        const std::size_t full = (static_cast<std::size_t>(1) << m) - 1;
        sum_.assign(full + 1, 0);
        cost_.assign(full + 1, 0);
        parent_.assign(full + 1, -1);
        for (std::size_t mask = 1; mask <= full; ++mask) {
            const int low = std::countr_zero(mask);
            sum_[mask] = sum_[mask & (mask - 1)] + batch_p[static_cast<std::size_t>(low)];
            int best = -1, best_b = -1;
            for (int b = 0; b < m; ++b) {
                if (!(mask >> b & 1)) continue;
                const std::size_t rest = mask ^ (static_cast<std::size_t>(1) << b);
                int tardy_here = 0;
                for (int k = due_off[static_cast<std::size_t>(b)];
                     k < due_off[static_cast<std::size_t>(b) + 1]; ++k) {
                    if (sum_[mask] > due_flat[static_cast<std::size_t>(k)]) ++tardy_here;
                }
                const int total = cost_[rest] + tardy_here;
                if (best < 0 || total < best) {
                    best = total;
                    best_b = b;
                }
            }
            cost_[mask] = best;
            parent_[mask] = best_b;
        }
        order.clear();
        std::size_t mask = full;
        while (mask) {
            const int b = parent_[mask];
            order.push_back(b);
            mask ^= static_cast<std::size_t>(1) << b;
        }
        std::reverse(order.begin(), order.end());
        return cost_[full];
    }

  private:
    std::vector<long long> sum_;
    std::vector<int> cost_;
    std::vector<int> parent_;
};

}  // namespace detail

// Provably optimal tardy count by complete enumeration: every partition of
// the jobs into capacity-feasible batches (generated as restricted growth
// strings, pruned when a block overflows), each ordered optimally by the
// subset DP above. Guarded by `limit` since the partition count grows like
// the Bell numbers.
inline OracleResult exhaustive_optimum(const Instance& inst, int limit = 9) {
    const int n = inst.size();
    if (n > limit) {
        throw TooLarge("exhaustive oracle limited to " + std::to_string(limit) +
                       " jobs, instance has " + std::to_string(n));
    }

    // Jobs that cannot meet their due date in any batch bound the optimum
    // from below; reaching that bound ends the search early.
    int lower = 0;
    for (const Job& j : inst.jobs()) {
        if (j.p > j.d) ++lower;
    }

    std::vector<int> block(static_cast<std::size_t>(n), 0);   // block of each job
    std::vector<long long> used(static_cast<std::size_t>(n), 0);
    std::vector<int> block_p, due_flat, due_off, order, best_order;
    std::vector<std::vector<int>> best_blocks;
    detail::BatchOrderDp dp;
    OracleResult out;
    out.optimum = -1;

    auto leaf = [&](int blocks) {
        ++out.nodes;
        block_p.assign(static_cast<std::size_t>(blocks), 0);
        due_off.assign(static_cast<std::size_t>(blocks) + 1, 0);
        for (int i = 0; i < n; ++i) {
            block_p[static_cast<std::size_t>(block[static_cast<std::size_t>(i)])] =
                std::max(block_p[static_cast<std::size_t>(block[static_cast<std::size_t>(i)])],
                         inst.job(i).p);
            ++due_off[static_cast<std::size_t>(block[static_cast<std::size_t>(i)]) + 1];
        }
        for (int b = 0; b < blocks; ++b) due_off[static_cast<std::size_t>(b) + 1] += due_off[static_cast<std::size_t>(b)];
        due_flat.assign(static_cast<std::size_t>(n), 0);
        std::vector<int> fill(due_off.begin(), due_off.end() - 1);
        for (int i = 0; i < n; ++i) {
            due_flat[static_cast<std::size_t>(fill[static_cast<std::size_t>(block[static_cast<std::size_t>(i)])]++)] =
                inst.job(i).d;
        }
        const int tardy = dp.solve(block_p, due_flat, due_off, order);
        if (out.optimum < 0 || tardy < out.optimum) {
            out.optimum = tardy;
            best_order = order;
            best_blocks.assign(static_cast<std::size_t>(blocks), {});
            for (int i = 0; i < n; ++i) {
                best_blocks[static_cast<std::size_t>(block[static_cast<std::size_t>(i)])].push_back(
                    inst.job(i).id);
            }
        }
    };

    // Depth-first over restricted growth strings: job i may join any block
    // seen so far or open the next one, so each partition appears once.
    auto rec = [&](auto&& self, int i, int blocks) -> void {
        if (out.optimum >= 0 && out.optimum == lower) return;
        if (i == n) {
            leaf(blocks);
            return;
        }
        const Job& j = inst.job(i);
        for (int b = 0; b <= blocks && b < n; ++b) {
            if (b < blocks && used[static_cast<std::size_t>(b)] + j.s > inst.capacity()) continue;
            block[static_cast<std::size_t>(i)] = b;
            used[static_cast<std::size_t>(b)] += j.s;
            self(self, i + 1, std::max(blocks, b + 1));
            used[static_cast<std::size_t>(b)] -= j.s;
        }
    };
    rec(rec, 0, 0);

    std::vector<std::vector<int>> batches;
    batches.reserve(best_order.size());
    for (int b : best_order) batches.push_back(best_blocks[static_cast<std::size_t>(b)]);
    out.witness = evaluate(inst, std::move(batches));
    return out;
}

struct MooreHodgsonResult {
    std::vector<int> on_time_order;  // ids, earliest due date first
    std::vector<int> tardy_ids;      // ids, in removal order
    int tardy_count = 0;
};

// Classic single-machine minimum tardy jobs rule: process in due date
// order; whenever a job finishes late, drop the longest job scheduled so
// far (ties on lowest id) to the tardy set. Exact for unit-size jobs on a
// unit-capacity machine, and the reduction target for instances where no
// two jobs share a batch.
inline MooreHodgsonResult moore_hodgson(const std::vector<Job>& jobs) {
    std::vector<int> order(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const Job& ja = jobs[static_cast<std::size_t>(a)];
        const Job& jb = jobs[static_cast<std::size_t>(b)];
        if (ja.d != jb.d) return ja.d < jb.d;
        return ja.id < jb.id;
    });

    MooreHodgsonResult out;
    std::vector<int> scheduled;
    long long clock = 0;
    for (int i : order) {
        scheduled.push_back(i);
        clock += jobs[static_cast<std::size_t>(i)].p;
        if (clock > jobs[static_cast<std::size_t>(i)].d) {
            auto longest = scheduled.begin();
            for (auto it = scheduled.begin(); it != scheduled.end(); ++it) {
                const Job& a = jobs[static_cast<std::size_t>(*it)];
                const Job& b = jobs[static_cast<std::size_t>(*longest)];
                if (a.p > b.p || (a.p == b.p && a.id < b.id)) longest = it;
            }
            clock -= jobs[static_cast<std::size_t>(*longest)].p;
            out.tardy_ids.push_back(jobs[static_cast<std::size_t>(*longest)].id);
            scheduled.erase(longest);
        }
    }
    for (int i : scheduled) out.on_time_order.push_back(jobs[static_cast<std::size_t>(i)].id);
    out.tardy_count = static_cast<int>(out.tardy_ids.size());
    return out;
}

inline MooreHodgsonResult moore_hodgson(const Instance& inst) {
    return moore_hodgson(inst.jobs());
}

// True when no two jobs of the instance fit together in one batch, i.e. the
// batching problem collapses to the single machine problem Moore-Hodgson
// solves exactly.
inline bool singleton_only(const Instance& inst) {
    std::vector<int> sizes;
    sizes.reserve(inst.jobs().size());
    for (const Job& j : inst.jobs()) sizes.push_back(j.s);
    std::sort(sizes.begin(), sizes.end());
    return sizes.size() < 2 || sizes[0] + sizes[1] > inst.capacity();
}

}  // namespace batchsched

#endif
