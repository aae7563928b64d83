#ifndef BATCHSCHED_LOCAL_SEARCH_HPP
#define BATCHSCHED_LOCAL_SEARCH_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "batchsched/core.hpp"
#include "batchsched/rng.hpp"
#include "batchsched/schedule.hpp"

namespace batchsched {

namespace detail {

inline void check_position(const BatchSchedule& sched, int pos, const char* what) {
    if (pos < 0 || pos >= sched.batch_count()) {
        throw InvalidPosition(std::string(what) + " position " + std::to_string(pos) +
                              " outside 0.." + std::to_string(sched.batch_count() - 1));
    }
}

// Longest member of a batch, ties on the lowest job id.
inline int longest_member(const Instance& inst, const std::vector<int>& member_idx) {
    int best = member_idx.front();
    for (int i : member_idx) {
        const Job& a = inst.job(i);
        const Job& b = inst.job(best);
        if (a.p > b.p || (a.p == b.p && a.id < b.id)) best = i;
    }
    return best;
}

}  // namespace detail

// Swaps the batches at two processing positions. Membership is untouched,
// only completion times in the span between the two positions move.
inline BatchSchedule batch_interchange(const Instance& inst, const BatchSchedule& sched,
                                       int pos_a, int pos_b) {
    detail::check_position(sched, pos_a, "interchange");
    detail::check_position(sched, pos_b, "interchange");
    if (pos_a == pos_b) throw InvalidPosition("interchange positions must differ");
    std::vector<std::vector<int>> batches = sched.batches();
    std::swap(batches[static_cast<std::size_t>(pos_a)], batches[static_cast<std::size_t>(pos_b)]);
    return evaluate(inst, std::move(batches));
}

// Predicted tardy count of the interchange without building the schedule.
inline int tardy_after_interchange(const Instance& inst, const BatchSchedule& sched, int pos_a,
                                   int pos_b) {
    const int lo = std::min(pos_a, pos_b);
    const int hi = std::max(pos_a, pos_b);
    const auto& completion = sched.batch_completion();
    const auto& processing = sched.batch_processing();
    const auto& members = sched.member_indices();

    int untouched = sched.tardy_count();
    for (int pos = lo; pos <= hi; ++pos) untouched -= sched.batch_tardy()[static_cast<std::size_t>(pos)];

    long long clock = lo == 0 ? 0 : completion[static_cast<std::size_t>(lo - 1)];
    int recount = 0;
    for (int pos = lo; pos <= hi; ++pos) {
        const int batch = pos == lo ? hi : pos == hi ? lo : pos;
        clock += processing[static_cast<std::size_t>(batch)];
        for (int i : members[static_cast<std::size_t>(batch)]) {
            if (clock > inst.job(i).d) ++recount;
        }
    }
    return untouched + recount;
}

// Moves the longest job (ties on lowest id) of the source batch into the
// target batch, or into a fresh batch appended at the end when `target` is
// empty. An emptied source batch disappears from the sequence.
inline BatchSchedule relocate_longest_job(const Instance& inst, const BatchSchedule& sched,
                                          int source, std::optional<int> target) {
    detail::check_position(sched, source, "relocate source");
    if (target) {
        detail::check_position(sched, *target, "relocate target");
        if (*target == source) throw InvalidPosition("relocate source and target must differ");
    }
    const int moved = detail::longest_member(inst, sched.member_indices()[static_cast<std::size_t>(source)]);
    const Job& job = inst.job(moved);

    if (target) {
        long long used = 0;
        for (int i : sched.member_indices()[static_cast<std::size_t>(*target)]) used += inst.job(i).s;
        if (used + job.s > inst.capacity()) {
            throw CapacityViolation("relocating job " + std::to_string(job.id) + " into batch " +
                                    std::to_string(*target + 1) + " would exceed capacity");
        }
    }

    std::vector<std::vector<int>> batches = sched.batches();
    auto& src = batches[static_cast<std::size_t>(source)];
    src.erase(std::find(src.begin(), src.end(), job.id));
    const bool dissolved = src.empty();  // decided before push_back may reallocate
    if (target) {
        batches[static_cast<std::size_t>(*target)].push_back(job.id);
    } else {
        batches.push_back({job.id});
    }
    if (dissolved) batches.erase(batches.begin() + source);
    return evaluate(inst, std::move(batches));
}

// Predicted tardy count of relocate_longest_job for the same arguments.
inline int tardy_after_relocate(const Instance& inst, const BatchSchedule& sched, int source,
                                std::optional<int> target) {
    const int count = sched.batch_count();
    const auto& completion = sched.batch_completion();
    const auto& processing = sched.batch_processing();
    const auto& members = sched.member_indices();
    const int moved = detail::longest_member(inst, members[static_cast<std::size_t>(source)]);
    const Job& job = inst.job(moved);

    const int first = std::min(source, target.value_or(count));
    int untouched = sched.tardy_count();
    for (int pos = first; pos < count; ++pos) untouched -= sched.batch_tardy()[static_cast<std::size_t>(pos)];

    long long clock = first == 0 ? 0 : completion[static_cast<std::size_t>(first - 1)];
    int recount = 0;
    for (int pos = first; pos < count; ++pos) {
        const auto& mem = members[static_cast<std::size_t>(pos)];
        int p = processing[static_cast<std::size_t>(pos)];
        if (pos == source) {
            if (mem.size() == 1) continue;  // batch dissolves
            p = 0;
            for (int i : mem) {
                if (i != moved) p = std::max(p, inst.job(i).p);
            }
        } else if (target && pos == *target) {
            p = std::max(p, job.p);
        }
        clock += p;
        for (int i : mem) {
            if (i == moved && pos == source) continue;
            if (clock > inst.job(i).d) ++recount;
        }
        if (target && pos == *target && clock > job.d) ++recount;
    }
    if (!target) {
        clock += job.p;
        if (clock > job.d) ++recount;
    }
    return untouched + recount;
}

namespace detail {

struct WorkBatch {
    int orig = 0;  // original position; created batches keep creation order after them
    std::vector<int> members;
    long long used = 0;
    int p = 0;
};

inline void refresh_batch(const Instance& inst, WorkBatch& b) {
    b.used = 0;
    b.p = 0;
    for (int i : b.members) {
        b.used += inst.job(i).s;
        b.p = std::max(b.p, inst.job(i).p);
    }
}

}  // namespace detail

// Pulls every job whose processing time exceeds (alpha + 1) times the mean
// of its batch out of that batch, then re-places the extracted jobs one by
// one: first into a later batch where the job fits, finishes on time and
// turns no on-time job tardy; failing that into a batch this call already
// created, capacity permitting; failing that into a fresh batch at the end.
// Deterministic; a batch can never lose all members since the strict
// threshold spares at least one at-most-average job.
inline BatchSchedule extract_long_jobs(const Instance& inst, const BatchSchedule& sched,
                                       double alpha) {
    if (alpha < 0.0) throw Error("extract_long_jobs: alpha must be non-negative");

    const auto& members = sched.member_indices();
    const int count = sched.batch_count();

    std::vector<std::pair<int, int>> marked;  // (source original position, job index)
    std::vector<detail::WorkBatch> work(static_cast<std::size_t>(count));
    for (int pos = 0; pos < count; ++pos) {
        const auto& mem = members[static_cast<std::size_t>(pos)];
        long long sum_p = 0;
        for (int i : mem) sum_p += inst.job(i).p;
        const double threshold = (alpha + 1.0) * static_cast<double>(sum_p);
        auto& wb = work[static_cast<std::size_t>(pos)];
        wb.orig = pos;
        for (int i : mem) {
            if (static_cast<double>(inst.job(i).p) * static_cast<double>(mem.size()) > threshold) {
                marked.push_back({pos, i});
            } else {
                wb.members.push_back(i);
            }
        }
        detail::refresh_batch(inst, wb);
    }
    if (marked.empty()) return evaluate(inst, sched.batches());

    const int created_base = count;  // orig values >= this mark batches born here
    int created = 0;

    std::vector<long long> clock;
    std::vector<char> on_time;
    auto completions = [&](std::vector<long long>& out) {
        out.clear();
        long long c = 0;
        for (const auto& wb : work) {
            c += wb.p;
            out.push_back(c);
        }
    };

    for (const auto& [src_orig, j] : marked) {
        const Job& job = inst.job(j);
        completions(clock);
        on_time.assign(inst.jobs().size(), 0);
        for (std::size_t t = 0; t < work.size(); ++t) {
            for (int i : work[t].members) {
                if (clock[t] <= inst.job(i).d) on_time[static_cast<std::size_t>(i)] = 1;
            }
        }

        int placed = -1;
        for (std::size_t t = 0; t < work.size() && placed < 0; ++t) {
            auto& wb = work[t];
            if (wb.orig <= src_orig || wb.orig >= created_base) continue;
            if (wb.used + job.s > inst.capacity()) continue;
            // Completion times at and after t with the job inserted here.
            const int new_p = std::max(wb.p, job.p);
            long long c = t == 0 ? 0 : clock[t - 1];
            bool ok = true;
            for (std::size_t u = t; u < work.size() && ok; ++u) {
                c += u == t ? new_p : work[u].p;
                if (u == t && c > job.d) ok = false;
                for (int i : work[u].members) {
                    if (ok && on_time[static_cast<std::size_t>(i)] && c > inst.job(i).d) ok = false;
                }
            }
            if (ok) placed = static_cast<int>(t);
        }
        if (placed < 0) {
            for (std::size_t t = 0; t < work.size(); ++t) {
                if (work[t].orig >= created_base && work[t].used + job.s <= inst.capacity()) {
                    placed = static_cast<int>(t);
                    break;
                }
            }
        }
        if (placed < 0) {
            detail::WorkBatch wb;
            wb.orig = created_base + created++;
            work.push_back(std::move(wb));
            placed = static_cast<int>(work.size()) - 1;
        }
        work[static_cast<std::size_t>(placed)].members.push_back(j);
        detail::refresh_batch(inst, work[static_cast<std::size_t>(placed)]);
    }

    std::vector<std::vector<int>> batches;
    batches.reserve(work.size());
    for (const auto& wb : work) {
        std::vector<int> ids;
        ids.reserve(wb.members.size());
        for (int i : wb.members) ids.push_back(inst.job(i).id);
        batches.push_back(std::move(ids));
    }
    return evaluate(inst, std::move(batches));
}

struct LsConfig {
    // Samples per sweep; defaults to 50 per job. Zero disables the search.
    std::optional<long long> budget;
    double alpha = 0.0;
};

// First-improvement hill climbing over the three moves, sampled round-robin.
// Each sweep draws `budget` candidate moves; accepted moves apply at once
// and sampling continues from the new schedule. Stops after a full sweep
// without improvement.
inline BatchSchedule local_search(const Instance& inst, BatchSchedule sched, const LsConfig& cfg,
                                  Rng& rng) {
    const long long budget = cfg.budget ? *cfg.budget : 50LL * inst.size();
    if (budget <= 0) return sched;

    int current = sched.tardy_count();
    std::vector<long long> used;
    auto refresh_used = [&]() {
        used.assign(sched.member_indices().size(), 0);
        for (std::size_t t = 0; t < sched.member_indices().size(); ++t) {
            for (int i : sched.member_indices()[t]) used[t] += inst.job(i).s;
        }
    };
    refresh_used();

    std::vector<int> targets;
    bool extract_pending = true;  // schedule not yet seen by the extract move
    bool improved = true;
    while (improved) {
        improved = false;
        for (long long sample = 0; sample < budget; ++sample) {
            const int kind = static_cast<int>(sample % 3);
            const int count = sched.batch_count();
            if (kind == 0) {
                if (count < 2) continue;
                const int a = uniform_int(rng, 0, count - 1);
                int b = uniform_int(rng, 0, count - 2);
                if (b >= a) ++b;
                if (tardy_after_interchange(inst, sched, a, b) < current) {
                    sched = batch_interchange(inst, sched, a, b);
                    current = sched.tardy_count();
                    refresh_used();
                    improved = true;
                    extract_pending = true;
                }
            } else if (kind == 1) {
                if (count < 2 && sched.member_indices()[0].size() < 2) continue;
                const int src = uniform_int(rng, 0, count - 1);
                const int moved =
                    detail::longest_member(inst, sched.member_indices()[static_cast<std::size_t>(src)]);
                const int s = inst.job(moved).s;
                targets.clear();
                for (int t = 0; t < count; ++t) {
                    if (t != src && used[static_cast<std::size_t>(t)] + s <= inst.capacity()) {
                        targets.push_back(t);
                    }
                }
                targets.push_back(-1);  // fresh batch at the end
                const int chosen = targets[static_cast<std::size_t>(
                    uniform_int(rng, 0, static_cast<int>(targets.size()) - 1))];
                std::optional<int> target;
                if (chosen >= 0) target = chosen;
                if (tardy_after_relocate(inst, sched, src, target) < current) {
                    sched = relocate_longest_job(inst, sched, src, target);
                    current = sched.tardy_count();
                    refresh_used();
                    improved = true;
                    extract_pending = true;
                }
            } else {
                if (!extract_pending) continue;
                BatchSchedule candidate = extract_long_jobs(inst, sched, cfg.alpha);
                if (candidate.tardy_count() < current) {
                    sched = std::move(candidate);
                    current = sched.tardy_count();
                    refresh_used();
                    improved = true;
                } else {
                    extract_pending = false;
                }
            }
        }
    }
    return sched;
}

}  // namespace batchsched

#endif
