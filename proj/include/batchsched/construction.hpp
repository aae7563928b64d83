#ifndef BATCHSCHED_CONSTRUCTION_HPP
#define BATCHSCHED_CONSTRUCTION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "batchsched/core.hpp"
#include "batchsched/rng.hpp"
#include "batchsched/schedule.hpp"

namespace batchsched {

// Dispatch rules used to order jobs before the randomized selection step.
// Keys are sorted ascending (MaxSize descending); ties break on ascending id.
enum class PriorityRule {
    Edd,         // earliest due date
    MinSize,     // smallest size first
    MaxSize,     // largest size first
    Spt,         // shortest processing time
    MinSp,       // smallest s*p
    MinSd,       // smallest s*d
    MinSdp,      // smallest s*(d-p), may be negative
    MinPd,       // smallest p*d
    Random1,     // uniform shuffle
    Random2      // second independent uniform shuffle
};

inline constexpr std::array<PriorityRule, 10> kAllRules = {
    PriorityRule::Edd,    PriorityRule::MinSize, PriorityRule::MaxSize, PriorityRule::Spt,
    PriorityRule::MinSp,  PriorityRule::MinSd,   PriorityRule::MinSdp,  PriorityRule::MinPd,
    PriorityRule::Random1, PriorityRule::Random2};

inline const char* rule_name(PriorityRule rule) {
    switch (rule) {
        case PriorityRule::Edd: return "edd";
        case PriorityRule::MinSize: return "min_size";
        case PriorityRule::MaxSize: return "max_size";
        case PriorityRule::Spt: return "spt";
        case PriorityRule::MinSp: return "min_sp";
        case PriorityRule::MinSd: return "min_sd";
        case PriorityRule::MinSdp: return "min_sdp";
        case PriorityRule::MinPd: return "min_pd";
        case PriorityRule::Random1: return "random1";
        case PriorityRule::Random2: return "random2";
    }
    return "?";
}

// Orders all job ids of the instance under the given rule. The rng is only
// consumed by the two random rules.
inline std::vector<int> priority_sequence(const Instance& inst, PriorityRule rule, Rng& rng) {
    const int n = inst.size();
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    // Tie-breaking below wants ascending id, so pre-sort indices by id.
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return inst.job(a).id < inst.job(b).id; });

    if (rule == PriorityRule::Random1 || rule == PriorityRule::Random2) {
        for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = inst.job(order[static_cast<std::size_t>(i)]).id;
        shuffle_portable(ids, rng);
        return ids;
    }

    auto key = [&](int i) -> long long {
        const Job& j = inst.job(i);
        switch (rule) {
            case PriorityRule::Edd: return j.d;
            case PriorityRule::MinSize: return j.s;
            case PriorityRule::MaxSize: return -static_cast<long long>(j.s);
            case PriorityRule::Spt: return j.p;
            case PriorityRule::MinSp: return static_cast<long long>(j.s) * j.p;
            case PriorityRule::MinSd: return static_cast<long long>(j.s) * j.d;
            case PriorityRule::MinSdp: return static_cast<long long>(j.s) * (j.d - j.p);
            case PriorityRule::MinPd: return static_cast<long long>(j.p) * j.d;
            default: return 0;
        }
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
    for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = inst.job(order[static_cast<std::size_t>(i)]).id;
    return ids;
}

// Candidate list width. Either a fixed count or a fraction of the instance
// size; fractions resolve to at least one slot.
struct RclConfig {
    enum class Mode { Absolute, Fraction };

    Mode mode = Mode::Fraction;
    int k_abs = 1;
    double k_frac = 0.10;

    static RclConfig absolute(int k) {
        RclConfig c;
        c.mode = Mode::Absolute;
        c.k_abs = k;
        return c;
    }

    static RclConfig fraction(double f) {
        RclConfig c;
        c.mode = Mode::Fraction;
        c.k_frac = f;
        return c;
    }

    // Nominal width for an instance with n jobs, before clamping to the
    // number of still unscheduled jobs.
    int resolve(int n) const {
        if (mode == Mode::Absolute) return std::max(1, k_abs);
        return std::max(1, static_cast<int>(std::llround(k_frac * n)));
    }
};

// Removes and returns one id drawn uniformly from the first min(k, size)
// entries of the remaining priority-ordered ids.
inline int rcl_pick(std::vector<int>& remaining, int k, Rng& rng) {
    const int window = std::min<int>(k, static_cast<int>(remaining.size()));
    const int at = uniform_int(rng, 0, window - 1);
    const int id = remaining[static_cast<std::size_t>(at)];
    remaining.erase(remaining.begin() + at);
    return id;
}

// One row of the construction audit trail: at step `step` the candidate
// window held `window` jobs and the 1-based `chosen` one was taken.
struct PickTraceEntry {
    int step = 0;
    int window = 0;
    int chosen = 0;
};

// Incrementally packs jobs into batches as a construction or a sequence
// decode feeds them in. Two policies share this type: the capacity-only
// first fit, and the tardiness-aware variant that keeps an on-time zone of
// batches ahead of a tardy zone and only opens or fills on-time batches
// when the incoming job actually meets its due date there. The instance
// outlives the assigner.
class BatchAssigner {
  public:
    BatchAssigner(const Instance& inst, bool tardy_aware)
        : inst_(&inst), tardy_aware_(tardy_aware) {}

    void reset() {
        count_ = 0;
        ontime_.clear();
        tardy_.clear();
    }

    // Places the job with the given instance index into a batch.
    void place(int job_index) {
        const Job& j = inst_->job(job_index);
        if (!tardy_aware_) {
            for (int t = 0; t < count_; ++t) {
                if (resid_[static_cast<std::size_t>(t)] >= j.s) {
                    add(t, job_index);
                    return;
                }
            }
            add(new_batch(false), job_index);
            return;
        }

        if (j.p > j.d) {
            // No batch can finish this job on time, so it goes straight to
            // the tardy zone, capacity-first-fit.
            for (int t : tardy_) {
                if (resid_[static_cast<std::size_t>(t)] >= j.s) {
                    add(t, job_index);
                    return;
                }
            }
            add(new_batch(true), job_index);
            return;
        }

        // Scan the on-time zone in creation order. Completion times grow
        // along the zone, so the first batch that admits the job but would
        // finish it late rules out every later position as well, including
        // a fresh batch at the end of the zone.
        long long prefix = 0;
        bool late_everywhere = false;
        for (int t : ontime_) {
            if (resid_[static_cast<std::size_t>(t)] >= j.s) {
                const long long done = prefix + std::max(batch_p_[static_cast<std::size_t>(t)], j.p);
                if (done <= j.d) {
                    add(t, job_index);
                    return;
                }
                late_everywhere = true;
                break;
            }
            prefix += batch_p_[static_cast<std::size_t>(t)];
        }
        if (!late_everywhere && prefix + j.p <= j.d) {
            add(new_batch(false), job_index);
            return;
        }

        // The job will be tardy wherever it lands; reuse leftover capacity
        // anywhere before opening another batch.
        for (int t = 0; t < count_; ++t) {
            if (resid_[static_cast<std::size_t>(t)] >= j.s) {
                add(t, job_index);
                return;
            }
        }
        add(new_batch(true), job_index);
    }

    // Batches in final processing order (on-time zone ahead of the tardy
    // zone for the tardiness-aware policy), members as job ids.
    std::vector<std::vector<int>> batches() const {
        std::vector<std::vector<int>> out;
        out.reserve(static_cast<std::size_t>(count_));
        auto emit = [&](int t) {
            std::vector<int> ids;
            ids.reserve(members_[static_cast<std::size_t>(t)].size());
            for (int i : members_[static_cast<std::size_t>(t)]) ids.push_back(inst_->job(i).id);
            out.push_back(std::move(ids));
        };
        if (tardy_aware_) {
            for (int t : ontime_) emit(t);
            for (int t : tardy_) emit(t);
        } else {
            for (int t = 0; t < count_; ++t) emit(t);
        }
        return out;
    }

    // Tardy count of the finished assignment without materializing batch id
    // lists; the hot path for sequence fitness evaluation.
    int tardy_count() const {
        long long clock = 0;
        int tardy = 0;
        auto scan = [&](int t) {
            clock += batch_p_[static_cast<std::size_t>(t)];
            for (int i : members_[static_cast<std::size_t>(t)]) {
                if (clock > inst_->job(i).d) ++tardy;
            }
        };
        if (tardy_aware_) {
            for (int t : ontime_) scan(t);
            for (int t : tardy_) scan(t);
        } else {
            for (int t = 0; t < count_; ++t) scan(t);
        }
        return tardy;
    }

  private:
    int new_batch(bool tardy_zone) {
        const int t = count_++;
        const std::size_t ut = static_cast<std::size_t>(t);
        if (ut == members_.size()) {
            members_.emplace_back();
            resid_.push_back(0);
            batch_p_.push_back(0);
        } else {
            members_[ut].clear();
        }
        resid_[ut] = inst_->capacity();
        batch_p_[ut] = 0;
        (tardy_zone ? tardy_ : ontime_).push_back(t);
        return t;
    }

    void add(int t, int job_index) {
        const Job& j = inst_->job(job_index);
        const std::size_t ut = static_cast<std::size_t>(t);
        members_[ut].push_back(job_index);
        resid_[ut] -= j.s;
        batch_p_[ut] = std::max(batch_p_[ut], j.p);
    }

    const Instance* inst_;
    bool tardy_aware_;
    int count_ = 0;
    std::vector<std::vector<int>> members_;  // instance indices, reused across resets
    std::vector<int> resid_;
    std::vector<int> batch_p_;
    std::vector<int> ontime_;  // batch slots in creation order
    std::vector<int> tardy_;
};

struct ConstructionResult {
    BatchSchedule schedule;
    std::vector<int> pick_order;  // job ids in the order they were placed
    std::vector<PickTraceEntry> trace;
};

namespace detail {

// Shared skeleton of the randomized constructions and their replays. The
// picker maps (window, step) to a 0-based offset into the current window.
template <class PickFn>
ConstructionResult construct_from(const Instance& inst, std::vector<int> remaining, int k,
                                  bool tardy_aware, PickFn&& pick) {
    const int n = inst.size();
    BatchAssigner assigner(inst, tardy_aware);
    ConstructionResult out;
    out.pick_order.reserve(static_cast<std::size_t>(n));
    out.trace.reserve(static_cast<std::size_t>(n));
    for (int step = 1; step <= n; ++step) {
        const int window = std::min<int>(k, static_cast<int>(remaining.size()));
        const int at = pick(window, step);
        const int id = remaining[static_cast<std::size_t>(at)];
        remaining.erase(remaining.begin() + at);
        assigner.place(inst.index_of(id));
        out.pick_order.push_back(id);
        out.trace.push_back({step, window, at + 1});
    }
    out.schedule = evaluate(inst, assigner.batches());
    return out;
}

inline ConstructionResult construct(const Instance& inst, PriorityRule rule, const RclConfig& rcl,
                                    bool tardy_aware, Rng& rng) {
    std::vector<int> base = priority_sequence(inst, rule, rng);
    const int k = rcl.resolve(inst.size());
    return construct_from(inst, std::move(base), k, tardy_aware,
                          [&rng](int window, int) { return uniform_int(rng, 0, window - 1); });
}

inline ConstructionResult replay(const Instance& inst, std::span<const int> base_order,
                                 std::span<const int> picks, int k, bool tardy_aware) {
    const int n = inst.size();
    if (static_cast<int>(base_order.size()) != n || static_cast<int>(picks.size()) != n) {
        throw InvalidPosition("replay needs one base entry and one pick per job");
    }
    std::vector<int> base(base_order.begin(), base_order.end());
    return construct_from(inst, std::move(base), k, tardy_aware, [&](int window, int step) {
        const int chosen = picks[static_cast<std::size_t>(step - 1)];
        if (chosen < 1 || chosen > window) {
            throw InvalidPosition("step " + std::to_string(step) + ": pick " +
                                  std::to_string(chosen) + " outside window of " +
                                  std::to_string(window));
        }
        return chosen - 1;
    });
}

}  // namespace detail

// Capacity-only first-fit construction; batches run in creation order.
inline ConstructionResult classic_greedy(const Instance& inst, PriorityRule rule,
                                         const RclConfig& rcl, Rng& rng) {
    return detail::construct(inst, rule, rcl, false, rng);
}

// Tardiness-aware construction; on-time batches run ahead of tardy ones.
inline ConstructionResult improved_greedy(const Instance& inst, PriorityRule rule,
                                          const RclConfig& rcl, Rng& rng) {
    return detail::construct(inst, rule, rcl, true, rng);
}

// Deterministic re-runs of a recorded construction; picks are 1-based
// offsets into each step's candidate window.
inline ConstructionResult classic_greedy_replay(const Instance& inst,
                                                std::span<const int> base_order,
                                                std::span<const int> picks, int k) {
    return detail::replay(inst, base_order, picks, k, false);
}

inline ConstructionResult improved_greedy_replay(const Instance& inst,
                                                 std::span<const int> base_order,
                                                 std::span<const int> picks, int k) {
    return detail::replay(inst, base_order, picks, k, true);
}

enum class DecodeMode { Classic, Improved };

namespace detail {

inline void check_permutation(const Instance& inst, std::span<const int> sequence) {
    const int n = inst.size();
    if (static_cast<int>(sequence.size()) != n) {
        throw NotAPermutation("sequence has " + std::to_string(sequence.size()) + " entries, instance has " +
                              std::to_string(n) + " jobs");
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int id : sequence) {
        const int i = inst.index_of(id);
        if (i < 0) throw NotAPermutation("unknown job id " + std::to_string(id));
        if (seen[static_cast<std::size_t>(i)]) {
            throw NotAPermutation("job id " + std::to_string(id) + " repeats");
        }
        seen[static_cast<std::size_t>(i)] = 1;
    }
}

}  // namespace detail

// Feeds a full job sequence through the chosen assignment policy. This is
// the greedy construction with a window of one, so a schedule's encoded
// sequence decodes back to an equivalent schedule.
inline BatchSchedule decode_sequence(const Instance& inst, std::span<const int> sequence,
                                     DecodeMode mode) {
    detail::check_permutation(inst, sequence);
    BatchAssigner assigner(inst, mode == DecodeMode::Improved);
    for (int id : sequence) assigner.place(inst.index_of(id));
    return evaluate(inst, assigner.batches());
}

// Allocation-light variant for callers that only need the objective and
// reuse one assigner as scratch space. Skips permutation validation.
inline int decode_tardy_count(const Instance& inst, std::span<const int> sequence,
                              BatchAssigner& scratch) {
    scratch.reset();
    for (int id : sequence) scratch.place(inst.index_of(id));
    return scratch.tardy_count();
}

// Objective of a job sequence under the tardiness-aware decode; the fitness
// used for elite pool entries and path relinking.
inline SolutionSummary tardy_count_of_sequence(const Instance& inst,
                                               std::span<const int> sequence) {
    return decode_sequence(inst, sequence, DecodeMode::Improved).summary();
}

}  // namespace batchsched

#endif
