#ifndef BATCHSCHED_SCHEDULE_HPP
#define BATCHSCHED_SCHEDULE_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "batchsched/core.hpp"

namespace batchsched {

struct SolutionSummary {
    int tardy_count = 0;
    std::vector<int> tardy_job_ids;  // ascending
    long long makespan = 0;
};

// An evaluated schedule: batches in processing order with their derived
// processing times and completion times. The machine never idles, so batch
// b completes at the sum of the processing times of batches 1..b, and a job
// is tardy exactly when its batch completes strictly after its due date.
// Instances are immutable, so the derived data stays valid for the instance
// the schedule was built from.
class BatchSchedule {
  public:
    BatchSchedule() = default;

    const std::vector<std::vector<int>>& batches() const { return batches_; }
    int batch_count() const { return static_cast<int>(batches_.size()); }
    const std::vector<int>& batch_processing() const { return batch_p_; }
    const std::vector<long long>& batch_completion() const { return batch_c_; }

    int tardy_count() const { return tardy_count_; }
    long long makespan() const { return batch_c_.empty() ? 0 : batch_c_.back(); }

    long long completion_of(int job_id) const {
        const int slot = find_slot(job_id);
        if (slot < 0) throw NotAPartition("job id " + std::to_string(job_id) + " is not scheduled");
        return completion_sorted_[static_cast<std::size_t>(slot)];
    }

    bool is_tardy(int job_id) const {
        const int slot = find_slot(job_id);
        if (slot < 0) throw NotAPartition("job id " + std::to_string(job_id) + " is not scheduled");
        return tardy_sorted_[static_cast<std::size_t>(slot)] != 0;
    }

    SolutionSummary summary() const {
        SolutionSummary out;
        out.tardy_count = tardy_count_;
        out.makespan = makespan();
        for (std::size_t i = 0; i < ids_sorted_.size(); ++i) {
            if (tardy_sorted_[i]) out.tardy_job_ids.push_back(ids_sorted_[i]);
        }
        return out;
    }

    // Per-batch tardy member counts; used by the local search to recount
    // only the span of batches a move touches.
    const std::vector<int>& batch_tardy() const { return batch_tardy_; }

    // Member indices into the originating instance, parallel to batches().
    const std::vector<std::vector<int>>& member_indices() const { return member_idx_; }

    friend BatchSchedule evaluate(const Instance& inst, std::vector<std::vector<int>> batches);

  private:
    int find_slot(int job_id) const {
        auto it = std::lower_bound(ids_sorted_.begin(), ids_sorted_.end(), job_id);
        if (it == ids_sorted_.end() || *it != job_id) return -1;
        return static_cast<int>(it - ids_sorted_.begin());
    }

    std::vector<std::vector<int>> batches_;     // job ids, processing order
    std::vector<std::vector<int>> member_idx_;  // same members as instance indices
    std::vector<int> batch_p_;
    std::vector<long long> batch_c_;
    std::vector<int> batch_tardy_;
    std::vector<int> ids_sorted_;
    std::vector<long long> completion_sorted_;
    std::vector<char> tardy_sorted_;
    int tardy_count_ = 0;
};

// Checks that the batch list partitions the instance's jobs and respects the
// machine capacity, then derives batch processing times, completion times and
// the tardiness figures.
inline BatchSchedule evaluate(const Instance& inst, std::vector<std::vector<int>> batches) {
    const int n = inst.size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int assigned = 0;

    BatchSchedule out;
    out.member_idx_.reserve(batches.size());
    for (std::size_t b = 0; b < batches.size(); ++b) {
        if (batches[b].empty()) {
            throw NotAPartition("batch " + std::to_string(b + 1) + " is empty");
        }
        std::vector<int> idx;
        idx.reserve(batches[b].size());
        long long used = 0;
        for (int id : batches[b]) {
            const int i = inst.index_of(id);
            if (i < 0) {
                throw NotAPartition("batch " + std::to_string(b + 1) + " names unknown job id " +
                                    std::to_string(id));
            }
            if (seen[static_cast<std::size_t>(i)]) {
                throw NotAPartition("job id " + std::to_string(id) +
                                    " appears in more than one batch");
            }
            seen[static_cast<std::size_t>(i)] = 1;
            ++assigned;
            used += inst.job(i).s;
            idx.push_back(i);
        }
        if (used > inst.capacity()) {
            throw CapacityViolation("batch " + std::to_string(b + 1) + " uses " +
                                    std::to_string(used) + " capacity units, machine has " +
                                    std::to_string(inst.capacity()));
        }
        out.member_idx_.push_back(std::move(idx));
    }
    if (assigned != n) {
        throw NotAPartition("schedule covers " + std::to_string(assigned) + " of " +
                            std::to_string(n) + " jobs");
    }

    out.batches_ = std::move(batches);
    out.batch_p_.resize(out.batches_.size());
    out.batch_c_.resize(out.batches_.size());
    out.batch_tardy_.resize(out.batches_.size());

    std::vector<std::pair<int, std::pair<long long, char>>> per_job;
    per_job.reserve(static_cast<std::size_t>(n));

    long long clock = 0;
    for (std::size_t b = 0; b < out.batches_.size(); ++b) {
        int longest = 0;
        for (int i : out.member_idx_[b]) longest = std::max(longest, inst.job(i).p);
        clock += longest;
        out.batch_p_[b] = longest;
        out.batch_c_[b] = clock;
        int tardy_here = 0;
        for (int i : out.member_idx_[b]) {
            const Job& j = inst.job(i);
            const char late = clock > j.d ? 1 : 0;
            tardy_here += late;
            per_job.push_back({j.id, {clock, late}});
        }
        out.batch_tardy_[b] = tardy_here;
        out.tardy_count_ += tardy_here;
    }

    std::sort(per_job.begin(), per_job.end());
    out.ids_sorted_.reserve(per_job.size());
    out.completion_sorted_.reserve(per_job.size());
    out.tardy_sorted_.reserve(per_job.size());
    for (const auto& [id, cl] : per_job) {
        out.ids_sorted_.push_back(id);
        out.completion_sorted_.push_back(cl.first);
        out.tardy_sorted_.push_back(cl.second);
    }
    return out;
}

// Flattens a schedule into the job sequence that recreates it: batches in
// processing order, members listed by ascending id.
inline std::vector<int> encode_sequence(const BatchSchedule& sched) {
    std::vector<int> seq;
    for (const auto& batch : sched.batches()) {
        std::vector<int> members = batch;
        std::sort(members.begin(), members.end());
        seq.insert(seq.end(), members.begin(), members.end());
    }
    return seq;
}

}  // namespace batchsched

#endif
