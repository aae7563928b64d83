#ifndef BATCHSCHED_CORE_HPP
#define BATCHSCHED_CORE_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace batchsched {

// One job of the batching machine. Ready times and weights are carried
// through the file formats but do not enter the tardiness objective.
struct Job {
    int id = 0;  // unique, positive
    int p = 0;   // processing time
    int s = 0;   // size, in machine capacity units
    int d = 0;   // due date
    int r = 0;   // ready time
    int w = 1;   // weight
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Raised by I/O helpers on unreadable files or malformed documents.
class IoError : public Error {
  public:
    using Error::Error;
};

enum class IssueKind { NonPositiveField, OversizedJob, DuplicateId, EmptyInstance };

struct ValidationIssue {
    IssueKind kind;
    std::string detail;
};

// Collects every violation found in an instance rather than stopping at the
// first one, so callers can report all problems in one pass.
class ValidationError : public Error {
  public:
    explicit ValidationError(std::vector<ValidationIssue> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<ValidationIssue>& issues() const { return issues_; }

  private:
    static std::string join(const std::vector<ValidationIssue>& issues) {
        std::string msg = "invalid instance:";
        for (const auto& issue : issues) {
            msg += "\n  - " + issue.detail;
        }
        return msg;
    }

    std::vector<ValidationIssue> issues_;
};

class NotAPartition : public Error {
  public:
    using Error::Error;
};

class CapacityViolation : public Error {
  public:
    using Error::Error;
};

class NotAPermutation : public Error {
  public:
    using Error::Error;
};

class InvalidPosition : public Error {
  public:
    using Error::Error;
};

class TooLarge : public Error {
  public:
    using Error::Error;
};

class PoolTooSmall : public Error {
  public:
    using Error::Error;
};

class NotSamePermutationSet : public Error {
  public:
    using Error::Error;
};

// A validated problem instance: a capacitated batch machine and its jobs.
// Construction runs the full validation pass; a live Instance is always
// well formed. Jobs keep their input order; lookup by id is supported for
// the file formats, which refer to jobs by id only.
class Instance {
  public:
    Instance(int capacity, std::vector<Job> jobs)
        : capacity_(capacity), jobs_(std::move(jobs)) {
        validate();
        index_by_id_.reserve(jobs_.size());
        for (int i = 0; i < static_cast<int>(jobs_.size()); ++i) {
            index_by_id_.emplace_back(jobs_[i].id, i);
        }
        std::sort(index_by_id_.begin(), index_by_id_.end());
    }

    int capacity() const { return capacity_; }
    const std::vector<Job>& jobs() const { return jobs_; }
    int size() const { return static_cast<int>(jobs_.size()); }
    const Job& job(int index) const { return jobs_[static_cast<std::size_t>(index)]; }

    // Returns the job index for an id, or -1 when the id is unknown.
    int index_of(int id) const {
        auto it = std::lower_bound(index_by_id_.begin(), index_by_id_.end(),
                                   std::pair<int, int>(id, -1));
        if (it == index_by_id_.end() || it->first != id) return -1;
        return it->second;
    }

    bool has_id(int id) const { return index_of(id) >= 0; }

  private:
    void validate() const {
        std::vector<ValidationIssue> issues;
        if (jobs_.empty()) {
            issues.push_back({IssueKind::EmptyInstance, "instance has no jobs"});
        }
        if (capacity_ <= 0) {
            issues.push_back({IssueKind::NonPositiveField,
                              "capacity must be positive, got " + std::to_string(capacity_)});
        }
        for (const Job& j : jobs_) {
            const std::string tag = "job " + std::to_string(j.id);
            if (j.id <= 0) {
                issues.push_back({IssueKind::NonPositiveField,
                                  tag + ": id must be positive"});
            }
            if (j.p <= 0) {
                issues.push_back({IssueKind::NonPositiveField,
                                  tag + ": processing time must be positive, got " +
                                      std::to_string(j.p)});
            }
            if (j.s <= 0) {
                issues.push_back({IssueKind::NonPositiveField,
                                  tag + ": size must be positive, got " + std::to_string(j.s)});
            }
            if (j.d <= 0) {
                issues.push_back({IssueKind::NonPositiveField,
                                  tag + ": due date must be positive, got " +
                                      std::to_string(j.d)});
            }
            if (j.r < 0) {
                issues.push_back({IssueKind::NonPositiveField,
                                  tag + ": ready time must be non-negative, got " +
                                      std::to_string(j.r)});
            }
            if (j.w <= 0) {
                issues.push_back({IssueKind::NonPositiveField,
                                  tag + ": weight must be positive, got " + std::to_string(j.w)});
            }
            if (capacity_ > 0 && j.s > capacity_) {
                issues.push_back({IssueKind::OversizedJob,
                                  tag + ": size " + std::to_string(j.s) +
                                      " exceeds machine capacity " + std::to_string(capacity_)});
            }
        }
        std::vector<int> ids;
        ids.reserve(jobs_.size());
        for (const Job& j : jobs_) ids.push_back(j.id);
        std::sort(ids.begin(), ids.end());
        for (std::size_t i = 1; i < ids.size(); ++i) {
            if (ids[i] == ids[i - 1] && (i == 1 || ids[i] != ids[i - 2])) {
                issues.push_back({IssueKind::DuplicateId,
                                  "job id " + std::to_string(ids[i]) + " appears more than once"});
            }
        }
        if (!issues.empty()) throw ValidationError(std::move(issues));
    }

    int capacity_ = 0;
    std::vector<Job> jobs_;
    std::vector<std::pair<int, int>> index_by_id_;
};

// Convenience wrapper matching the two-argument call sites in the tools.
inline Instance validate_instance(int capacity, std::vector<Job> jobs) {
    return Instance(capacity, std::move(jobs));
}

}  // namespace batchsched

#endif
