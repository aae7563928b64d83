#ifndef BATCHSCHED_PATH_RELINKING_HPP
#define BATCHSCHED_PATH_RELINKING_HPP

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "batchsched/core.hpp"
#include "batchsched/rng.hpp"

namespace batchsched {

struct EliteEntry {
    std::vector<int> sequence;
    int tardy = 0;
};

// Entries rank by tardy count, ties by lexicographic sequence, so best and
// worst are always unambiguous.
inline bool elite_less(const EliteEntry& a, const EliteEntry& b) {
    if (a.tardy != b.tardy) return a.tardy < b.tardy;
    return a.sequence < b.sequence;
}

// Bounded pool of the best job sequences seen so far. Duplicates are
// rejected; once full, a candidate only enters by strictly outranking the
// current worst entry, which it replaces.
class ElitePool {
  public:
    explicit ElitePool(int capacity = 10) : capacity_(capacity) {
        if (capacity < 1) throw Error("elite pool capacity must be positive");
    }

    int capacity() const { return capacity_; }
    int size() const { return static_cast<int>(entries_.size()); }
    bool full() const { return size() == capacity_; }
    const std::vector<EliteEntry>& entries() const { return entries_; }

    const EliteEntry& best() const {
        require_nonempty();
        return *std::min_element(entries_.begin(), entries_.end(), elite_less);
    }

    const EliteEntry& worst() const {
        require_nonempty();
        return *std::max_element(entries_.begin(), entries_.end(), elite_less);
    }

    bool insert(EliteEntry candidate) {
        for (const EliteEntry& e : entries_) {
            if (e.sequence == candidate.sequence) return false;
        }
        if (!full()) {
            entries_.push_back(std::move(candidate));
            return true;
        }
        auto worst_it = std::max_element(entries_.begin(), entries_.end(), elite_less);
        if (!elite_less(candidate, *worst_it)) return false;
        *worst_it = std::move(candidate);
        return true;
    }

  private:
    void require_nonempty() const {
        if (entries_.empty()) throw PoolTooSmall("elite pool is empty");
    }

    int capacity_;
    std::vector<EliteEntry> entries_;
};

struct RelinkResult {
    std::vector<int> best_sequence;
    int best_tardy = 0;
    int intermediates = 0;
};

using SequenceEval = std::function<int(const std::vector<int>&)>;
using SequenceSink = std::function<void(const std::vector<int>&, int)>;

// Walks from `initial` to `guiding` one repair swap at a time: at each
// position holding the wrong job, swap in the job the guiding sequence wants
// there. Every intermediate (the guiding sequence included, when the walk is
// non-trivial) is evaluated and offered to the sink; the best one wins, ties
// going to the earliest.
inline RelinkResult relink(const std::vector<int>& initial, const std::vector<int>& guiding,
                           const SequenceEval& eval, const SequenceSink& sink = {}) {
    if (initial.size() != guiding.size()) {
        throw NotSamePermutationSet("sequences differ in length");
    }
    std::vector<int> a = initial, b = guiding;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw NotSamePermutationSet("sequences hold different job sets");

    RelinkResult out;
    std::vector<int> work = initial;
    bool have_best = false;
    for (std::size_t n = 0; n < work.size(); ++n) {
        if (work[n] == guiding[n]) continue;
        std::size_t t = n + 1;
        while (work[t] != guiding[n]) ++t;
        std::swap(work[n], work[t]);
        const int tardy = eval(work);
        ++out.intermediates;
        if (sink) sink(work, tardy);
        if (!have_best || tardy < out.best_tardy) {
            out.best_sequence = work;
            out.best_tardy = tardy;
            have_best = true;
        }
    }
    if (!have_best) {
        out.best_sequence = initial;
        out.best_tardy = eval(initial);
    }
    return out;
}

// Repeatedly relinks a random pool entry towards the pool's best sequence,
// feeding intermediates back into the pool. Returns the best sequence seen,
// never worse than the incoming pool best.
inline EliteEntry run_path_relinking(ElitePool& pool, int iterations, Rng& rng,
                                     const SequenceEval& eval) {
    if (pool.size() < 2) {
        throw PoolTooSmall("path relinking needs at least two elite sequences, have " +
                           std::to_string(pool.size()));
    }
    EliteEntry overall = pool.best();
    for (int iter = 0; iter < iterations; ++iter) {
        const EliteEntry guiding = pool.best();
        EliteEntry initial = pool.entries()[static_cast<std::size_t>(
            uniform_int(rng, 0, pool.size() - 1))];
        if (initial.sequence == guiding.sequence) {
            // One redraw; a second collision skips the iteration.
            initial = pool.entries()[static_cast<std::size_t>(
                uniform_int(rng, 0, pool.size() - 1))];
            if (initial.sequence == guiding.sequence) continue;
        }
        RelinkResult res = relink(initial.sequence, guiding.sequence, eval,
                                  [&pool](const std::vector<int>& seq, int tardy) {
                                      pool.insert({seq, tardy});
                                  });
        if (res.best_tardy < overall.tardy) {
            overall = {std::move(res.best_sequence), res.best_tardy};
        }
    }
    return overall;
}

}  // namespace batchsched

#endif
