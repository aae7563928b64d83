#ifndef BATCHSCHED_TESTS_FIXTURES_HPP
#define BATCHSCHED_TESTS_FIXTURES_HPP

#include <vector>

#include "batchsched/core.hpp"

// Two hand-checked nine-job instances on a capacity-40 machine. Expected
// schedules, completion times and tardy sets for these appear throughout the
// suite; they were worked out by hand and double-checked independently.
inline batchsched::Instance nine_job_a() {
    std::vector<batchsched::Job> jobs = {
        // id, p, s, d
        {1, 19, 17, 36, 0, 1},
        {2, 28, 13, 35, 0, 1},
        {3, 44, 27, 32, 0, 1},
        {4, 14, 7, 32, 0, 1},
        {5, 16, 15, 34, 0, 1},
        {6, 23, 14, 36, 0, 1},
        {7, 37, 27, 36, 0, 1},
        {8, 10, 2, 37, 0, 1},
        {9, 43, 28, 36, 0, 1},
    };
    return batchsched::Instance(40, std::move(jobs));
}

inline batchsched::Instance nine_job_b() {
    std::vector<batchsched::Job> jobs = {
        {1, 22, 37, 35, 0, 1},
        {2, 4, 18, 10, 0, 1},
        {3, 3, 5, 12, 0, 1},
        {4, 2, 12, 21, 0, 1},
        {5, 24, 9, 26, 0, 1},
        {6, 50, 2, 15, 0, 1},
        {7, 8, 10, 17, 0, 1},
        {8, 5, 4, 36, 0, 1},
        {9, 10, 25, 24, 0, 1},
    };
    return batchsched::Instance(40, std::move(jobs));
}

#endif
