#include <catch2/catch_amalgamated.hpp>

#include "batchsched/core.hpp"
#include "batchsched/schedule.hpp"
#include "fixtures.hpp"

using namespace batchsched;

TEST_CASE("instance validation accepts well-formed input") {
    const Instance inst = nine_job_a();
    REQUIRE(inst.size() == 9);
    REQUIRE(inst.capacity() == 40);
    REQUIRE(inst.index_of(1) == 0);
    REQUIRE(inst.index_of(9) == 8);
    REQUIRE(inst.index_of(10) == -1);
    REQUIRE(inst.has_id(4));
    REQUIRE_FALSE(inst.has_id(0));
}

TEST_CASE("instance validation collects every issue") {
    std::vector<Job> jobs = {
        {1, 0, 5, 10, 0, 1},    // non-positive processing time
        {1, 3, 50, 10, 0, 1},   // duplicate id and oversized
        {-2, 3, 5, 0, 0, 1},    // bad id and bad due date
    };
    try {
        Instance bad(40, std::move(jobs));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.issues().size() >= 4);
        bool saw_oversize = false, saw_dup = false, saw_nonpos = false;
        for (const auto& issue : e.issues()) {
            if (issue.kind == IssueKind::OversizedJob) saw_oversize = true;
            if (issue.kind == IssueKind::DuplicateId) saw_dup = true;
            if (issue.kind == IssueKind::NonPositiveField) saw_nonpos = true;
        }
        REQUIRE(saw_oversize);
        REQUIRE(saw_dup);
        REQUIRE(saw_nonpos);
    }
}

TEST_CASE("empty instance and bad capacity are rejected") {
    REQUIRE_THROWS_AS(Instance(40, {}), ValidationError);
    REQUIRE_THROWS_AS(Instance(0, {{1, 2, 1, 3, 0, 1}}), ValidationError);
    REQUIRE_THROWS_AS(Instance(-5, {{1, 2, 1, 3, 0, 1}}), ValidationError);
}

TEST_CASE("evaluate derives completions and tardiness") {
    const Instance inst = nine_job_a();
    const BatchSchedule sched =
        evaluate(inst, {{5, 4, 1}, {3, 2}, {7, 8}, {9}, {6}});

    REQUIRE(sched.batch_count() == 5);
    REQUIRE(sched.batch_processing() == std::vector<int>{19, 44, 37, 43, 23});
    REQUIRE(sched.batch_completion() == std::vector<long long>{19, 63, 100, 143, 166});
    REQUIRE(sched.makespan() == 166);
    REQUIRE(sched.tardy_count() == 6);

    const SolutionSummary s = sched.summary();
    REQUIRE(s.tardy_job_ids == std::vector<int>{2, 3, 6, 7, 8, 9});
    REQUIRE(s.makespan == 166);

    REQUIRE(sched.completion_of(5) == 19);
    REQUIRE(sched.completion_of(2) == 63);
    REQUIRE(sched.completion_of(6) == 166);
    REQUIRE_FALSE(sched.is_tardy(1));
    REQUIRE(sched.is_tardy(9));

    int per_batch = 0;
    for (int t : sched.batch_tardy()) per_batch += t;
    REQUIRE(per_batch == 6);
}

TEST_CASE("completion equal to the due date is on time") {
    const Instance inst(10, {{1, 5, 3, 5, 0, 1}, {2, 5, 3, 4, 0, 1}});
    const BatchSchedule sched = evaluate(inst, {{1, 2}});
    REQUIRE(sched.completion_of(1) == 5);
    REQUIRE_FALSE(sched.is_tardy(1));  // exactly on time
    REQUIRE(sched.is_tardy(2));        // late by one
    REQUIRE(sched.tardy_count() == 1);
}

TEST_CASE("evaluate rejects non-partitions") {
    const Instance inst = nine_job_a();
    REQUIRE_THROWS_AS(evaluate(inst, {{1, 2, 4}, {5, 6, 8}}), NotAPartition);
    REQUIRE_THROWS_AS(evaluate(inst, {{1, 2}, {2, 4}, {5, 6, 8}, {3}, {7}, {9}}), NotAPartition);
    REQUIRE_THROWS_AS(
        evaluate(inst, {{1, 2, 4}, {5, 6, 8}, {3}, {7}, {9}, {11}}), NotAPartition);
    REQUIRE_THROWS_AS(evaluate(inst, {{1, 2, 4}, {}, {5, 6, 8}, {3}, {7}, {9}}), NotAPartition);
}

TEST_CASE("evaluate rejects capacity violations") {
    const Instance inst = nine_job_a();
    // jobs 3 and 9 use 27 + 28 = 55 > 40 units
    REQUIRE_THROWS_AS(evaluate(inst, {{3, 9}, {1, 2, 4}, {5, 6, 8}, {7}}), CapacityViolation);
}

TEST_CASE("encode_sequence lists batches in order, members by id") {
    const Instance inst = nine_job_a();
    const BatchSchedule sched =
        evaluate(inst, {{5, 4, 1}, {3, 2}, {7, 8}, {9}, {6}});
    REQUIRE(encode_sequence(sched) == std::vector<int>{1, 4, 5, 2, 3, 7, 8, 9, 6});
}

TEST_CASE("jobs keep optional fields") {
    const Instance inst(40, {{7, 5, 3, 9, 4, 2}});
    REQUIRE(inst.job(0).r == 4);
    REQUIRE(inst.job(0).w == 2);
}

TEST_CASE("negative ready time is rejected") {
    REQUIRE_THROWS_AS(Instance(40, {{1, 5, 3, 9, -1, 1}}), ValidationError);
}
