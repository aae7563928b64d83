#include <algorithm>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "batchsched/construction.hpp"
#include "batchsched/generator.hpp"
#include "fixtures.hpp"

using namespace batchsched;

namespace {

Rng test_rng(std::uint32_t tag = 0) { return make_stream(12345, {tag}); }

}  // namespace

TEST_CASE("earliest due date ordering with id tie-break") {
    Rng rng = test_rng();
    const Instance a = nine_job_a();
    REQUIRE(priority_sequence(a, PriorityRule::Edd, rng) ==
            std::vector<int>{3, 4, 5, 2, 1, 6, 7, 9, 8});
    const Instance b = nine_job_b();
    REQUIRE(priority_sequence(b, PriorityRule::Edd, rng) ==
            std::vector<int>{2, 3, 6, 7, 4, 9, 5, 1, 8});
}

TEST_CASE("size and processing time orderings") {
    Rng rng = test_rng();
    const Instance a = nine_job_a();
    REQUIRE(priority_sequence(a, PriorityRule::MaxSize, rng) ==
            std::vector<int>{9, 3, 7, 1, 5, 6, 2, 4, 8});
    REQUIRE(priority_sequence(a, PriorityRule::MinSize, rng) ==
            std::vector<int>{8, 4, 2, 6, 5, 1, 3, 7, 9});
    REQUIRE(priority_sequence(a, PriorityRule::Spt, rng) ==
            std::vector<int>{8, 4, 5, 1, 6, 2, 7, 9, 3});
}

TEST_CASE("slack product ordering handles negative keys") {
    Rng rng = test_rng();
    const Instance b = nine_job_b();
    // s*(d-p) for job 6 is 2*(15-50) = -70, the smallest key
    REQUIRE(priority_sequence(b, PriorityRule::MinSdp, rng) ==
            std::vector<int>{6, 5, 3, 7, 2, 8, 4, 9, 1});
}

TEST_CASE("random rules produce seeded permutations") {
    const Instance a = nine_job_a();
    Rng r1 = test_rng(1);
    Rng r2 = test_rng(1);
    const auto seq1 = priority_sequence(a, PriorityRule::Random1, r1);
    const auto seq2 = priority_sequence(a, PriorityRule::Random1, r2);
    REQUIRE(seq1 == seq2);  // same stream, same order
    auto sorted = seq1;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(sorted == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("candidate list width resolution") {
    REQUIRE(RclConfig::fraction(0.25).resolve(50) == 13);
    REQUIRE(RclConfig::fraction(0.10).resolve(9) == 1);
    REQUIRE(RclConfig::fraction(0.10).resolve(100) == 10);
    REQUIRE(RclConfig::fraction(0.001).resolve(10) == 1);  // never below one
    REQUIRE(RclConfig::absolute(3).resolve(9) == 3);
    REQUIRE(RclConfig::absolute(0).resolve(9) == 1);
}

TEST_CASE("rcl_pick draws only from the window head") {
    Rng rng = test_rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> remaining = {3, 4, 5, 6, 7};
        const int picked = rcl_pick(remaining, 2, rng);
        REQUIRE((picked == 3 || picked == 4));
        REQUIRE(remaining.size() == 4);
        REQUIRE(std::find(remaining.begin(), remaining.end(), picked) == remaining.end());
    }
    // width one is deterministic
    std::vector<int> remaining = {9, 1, 2};
    REQUIRE(rcl_pick(remaining, 1, rng) == 9);
    // width larger than the list clamps
    std::vector<int> tail = {42};
    REQUIRE(rcl_pick(tail, 5, rng) == 42);
}

TEST_CASE("classic replay reproduces the recorded construction") {
    const Instance a = nine_job_a();
    const std::vector<int> base = {3, 4, 5, 2, 1, 6, 7, 9, 8};
    const std::vector<int> picks = {3, 2, 1, 2, 3, 1, 3, 2, 1};
    const ConstructionResult res = classic_greedy_replay(a, base, picks, 3);

    REQUIRE(res.pick_order == std::vector<int>{5, 4, 3, 1, 7, 2, 8, 9, 6});
    REQUIRE(res.schedule.batches() ==
            std::vector<std::vector<int>>{{5, 4, 1}, {3, 2}, {7, 8}, {9}, {6}});
    REQUIRE(res.schedule.batch_completion() == std::vector<long long>{19, 63, 100, 143, 166});
    REQUIRE(res.schedule.tardy_count() == 6);
    REQUIRE(res.schedule.summary().tardy_job_ids == std::vector<int>{2, 3, 6, 7, 8, 9});

    // the audit trail mirrors the picks, windows clamp near the end
    REQUIRE(res.trace.size() == 9);
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
        REQUIRE(res.trace[i].step == static_cast<int>(i) + 1);
        REQUIRE(res.trace[i].chosen == picks[i]);
    }
    REQUIRE(res.trace[6].window == 3);
    REQUIRE(res.trace[7].window == 2);
    REQUIRE(res.trace[8].window == 1);
}

TEST_CASE("improved replay keeps on-time batches ahead of tardy ones") {
    const Instance a = nine_job_a();
    const std::vector<int> base = {3, 4, 5, 2, 1, 6, 7, 9, 8};
    const std::vector<int> picks = {2, 3, 2, 2, 1, 2, 3, 2, 1};
    const ConstructionResult res = improved_greedy_replay(a, base, picks, 3);

    REQUIRE(res.pick_order == std::vector<int>{4, 2, 5, 1, 3, 7, 8, 9, 6});
    REQUIRE(res.schedule.batches() ==
            std::vector<std::vector<int>>{{4, 2, 5, 8}, {1, 6}, {3}, {7}, {9}});
    REQUIRE(res.schedule.batch_completion() == std::vector<long long>{28, 51, 95, 132, 175});
    REQUIRE(res.schedule.tardy_count() == 5);
    REQUIRE(res.schedule.summary().tardy_job_ids == std::vector<int>{1, 3, 6, 7, 9});
}

TEST_CASE("replay validates pick bounds") {
    const Instance a = nine_job_a();
    const std::vector<int> base = {3, 4, 5, 2, 1, 6, 7, 9, 8};
    std::vector<int> picks = {4, 1, 1, 1, 1, 1, 1, 1, 1};  // 4 exceeds window 3
    REQUIRE_THROWS_AS(classic_greedy_replay(a, base, picks, 3), InvalidPosition);
    picks.assign(5, 1);  // wrong length
    REQUIRE_THROWS_AS(classic_greedy_replay(a, base, picks, 3), InvalidPosition);
}

TEST_CASE("classic decode of the due date order") {
    const Instance b = nine_job_b();
    const std::vector<int> edd = {2, 3, 6, 7, 4, 9, 5, 1, 8};
    const BatchSchedule sched = decode_sequence(b, edd, DecodeMode::Classic);
    REQUIRE(sched.batches() ==
            std::vector<std::vector<int>>{{2, 3, 6, 7, 8}, {4, 9}, {5}, {1}});
    REQUIRE(sched.tardy_count() == 9);
}

TEST_CASE("improved decode of the due date order") {
    const Instance a = nine_job_a();
    const std::vector<int> edd = {3, 4, 5, 2, 1, 6, 7, 9, 8};
    const BatchSchedule sched = decode_sequence(a, edd, DecodeMode::Improved);
    // the tardiness-aware policy shields the on-time zone
    REQUIRE(sched.tardy_count() <=
            decode_sequence(a, edd, DecodeMode::Classic).tardy_count());
}

TEST_CASE("construction decodes back to itself") {
    for (std::uint32_t seed_tag = 0; seed_tag < 6; ++seed_tag) {
        GenConfig gen;
        gen.n = 20;
        gen.seed = 100 + seed_tag;
        const Instance inst = generate(gen);
        for (PriorityRule rule : kAllRules) {
            Rng rng = make_stream(55, {seed_tag, static_cast<std::uint32_t>(rule)});
            const ConstructionResult res = improved_greedy(inst, rule, RclConfig::fraction(0.1), rng);
            const BatchSchedule redecoded =
                decode_sequence(inst, res.pick_order, DecodeMode::Improved);
            REQUIRE(redecoded.batches() == res.schedule.batches());
            REQUIRE(redecoded.tardy_count() == res.schedule.tardy_count());
        }
    }
}

TEST_CASE("sequence objective matches the improved decode") {
    const Instance a = nine_job_a();
    const std::vector<int> seq = {3, 4, 5, 2, 1, 6, 7, 9, 8};
    const SolutionSummary s = tardy_count_of_sequence(a, seq);
    REQUIRE(s.tardy_count == decode_sequence(a, seq, DecodeMode::Improved).tardy_count());

    BatchAssigner scratch(a, true);
    REQUIRE(decode_tardy_count(a, seq, scratch) == s.tardy_count);
    // scratch resets cleanly between uses
    REQUIRE(decode_tardy_count(a, seq, scratch) == s.tardy_count);
}

TEST_CASE("decode rejects non-permutations") {
    const Instance a = nine_job_a();
    REQUIRE_THROWS_AS(decode_sequence(a, std::vector<int>{1, 2, 3}, DecodeMode::Classic),
                      NotAPermutation);
    REQUIRE_THROWS_AS(
        decode_sequence(a, std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 8}, DecodeMode::Classic),
        NotAPermutation);
    REQUIRE_THROWS_AS(
        decode_sequence(a, std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 42}, DecodeMode::Classic),
        NotAPermutation);
}

TEST_CASE("every rule builds a feasible schedule") {
    GenConfig gen;
    gen.n = 30;
    gen.seed = 9;
    const Instance inst = generate(gen);
    std::set<std::string> names;
    for (PriorityRule rule : kAllRules) {
        names.insert(rule_name(rule));
        Rng rng = make_stream(7, {static_cast<std::uint32_t>(rule)});
        const ConstructionResult classic = classic_greedy(inst, rule, RclConfig::absolute(2), rng);
        REQUIRE(classic.schedule.batch_count() >= 1);
        Rng rng2 = make_stream(7, {static_cast<std::uint32_t>(rule)});
        const ConstructionResult improved =
            improved_greedy(inst, rule, RclConfig::absolute(2), rng2);
        REQUIRE(improved.schedule.batch_count() >= 1);
        REQUIRE(improved.pick_order.size() == 30);
    }
    REQUIRE(names.size() == 10);  // rule names are distinct
}
