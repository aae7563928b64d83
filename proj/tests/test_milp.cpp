#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "batchsched/construction.hpp"
#include "batchsched/generator.hpp"
#include "batchsched/milp.hpp"
#include "batchsched/oracle.hpp"
#include "fixtures.hpp"

using namespace batchsched;

namespace {

const std::vector<int> kEddB = {2, 3, 6, 7, 4, 9, 5, 1, 8};

Instance four_jobs() {
    GenConfig cfg;
    cfg.n = 4;
    cfg.seed = 21;
    return generate(cfg);
}

}  // namespace

TEST_CASE("model dimensions for four jobs") {
    const Instance inst = four_jobs();
    const MilpModel plain = build_model(inst);
    REQUIRE(plain.n == 4);
    REQUIRE(plain.rows.size() == 52);
    REQUIRE(plain.binaries.size() == 20);
    REQUIRE(plain.continuous.size() == 12);
    REQUIRE(plain.objective.size() == 4);
    REQUIRE(plain.epsilon == 1);
    REQUIRE_FALSE(plain.order_cuts);

    const MilpModel cuts = build_model(inst, true);
    REQUIRE(cuts.rows.size() == 55);
    REQUIRE(cuts.order_cuts);
}

TEST_CASE("the big constant covers any completion time") {
    const MilpModel m = build_model(nine_job_b());
    REQUIRE(m.big_m == 164);  // total processing 128 plus latest due date 36
}

TEST_CASE("LP text is byte stable and structurally complete") {
    const Instance inst = four_jobs();
    const MilpModel m = build_model(inst, true);
    const std::string text = lp_text(m);
    REQUIRE(text == lp_text(m));
    REQUIRE(text.rfind("\\ batch machine", 0) == 0);
    REQUIRE(text.find("Minimize") != std::string::npos);
    REQUIRE(text.find("End\n") != std::string::npos);

    const LpSectionCounts counts = count_lp_sections(text);
    REQUIRE(counts.constraints == static_cast<int>(m.rows.size()));
    REQUIRE(counts.bounds == static_cast<int>(m.continuous.size()));
    REQUIRE(counts.binaries == static_cast<int>(m.binaries.size()));

    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) REQUIRE(line.size() <= 80);
}

TEST_CASE("LP files round trip through disk") {
    const MilpModel m = build_model(four_jobs());
    const auto path =
        (std::filesystem::temp_directory_path() / "batchsched_milp_test.lp").string();
    write_lp_file(m, path);
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    REQUIRE(buf.str() == lp_text(m));
    std::filesystem::remove(path);

    REQUIRE_THROWS_AS(write_lp_file(m, "/nonexistent_dir_zz/x.lp"), IoError);
}

TEST_CASE("an optimal witness satisfies every row") {
    const Instance b = nine_job_b();
    const OracleResult res = exhaustive_optimum(b, 9);
    const auto values = encode_assignment(b, res.witness);

    for (bool with_cuts : {false, true}) {
        const MilpModel m = build_model(b, with_cuts);
        const AssignmentCheck check = check_assignment(m, values);
        REQUIRE(check.ok);
        REQUIRE(check.first_violation.empty());
        REQUIRE(check.objective == res.optimum);
    }
}

TEST_CASE("a greedy schedule also encodes feasibly") {
    const Instance b = nine_job_b();
    const BatchSchedule sched =
        decode_sequence(b, kEddB, DecodeMode::Classic);
    const MilpModel m = build_model(b);
    const AssignmentCheck check = check_assignment(m, encode_assignment(b, sched));
    REQUIRE(check.ok);
    REQUIRE(check.objective == 9);
}

TEST_CASE("empty trailing slots carry the makespan") {
    const Instance b = nine_job_b();
    const BatchSchedule sched =
        decode_sequence(b, kEddB, DecodeMode::Classic);
    REQUIRE(sched.batch_count() == 4);
    const auto values = encode_assignment(b, sched);
    for (int slot = 5; slot <= 9; ++slot) {
        REQUIRE(values.at("P_" + std::to_string(slot)) == 0);
        REQUIRE(values.at("Cb_" + std::to_string(slot)) == sched.makespan());
    }
}

TEST_CASE("tampered assignments are caught") {
    const Instance b = nine_job_b();
    const OracleResult res = exhaustive_optimum(b, 9);
    const MilpModel m = build_model(b);

    auto values = encode_assignment(b, res.witness);
    const int tardy_id = res.witness.summary().tardy_job_ids.front();
    values["NT_" + std::to_string(tardy_id)] = 0;
    AssignmentCheck check = check_assignment(m, values);
    REQUIRE_FALSE(check.ok);
    REQUIRE(check.first_violation.rfind("tardy_ub_", 0) == 0);

    values = encode_assignment(b, res.witness);
    for (int slot = 1; slot <= 9; ++slot) values["X_1_" + std::to_string(slot)] = 0;
    check = check_assignment(m, values);
    REQUIRE_FALSE(check.ok);
    REQUIRE(check.first_violation == "assign_1");
}

TEST_CASE("small random witnesses hit the model optimum") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        GenConfig cfg;
        cfg.n = 5;
        cfg.seed = 6000 + seed;
        const Instance inst = generate(cfg);
        const OracleResult res = exhaustive_optimum(inst, 5);
        const MilpModel m = build_model(inst, seed % 2 == 0);
        const AssignmentCheck check = check_assignment(m, encode_assignment(inst, res.witness));
        REQUIRE(check.ok);
        REQUIRE(check.objective == res.optimum);
    }
}
