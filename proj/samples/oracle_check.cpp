// Generates a random instance, solves it exactly, and confirms the optimum
// satisfies the exported mixed integer model row by row.
#include <batchsched/batchsched.hpp>

#include <cstdio>

namespace bs = batchsched;

int main() {
    bs::GenConfig gen;
    gen.n = 7;
    gen.gamma = 0.33;
    gen.seed = 99;
    const bs::Instance inst = bs::generate(gen);

    const bs::OracleResult exact = bs::exhaustive_optimum(inst);
    std::printf("optimum: %d tardy (checked %lld batch partitions)\n", exact.optimum,
                exact.nodes);

    const bs::MilpModel model = bs::build_model(inst, true);
    const auto assignment = bs::encode_assignment(inst, exact.witness);
    const bs::AssignmentCheck check = bs::check_assignment(model, assignment);
    if (!check.ok) {
        std::printf("violated row: %s\n", check.first_violation.c_str());
        return 1;
    }
    std::printf("model agrees: objective %lld, %zu rows all hold\n", check.objective,
                model.rows.size());

    bs::GraspConfig cfg;
    cfg.max_iters = 30;
    cfg.pr_iters = 30;
    cfg.seed = 5;
    const bs::SolveReport heuristic = bs::solve(inst, cfg);
    std::printf("heuristic found %d tardy\n", heuristic.best.tardy_count());
    return heuristic.best.tardy_count() == exact.optimum ? 0 : 1;
}
