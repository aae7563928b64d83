// Builds a small instance by hand, runs the solver and prints the result.
#include <batchsched/batchsched.hpp>

#include <cstdio>

namespace bs = batchsched;

int main() {
    // id, processing time, size, due date
    std::vector<bs::Job> jobs;
    jobs.push_back({1, 19, 17, 36, 0, 1});
    jobs.push_back({2, 28, 13, 35, 0, 1});
    jobs.push_back({3, 44, 27, 32, 0, 1});
    jobs.push_back({4, 14, 7, 32, 0, 1});
    jobs.push_back({5, 16, 15, 34, 0, 1});
    jobs.push_back({6, 23, 14, 36, 0, 1});
    jobs.push_back({7, 37, 27, 36, 0, 1});
    jobs.push_back({8, 10, 2, 37, 0, 1});
    jobs.push_back({9, 43, 28, 36, 0, 1});
    const bs::Instance inst(40, std::move(jobs));

    bs::GraspConfig cfg;
    cfg.max_iters = 50;
    cfg.pr_iters = 50;
    cfg.seed = 7;
    const bs::SolveReport report = bs::solve(inst, cfg);

    std::printf("tardy jobs: %d  makespan: %lld\n", report.best.tardy_count(),
                report.best.makespan());
    const auto& completions = report.best.batch_completion();
    for (std::size_t b = 0; b < report.best.batches().size(); ++b) {
        std::printf("batch %zu (done at %lld):", b + 1, completions[b]);
        for (int id : report.best.batches()[b]) {
            std::printf(" %d%s", id, report.best.is_tardy(id) ? "*" : "");
        }
        std::printf("\n");
    }
    std::printf("construction %d -> local search %d -> final %d\n", report.construction_best,
                report.local_search_best, report.best.tardy_count());
    return 0;
}
