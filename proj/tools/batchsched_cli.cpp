#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "batchsched/batchsched.hpp"

namespace bs = batchsched;
using nlohmann::json;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 1;
    bool quiet = false;
    bool json_out = false;
};

void say(const GlobalOpts& g, const std::string& line) {
    if (!g.quiet && !g.json_out) std::cout << line << "\n";
}

void emit_json(const GlobalOpts& g, const json& j) {
    if (g.json_out) std::cout << j.dump(2) << "\n";
}

// --rcl accepts an absolute width ("3") or a fraction of n ("10%").
bs::RclConfig parse_rcl(const std::string& text) {
    std::size_t used = 0;
    if (!text.empty() && text.back() == '%') {
        const double pct = std::stod(text.substr(0, text.size() - 1), &used);
        if (used != text.size() - 1 || pct <= 0 || pct > 100) {
            throw std::invalid_argument("bad rcl percentage");
        }
        return bs::RclConfig::fraction(pct / 100.0);
    }
    const int k = std::stoi(text, &used);
    if (used != text.size() || k < 1) throw std::invalid_argument("bad rcl width");
    return bs::RclConfig::absolute(k);
}

// Parse-time check so a malformed --rcl is a usage error, not a crash later.
const CLI::Validator rcl_check(
    [](std::string& s) -> std::string {
        try {
            (void)parse_rcl(s);
            return {};
        } catch (const std::exception&) {
            return "expected a positive integer or a percentage like 10%";
        }
    },
    "RCL");

struct GenerateOpts {
    int n = 10;
    int capacity = 40;
    double gamma = 0.5;
    double tightness = 0.5;
    double spread = 0.3;
    std::string out = "instance.json";
};

int run_generate(const GlobalOpts& g, const GenerateOpts& o) {
    bs::GenConfig cfg;
    cfg.n = o.n;
    cfg.capacity = o.capacity;
    cfg.gamma = o.gamma;
    cfg.tightness = o.tightness;
    cfg.spread = o.spread;
    cfg.seed = g.seed;
    const bs::Instance inst = bs::generate(cfg);
    bs::save_instance(o.out, inst, &cfg);
    say(g, "wrote " + o.out + " (" + std::to_string(inst.size()) + " jobs, capacity " +
               std::to_string(inst.capacity()) + ")");
    emit_json(g, {{"file", o.out}, {"n", inst.size()}, {"capacity", inst.capacity()}});
    return 0;
}

struct SolveOpts {
    std::string instance;
    std::string rcl = "10%";
    int iters = 1000;
    int pr_iters = 1000;
    double alpha = 0.0;
    long long ls_budget = -1;  // negative = default
    int runs = 1;
    int no_improve = 0;  // 0 = disabled
    int threads = 1;
    std::string out = "solution.json";
    std::string log;
};

int run_solve(const GlobalOpts& g, const SolveOpts& o) {
    const bs::Instance inst = bs::load_instance(o.instance);
    bs::GraspConfig cfg;
    cfg.max_iters = o.iters;
    cfg.pr_iters = o.pr_iters;
    cfg.rcl = parse_rcl(o.rcl);
    cfg.alpha = o.alpha;
    if (o.ls_budget >= 0) cfg.ls_budget = o.ls_budget;
    cfg.num_runs = o.runs;
    if (o.no_improve > 0) cfg.no_improve_limit = o.no_improve;
    cfg.seed = g.seed;
    cfg.threads = o.threads;

    const bs::SolveReport report = bs::solve(inst, cfg);
    bs::save_solution(o.out, report.best);
    if (!o.log.empty()) bs::write_iteration_log_csv(o.log, report.log);

    const bs::SolutionSummary s = report.best.summary();
    say(g, "tardy=" + std::to_string(s.tardy_count) + " makespan=" + std::to_string(s.makespan) +
               " batches=" + std::to_string(report.best.batch_count()) + " iterations=" +
               std::to_string(report.iterations_run) + " -> " + o.out);
    json j = {{"file", o.out},
              {"tardy_count", s.tardy_count},
              {"makespan", s.makespan},
              {"batches", report.best.batch_count()},
              {"construction_best", report.construction_best},
              {"local_search_best", report.local_search_best},
              {"iterations", report.iterations_run},
              {"elapsed_ms", report.elapsed_ms}};
    if (report.path_relinking_best) j["path_relinking_best"] = *report.path_relinking_best;
    emit_json(g, j);
    return 0;
}

struct VerifyOpts {
    std::string instance;
    std::string solution;
};

int run_verify(const GlobalOpts& g, const VerifyOpts& o) {
    const bs::Instance inst = bs::load_instance(o.instance);
    const bs::LoadedSolution sol = bs::load_solution(o.solution);
    const bs::BatchSchedule sched = bs::evaluate(inst, sol.batches);
    const bs::SolutionSummary s = sched.summary();

    std::vector<std::string> mismatches;
    if (sol.tardy_count && *sol.tardy_count != s.tardy_count) {
        mismatches.push_back("stored tardy_count " + std::to_string(*sol.tardy_count) +
                             " != recomputed " + std::to_string(s.tardy_count));
    }
    if (sol.makespan && *sol.makespan != s.makespan) {
        mismatches.push_back("stored makespan " + std::to_string(*sol.makespan) +
                             " != recomputed " + std::to_string(s.makespan));
    }
    if (!sol.tardy_jobs.empty()) {
        std::vector<int> stored = sol.tardy_jobs;
        std::sort(stored.begin(), stored.end());
        if (stored != s.tardy_job_ids) mismatches.push_back("stored tardy_jobs differ");
    }

    json j = {{"feasible", true}, {"tardy_count", s.tardy_count}, {"makespan", s.makespan}};
    std::string line = "feasible, tardy=" + std::to_string(s.tardy_count) +
                       " makespan=" + std::to_string(s.makespan);
    if (inst.size() <= 9) {
        const bs::OracleResult opt = bs::exhaustive_optimum(inst);
        j["optimum"] = opt.optimum;
        j["gap"] = s.tardy_count - opt.optimum;
        line += " optimum=" + std::to_string(opt.optimum) +
                " gap=" + std::to_string(s.tardy_count - opt.optimum);
    }
    if (!mismatches.empty()) {
        std::string msg = "solution file disagrees with recomputation";
        for (const std::string& m : mismatches) msg += "\n  - " + m;
        throw bs::Error(msg);
    }
    say(g, line);
    emit_json(g, j);
    return 0;
}

struct OracleOpts {
    std::string instance;
    std::string out;
    int limit = 9;
};

int run_oracle(const GlobalOpts& g, const OracleOpts& o) {
    const bs::Instance inst = bs::load_instance(o.instance);
    const bs::OracleResult res = bs::exhaustive_optimum(inst, o.limit);
    if (!o.out.empty()) bs::save_solution(o.out, res.witness);
    std::string line = "optimum=" + std::to_string(res.optimum) +
                       " partitions=" + std::to_string(res.nodes);
    json j = {{"optimum", res.optimum}, {"partitions", res.nodes}};
    if (bs::singleton_only(inst)) {
        const bs::MooreHodgsonResult mh = bs::moore_hodgson(inst);
        line += " moore_hodgson=" + std::to_string(mh.tardy_count);
        j["moore_hodgson"] = mh.tardy_count;
    }
    say(g, line);
    emit_json(g, j);
    return 0;
}

struct ExportOpts {
    std::string instance;
    std::string out = "model.lp";
    bool order_cuts = false;
};

int run_export(const GlobalOpts& g, const ExportOpts& o) {
    const bs::Instance inst = bs::load_instance(o.instance);
    const bs::MilpModel model = bs::build_model(inst, o.order_cuts);
    bs::write_lp_file(model, o.out);
    say(g, "wrote " + o.out + " (" + std::to_string(model.rows.size()) + " rows, " +
               std::to_string(model.binaries.size()) + " binaries, big_m=" +
               std::to_string(model.big_m) + ")");
    emit_json(g, {{"file", o.out},
                  {"rows", model.rows.size()},
                  {"binaries", model.binaries.size()},
                  {"big_m", model.big_m}});
    return 0;
}

struct BenchOpts {
    std::vector<int> sizes = {50};
    std::vector<double> gammas = {0.2, 0.33, 0.5};
    int reps = 10;
    int capacity = 40;
    std::string rcl = "10%";
    int iters = 1000;
    int pr_iters = 1000;
    double alpha = 0.0;
    int threads = 1;
    std::string out = "bench.csv";
};

struct BenchRow {
    int n = 0;
    double gamma = 0;
    int rep = 0;
    int baseline = 0;
    int grasp = 0;
    std::optional<double> imp;
    double ms = 0;
};

// One replication: generate the cell's instance, run the construction-only
// baseline and the full configuration on the same derived seed, report the
// relative improvement of the latter over the former.
BenchRow bench_rep(const BenchOpts& o, std::uint64_t master, int cell, int n, double gamma,
                   int rep) {
    bs::Rng seeder = bs::make_stream(master, {9, static_cast<std::uint32_t>(cell),
                                              static_cast<std::uint32_t>(rep)});
    const std::uint64_t seed =
        (static_cast<std::uint64_t>(seeder()) << 32) | static_cast<std::uint64_t>(seeder());

    bs::GenConfig gen;
    gen.n = n;
    gen.capacity = o.capacity;
    gen.gamma = gamma;
    gen.seed = seed;
    const bs::Instance inst = bs::generate(gen);

    bs::GraspConfig base;
    base.max_iters = 1;
    base.pr_iters = 0;
    base.ls_budget = 0;
    base.rcl = parse_rcl(o.rcl);
    base.seed = seed;

    bs::GraspConfig full = base;
    full.max_iters = o.iters;
    full.pr_iters = o.pr_iters;
    full.alpha = o.alpha;
    full.ls_budget.reset();

    BenchRow row;
    row.n = n;
    row.gamma = gamma;
    row.rep = rep;
    row.baseline = bs::solve(inst, base).best.tardy_count();
    const bs::SolveReport res = bs::solve(inst, full);
    row.grasp = res.best.tardy_count();
    row.ms = res.elapsed_ms;
    row.imp = bs::improvement(row.baseline, row.grasp);
    return row;
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string fmt_imp(const std::optional<double>& imp) {
    if (!imp) return "na";
    return fmt_num(*imp * 100.0);
}

int run_bench(const GlobalOpts& g, const BenchOpts& o) {
    std::vector<std::tuple<int, double, int>> cells;  // (n, gamma, cell index)
    int cell_idx = 0;
    for (int n : o.sizes) {
        for (double gamma : o.gammas) cells.push_back({n, gamma, cell_idx++});
    }

    std::ofstream csv(o.out, std::ios::binary);
    if (!csv) throw bs::IoError("cannot open " + o.out + " for writing");
    csv << "n,gamma,rep,baseline_construction_tardy,grasp_tardy,improvement_pct,elapsed_ms\n";

    json cells_json = json::array();
    for (const auto& [n, gamma, cell] : cells) {
        std::vector<BenchRow> rows(static_cast<std::size_t>(o.reps));
        if (o.threads > 1) {
            std::atomic<int> next{0};
            std::vector<std::thread> workers;
            for (int w = 0; w < o.threads; ++w) {
                workers.emplace_back([&]() {
                    for (int r = next.fetch_add(1); r < o.reps; r = next.fetch_add(1)) {
                        rows[static_cast<std::size_t>(r)] =
                            bench_rep(o, g.seed, cell, n, gamma, r);
                    }
                });
            }
            for (auto& w : workers) w.join();
        } else {
            for (int r = 0; r < o.reps; ++r) {
                rows[static_cast<std::size_t>(r)] = bench_rep(o, g.seed, cell, n, gamma, r);
            }
        }

        double mean_base = 0, mean_grasp = 0, mean_ms = 0, mean_imp = 0;
        int imp_defined = 0;
        for (const BenchRow& row : rows) {
            csv << row.n << "," << row.gamma << "," << row.rep + 1 << "," << row.baseline << ","
                << row.grasp << "," << fmt_imp(row.imp) << "," << row.ms << "\n";
            mean_base += row.baseline;
            mean_grasp += row.grasp;
            mean_ms += row.ms;
            if (row.imp) {
                mean_imp += *row.imp;
                ++imp_defined;
            }
        }
        mean_base /= o.reps;
        mean_grasp /= o.reps;
        mean_ms /= o.reps;
        const std::optional<double> agg_imp =
            imp_defined ? std::optional<double>(mean_imp / imp_defined) : std::nullopt;
        csv << n << "," << gamma << ",mean," << mean_base << "," << mean_grasp << ","
            << fmt_imp(agg_imp) << "," << mean_ms << "\n";
        say(g, "n=" + std::to_string(n) + " gamma=" + fmt_num(gamma) +
                   ": baseline=" + fmt_num(mean_base) + " grasp=" + fmt_num(mean_grasp) +
                   " improvement=" + fmt_imp(agg_imp) + "%");
        cells_json.push_back({{"n", n},
                              {"gamma", gamma},
                              {"mean_baseline", mean_base},
                              {"mean_grasp", mean_grasp},
                              {"mean_improvement_pct", agg_imp ? json(*agg_imp * 100.0) : json()},
                              {"mean_elapsed_ms", mean_ms}});
    }
    if (!csv) throw bs::IoError("failed writing " + o.out);
    emit_json(g, {{"file", o.out}, {"cells", cells_json}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch machine scheduling toolkit: minimize tardy jobs on a single "
                 "capacitated batch processor"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master RNG seed")->capture_default_str();
    app.add_flag("--quiet", g.quiet, "suppress progress output");
    app.add_flag("--json", g.json_out, "machine-readable stdout");

    GenerateOpts gen;
    CLI::App* c_gen = app.add_subcommand("generate", "draw a random instance");
    c_gen->add_option("-n,--jobs", gen.n, "number of jobs")->check(CLI::PositiveNumber);
    c_gen->add_option("-c,--capacity", gen.capacity, "machine capacity")
        ->check(CLI::PositiveNumber);
    c_gen->add_option("-g,--gamma", gen.gamma, "due date scale factor")
        ->check(CLI::PositiveNumber);
    c_gen->add_option("--tightness", gen.tightness, "slack window width factor R");
    c_gen->add_option("--spread", gen.spread, "slack mean reduction factor T");
    c_gen->add_option("-o,--out", gen.out, "output instance file")->capture_default_str();

    SolveOpts sol;
    CLI::App* c_sol = app.add_subcommand("solve", "run the GRASP + path relinking solver");
    c_sol->add_option("-i,--instance", sol.instance, "instance file")->required();
    c_sol->add_option("--rcl", sol.rcl, "candidate list width: count or percentage")
        ->check(rcl_check)
        ->capture_default_str();
    c_sol->add_option("--iters", sol.iters, "construction iterations")
        ->check(CLI::PositiveNumber);
    c_sol->add_option("--pr-iters", sol.pr_iters, "path relinking iterations")
        ->check(CLI::NonNegativeNumber);
    c_sol->add_option("--alpha", sol.alpha, "long-job extraction threshold")
        ->check(CLI::NonNegativeNumber);
    c_sol->add_option("--ls-budget", sol.ls_budget,
                      "local search samples per sweep (0 disables, default 50 per job)");
    c_sol->add_option("--runs", sol.runs, "independent restarts")->check(CLI::PositiveNumber);
    c_sol->add_option("--no-improve", sol.no_improve,
                      "stop a run after this many iterations without improvement");
    c_sol->add_option("--threads", sol.threads, "worker threads")->check(CLI::PositiveNumber);
    c_sol->add_option("-o,--out", sol.out, "solution file")->capture_default_str();
    c_sol->add_option("--log", sol.log, "iteration log CSV");

    VerifyOpts ver;
    CLI::App* c_ver = app.add_subcommand("verify", "re-evaluate a solution file");
    c_ver->add_option("-i,--instance", ver.instance, "instance file")->required();
    c_ver->add_option("-s,--solution", ver.solution, "solution file")->required();

    OracleOpts ora;
    CLI::App* c_ora = app.add_subcommand("oracle", "exact optimum by complete enumeration");
    c_ora->add_option("-i,--instance", ora.instance, "instance file")->required();
    c_ora->add_option("-o,--out", ora.out, "witness solution file");
    c_ora->add_option("--limit", ora.limit, "maximum job count accepted")
        ->check(CLI::PositiveNumber);

    ExportOpts exp;
    CLI::App* c_exp = app.add_subcommand("export-milp", "write the MILP model as an LP file");
    c_exp->add_option("-i,--instance", exp.instance, "instance file")->required();
    c_exp->add_option("-o,--out", exp.out, "LP output file")->capture_default_str();
    c_exp->add_flag("--order-cuts", exp.order_cuts, "add slot ordering cuts");

    BenchOpts ben;
    CLI::App* c_ben = app.add_subcommand("bench", "benchmark sweep with CSV report");
    c_ben->add_option("-n,--jobs", ben.sizes, "job counts to sweep")->check(CLI::PositiveNumber);
    c_ben->add_option("-g,--gamma", ben.gammas, "gamma levels to sweep");
    c_ben->add_option("--reps", ben.reps, "replications per cell")->check(CLI::PositiveNumber);
    c_ben->add_option("-c,--capacity", ben.capacity, "machine capacity")
        ->check(CLI::PositiveNumber);
    c_ben->add_option("--rcl", ben.rcl, "candidate list width")
        ->check(rcl_check)
        ->capture_default_str();
    c_ben->add_option("--iters", ben.iters, "construction iterations")
        ->check(CLI::PositiveNumber);
    c_ben->add_option("--pr-iters", ben.pr_iters, "path relinking iterations")
        ->check(CLI::NonNegativeNumber);
    c_ben->add_option("--alpha", ben.alpha, "long-job extraction threshold")
        ->check(CLI::NonNegativeNumber);
    c_ben->add_option("--threads", ben.threads, "replications run in parallel")
        ->check(CLI::PositiveNumber);
    c_ben->add_option("-o,--out", ben.out, "CSV output file")->capture_default_str();

    for (CLI::App* sub : {c_gen, c_sol, c_ver, c_ora, c_exp, c_ben}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*c_gen) return run_generate(g, gen);
        if (*c_sol) return run_solve(g, sol);
        if (*c_ver) return run_verify(g, ver);
        if (*c_ora) return run_oracle(g, ora);
        if (*c_exp) return run_export(g, exp);
        if (*c_ben) return run_bench(g, ben);
    } catch (const bs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
