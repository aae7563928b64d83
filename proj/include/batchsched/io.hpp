#ifndef BATCHSCHED_IO_HPP
#define BATCHSCHED_IO_HPP

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "batchsched/construction.hpp"
#include "batchsched/core.hpp"
#include "batchsched/generator.hpp"
#include "batchsched/grasp.hpp"
#include "batchsched/schedule.hpp"

namespace batchsched {

using nlohmann::json;

namespace detail {

inline int require_int(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw IoError(where + ": missing or non-integer field \"" + key + "\"");
    }
    return j[key].get<int>();
}

inline int optional_int(const json& j, const std::string& key, int fallback,
                        const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) {
        throw IoError(where + ": field \"" + key + "\" must be an integer");
    }
    return j[key].get<int>();
}

inline json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
    return j;
}

inline void dump_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace detail

inline json instance_to_json(const Instance& inst, const GenConfig* gen = nullptr) {
    json j;
    j["capacity"] = inst.capacity();
    j["jobs"] = json::array();
    for (const Job& job : inst.jobs()) {
        j["jobs"].push_back({{"id", job.id},
                             {"p", job.p},
                             {"s", job.s},
                             {"d", job.d},
                             {"r", job.r},
                             {"w", job.w}});
    }
    if (gen) {
        j["gen"] = {{"n", gen->n},
                    {"capacity", gen->capacity},
                    {"size", {gen->size_min, gen->size_max}},
                    {"p", {gen->p_min, gen->p_max}},
                    {"r", {gen->r_min, gen->r_max}},
                    {"w", {gen->w_min, gen->w_max}},
                    {"tightness", gen->tightness},
                    {"spread", gen->spread},
                    {"gamma", gen->gamma},
                    {"seed", gen->seed},
                    {"rng", generator_rng_name()}};
    }
    return j;
}

inline Instance instance_from_json(const json& j) {
    if (!j.is_object()) throw IoError("instance: document must be a JSON object");
    const int capacity = detail::require_int(j, "capacity", "instance");
    if (!j.contains("jobs") || !j["jobs"].is_array()) {
        throw IoError("instance: missing \"jobs\" array");
    }
    std::vector<Job> jobs;
    jobs.reserve(j["jobs"].size());
    for (const json& e : j["jobs"]) {
        if (!e.is_object()) throw IoError("instance: job entries must be objects");
        Job job;
        job.id = detail::require_int(e, "id", "job");
        const std::string where = "job " + std::to_string(job.id);
        job.p = detail::require_int(e, "p", where);
        job.s = detail::require_int(e, "s", where);
        job.d = detail::require_int(e, "d", where);
        job.r = detail::optional_int(e, "r", 0, where);
        job.w = detail::optional_int(e, "w", 1, where);
        jobs.push_back(job);
    }
    return Instance(capacity, std::move(jobs));
}

inline Instance load_instance(const std::string& path) {
    return instance_from_json(detail::parse_file(path));
}

inline void save_instance(const std::string& path, const Instance& inst,
                          const GenConfig* gen = nullptr) {
    detail::dump_file(path, instance_to_json(inst, gen));
}

inline json solution_to_json(const BatchSchedule& sched,
                             const std::vector<PickTraceEntry>* trace = nullptr) {
    const SolutionSummary summary = sched.summary();
    json j;
    j["batches"] = sched.batches();
    j["tardy_count"] = summary.tardy_count;
    j["tardy_jobs"] = summary.tardy_job_ids;
    j["makespan"] = summary.makespan;
    if (trace) {
        j["trace"] = json::array();
        for (const PickTraceEntry& t : *trace) {
            j["trace"].push_back(
                {{"step", t.step}, {"rcl_window", t.window}, {"chosen_index", t.chosen}});
        }
    }
    return j;
}

struct LoadedSolution {
    std::vector<std::vector<int>> batches;
    std::optional<int> tardy_count;
    std::vector<int> tardy_jobs;
    std::optional<long long> makespan;
    std::vector<PickTraceEntry> trace;
};

inline LoadedSolution solution_from_json(const json& j) {
    if (!j.is_object() || !j.contains("batches") || !j["batches"].is_array()) {
        throw IoError("solution: missing \"batches\" array");
    }
    LoadedSolution out;
    for (const json& b : j["batches"]) {
        if (!b.is_array()) throw IoError("solution: each batch must be an array of job ids");
        std::vector<int> ids;
        for (const json& id : b) {
            if (!id.is_number_integer()) throw IoError("solution: job ids must be integers");
            ids.push_back(id.get<int>());
        }
        out.batches.push_back(std::move(ids));
    }
    if (j.contains("tardy_count")) out.tardy_count = detail::require_int(j, "tardy_count", "solution");
    if (j.contains("makespan")) out.makespan = detail::require_int(j, "makespan", "solution");
    if (j.contains("tardy_jobs")) {
        if (!j["tardy_jobs"].is_array()) throw IoError("solution: \"tardy_jobs\" must be an array");
        for (const json& id : j["tardy_jobs"]) out.tardy_jobs.push_back(id.get<int>());
    }
    if (j.contains("trace")) {
        if (!j["trace"].is_array()) throw IoError("solution: \"trace\" must be an array");
        for (const json& t : j["trace"]) {
            PickTraceEntry e;
            e.step = detail::require_int(t, "step", "trace entry");
            e.window = detail::require_int(t, "rcl_window", "trace entry");
            e.chosen = detail::require_int(t, "chosen_index", "trace entry");
            out.trace.push_back(e);
        }
    }
    return out;
}

inline LoadedSolution load_solution(const std::string& path) {
    return solution_from_json(detail::parse_file(path));
}

inline void save_solution(const std::string& path, const BatchSchedule& sched,
                          const std::vector<PickTraceEntry>* trace = nullptr) {
    detail::dump_file(path, solution_to_json(sched, trace));
}

inline void write_iteration_log_csv(const std::string& path,
                                    const std::vector<IterationLogEntry>& log) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "iter,best_tardy,elapsed_ms\n";
    for (const IterationLogEntry& e : log) {
        out << e.iter << "," << e.best_tardy << "," << e.elapsed_ms << "\n";
    }
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace batchsched

#endif
