#ifndef BATCHSCHED_GENERATOR_HPP
#define BATCHSCHED_GENERATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "batchsched/core.hpp"
#include "batchsched/rng.hpp"

namespace batchsched {

// Random instance generator. Sizes, processing times, ready times and
// weights are uniform draws; due dates are calibrated against a lower bound
// on the optimal makespan so that `tightness` and `spread` shape how many
// jobs can possibly finish on time.
struct GenConfig {
    int n = 10;
    int capacity = 40;
    int size_min = 1, size_max = 30;
    int p_min = 8, p_max = 48;
    int r_min = 0, r_max = 48;
    int w_min = 1, w_max = 11;
    double tightness = 0.5;  // R, widens the slack window around its mean
    double spread = 0.3;     // T, pulls the slack mean below the makespan bound
    double gamma = 0.5;      // scales the final due dates
    std::uint64_t seed = 1;
};

inline const char* generator_rng_name() { return "mt19937-fixed-scale"; }

// Half-up rounding to the nearest integer, the convention used for every
// real-to-integer step of the generator.
inline long long round_half_up(double x) {
    return static_cast<long long>(std::floor(x + 0.5));
}

// Makespan of the full-batch longest-processing-time rule when every job has
// unit size: sort processing times descending and stack them in complete
// batches of `capacity` jobs. A quick lower-bound proxy for the optimal
// makespan used to calibrate due dates.
inline long long fblpt_makespan(std::vector<int> processing, int capacity) {
    if (capacity <= 0) throw Error("fblpt_makespan: capacity must be positive");
    std::sort(processing.begin(), processing.end(), std::greater<int>());
    long long total = 0;
    for (std::size_t i = 0; i < processing.size(); i += static_cast<std::size_t>(capacity)) {
        total += processing[i];
    }
    return total;
}

// Inclusive bounds of the uniform slack window for mean mu and width factor
// R: [mu*(1 - R/2), mu*(1 + R/2)], rounded half up.
inline std::pair<long long, long long> slack_window(double mu, double r) {
    return {round_half_up(mu * (1.0 - r / 2.0)), round_half_up(mu * (1.0 + r / 2.0))};
}

inline int due_date_from(double gamma, int r, int p, long long z) {
    return static_cast<int>(std::max<long long>(1, round_half_up(gamma * (r + p + static_cast<double>(z)))));
}

// Draws a complete instance. Jobs get ids 1..n; the draw order is fixed
// (s, p, r, w per job, then one slack value per job) so equal seeds yield
// identical instances regardless of which fields a caller inspects.
inline Instance generate(const GenConfig& cfg) {
    if (cfg.n <= 0) throw Error("generate: n must be positive");
    if (cfg.capacity <= 0) throw Error("generate: capacity must be positive");
    if (cfg.size_max > cfg.capacity) throw Error("generate: size_max exceeds capacity");
    if (cfg.size_min > cfg.size_max || cfg.p_min > cfg.p_max || cfg.r_min > cfg.r_max ||
        cfg.w_min > cfg.w_max) {
        throw Error("generate: empty draw range");
    }
    if (cfg.size_min <= 0 || cfg.p_min <= 0 || cfg.r_min < 0 || cfg.w_min <= 0) {
        throw Error("generate: draw ranges must keep fields positive");
    }
    if (cfg.tightness <= 0.0 || cfg.tightness >= 2.0) {
        throw Error("generate: tightness must lie in (0, 2)");
    }
    if (cfg.spread < 0.0 || cfg.spread >= 1.0) {
        throw Error("generate: spread must lie in [0, 1)");
    }
    if (cfg.gamma <= 0.0) throw Error("generate: gamma must be positive");

    Rng rng = make_stream(cfg.seed, {0});
    std::vector<Job> jobs(static_cast<std::size_t>(cfg.n));
    for (int i = 0; i < cfg.n; ++i) {
        Job& j = jobs[static_cast<std::size_t>(i)];
        j.id = i + 1;
        j.s = uniform_int(rng, cfg.size_min, cfg.size_max);
        j.p = uniform_int(rng, cfg.p_min, cfg.p_max);
        j.r = uniform_int(rng, cfg.r_min, cfg.r_max);
        j.w = uniform_int(rng, cfg.w_min, cfg.w_max);
    }

    std::vector<int> processing;
    processing.reserve(jobs.size());
    int r_min_drawn = jobs.front().r;
    for (const Job& j : jobs) {
        processing.push_back(j.p);
        r_min_drawn = std::min(r_min_drawn, j.r);
    }
    const long long cmax = r_min_drawn + fblpt_makespan(std::move(processing), cfg.capacity);
    const double mu = (1.0 - cfg.spread) * static_cast<double>(cmax);
    const auto [z_lo, z_hi] = slack_window(mu, cfg.tightness);

    for (Job& j : jobs) {
        const long long z = z_lo >= z_hi
                                ? z_lo
                                : z_lo + uniform_int(rng, 0, static_cast<int>(z_hi - z_lo));
        j.d = due_date_from(cfg.gamma, j.r, j.p, z);
    }
    return Instance(cfg.capacity, std::move(jobs));
}

}  // namespace batchsched

#endif
