#include <algorithm>
#include <cstdint>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "batchsched/generator.hpp"

using namespace batchsched;

TEST_CASE("half-up rounding") {
    REQUIRE(round_half_up(0.0) == 0);
    REQUIRE(round_half_up(0.4999) == 0);
    REQUIRE(round_half_up(0.5) == 1);
    REQUIRE(round_half_up(1.5) == 2);
    REQUIRE(round_half_up(2.5) == 3);
    REQUIRE(round_half_up(10.499) == 10);
    REQUIRE(round_half_up(-0.5) == 0);
    REQUIRE(round_half_up(-1.2) == -1);
}

TEST_CASE("full-batch longest-first makespan bound") {
    REQUIRE(fblpt_makespan({5, 9, 3, 7, 2, 8}, 3) == 14);  // 9+5 after sorting
    REQUIRE(fblpt_makespan({5, 9, 3, 7, 2, 8}, 4) == 12);  // 9+3
    REQUIRE(fblpt_makespan({5, 9, 3, 7, 2, 8}, 10) == 9);
    REQUIRE(fblpt_makespan({7}, 1) == 7);
    REQUIRE(fblpt_makespan({4, 4, 4}, 1) == 12);
    REQUIRE_THROWS_AS(fblpt_makespan({1}, 0), Error);
}

TEST_CASE("slack window bounds") {
    const auto [lo, hi] = slack_window(14.0, 0.5);
    REQUIRE(lo == 11);  // round(10.5)
    REQUIRE(hi == 18);  // round(17.5)
    const auto [lo2, hi2] = slack_window(0.0, 0.5);
    REQUIRE(lo2 == 0);
    REQUIRE(hi2 == 0);
}

TEST_CASE("due dates never drop below one") {
    REQUIRE(due_date_from(0.5, 4, 6, 11) == 11);  // round(0.5 * 21)
    REQUIRE(due_date_from(0.2, 0, 1, 0) == 1);    // clamped up
    REQUIRE(due_date_from(0.33, 1, 1, 0) == 1);   // round(0.66) = 1
}

TEST_CASE("equal seeds give identical instances") {
    GenConfig cfg;
    cfg.n = 25;
    cfg.seed = 77;
    const Instance a = generate(cfg);
    const Instance b = generate(cfg);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) {
        REQUIRE(a.job(i).id == b.job(i).id);
        REQUIRE(a.job(i).p == b.job(i).p);
        REQUIRE(a.job(i).s == b.job(i).s);
        REQUIRE(a.job(i).d == b.job(i).d);
        REQUIRE(a.job(i).r == b.job(i).r);
        REQUIRE(a.job(i).w == b.job(i).w);
    }
    cfg.seed = 78;
    const Instance c = generate(cfg);
    bool differs = false;
    for (int i = 0; i < a.size() && !differs; ++i) {
        differs = a.job(i).p != c.job(i).p || a.job(i).s != c.job(i).s ||
                  a.job(i).d != c.job(i).d;
    }
    REQUIRE(differs);
}

TEST_CASE("draws respect the configured ranges") {
    GenConfig cfg;
    cfg.n = 400;
    cfg.seed = 5;
    const Instance inst = generate(cfg);
    REQUIRE(inst.size() == 400);
    for (int i = 0; i < inst.size(); ++i) {
        const Job& j = inst.job(i);
        REQUIRE(j.id == i + 1);
        REQUIRE(j.s >= cfg.size_min);
        REQUIRE(j.s <= cfg.size_max);
        REQUIRE(j.p >= cfg.p_min);
        REQUIRE(j.p <= cfg.p_max);
        REQUIRE(j.r >= cfg.r_min);
        REQUIRE(j.r <= cfg.r_max);
        REQUIRE(j.w >= cfg.w_min);
        REQUIRE(j.w <= cfg.w_max);
        REQUIRE(j.d >= 1);
    }
}

TEST_CASE("due dates stay inside the derived slack envelope") {
    GenConfig cfg;
    cfg.n = 60;
    cfg.seed = 31;
    cfg.gamma = 0.33;
    const Instance inst = generate(cfg);

    std::vector<int> processing;
    int r_low = inst.job(0).r;
    for (int i = 0; i < inst.size(); ++i) {
        processing.push_back(inst.job(i).p);
        r_low = std::min(r_low, inst.job(i).r);
    }
    const long long cmax = r_low + fblpt_makespan(processing, cfg.capacity);
    const double mu = (1.0 - cfg.spread) * static_cast<double>(cmax);
    const auto [z_lo, z_hi] = slack_window(mu, cfg.tightness);
    REQUIRE(z_lo <= z_hi);
    for (int i = 0; i < inst.size(); ++i) {
        const Job& j = inst.job(i);
        REQUIRE(j.d >= due_date_from(cfg.gamma, j.r, j.p, z_lo));
        REQUIRE(j.d <= due_date_from(cfg.gamma, j.r, j.p, z_hi));
    }
}

TEST_CASE("sample means land near the range midpoints") {
    GenConfig cfg;
    cfg.n = 5000;
    cfg.seed = 11;
    const Instance inst = generate(cfg);
    double p_sum = 0, s_sum = 0, r_sum = 0, w_sum = 0;
    for (int i = 0; i < inst.size(); ++i) {
        p_sum += inst.job(i).p;
        s_sum += inst.job(i).s;
        r_sum += inst.job(i).r;
        w_sum += inst.job(i).w;
    }
    const double n = inst.size();
    REQUIRE(p_sum / n == Catch::Approx(28.0).margin(1.0));
    REQUIRE(s_sum / n == Catch::Approx(15.5).margin(1.0));
    REQUIRE(r_sum / n == Catch::Approx(24.0).margin(1.5));
    REQUIRE(w_sum / n == Catch::Approx(6.0).margin(0.5));
}

TEST_CASE("generator config guards") {
    GenConfig cfg;
    cfg.n = 0;
    REQUIRE_THROWS_AS(generate(cfg), Error);
    cfg = GenConfig{};
    cfg.capacity = 0;
    REQUIRE_THROWS_AS(generate(cfg), Error);
    cfg = GenConfig{};
    cfg.size_max = 50;  // exceeds capacity 40
    REQUIRE_THROWS_AS(generate(cfg), Error);
    cfg = GenConfig{};
    cfg.p_min = 10;
    cfg.p_max = 9;
    REQUIRE_THROWS_AS(generate(cfg), Error);
    cfg = GenConfig{};
    cfg.size_min = 0;
    REQUIRE_THROWS_AS(generate(cfg), Error);
    cfg = GenConfig{};
    cfg.tightness = 0.0;
    REQUIRE_THROWS_AS(generate(cfg), Error);
    cfg.tightness = 2.0;
    REQUIRE_THROWS_AS(generate(cfg), Error);
    cfg = GenConfig{};
    cfg.spread = 1.0;
    REQUIRE_THROWS_AS(generate(cfg), Error);
    cfg.spread = -0.01;
    REQUIRE_THROWS_AS(generate(cfg), Error);
    cfg = GenConfig{};
    cfg.gamma = 0.0;
    REQUIRE_THROWS_AS(generate(cfg), Error);
    cfg = GenConfig{};
    cfg.spread = 0.0;  // boundary values that are allowed
    cfg.tightness = 1.9;
    REQUIRE_NOTHROW(generate(cfg));
}
