#include <doctest.h>

#include <map>
#include <nlohmann/json.hpp>

#include "grandkit/cycle_model.hpp"
#include "grandkit/decoders.hpp"
#include "oracles.hpp"

using namespace grandkit;

namespace {

ScheduleConfig config(int lw_max, int p_max, int n = 128) {
    ScheduleConfig c;
    c.n = n;
    c.k = n - 23 > 0 ? n - 23 : n / 2;
    c.lw_max = lw_max;
    c.p_max = p_max;
    return c;
}

// One step for P in {2, 3} if any such partition exists, plus one step per
// distinct (lambda_4 .. lambda_P) tail of the enumerated partitions.
std::uint64_t oracle_steps(int lw, int p_max, int n) {
    const auto parts = oracle::distinct_partitions(lw, p_max, n);
    bool small = false;
    std::set<std::vector<int>> tails;
    for (const auto& p : parts) {
        if (p.size() == 2 || p.size() == 3) small = true;
        if (p.size() >= 4) tails.emplace(p.begin() + 3, p.end());
    }
    return (small ? 1 : 0) + tails.size();
}

}  // namespace

TEST_CASE("steps_for_lw examples") {
    CHECK(steps_for_lw(3, 6) == 1);
    CHECK(steps_for_lw(3, 3) == 1);
    CHECK(steps_for_lw(10, 6) == 2);
    CHECK(steps_for_lw(10, 3) == 1);
    CHECK(build_layout(20).busses == 6);
    CHECK(build_layout(20).lambda3_max == 5);
}

TEST_CASE("steps_for_lw agrees with enumeration") {
    const CycleModel model(config(64, 6));
    for (int lw = 1; lw <= 64; ++lw) CHECK(model.steps_for_lw(lw) == oracle_steps(lw, 6, 128));
    const CycleModel small(config(36, 8, 8));
    for (int lw = 1; lw <= 36; ++lw) CHECK(small.steps_for_lw(lw) == oracle_steps(lw, 8, 8));
    const CycleModel mid(config(120, 5, 16));
    for (int lw = 1; lw <= 120; ++lw) CHECK(mid.steps_for_lw(lw) == oracle_steps(lw, 5, 16));
}

TEST_CASE("worst case cycles") {
    CHECK(ScheduleConfig::default_overhead(128) == 9);
    CHECK(worst_case_cycles(config(1, 6)) == 9);
    CHECK(worst_case_cycles(config(2, 6)) == 9);
    CHECK(worst_case_cycles(config(10, 3)) == 17);
    const std::uint64_t wc = worst_case_cycles(config(64, 6));
    CHECK(wc == 4227);
    ScheduleConfig fixed = config(64, 6);
    fixed.overhead = 8;
    CHECK(worst_case_cycles(fixed) == 4226);

    std::uint64_t prev = 0;
    for (int lw = 1; lw <= 80; ++lw) {
        const auto w = worst_case_cycles(config(lw, 6));
        CHECK(w >= prev);
        prev = w;
    }
    prev = 0;
    for (int p = 3; p <= 12; ++p) {
        const auto w = worst_case_cycles(config(64, p));
        CHECK(w >= prev);
        prev = w;
    }
    CHECK(worst_case_cycles(config(64, 11)) == worst_case_cycles(config(64, 20)));  // 1+..+11 = 66 > 64

    CHECK_THROWS_AS(worst_case_cycles(config(64, 2)), std::invalid_argument);
    CHECK_THROWS_AS(worst_case_cycles(config(0, 6)), std::invalid_argument);
    CHECK_THROWS_AS(worst_case_cycles(config(10, 6, 12)), std::invalid_argument);
}

TEST_CASE("register layout") {
    const RegisterLayout l = build_layout(20);
    CHECK(l.reg1.size() == 12);
    CHECK(l.reg2.size() == 12);
    CHECK(l.reg3.size() == 5);
    for (std::size_t i = 0; i < l.reg1.size(); ++i) {
        CHECK(l.reg1[i] == 20 - static_cast<int>(i + 1));
        CHECK(l.reg2[i] == static_cast<int>(i + 1));
    }
    for (std::size_t i = 0; i < l.reg3.size(); ++i) CHECK(l.reg3[i] == static_cast<int>(i + 1));
}

TEST_CASE("parallel coverage examples") {
    const auto to_set = [](std::initializer_list<std::vector<int>> ps) {
        std::set<Partition> s;
        for (const auto& p : ps) s.insert(Partition{p});
        return s;
    };
    CHECK(parallel_coverage(build_layout(10), 128) ==
          to_set({{9, 1}, {8, 2}, {7, 3}, {6, 4}, {7, 2, 1}, {6, 3, 1}, {5, 4, 1}, {5, 3, 2}}));
    CHECK(parallel_coverage(build_layout(3), 128) == to_set({{2, 1}}));
}

TEST_CASE("schedule covers every partition exactly once") {
    for (int n : {128, 8, 16}) {
        const int top = n == 128 ? 64 : n * (n + 1) / 2;
        for (int lw = 3; lw <= top; ++lw) {
            std::map<std::vector<int>, int> seen;
            for (const auto& p : parallel_coverage(build_layout(lw), n)) {
                CHECK((p.size() == 2 || p.size() == 3));
                ++seen[p.parts];
            }
            for (int p = 4; p <= 8; ++p) {
                for (const auto& suffix : suffix_schedule(lw, p, n)) {
                    for (const auto& part : suffix_step_coverage(lw, suffix, n)) {
                        CHECK(part.size() == static_cast<std::size_t>(p));
                        ++seen[part.parts];
                    }
                }
            }
            std::map<std::vector<int>, int> want;
            for (const auto& p : oracle::distinct_partitions(lw, 8, n))
                if (p.size() >= 2) want[p] = 1;
            CHECK(seen == want);
        }
    }
}

TEST_CASE("trace latency") {
    const ScheduleConfig cfg = config(64, 6);
    const CycleModel model(cfg);
    const std::vector<TraceEntry> clean(50, TraceEntry{});
    const CycleReport r = model.trace_latency(clean);
    CHECK(r.avg_cycles == 1.0);
    CHECK(r.avg_latency_ns == doctest::Approx(2.2026).epsilon(1e-4));
    CHECK(r.avg_tp_gbps == doctest::Approx(105.0 / (1000.0 / 454.0)));
    CHECK(r.wc_cycles == 4227);
    CHECK(r.wc_latency_ns == doctest::Approx(4227.0 / 0.454));
    CHECK(r.frames == 50);

    TraceEntry gave_up;
    gave_up.abandoned = true;
    CHECK(model.frame_cycles(gave_up) == model.worst_case_cycles());

    TraceEntry one{5, 1, 0, false};
    CHECK(model.frame_cycles(one) == 9);
    // First multi-bit step is lw = 3.
    CHECK(model.frame_cycles(TraceEntry{3, 2, 0, false}) == 10);
    CHECK(model.frame_cycles(TraceEntry{4, 2, 0, false}) == 11);
    // lw = 10, (4,3,2,1): P <= 3 step of lw 10 then the single suffix step.
    std::uint64_t before = 0;
    for (int lw = 3; lw < 10; ++lw) before += model.steps_for_lw(lw);
    CHECK(model.frame_cycles(TraceEntry{10, 3, 0, false}) == 9 + before + 1);
    CHECK(model.frame_cycles(TraceEntry{10, 4, 0, false}) == 9 + before + 2);
    // The last pattern of the budget costs the worst case.
    const auto last_suffixes = suffix_schedule(64, 6, 128);
    CHECK(model.frame_cycles(TraceEntry{64, 6, last_suffixes.size() - 1, false}) == model.worst_case_cycles());
    CHECK_THROWS_AS(model.frame_cycles(TraceEntry{65, 2, 0, false}), std::invalid_argument);
    CHECK_THROWS_AS(model.frame_cycles(TraceEntry{10, 4, 1, false}), std::invalid_argument);
    CHECK_THROWS_AS(model.trace_latency(std::vector<TraceEntry>{}), std::invalid_argument);

    // Later schedule positions never cost fewer cycles.
    std::uint64_t prev = 0;
    for (int lw = 1; lw <= 64; ++lw) {
        for (int p = 1; p <= 6; ++p) {
            const std::size_t ranks = p >= 4 ? suffix_schedule(lw, p, 128).size() : 1;
            if (p >= 4 && ranks == 0) continue;
            if (p == 1 || (p <= 3 && lw < 3)) continue;
            for (std::size_t rank = 0; rank < ranks; ++rank) {
                const auto c = model.frame_cycles(TraceEntry{lw, p, rank, false});
                CHECK(c >= prev);
                prev = c;
            }
        }
    }
}

TEST_CASE("trace entries from decoder outcomes") {
    DecodeOutcome o;
    o.found = true;
    CHECK(trace_entry(o, 128).lw == 0);
    o.solution_lw = 10;
    o.solution_hw = 4;
    o.solution_parts = {4, 3, 2, 1};
    const TraceEntry e = trace_entry(o, 128);
    CHECK(e.lw == 10);
    CHECK(e.p == 4);
    CHECK(e.suffix_rank == 0);
    o.solution_lw = 21;
    o.solution_hw = 5;
    o.solution_parts = {8, 5, 4, 3, 1};
    const auto sched = suffix_schedule(21, 5, 128);
    const auto it = std::find(sched.begin(), sched.end(), std::vector<int>{3, 1});
    REQUIRE(it != sched.end());
    CHECK(trace_entry(o, 128).suffix_rank == static_cast<std::uint64_t>(it - sched.begin()));
    DecodeOutcome ab;
    ab.abandoned = true;
    CHECK(trace_entry(ab, 128).abandoned);
}

TEST_CASE("report json") {
    const CycleReport r = CycleModel(config(64, 6)).trace_latency(std::vector<TraceEntry>(3));
    const auto j = nlohmann::json::parse(r.to_json());
    for (const char* key : {"wc_cycles", "wc_latency_ns", "avg_cycles", "avg_latency_ns", "avg_tp_gbps",
                            "overhead_constant_used"})
        CHECK(j.contains(key));
    CHECK(j["overhead_constant_used"] == 9);
}
