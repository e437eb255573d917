#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "grandkit/decoders.hpp"
#include "grandkit/partitions.hpp"

namespace grandkit {

struct ScheduleConfig {
    int n = 128;
    int k = 105;
    int lw_max = 64;
    int p_max = 6;
    double freq_mhz = 454.0;
    // Cycles spent before the first multi-bit step of a frame that fails the
    // initial check. Unset: 1 (initial check) + log2(n) (sorter) + 1 (one-flip step).
    std::optional<int> overhead;

    // Throws std::invalid_argument: n must be a power of two >= 4, 0 < k < n,
    // p_max >= 3, 1 <= lw_max <= n(n+1)/2, freq_mhz > 0.
    void validate() const;
    int overhead_cycles() const;
    static int default_overhead(int n);
};

// Contents of the three shift registers for one logistic weight. Labels are
// one-flip syndrome indices; reg1 slot i (1-based) holds s_{lw - i}, reg2 and
// reg3 slot i hold s_i. Labels below 1 are unused slots.
struct RegisterLayout {
    int lw = 0;
    int lambda3_max = 0;
    std::vector<int> reg1;  // 2 (lambda3_max + 1) slots
    std::vector<int> reg2;  // 2 (lambda3_max + 1) slots
    std::vector<int> reg3;  // lambda3_max slots
    int busses = 0;         // lambda3_max + 1
};

RegisterLayout build_layout(int lw);

// Partitions tested by the single P <= 3 step of `layout.lw`. Bus 0 pairs
// reg1[j] with reg2[j]; bus b >= 1 pairs reg1[b + j] with reg2[j] (j > b)
// and XORs in reg3[b]. Only labels in [1, n] are used.
std::set<Partition> parallel_coverage(const RegisterLayout& layout, int n);

// Partitions tested by the step that holds the P > 3 suffix (lambda_4 .. lambda_P)
// fixed: the registers are shifted by the suffix sum and only busses
// b > lambda_4 feed the XOR arrays. `suffix` is lambda_4 first.
std::set<Partition> suffix_step_coverage(int lw, std::span<const int> suffix, int n);

// Suffixes (lambda_4, ..., lambda_P) that admit at least one partition of lw
// with parts <= n, in schedule order (lambda_P slowest, ascending).
std::vector<std::vector<int>> suffix_schedule(int lw, int p, int n);

// One frame's termination point, as seen by the schedule.
struct TraceEntry {
    int lw = 0;   // 0: passed the initial check
    int p = 0;    // Hamming weight of the accepted pattern
    std::uint64_t suffix_rank = 0;  // rank of (lambda_4..lambda_P) inside suffix_schedule(lw, p, n)
    bool abandoned = false;
};

TraceEntry trace_entry(const DecodeOutcome& outcome, int n);

struct CycleReport {
    std::uint64_t wc_cycles = 0;
    double wc_latency_ns = 0.0;
    std::uint64_t frames = 0;
    double avg_cycles = 0.0;
    double avg_latency_ns = 0.0;
    double avg_tp_gbps = 0.0;
    int overhead_constant_used = 0;

    std::string to_json() const;
};

// Step counts for every lw of a schedule, computed once.
class CycleModel {
public:
    explicit CycleModel(const ScheduleConfig& cfg);

    const ScheduleConfig& config() const noexcept { return cfg_; }
    // Time steps of lw: one for all P in {2, 3} plus one per P > 3 suffix.
    std::uint64_t steps_for_lw(int lw) const;
    // Number of suffix steps of (lw, p), p >= 4.
    std::uint64_t suffix_steps(int lw, int p) const;
    std::uint64_t worst_case_cycles() const noexcept { return worst_case_; }
    std::uint64_t frame_cycles(const TraceEntry& e) const;
    // Throws std::invalid_argument on an empty trace.
    CycleReport trace_latency(std::span<const TraceEntry> trace) const;

private:
    ScheduleConfig cfg_;
    int p_top_ = 3;
    std::vector<std::uint64_t> steps_;       // by lw
    std::vector<std::uint64_t> steps_before_;  // sum of steps_ over [3, lw)
    std::vector<std::vector<std::uint64_t>> suffix_counts_;  // [lw][p - 4]
    std::uint64_t worst_case_ = 0;
};

std::uint64_t steps_for_lw(int lw, int p_max, int n = 128);
std::uint64_t worst_case_cycles(const ScheduleConfig& cfg);
CycleReport trace_latency(std::span<const TraceEntry> trace, const ScheduleConfig& cfg);

}  // namespace grandkit
