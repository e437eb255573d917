#include "grandkit/cycle_model.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace grandkit {

namespace {

using u128 = unsigned __int128;

std::uint64_t to_u64(u128 v) {
    if (v > std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("cycle count does not fit in 64 bits");
    }
    return static_cast<std::uint64_t>(v);
}

// Adds the 3-part patterns of bus b (b >= 1) of `layout` to `out`, with
// `suffix` appended.
void add_bus(const RegisterLayout& layout, int b, std::span<const int> suffix, int n, std::set<Partition>& out) {
    const int c = layout.reg3[static_cast<std::size_t>(b - 1)];
    for (int j = b + 1; b + j <= static_cast<int>(layout.reg1.size()); ++j) {
        const int a = layout.reg1[static_cast<std::size_t>(b + j - 1)];
        const int mid = layout.reg2[static_cast<std::size_t>(j - 1)];
        if (a <= mid || a > n) continue;
        Partition p{{a, mid, c}};
        p.parts.insert(p.parts.end(), suffix.begin(), suffix.end());
        out.insert(std::move(p));
    }
}

}  // namespace

void ScheduleConfig::validate() const {
    if (n < 4 || !std::has_single_bit(static_cast<unsigned>(n))) {
        throw std::invalid_argument("schedule: n must be a power of two >= 4");
    }
    if (k <= 0 || k >= n) throw std::invalid_argument("schedule: need 0 < k < n");
    if (p_max < 3) throw std::invalid_argument("schedule: p_max must be >= 3 (three shift registers)");
    if (lw_max < 1 || lw_max > n * (n + 1) / 2) throw std::invalid_argument("schedule: lw_max out of range");
    if (!(freq_mhz > 0.0)) throw std::invalid_argument("schedule: freq_mhz must be positive");
    if (overhead && *overhead < 1) throw std::invalid_argument("schedule: overhead must be >= 1");
}

int ScheduleConfig::default_overhead(int n) { return 1 + std::bit_width(static_cast<unsigned>(n)) - 1 + 1; }

int ScheduleConfig::overhead_cycles() const { return overhead ? *overhead : default_overhead(n); }

RegisterLayout build_layout(int lw) {
    if (lw < 1) throw std::invalid_argument("build_layout: lw must be >= 1");
    RegisterLayout l;
    l.lw = lw;
    l.lambda3_max = std::max(0, lambda_max_from_sum(lw, 3, 0));
    const int wide = 2 * (l.lambda3_max + 1);
    for (int i = 1; i <= wide; ++i) {
        l.reg1.push_back(lw - i);
        l.reg2.push_back(i);
    }
    for (int i = 1; i <= l.lambda3_max; ++i) l.reg3.push_back(i);
    l.busses = l.lambda3_max + 1;
    return l;
}

std::set<Partition> parallel_coverage(const RegisterLayout& layout, int n) {
    std::set<Partition> out;
    for (std::size_t j = 0; j < layout.reg1.size(); ++j) {
        const int a = layout.reg1[j];
        const int b = layout.reg2[j];
        if (a > b && a <= n) out.insert(Partition{{a, b}});
    }
    for (int b = 1; b <= layout.lambda3_max; ++b) add_bus(layout, b, {}, n, out);
    return out;
}

std::set<Partition> suffix_step_coverage(int lw, std::span<const int> suffix, int n) {
    if (suffix.empty()) throw std::invalid_argument("suffix_step_coverage: empty suffix");
    int sum = 0;
    for (int s : suffix) sum += s;
    std::set<Partition> out;
    if (lw - sum < 1) return out;
    const RegisterLayout shifted = build_layout(lw - sum);
    for (int b = suffix.front() + 1; b <= shifted.lambda3_max; ++b) add_bus(shifted, b, suffix, n, out);
    return out;
}

std::vector<std::vector<int>> suffix_schedule(int lw, int p, int n) {
    if (p < 4) throw std::invalid_argument("suffix_schedule: p must be >= 4");
    std::vector<std::vector<int>> out;
    for (const auto& part : partitions_of(lw, p, n)) {
        std::vector<int> tail(part.parts.begin() + 3, part.parts.end());
        if (out.empty() || out.back() != tail) out.push_back(std::move(tail));
    }
    return out;
}

TraceEntry trace_entry(const DecodeOutcome& outcome, int n) {
    TraceEntry e;
    if (outcome.abandoned) {
        e.abandoned = true;
        return e;
    }
    if (!outcome.found) throw std::invalid_argument("trace_entry: outcome is neither found nor abandoned");
    const auto& parts = outcome.solution_parts;
    if (parts.empty()) return e;
    e.lw = outcome.solution_lw;
    e.p = static_cast<int>(parts.size());
    if (e.p >= 4) {
        const std::vector<int> tail(parts.begin() + 3, parts.end());
        const auto sched = suffix_schedule(e.lw, e.p, n);
        const auto it = std::find(sched.begin(), sched.end(), tail);
        if (it == sched.end()) throw std::logic_error("trace_entry: suffix not in schedule");
        e.suffix_rank = static_cast<std::uint64_t>(it - sched.begin());
    }
    return e;
}

std::string CycleReport::to_json() const {
    nlohmann::ordered_json j;
    j["wc_cycles"] = wc_cycles;
    j["wc_latency_ns"] = wc_latency_ns;
    j["frames"] = frames;
    j["avg_cycles"] = avg_cycles;
    j["avg_latency_ns"] = avg_latency_ns;
    j["avg_tp_gbps"] = avg_tp_gbps;
    j["overhead_constant_used"] = overhead_constant_used;
    return j.dump(2);
}

CycleModel::CycleModel(const ScheduleConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    const int n = cfg_.n;
    const int w = cfg_.lw_max;
    p_top_ = std::min(cfg_.p_max, n);
    const int extra = std::max(0, p_top_ - 4);  // parts below lambda_4

    steps_.assign(static_cast<std::size_t>(w) + 1, 0);
    suffix_counts_.assign(static_cast<std::size_t>(w) + 1,
                          std::vector<std::uint64_t>(static_cast<std::size_t>(std::max(0, p_top_ - 3)), 0));
    std::vector<std::vector<u128>> counts(static_cast<std::size_t>(w) + 1,
                                          std::vector<u128>(suffix_counts_[0].size(), 0));

    // h[L][S]: sets of L distinct parts from [1, t - 1] with sum S. A suffix
    // with largest part lambda_4 = t and the rest summing to S is feasible iff
    // three distinct parts in (t, n] can make up r = lw - t - S, i.e.
    // 3t + 6 <= r <= 3n - 3.
    if (p_top_ >= 4) {
        std::vector<std::vector<u128>> h(static_cast<std::size_t>(extra) + 1,
                                         std::vector<u128>(static_cast<std::size_t>(w) + 1, 0));
        h[0][0] = 1;
        std::vector<u128> prefix(static_cast<std::size_t>(w) + 1);
        for (int t = 1; t + 3 <= n && 4 * t + 6 <= w; ++t) {
            for (int l = 0; l <= extra; ++l) {
                const auto& row = h[static_cast<std::size_t>(l)];
                u128 acc = 0;
                for (int s = 0; s <= w; ++s) prefix[static_cast<std::size_t>(s)] = acc += row[static_cast<std::size_t>(s)];
                for (int lw = 4 * t + 6; lw <= w; ++lw) {
                    const int lo = std::max(0, lw - t - (3 * n - 3));
                    const int hi = lw - 4 * t - 6;
                    if (hi < lo) continue;
                    const u128 c = prefix[static_cast<std::size_t>(hi)] - (lo > 0 ? prefix[static_cast<std::size_t>(lo - 1)] : 0);
                    counts[static_cast<std::size_t>(lw)][static_cast<std::size_t>(l)] += c;
                }
            }
            for (int l = extra - 1; l >= 0; --l) {
                auto& from = h[static_cast<std::size_t>(l)];
                auto& to = h[static_cast<std::size_t>(l + 1)];
                for (int s = w - t; s >= 0; --s) to[static_cast<std::size_t>(s + t)] += from[static_cast<std::size_t>(s)];
            }
        }
    }

    steps_before_.assign(static_cast<std::size_t>(w) + 2, 0);
    u128 total = 0;
    for (int lw = 3; lw <= w; ++lw) {
        u128 s = lw <= 3 * n - 3 ? 1 : 0;
        for (std::size_t l = 0; l < counts[static_cast<std::size_t>(lw)].size(); ++l) {
            suffix_counts_[static_cast<std::size_t>(lw)][l] = to_u64(counts[static_cast<std::size_t>(lw)][l]);
            s += counts[static_cast<std::size_t>(lw)][l];
        }
        steps_[static_cast<std::size_t>(lw)] = to_u64(s);
        steps_before_[static_cast<std::size_t>(lw)] = to_u64(total);
        total += s;
    }
    steps_before_[static_cast<std::size_t>(w) + 1] = to_u64(total);
    worst_case_ = to_u64(total + static_cast<u128>(cfg_.overhead_cycles()));
}

std::uint64_t CycleModel::steps_for_lw(int lw) const {
    if (lw < 1 || lw > cfg_.lw_max) throw std::out_of_range("steps_for_lw: lw outside [1, lw_max]");
    return steps_[static_cast<std::size_t>(lw)];
}

std::uint64_t CycleModel::suffix_steps(int lw, int p) const {
    if (lw < 1 || lw > cfg_.lw_max) throw std::out_of_range("suffix_steps: lw outside [1, lw_max]");
    if (p < 4 || p > p_top_) return 0;
    return suffix_counts_[static_cast<std::size_t>(lw)][static_cast<std::size_t>(p - 4)];
}

std::uint64_t CycleModel::frame_cycles(const TraceEntry& e) const {
    if (e.abandoned) return worst_case_;
    if (e.lw == 0) return 1;
    if (e.lw < 1 || e.lw > cfg_.lw_max || e.p < 1 || e.p > p_top_) {
        throw std::invalid_argument("frame_cycles: trace entry outside the schedule");
    }
    const std::uint64_t overhead = static_cast<std::uint64_t>(cfg_.overhead_cycles());
    if (e.p == 1) return overhead;
    std::uint64_t c = overhead + steps_before_[static_cast<std::size_t>(e.lw)];
    if (e.lw <= 3 * cfg_.n - 3) c += 1;
    if (e.p >= 4) {
        if (e.suffix_rank >= suffix_steps(e.lw, e.p)) throw std::invalid_argument("frame_cycles: suffix rank out of range");
        for (int q = 4; q < e.p; ++q) c += suffix_steps(e.lw, q);
        c += e.suffix_rank + 1;
    }
    return c;
}

CycleReport CycleModel::trace_latency(std::span<const TraceEntry> trace) const {
    if (trace.empty()) throw std::invalid_argument("trace_latency: empty trace");
    long double sum = 0;
    for (const auto& e : trace) sum += static_cast<long double>(frame_cycles(e));
    CycleReport r;
    r.wc_cycles = worst_case_;
    r.wc_latency_ns = static_cast<double>(worst_case_) * 1000.0 / cfg_.freq_mhz;
    r.frames = trace.size();
    r.avg_cycles = static_cast<double>(sum / static_cast<long double>(trace.size()));
    r.avg_latency_ns = r.avg_cycles * 1000.0 / cfg_.freq_mhz;
    r.avg_tp_gbps = cfg_.k / r.avg_latency_ns;
    r.overhead_constant_used = cfg_.overhead_cycles();
    return r;
}

std::uint64_t steps_for_lw(int lw, int p_max, int n) {
    ScheduleConfig cfg;
    cfg.n = n;
    cfg.k = n / 2;
    cfg.lw_max = lw;
    cfg.p_max = p_max;
    return CycleModel(cfg).steps_for_lw(lw);
}

std::uint64_t worst_case_cycles(const ScheduleConfig& cfg) { return CycleModel(cfg).worst_case_cycles(); }

CycleReport trace_latency(std::span<const TraceEntry> trace, const ScheduleConfig& cfg) {
    return CycleModel(cfg).trace_latency(trace);
}

}  // namespace grandkit
