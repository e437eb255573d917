#include "grandkit/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace grandkit {

int Partition::weight() const noexcept { return std::accumulate(parts.begin(), parts.end(), 0); }

bool Partition::is_valid() const noexcept {
    for (std::size_t j = 0; j < parts.size(); ++j) {
        if (parts[j] < 1) return false;
        if (j > 0 && parts[j] >= parts[j - 1]) return false;
    }
    return true;
}

std::string Partition::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t j = 0; j < parts.size(); ++j) out << (j ? "," : "") << parts[j];
    out << ')';
    return out.str();
}

void PatternBudget::validate() const {
    if (n < 1) throw std::invalid_argument("PatternBudget: n must be >= 1");
    if (p_max < 1) throw std::invalid_argument("PatternBudget: p_max must be >= 1");
    const long long full = static_cast<long long>(n) * (n + 1) / 2;
    if (lw_max < 0 || lw_max > full) {
        throw std::invalid_argument("PatternBudget: lw_max must lie in [0, n(n+1)/2 = " + std::to_string(full) + "]");
    }
}

int lambda_max_from_sum(int m, int i, int suffix_sum) {
    // Largest integer strictly below num / den, i.e. ceil(num / den) - 1.
    const long long num = 2LL * m - static_cast<long long>(i) * (i - 1) + 2 - 2LL * suffix_sum;
    const long long den = 2LL * i;
    const long long q = num / den;
    const long long ceil_q = (num % den != 0 && num > 0) ? q + 1 : q;
    return static_cast<int>(ceil_q - 1);
}

int lambda_max(int m, int i, std::span<const int> suffix) {
    return lambda_max_from_sum(m, i, std::accumulate(suffix.begin(), suffix.end(), 0));
}

namespace {

struct PartBounds {
    int lo;
    int hi;
};

// Admissible range of lambda_i (1-indexed, i >= 2) in a partition of m with
// parts <= cap, given the sum of the parts after it and lambda_{i+1}
// (0 when i is the last position).
PartBounds part_bounds(int m, int i, int suffix_sum, int next_part, int cap) {
    const long long room = max_parts_sum(i - 1, cap);
    const int lo = static_cast<int>(std::max<long long>(next_part + 1, m - suffix_sum - room));
    const int hi = std::min(lambda_max_from_sum(m, i, suffix_sum), cap - (i - 1));
    return {lo, hi};
}

int largest_feasible_size(int lw) noexcept {
    int p = 0;
    while (static_cast<long long>(p + 1) * (p + 2) / 2 <= lw) ++p;
    return p;
}

}  // namespace

std::vector<Partition> partitions_of(int m, int p, int max_part) {
    std::vector<Partition> out;
    if (p < 1 || max_part < 1 || m < static_cast<long long>(p) * (p + 1) / 2) return out;
    if (static_cast<long long>(m) > static_cast<long long>(max_part) * (max_part + 1) / 2) return out;
    PatternStream stream(PatternBudget{m, p, max_part});
    stream.seek(m, p);
    while (stream.next() && stream.logistic_weight() == m && stream.hamming_weight() == static_cast<std::size_t>(p)) {
        out.push_back(stream.partition());
    }
    return out;
}

PatternStream::PatternStream(const PatternBudget& budget) : budget_(budget) { budget_.validate(); }

int PatternStream::largest_size(int lw) const noexcept {
    return std::min({budget_.p_max, budget_.n, largest_feasible_size(lw)});
}

bool PatternStream::fill_from(int position, int suffix_sum) {
    const int size = static_cast<int>(parts_.size());
    for (int i = position; i >= 2; --i) {
        const int next_part = (i == size) ? 0 : parts_[static_cast<std::size_t>(i)];
        const auto [lo, hi] = part_bounds(lw_, i, suffix_sum, next_part, budget_.n);
        if (lo > hi) return false;
        parts_[static_cast<std::size_t>(i - 1)] = lo;
        suffix_sum += lo;
    }
    parts_[0] = lw_ - suffix_sum;
    return parts_[0] <= budget_.n && (size == 1 || parts_[0] > parts_[1]);
}

bool PatternStream::first_of_size() { return fill_from(static_cast<int>(parts_.size()), 0); }

bool PatternStream::advance_within_size() {
    const int size = static_cast<int>(parts_.size());
    if (size < 2) return false;
    // suffix_sum for position i is the sum of parts_[i .. size-1].
    int suffix_sum = std::accumulate(parts_.begin() + 1, parts_.end(), 0);
    for (int i = 2; i <= size; ++i) {
        const int current = parts_[static_cast<std::size_t>(i - 1)];
        suffix_sum -= current;
        const int next_part = (i == size) ? 0 : parts_[static_cast<std::size_t>(i)];
        const auto bounds = part_bounds(lw_, i, suffix_sum, next_part, budget_.n);
        if (current + 1 <= bounds.hi) {
            parts_[static_cast<std::size_t>(i - 1)] = current + 1;
            return fill_from(i - 1, suffix_sum + current + 1);
        }
    }
    return false;
}

void PatternStream::seek(int lw, int size) {
    if (lw < 0 || size < 0) throw std::invalid_argument("PatternStream::seek: negative argument");
    started_ = true;
    done_ = lw > budget_.lw_max;
    lw_ = lw;
    parts_.assign(static_cast<std::size_t>(size), 0);
    if (size == 0) {
        pending_ = (lw == 0);
    } else {
        pending_ = size <= largest_size(lw) && first_of_size();
    }
    group_invalid_ = !pending_;
}

bool PatternStream::next() {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        lw_ = 0;
        parts_.clear();
        return true;
    }
    if (pending_) {
        pending_ = false;
        group_invalid_ = false;
        return true;
    }
    if (!parts_.empty() && !group_invalid_ && advance_within_size()) return true;
    group_invalid_ = false;
    for (;;) {
        int size = static_cast<int>(parts_.size()) + 1;
        if (size > largest_size(lw_)) {
            ++lw_;
            size = 1;
            if (lw_ > budget_.lw_max) {
                done_ = true;
                parts_.clear();
                return false;
            }
        }
        parts_.assign(static_cast<std::size_t>(size), 0);
        if (first_of_size()) return true;
    }
}

namespace {

// dp[c][s] = number of subsets of {1..v} with c elements summing to s, for
// v = 1..min(cap, max_sum). Cells are updated in place, largest c and s first.
template <typename Cell>
std::optional<std::vector<std::vector<Cell>>> subset_table(int max_sum, int max_count, int cap) {
    std::vector<std::vector<Cell>> dp(static_cast<std::size_t>(max_count) + 1,
                                      std::vector<Cell>(static_cast<std::size_t>(max_sum) + 1, Cell{0}));
    dp[0][0] = 1;
    const int top = std::min(cap, max_sum);
    for (int v = 1; v <= top; ++v) {
        for (int c = std::min(max_count, v); c >= 1; --c) {
            auto& row = dp[static_cast<std::size_t>(c)];
            const auto& below = dp[static_cast<std::size_t>(c - 1)];
            for (int s = max_sum; s >= v; --s) {
                if constexpr (std::is_same_v<Cell, unsigned __int128>) {
                    if (__builtin_add_overflow(row[static_cast<std::size_t>(s)], below[static_cast<std::size_t>(s - v)],
                                               &row[static_cast<std::size_t>(s)])) {
                        return std::nullopt;
                    }
                } else {
                    row[static_cast<std::size_t>(s)] += below[static_cast<std::size_t>(s - v)];
                }
            }
        }
    }
    return dp;
}

QueryCount to_count(unsigned __int128 x) {
    QueryCount hi = static_cast<std::uint64_t>(x >> 64);
    return (hi << 64) + static_cast<std::uint64_t>(x);
}

template <typename Cell>
std::optional<QueryCount> total_of(int max_sum, int max_count, int cap) {
    auto dp = subset_table<Cell>(max_sum, max_count, cap);
    if (!dp) return std::nullopt;
    QueryCount total = 0;
    for (const auto& row : *dp) {
        for (const auto& cell : row) {
            if constexpr (std::is_same_v<Cell, unsigned __int128>) {
                total += to_count(cell);
            } else {
                total += cell;
            }
        }
    }
    return total;
}

}  // namespace

QueryCount count_partitions(int m, int p, int max_part) {
    if (m < 0 || p < 0 || max_part < 0) return 0;
    if (p == 0) return m == 0 ? 1 : 0;
    auto dp = subset_table<QueryCount>(m, p, max_part);
    return (*dp)[static_cast<std::size_t>(p)][static_cast<std::size_t>(m)];
}

QueryCount count_queries(const PatternBudget& budget) {
    budget.validate();
    const int max_count = std::min({budget.p_max, budget.n, largest_feasible_size(budget.lw_max)});
    if (auto fast = total_of<unsigned __int128>(budget.lw_max, max_count, budget.n)) return *fast;
    return *total_of<QueryCount>(budget.lw_max, max_count, budget.n);
}

}  // namespace grandkit
