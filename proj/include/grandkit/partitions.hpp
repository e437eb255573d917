#pragma once

#include <climits>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace grandkit {

// Distinct integer partition lambda_1 > lambda_2 > ... > lambda_P >= 1.
// Each part is a 1-indexed rank in reliability order (1 = least reliable), so
// the sum is the logistic weight and P the Hamming weight of the pattern.
struct Partition {
    std::vector<int> parts;

    int weight() const noexcept;
    std::size_t size() const noexcept { return parts.size(); }
    bool empty() const noexcept { return parts.empty(); }
    // True if strictly decreasing and all parts >= 1.
    bool is_valid() const noexcept;
    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;
};

struct PatternBudget {
    static constexpr int unbounded = INT_MAX;

    int lw_max = 0;
    int p_max = unbounded;
    int n = 0;  // largest admissible part (block length)

    // Throws std::invalid_argument unless 0 <= lw_max <= n(n+1)/2, p_max >= 1, n >= 1.
    void validate() const;
};

// Largest admissible lambda_i for a partition of m when the parts after
// position i (1-indexed, 2 <= i <= P) are fixed to `suffix`:
//   lambda_i < (2m - i(i-1) + 2 - 2 * sum(suffix)) / (2i).
// May return a value < 1 or <= suffix.front(), meaning no partition exists.
int lambda_max(int m, int i, std::span<const int> suffix);

// Same bound from the suffix sum alone.
int lambda_max_from_sum(int m, int i, int suffix_sum);

// All distinct partitions of m into exactly p parts with parts <= max_part.
// Order: the suffix (lambda_P, ..., lambda_2) ascends lexicographically with
// lambda_P slowest, so lambda_2 ascends fastest while lambda_1 = m - rest
// descends. For m = 10, p = 2: (9,1) (8,2) (7,3) (6,4).
std::vector<Partition> partitions_of(int m, int p, int max_part);

// Pull-based enumeration of all test patterns of a budget: the empty partition
// (logistic weight 0) first, then every lw = 1..lw_max, and inside one lw the
// sizes P = 1..p_max in ascending order, each in partitions_of order.
class PatternStream {
public:
    explicit PatternStream(const PatternBudget& budget);

    // Advances to the next pattern; false once the stream is exhausted.
    bool next();

    // Positions the stream so that the following next() yields the first
    // pattern with logistic weight `lw` and size `size` (or, if that group is
    // empty, the first pattern after it).
    void seek(int lw, int size);

    int logistic_weight() const noexcept { return lw_; }
    std::size_t hamming_weight() const noexcept { return parts_.size(); }
    // Current parts, lambda_1 first.
    std::span<const int> parts() const noexcept { return parts_; }
    Partition partition() const { return Partition{parts_}; }
    const PatternBudget& budget() const noexcept { return budget_; }

private:
    bool first_of_size();
    bool advance_within_size();
    // Sets positions i-1 .. 2 (1-indexed) to their minima, then lambda_1.
    bool fill_from(int position, int suffix_sum);
    int largest_size(int lw) const noexcept;

    PatternBudget budget_;
    int lw_ = 0;
    bool started_ = false;
    bool done_ = false;
    bool pending_ = false;
    bool group_invalid_ = false;
    std::vector<int> parts_;
};

using QueryCount = boost::multiprecision::cpp_int;

// Number of distinct partitions of m into exactly p parts, each <= max_part.
QueryCount count_partitions(int m, int p, int max_part);

// Exact number of patterns PatternStream(budget) emits, the empty pattern
// included. Dynamic programming over part values; no enumeration.
QueryCount count_queries(const PatternBudget& budget);

// Smallest / largest sum of `count` distinct parts that are all > floor_value,
// respectively all <= cap.
constexpr long long min_parts_sum(long long count, long long floor_value) noexcept {
    return count * floor_value + count * (count + 1) / 2;
}
constexpr long long max_parts_sum(long long count, long long cap) noexcept {
    return count * cap - count * (count - 1) / 2;
}

}  // namespace grandkit
