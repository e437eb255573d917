#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "grandkit/linear_code.hpp"
#include "grandkit/partitions.hpp"

namespace grandkit {

// order[r] is the stored position of the (r+1)-th least reliable bit, so a
// partition part lambda flips position order[lambda - 1].
struct SortPermutation {
    std::vector<std::size_t> order;
};

// Stable ascending sort of |llr|; equal magnitudes keep ascending position.
SortPermutation sort_indices(std::span<const double> llrs);

// Hard decision: bit = 1 iff llr < 0 (positive LLR favours bit 0; llr = 0 -> 0).
BitWord hard_decision(std::span<const double> llrs);

// Error pattern with position order[lambda - 1] set for each part.
// Throws std::invalid_argument if a part is outside [1, n].
BitWord apply_partition(std::span<const int> parts, const SortPermutation& perm);

// base XOR (XOR of sorted_syndromes[lambda - 1] over parts) == 0.
bool syndrome_combination_check(const BitWord& base, std::span<const int> parts,
                                std::span<const BitWord> sorted_syndromes);

struct DecodeOutcome {
    bool found = false;
    bool abandoned = false;
    BitWord message;   // k bits, valid when found
    BitWord codeword;  // n bits, valid when found
    std::uint64_t queries = 0;
    int solution_lw = -1;
    int solution_hw = -1;
    // Parts of the accepted pattern (1-indexed ranks for ORBGRAND, 1-indexed
    // positions for GRANDAB), largest first.
    std::vector<int> solution_parts;

    friend bool operator==(const DecodeOutcome&, const DecodeOutcome&) = default;
};

// How each codebook membership query is evaluated.
enum class MembershipCheck {
    // Build e, recompute H (y ^ e)^T from scratch.
    direct,
    // XOR precomputed one-flip syndromes onto the syndrome of y.
    syndrome_combination,
};

// Holds the per-code tables (one-flip syndromes) plus per-frame scratch.
// Not safe to use from two threads at once; create one per worker.
class OrbgrandDecoder {
public:
    OrbgrandDecoder(const LinearCode& code, PatternBudget budget,
                    MembershipCheck check = MembershipCheck::syndrome_combination);

    DecodeOutcome decode(std::span<const double> llrs);

    const PatternBudget& budget() const noexcept { return budget_; }
    const LinearCode& code() const noexcept { return *code_; }

private:
    DecodeOutcome decode_direct(const BitWord& hard, const SortPermutation& perm);
    DecodeOutcome decode_combination(const BitWord& hard, const BitWord& base, const SortPermutation& perm);
    DecodeOutcome finish(const BitWord& hard, const BitWord& error, std::uint64_t queries,
                         std::span<const int> parts) const;

    const LinearCode* code_;
    PatternBudget budget_;
    MembershipCheck check_;
    std::vector<BitWord> flip_syndromes_;
    std::vector<BitWord::word_type> sorted_flat_;  // reliability-sorted syndromes, packed
    std::size_t syndrome_words_ = 0;
};

DecodeOutcome orbgrand_decode(std::span<const double> llrs, const LinearCode& code, const PatternBudget& budget,
                              MembershipCheck check = MembershipCheck::syndrome_combination);

// Hard-decision GRAND with abandonment: Hamming weights 0..ab, and inside one
// weight the position tuples (i_1 < i_2 < ...) in lexicographic order.
// solution_lw is the sum of the 1-indexed flipped positions.
DecodeOutcome grandab_decode(const BitWord& hard, const LinearCode& code, int ab,
                             MembershipCheck check = MembershipCheck::syndrome_combination);

// Total membership queries grandab_decode spends before abandoning.
std::uint64_t grandab_query_budget(std::size_t n, int ab);

}  // namespace grandkit
