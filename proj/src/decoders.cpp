#include "grandkit/decoders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace grandkit {

namespace {

using word_type = BitWord::word_type;

// Packs a list of equal-length words back to back, `stride` machine words each.
std::vector<word_type> pack(std::span<const BitWord> words, std::size_t stride) {
    std::vector<word_type> flat(words.size() * stride, 0);
    for (std::size_t i = 0; i < words.size(); ++i) {
        std::copy(words[i].words().begin(), words[i].words().end(), flat.begin() + static_cast<std::ptrdiff_t>(i * stride));
    }
    return flat;
}

// True iff base ^ table[idx_0] ^ table[idx_1] ^ ... is all zero. Indices are
// 0-based rows of the packed table.
template <typename IndexRange>
bool combination_is_zero(std::span<const word_type> base, const IndexRange& rows, const word_type* table,
                         std::size_t stride) noexcept {
    if (stride == 1) {
        word_type acc = base[0];
        for (auto r : rows) acc ^= table[static_cast<std::size_t>(r)];
        return acc == 0;
    }
    for (std::size_t w = 0; w < stride; ++w) {
        word_type acc = base[w];
        for (auto r : rows) acc ^= table[static_cast<std::size_t>(r) * stride + w];
        if (acc != 0) return false;
    }
    return true;
}

struct MinusOne {
    std::span<const int> parts;
    struct iterator {
        const int* p;
        int operator*() const noexcept { return *p - 1; }
        iterator& operator++() noexcept {
            ++p;
            return *this;
        }
        bool operator!=(const iterator& o) const noexcept { return p != o.p; }
    };
    iterator begin() const noexcept { return {parts.data()}; }
    iterator end() const noexcept { return {parts.data() + parts.size()}; }
};

void check_parts(std::span<const int> parts, std::size_t n) {
    for (int p : parts) {
        if (p < 1 || static_cast<std::size_t>(p) > n) {
            throw std::invalid_argument("partition part " + std::to_string(p) + " outside [1, " + std::to_string(n) + "]");
        }
    }
}

}  // namespace

SortPermutation sort_indices(std::span<const double> llrs) {
    SortPermutation perm;
    perm.order.resize(llrs.size());
    std::iota(perm.order.begin(), perm.order.end(), std::size_t{0});
    std::stable_sort(perm.order.begin(), perm.order.end(),
                     [&](std::size_t a, std::size_t b) { return std::fabs(llrs[a]) < std::fabs(llrs[b]); });
    return perm;
}

BitWord hard_decision(std::span<const double> llrs) {
    BitWord hard(llrs.size());
    for (std::size_t i = 0; i < llrs.size(); ++i) {
        if (llrs[i] < 0.0) hard.set(i);
    }
    return hard;
}

BitWord apply_partition(std::span<const int> parts, const SortPermutation& perm) {
    const std::size_t n = perm.order.size();
    check_parts(parts, n);
    BitWord e(n);
    for (int p : parts) e.flip(perm.order[static_cast<std::size_t>(p - 1)]);
    return e;
}

bool syndrome_combination_check(const BitWord& base, std::span<const int> parts,
                                std::span<const BitWord> sorted_syndromes) {
    check_parts(parts, sorted_syndromes.size());
    BitWord acc = base;
    for (int p : parts) acc ^= sorted_syndromes[static_cast<std::size_t>(p - 1)];
    return acc.is_zero();
}

OrbgrandDecoder::OrbgrandDecoder(const LinearCode& code, PatternBudget budget, MembershipCheck check)
    : code_(&code), budget_(budget), check_(check) {
    if (budget_.n != static_cast<int>(code.n())) {
        throw std::invalid_argument("OrbgrandDecoder: budget.n = " + std::to_string(budget_.n) +
                                    " but code has n = " + std::to_string(code.n()));
    }
    budget_.validate();
    flip_syndromes_ = single_flip_syndromes(code.parity_check());
    syndrome_words_ = std::max<std::size_t>(1, BitWord(code.redundancy()).word_count());
    sorted_flat_.assign(code.n() * syndrome_words_, 0);
}

DecodeOutcome OrbgrandDecoder::decode(std::span<const double> llrs) {
    if (llrs.size() != code_->n()) {
        throw std::invalid_argument("orbgrand_decode: got " + std::to_string(llrs.size()) + " LLRs for n = " +
                                    std::to_string(code_->n()));
    }
    const BitWord hard = hard_decision(llrs);
    const BitWord base = syndrome(code_->parity_check(), hard);
    if (base.is_zero()) return finish(hard, BitWord(code_->n()), 1, {});

    const SortPermutation perm = sort_indices(llrs);
    return check_ == MembershipCheck::direct ? decode_direct(hard, perm) : decode_combination(hard, base, perm);
}

DecodeOutcome OrbgrandDecoder::decode_direct(const BitWord& hard, const SortPermutation& perm) {
    PatternStream stream(budget_);
    stream.next();  // empty pattern, already tested by decode()
    std::uint64_t queries = 1;
    while (stream.next()) {
        ++queries;
        const BitWord e = apply_partition(stream.parts(), perm);
        if (syndrome(code_->parity_check(), hard ^ e).is_zero()) return finish(hard, e, queries, stream.parts());
    }
    DecodeOutcome out;
    out.abandoned = true;
    out.queries = queries;
    return out;
}

DecodeOutcome OrbgrandDecoder::decode_combination(const BitWord& hard, const BitWord& base,
                                                  const SortPermutation& perm) {
    const std::size_t stride = syndrome_words_;
    for (std::size_t r = 0; r < perm.order.size(); ++r) {
        const auto src = flip_syndromes_[perm.order[r]].words();
        std::copy(src.begin(), src.end(), sorted_flat_.begin() + static_cast<std::ptrdiff_t>(r * stride));
    }
    const auto base_words = base.words();

    PatternStream stream(budget_);
    stream.next();
    std::uint64_t queries = 1;
    while (stream.next()) {
        ++queries;
        if (combination_is_zero(base_words, MinusOne{stream.parts()}, sorted_flat_.data(), stride)) {
            return finish(hard, apply_partition(stream.parts(), perm), queries, stream.parts());
        }
    }
    DecodeOutcome out;
    out.abandoned = true;
    out.queries = queries;
    return out;
}

DecodeOutcome OrbgrandDecoder::finish(const BitWord& hard, const BitWord& error, std::uint64_t queries,
                                      std::span<const int> parts) const {
    DecodeOutcome out;
    out.found = true;
    out.codeword = hard ^ error;
    out.message = code_->extract_message(out.codeword);
    out.queries = queries;
    out.solution_parts.assign(parts.begin(), parts.end());
    out.solution_lw = std::accumulate(parts.begin(), parts.end(), 0);
    out.solution_hw = static_cast<int>(parts.size());
    return out;
}

DecodeOutcome orbgrand_decode(std::span<const double> llrs, const LinearCode& code, const PatternBudget& budget,
                              MembershipCheck check) {
    OrbgrandDecoder decoder(code, budget, check);
    return decoder.decode(llrs);
}

std::uint64_t grandab_query_budget(std::size_t n, int ab) {
    std::uint64_t total = 0;
    std::uint64_t binom = 1;
    for (int t = 0; t <= ab; ++t) {
        total += binom;
        binom = binom * (n - static_cast<std::size_t>(t)) / static_cast<std::uint64_t>(t + 1);
    }
    return total;
}

DecodeOutcome grandab_decode(const BitWord& hard, const LinearCode& code, int ab, MembershipCheck check) {
    const std::size_t n = code.n();
    if (hard.size() != n) {
        throw std::invalid_argument("grandab_decode: word length " + std::to_string(hard.size()) + " but n = " +
                                    std::to_string(n));
    }
    if (ab < 0 || static_cast<std::size_t>(ab) > n) throw std::invalid_argument("grandab_decode: need 0 <= ab <= n");

    const Gf2Matrix& h = code.parity_check();
    const BitWord base = syndrome(h, hard);
    const auto columns = single_flip_syndromes(h);
    const std::size_t stride = std::max<std::size_t>(1, base.word_count());
    const auto table = pack(columns, stride);
    std::vector<word_type> base_words(stride, 0);
    std::copy(base.words().begin(), base.words().end(), base_words.begin());

    auto accept = [&](std::span<const std::size_t> positions, std::uint64_t queries) {
        BitWord e(n);
        std::vector<int> parts;
        for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
            e.set(*it);
            parts.push_back(static_cast<int>(*it) + 1);
        }
        DecodeOutcome out;
        out.found = true;
        out.codeword = hard ^ e;
        out.message = code.extract_message(out.codeword);
        out.queries = queries;
        out.solution_lw = std::accumulate(parts.begin(), parts.end(), 0);
        out.solution_hw = static_cast<int>(parts.size());
        out.solution_parts = std::move(parts);
        return out;
    };

    std::uint64_t queries = 0;
    std::vector<std::size_t> pos;
    for (int t = 0; t <= ab; ++t) {
        pos.resize(static_cast<std::size_t>(t));
        std::iota(pos.begin(), pos.end(), std::size_t{0});
        for (;;) {
            ++queries;
            bool hit;
            if (check == MembershipCheck::direct) {
                BitWord word = hard;
                for (auto p : pos) word.flip(p);
                hit = syndrome(h, word).is_zero();
            } else {
                hit = combination_is_zero(std::span<const word_type>(base_words), pos, table.data(), stride);
            }
            if (hit) return accept(pos, queries);

            // Next t-subset of {0..n-1} in lexicographic order.
            int j = t - 1;
            while (j >= 0 && pos[static_cast<std::size_t>(j)] == n - static_cast<std::size_t>(t - j)) --j;
            if (j < 0) break;
            ++pos[static_cast<std::size_t>(j)];
            for (int q = j + 1; q < t; ++q) pos[static_cast<std::size_t>(q)] = pos[static_cast<std::size_t>(q - 1)] + 1;
        }
    }
    DecodeOutcome out;
    out.abandoned = true;
    out.queries = queries;
    return out;
}

}  // namespace grandkit
