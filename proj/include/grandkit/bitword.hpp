#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grandkit {

// Bit index convention used throughout the library:
//   stored index i (0-based) <-> position i + 1 in 1-indexed notation.
// So the i-th one-flip syndrome s_i and the partition part value lambda both
// refer to 1-indexed positions and are translated with a single "- 1" at the
// point of use (see apply_partition and single_flip_syndromes).
//
// Packing: bit i lives in words()[i / 64] at bit position i % 64. Bits past
// size() in the last word are always zero.
class BitWord {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitWord() = default;
    explicit BitWord(std::size_t size);

    static BitWord from_bits(std::span<const std::uint8_t> bits);
    // "1010" -> bits 0 and 2 set.
    static BitWord from_string(std::string_view bits);
    // Hex digits, MSB of the first digit = bit 0. Trailing pad bits must be zero.
    static BitWord from_hex(std::string_view hex, std::size_t size);
    static BitWord unit(std::size_t size, std::size_t index);

    std::size_t size() const noexcept { return size_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    std::span<const word_type> words() const noexcept { return words_; }
    std::span<word_type> words() noexcept { return words_; }

    bool get(std::size_t i) const noexcept {
        return (words_[i / word_bits] >> (i % word_bits)) & 1u;
    }
    void set(std::size_t i, bool value = true) noexcept {
        const word_type mask = word_type{1} << (i % word_bits);
        if (value) {
            words_[i / word_bits] |= mask;
        } else {
            words_[i / word_bits] &= ~mask;
        }
    }
    void flip(std::size_t i) noexcept { words_[i / word_bits] ^= word_type{1} << (i % word_bits); }

    bool is_zero() const noexcept;
    std::size_t weight() const noexcept;

    BitWord& operator^=(const BitWord& other);
    friend BitWord operator^(BitWord a, const BitWord& b) { return a ^= b; }
    friend bool operator==(const BitWord&, const BitWord&) = default;

    std::string to_string() const;
    std::string to_hex() const;
    std::vector<std::uint8_t> to_bits() const;

private:
    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

// Throws std::invalid_argument on length mismatch.
BitWord xor_words(const BitWord& a, const BitWord& b);

// Parity of the AND of two equal-length packed rows.
inline bool dot(std::span<const BitWord::word_type> a, std::span<const BitWord::word_type> b) noexcept {
    BitWord::word_type acc = 0;
    for (std::size_t w = 0; w < a.size(); ++w) {
        acc ^= a[w] & b[w];
    }
    return std::popcount(acc) & 1;
}

}  // namespace grandkit
