#include "grandkit/bitword.hpp"

#include <algorithm>
#include <stdexcept>

namespace grandkit {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + BitWord::word_bits - 1) / BitWord::word_bits; }

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

BitWord::BitWord(std::size_t size) : size_(size), words_(words_for(size), 0) {}

BitWord BitWord::from_bits(std::span<const std::uint8_t> bits) {
    BitWord w(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) {
            throw std::invalid_argument("BitWord::from_bits: values must be 0 or 1");
        }
        if (bits[i]) w.set(i);
    }
    return w;
}

BitWord BitWord::from_string(std::string_view bits) {
    BitWord w(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            w.set(i);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("BitWord::from_string: expected only '0' and '1'");
        }
    }
    return w;
}

BitWord BitWord::from_hex(std::string_view hex, std::size_t size) {
    if (hex.size() != (size + 3) / 4) {
        throw std::invalid_argument("BitWord::from_hex: expected " + std::to_string((size + 3) / 4) +
                                    " hex digits, got " + std::to_string(hex.size()));
    }
    BitWord w(size);
    for (std::size_t d = 0; d < hex.size(); ++d) {
        const int v = hex_value(hex[d]);
        if (v < 0) {
            throw std::invalid_argument(std::string("BitWord::from_hex: invalid hex digit '") + hex[d] + "'");
        }
        for (int b = 0; b < 4; ++b) {
            if (!((v >> (3 - b)) & 1)) continue;
            const std::size_t i = 4 * d + static_cast<std::size_t>(b);
            if (i >= size) {
                throw std::invalid_argument("BitWord::from_hex: nonzero padding bits");
            }
            w.set(i);
        }
    }
    return w;
}

BitWord BitWord::unit(std::size_t size, std::size_t index) {
    if (index >= size) {
        throw std::invalid_argument("BitWord::unit: index out of range");
    }
    BitWord w(size);
    w.set(index);
    return w;
}

bool BitWord::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](word_type x) { return x == 0; });
}

std::size_t BitWord::weight() const noexcept {
    std::size_t total = 0;
    for (auto x : words_) total += static_cast<std::size_t>(std::popcount(x));
    return total;
}

BitWord& BitWord::operator^=(const BitWord& other) {
    if (other.size_ != size_) {
        throw std::invalid_argument("BitWord xor: length mismatch (" + std::to_string(size_) + " vs " +
                                    std::to_string(other.size_) + ")");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

std::string BitWord::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

std::string BitWord::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s((size_ + 3) / 4, '0');
    for (std::size_t d = 0; d < s.size(); ++d) {
        int v = 0;
        for (int b = 0; b < 4; ++b) {
            const std::size_t i = 4 * d + static_cast<std::size_t>(b);
            if (i < size_ && get(i)) v |= 1 << (3 - b);
        }
        s[d] = digits[v];
    }
    return s;
}

std::vector<std::uint8_t> BitWord::to_bits() const {
    std::vector<std::uint8_t> out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = get(i) ? 1 : 0;
    return out;
}

BitWord xor_words(const BitWord& a, const BitWord& b) { return a ^ b; }

}  // namespace grandkit
