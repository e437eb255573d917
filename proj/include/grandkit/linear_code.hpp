#pragma once

#include <cstdint>
#include <string>

#include "grandkit/gf2_matrix.hpp"

namespace grandkit {

// An (n, k) binary linear block code with everything the decoders need.
// Invariants (checked on construction): G H^T = 0, rank(G) = k,
// rank(H) = n - k, G * generator_inverse = I_k.
class LinearCode {
public:
    static LinearCode from_generator(Gf2Matrix generator, std::string name = {});
    static LinearCode from_parity_check(Gf2Matrix parity_check, std::string name = {});
    static LinearCode from_matrices(Gf2Matrix generator, Gf2Matrix parity_check, std::string name = {});

    std::size_t n() const noexcept { return generator_.cols(); }
    std::size_t k() const noexcept { return generator_.rows(); }
    std::size_t redundancy() const noexcept { return parity_check_.rows(); }

    const Gf2Matrix& generator() const noexcept { return generator_; }
    const Gf2Matrix& parity_check() const noexcept { return parity_check_; }
    // n x k; recovers u from u * G.
    const Gf2Matrix& generator_inverse() const noexcept { return generator_inverse_; }
    const std::string& name() const noexcept { return name_; }

    BitWord encode(const BitWord& message) const { return grandkit::encode(generator_, message); }
    BitWord extract_message(const BitWord& codeword) const { return left_multiply(codeword, generator_inverse_); }
    bool is_codeword(const BitWord& word) const { return syndrome(parity_check_, word).is_zero(); }

private:
    LinearCode(Gf2Matrix g, Gf2Matrix h, Gf2Matrix ginv, std::string name);

    Gf2Matrix generator_;
    Gf2Matrix parity_check_;
    Gf2Matrix generator_inverse_;
    std::string name_;
};

// Parity-check matrix spanning the dual of the row space of G.
Gf2Matrix derive_parity_from_generator(const Gf2Matrix& generator);

// Systematic G = [I_k | P] with P drawn from a 64-bit Mersenne Twister seeded
// with `seed`; H = [P^T | I_{n-k}]. Deterministic in (n, k, seed).
LinearCode build_random_linear(std::size_t n, std::size_t k, std::uint64_t seed);

// Textbook systematic Hamming(7,4): G = [I_4 | P], H = [P^T | I_3].
LinearCode hamming_7_4();

}  // namespace grandkit
