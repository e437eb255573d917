#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "grandkit/bitword.hpp"

namespace grandkit {

// Raised when a matrix does not have the rank an operation needs.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense row-major GF(2) matrix; each row is a packed BitWord of length cols().
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols);
    explicit Gf2Matrix(std::vector<BitWord> rows);

    static Gf2Matrix identity(std::size_t size);
    // Rows given as '0'/'1' strings of equal length.
    static Gf2Matrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    const BitWord& row(std::size_t r) const { return rows_.at(r); }
    BitWord& row(std::size_t r) { return rows_.at(r); }
    const std::vector<BitWord>& row_words() const noexcept { return rows_; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }

    Gf2Matrix transpose() const;
    std::size_t rank() const;

    friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitWord> rows_;
};

Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b);

// H * v^T. Throws std::invalid_argument when v.size() != H.cols().
BitWord syndrome(const Gf2Matrix& h, const BitWord& v);

// Entry i is the syndrome of flipping stored bit i, i.e. column i of H
// (s_{i+1} in 1-indexed notation).
std::vector<BitWord> single_flip_syndromes(const Gf2Matrix& h);

// u * G.
BitWord encode(const Gf2Matrix& g, const BitWord& u);

// v * M for a row vector v of length M.rows().
BitWord left_multiply(const BitWord& v, const Gf2Matrix& m);

// Returns M (n x k) with G * M = I_k. Gauss-Jordan on [G | I_k]; the pivot of
// each column is the first remaining row with a one there. Throws
// ConstructionError if rank(G) < k.
Gf2Matrix right_inverse(const Gf2Matrix& g);

// Basis of {v : A v^T = 0} as the rows of the returned matrix.
Gf2Matrix nullspace(const Gf2Matrix& a);

struct RowEchelon {
    Gf2Matrix reduced;
    std::vector<std::size_t> pivot_cols;
};
RowEchelon reduced_row_echelon(const Gf2Matrix& a);

}  // namespace grandkit
