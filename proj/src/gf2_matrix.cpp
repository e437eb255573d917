#include "grandkit/gf2_matrix.hpp"

#include <utility>

namespace grandkit {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitWord(cols)) {}

Gf2Matrix::Gf2Matrix(std::vector<BitWord> rows) : rows_(std::move(rows)) {
    cols_ = rows_.empty() ? 0 : rows_.front().size();
    for (const auto& r : rows_) {
        if (r.size() != cols_) {
            throw std::invalid_argument("Gf2Matrix: rows have different lengths");
        }
    }
}

Gf2Matrix Gf2Matrix::identity(std::size_t size) {
    Gf2Matrix m(size, size);
    for (std::size_t i = 0; i < size; ++i) m.set(i, i);
    return m;
}

Gf2Matrix Gf2Matrix::from_strings(const std::vector<std::string>& rows) {
    std::vector<BitWord> words;
    words.reserve(rows.size());
    for (const auto& r : rows) words.push_back(BitWord::from_string(r));
    return Gf2Matrix(std::move(words));
}

Gf2Matrix Gf2Matrix::transpose() const {
    Gf2Matrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (get(r, c)) t.set(c, r);
        }
    }
    return t;
}

std::size_t Gf2Matrix::rank() const { return reduced_row_echelon(*this).pivot_cols.size(); }

Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("multiply: inner dimensions differ");
    }
    Gf2Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) out.row(r) = left_multiply(a.row(r), b);
    return out;
}

BitWord syndrome(const Gf2Matrix& h, const BitWord& v) {
    if (v.size() != h.cols()) {
        throw std::invalid_argument("syndrome: word length " + std::to_string(v.size()) +
                                    " does not match H with " + std::to_string(h.cols()) + " columns");
    }
    BitWord s(h.rows());
    for (std::size_t r = 0; r < h.rows(); ++r) {
        if (dot(h.row(r).words(), v.words())) s.set(r);
    }
    return s;
}

std::vector<BitWord> single_flip_syndromes(const Gf2Matrix& h) {
    const Gf2Matrix t = h.transpose();
    return t.row_words();
}

BitWord encode(const Gf2Matrix& g, const BitWord& u) {
    if (u.size() != g.rows()) {
        throw std::invalid_argument("encode: message length " + std::to_string(u.size()) + " but G has " +
                                    std::to_string(g.rows()) + " rows");
    }
    return left_multiply(u, g);
}

BitWord left_multiply(const BitWord& v, const Gf2Matrix& m) {
    if (v.size() != m.rows()) {
        throw std::invalid_argument("left_multiply: dimension mismatch");
    }
    BitWord out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (v.get(r)) out ^= m.row(r);
    }
    return out;
}

RowEchelon reduced_row_echelon(const Gf2Matrix& a) {
    RowEchelon result{a, {}};
    Gf2Matrix& m = result.reduced;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
        std::size_t r = pivot_row;
        while (r < m.rows() && !m.get(r, c)) ++r;
        if (r == m.rows()) continue;
        std::swap(m.row(r), m.row(pivot_row));
        for (std::size_t other = 0; other < m.rows(); ++other) {
            if (other != pivot_row && m.get(other, c)) m.row(other) ^= m.row(pivot_row);
        }
        result.pivot_cols.push_back(c);
        ++pivot_row;
    }
    return result;
}

Gf2Matrix right_inverse(const Gf2Matrix& g) {
    const std::size_t k = g.rows();
    const std::size_t n = g.cols();

    // Reduce [G | I_k]; the right block accumulates T with T * G = RREF(G).
    Gf2Matrix aug(k, n + k);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (g.get(r, c)) aug.set(r, c);
        }
        aug.set(r, n + r);
    }
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < n && pivot_row < k; ++c) {
        std::size_t r = pivot_row;
        while (r < k && !aug.get(r, c)) ++r;
        if (r == k) continue;
        std::swap(aug.row(r), aug.row(pivot_row));
        for (std::size_t other = 0; other < k; ++other) {
            if (other != pivot_row && aug.get(other, c)) aug.row(other) ^= aug.row(pivot_row);
        }
        pivots.push_back(c);
        ++pivot_row;
    }
    if (pivots.size() < k) {
        throw ConstructionError("right_inverse: generator has rank " + std::to_string(pivots.size()) +
                                " < k = " + std::to_string(k));
    }

    // RREF(G) restricted to the pivot columns is I_k, so G * (E T) = I_k where E
    // scatters row j of T to row pivots[j].
    Gf2Matrix inv(n, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t c = 0; c < k; ++c) {
            if (aug.get(j, n + c)) inv.set(pivots[j], c);
        }
    }
    return inv;
}

Gf2Matrix nullspace(const Gf2Matrix& a) {
    const RowEchelon re = reduced_row_echelon(a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : re.pivot_cols) is_pivot[c] = true;

    std::vector<BitWord> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        BitWord v(n);
        v.set(f);
        for (std::size_t j = 0; j < re.pivot_cols.size(); ++j) {
            if (re.reduced.get(j, f)) v.set(re.pivot_cols[j]);
        }
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return Gf2Matrix(0, n);
    return Gf2Matrix(std::move(basis));
}

}  // namespace grandkit
