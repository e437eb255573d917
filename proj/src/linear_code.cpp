#include "grandkit/linear_code.hpp"

#include <random>
#include <utility>

namespace grandkit {

LinearCode::LinearCode(Gf2Matrix g, Gf2Matrix h, Gf2Matrix ginv, std::string name)
    : generator_(std::move(g)), parity_check_(std::move(h)), generator_inverse_(std::move(ginv)), name_(std::move(name)) {}

LinearCode LinearCode::from_generator(Gf2Matrix generator, std::string name) {
    Gf2Matrix h = derive_parity_from_generator(generator);
    return from_matrices(std::move(generator), std::move(h), std::move(name));
}

LinearCode LinearCode::from_parity_check(Gf2Matrix parity_check, std::string name) {
    const std::size_t r = parity_check.rank();
    Gf2Matrix g = nullspace(parity_check);
    if (g.rows() == 0) {
        throw ConstructionError("from_parity_check: code has dimension 0");
    }
    // Drop dependent checks so that H has full row rank n - k.
    if (r < parity_check.rows()) {
        parity_check = derive_parity_from_generator(g);
    }
    return from_matrices(std::move(g), std::move(parity_check), std::move(name));
}

LinearCode LinearCode::from_matrices(Gf2Matrix generator, Gf2Matrix parity_check, std::string name) {
    const std::size_t n = generator.cols();
    const std::size_t k = generator.rows();
    if (parity_check.cols() != n) {
        throw std::invalid_argument("LinearCode: G has " + std::to_string(n) + " columns but H has " +
                                    std::to_string(parity_check.cols()));
    }
    if (k == 0 || k > n) {
        throw std::invalid_argument("LinearCode: need 0 < k <= n");
    }
    if (generator.rank() != k) {
        throw ConstructionError("LinearCode: generator is rank deficient");
    }
    if (parity_check.rows() != n - k || parity_check.rank() != n - k) {
        throw ConstructionError("LinearCode: parity-check matrix must have rank n - k = " + std::to_string(n - k));
    }
    for (std::size_t r = 0; r < k; ++r) {
        if (!syndrome(parity_check, generator.row(r)).is_zero()) {
            throw ConstructionError("LinearCode: G H^T != 0 (row " + std::to_string(r) + ")");
        }
    }
    Gf2Matrix ginv = right_inverse(generator);
    return LinearCode(std::move(generator), std::move(parity_check), std::move(ginv), std::move(name));
}

Gf2Matrix derive_parity_from_generator(const Gf2Matrix& generator) {
    if (generator.rank() != generator.rows()) {
        throw ConstructionError("derive_parity_from_generator: generator is rank deficient");
    }
    return nullspace(generator);
}

LinearCode build_random_linear(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k == 0 || k >= n) {
        throw std::invalid_argument("build_random_linear: need 0 < k < n");
    }
    std::mt19937_64 rng(seed);
    Gf2Matrix g(k, n);
    Gf2Matrix h(n - k, n);
    for (std::size_t r = 0; r < k; ++r) {
        g.set(r, r);
        for (std::size_t c = 0; c < n - k; ++c) {
            if (rng() & 1u) {
                g.set(r, k + c);
                h.set(c, r);
            }
        }
    }
    for (std::size_t c = 0; c < n - k; ++c) h.set(c, k + c);
    return LinearCode::from_matrices(std::move(g), std::move(h),
                                     "random(" + std::to_string(n) + "," + std::to_string(k) + ",seed=" +
                                         std::to_string(seed) + ")");
}

LinearCode hamming_7_4() {
    Gf2Matrix g = Gf2Matrix::from_strings({
        "1000110",
        "0100101",
        "0010011",
        "0001111",
    });
    Gf2Matrix h = Gf2Matrix::from_strings({
        "1101100",
        "1011010",
        "0111001",
    });
    return LinearCode::from_matrices(std::move(g), std::move(h), "hamming(7,4)");
}

}  // namespace grandkit
