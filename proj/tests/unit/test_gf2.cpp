#include <doctest.h>

#include <random>

#include "grandkit/gf2_matrix.hpp"
#include "grandkit/linear_code.hpp"
#include "grandkit/matrix_io.hpp"
#include "oracles.hpp"

using namespace grandkit;

namespace {

std::vector<std::vector<int>> plain(const Gf2Matrix& m) {
    std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c);
    return out;
}

std::vector<int> plain(const BitWord& w) {
    std::vector<int> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w.get(i);
    return out;
}

Gf2Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Gf2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() & 1u);
    return m;
}

BitWord random_word(std::size_t n, std::mt19937_64& rng) {
    BitWord w(n);
    for (std::size_t i = 0; i < n; ++i) w.set(i, rng() & 1u);
    return w;
}

}  // namespace

TEST_CASE("bitword basics") {
    const BitWord a = BitWord::from_string("1010");
    const BitWord b = BitWord::from_string("0110");
    CHECK((a ^ b) == BitWord::from_string("1100"));
    CHECK((a ^ a).is_zero());
    CHECK((a ^ BitWord(4)) == a);
    CHECK(a.weight() == 2);
    CHECK_THROWS_AS(xor_words(a, BitWord(5)), std::invalid_argument);

    BitWord big(130);
    big.set(0);
    big.set(64);
    big.set(129);
    CHECK(big.weight() == 3);
    CHECK(BitWord::from_hex(big.to_hex(), 130) == big);
    CHECK(BitWord::from_string(big.to_string()) == big);
    CHECK(BitWord::from_hex("a", 4) == a);
    CHECK_THROWS(BitWord::from_hex("f", 3));  // pad bit set
    CHECK_THROWS(BitWord::from_hex("zz", 8));
}

TEST_CASE("syndrome examples") {
    const LinearCode ham = hamming_7_4();
    const Gf2Matrix& h = ham.parity_check();
    CHECK(syndrome(h, BitWord(7)).is_zero());
    const auto cols = h.transpose();
    for (std::size_t i = 0; i < 7; ++i) CHECK(syndrome(h, BitWord::unit(7, i)) == cols.row(i));

    const BitWord u = BitWord::from_string("1011");
    BitWord v = ham.encode(u);
    CHECK(syndrome(h, v).is_zero());
    v.flip(2);  // position 3
    const auto expect = oracle::mat_vec(plain(h), plain(v));
    CHECK(plain(syndrome(h, v)) == expect);
    CHECK(syndrome(h, v) == cols.row(2));
    CHECK_THROWS_AS(syndrome(h, BitWord(8)), std::invalid_argument);
}

TEST_CASE("syndrome linearity and oracle agreement") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 1 + rng() % 70, cols = 1 + rng() % 140;
        const Gf2Matrix h = random_matrix(rows, cols, rng);
        const BitWord v = random_word(cols, rng), w = random_word(cols, rng);
        CHECK(syndrome(h, v ^ w) == (syndrome(h, v) ^ syndrome(h, w)));
        CHECK(plain(syndrome(h, v)) == oracle::mat_vec(plain(h), plain(v)));
    }
}

TEST_CASE("single flip syndromes") {
    const LinearCode ham = hamming_7_4();
    const auto s = single_flip_syndromes(ham.parity_check());
    REQUIRE(s.size() == 7);
    const Gf2Matrix t = ham.parity_check().transpose();
    for (std::size_t i = 0; i < 7; ++i) CHECK(s[i] == t.row(i));

    const auto unit = single_flip_syndromes(Gf2Matrix::identity(6));
    for (std::size_t i = 0; i < 6; ++i) CHECK(unit[i] == BitWord::unit(6, i));

    std::mt19937_64 rng(3);
    const Gf2Matrix h = random_matrix(4, 8, rng);
    const auto r = single_flip_syndromes(h);
    for (std::size_t i = 0; i < 8; ++i) CHECK(r[i] == syndrome(h, BitWord::unit(8, i)));
}

TEST_CASE("right inverse") {
    const Gf2Matrix sys = Gf2Matrix::from_strings({"1000110", "0100101", "0010011", "0001111"});
    const Gf2Matrix m = right_inverse(sys);
    Gf2Matrix stacked(7, 4);
    for (std::size_t i = 0; i < 4; ++i) stacked.set(i, i);
    CHECK(m == stacked);
    CHECK(right_inverse(Gf2Matrix::identity(9)) == Gf2Matrix::identity(9));

    std::mt19937_64 rng(5);
    int tested = 0;
    while (tested < 20) {
        const Gf2Matrix g = random_matrix(4, 8, rng);
        if (g.rank() < 4) {
            CHECK_THROWS_AS(right_inverse(g), ConstructionError);
            continue;
        }
        CHECK(multiply(g, right_inverse(g)) == Gf2Matrix::identity(4));
        const BitWord u = random_word(4, rng);
        CHECK(left_multiply(encode(g, u), right_inverse(g)) == u);
        ++tested;
    }
    CHECK_THROWS_AS(right_inverse(Gf2Matrix::from_strings({"1100", "1100"})), ConstructionError);
}

TEST_CASE("encode") {
    const LinearCode ham = hamming_7_4();
    CHECK(ham.encode(BitWord(4)).is_zero());
    const BitWord u = BitWord::from_string("0110");
    const BitWord c = ham.encode(u);
    for (std::size_t i = 0; i < 4; ++i) CHECK(c.get(i) == u.get(i));
    CHECK_THROWS_AS(ham.encode(BitWord(5)), std::invalid_argument);
}

TEST_CASE("nullspace and rank") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 1 + rng() % 12, cols = rows + 1 + rng() % 12;
        const Gf2Matrix a = random_matrix(rows, cols, rng);
        const Gf2Matrix ns = nullspace(a);
        CHECK(ns.rows() + a.rank() == cols);
        CHECK(ns.rank() == ns.rows());
        for (const auto& v : ns.row_words()) CHECK(syndrome(a, v).is_zero());
    }
}

TEST_CASE("alist round trip and fixture") {
    const Gf2Matrix h = load_matrix(GRANDKIT_FIXTURE_DIR "/hamming74_H.alist", MatrixFormat::alist);
    CHECK(h.rows() == 3);
    CHECK(h.cols() == 7);
    CHECK(h == hamming_7_4().parity_check());

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const Gf2Matrix m = random_matrix(1 + rng() % 20, 1 + rng() % 90, rng);
        CHECK(parse_alist(write_alist(m)) == m);
        CHECK(parse_dense_hex(write_dense_hex(m)) == m);
    }
}

TEST_CASE("dense hex fixture") {
    const Gf2Matrix g = load_matrix(GRANDKIT_FIXTURE_DIR "/hamming74_G.hex", MatrixFormat::dense_hex);
    CHECK(g == hamming_7_4().generator());
}

TEST_CASE("matrix parse errors carry a position") {
    const std::string good = write_alist(hamming_7_4().parity_check());
    CHECK_THROWS_AS(parse_alist(good.substr(0, good.size() / 2), "cut"), ParseError);
    try {
        parse_alist("7 3\n3 4\n1 2 x", "bad");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.origin() == "bad");
        CHECK(e.line() == 3);
        CHECK(e.column() == 5);
    }
    CHECK_THROWS_AS(parse_dense_hex("2 4\nf\n", "short"), ParseError);
    CHECK_THROWS_AS(parse_dense_hex("1 4\nf\n0\n", "long"), ParseError);
    CHECK_THROWS_AS(parse_dense_hex("1 4\ng\n", "digit"), ParseError);
    CHECK_THROWS(load_matrix("/nonexistent/file.alist", MatrixFormat::alist));
}
