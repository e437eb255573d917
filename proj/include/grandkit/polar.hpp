#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "grandkit/linear_code.hpp"

namespace grandkit {

// Construction data for 5G-style polar codes: a reliability sequence
// (ascending reliability) and CRC generator polynomials keyed by degree.
struct PolarFixture {
    int version = 0;
    std::vector<std::size_t> reliability;
    std::map<std::size_t, std::uint64_t> crc_polynomials;  // full polynomial, leading term included

    // Entries < n in the same order, i.e. the nested sequence for block length n.
    std::vector<std::size_t> reliability_for(std::size_t n) const;
    std::uint64_t crc_polynomial(std::size_t degree) const;
};

PolarFixture parse_polar_fixture(std::string_view text, std::string_view origin = "<memory>");
PolarFixture load_polar_fixture(const std::filesystem::path& path);
// The 3GPP TS 38.212 data compiled into the library from data/polar_5g_nr.txt.
const PolarFixture& builtin_polar_fixture();

struct CaPolarSpec {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t crc_len = 0;
    std::uint64_t crc_poly = 0;
    std::vector<std::size_t> frozen_set;
};

// Frozen set = the n - (k + crc_len) least reliable indices of the fixture's
// sequence for n.
CaPolarSpec make_ca_polar_spec(std::size_t n, std::size_t k, std::size_t crc_len,
                               const PolarFixture& fixture = builtin_polar_fixture());

// Codebook: (u || crc(u)) written onto the information indices in ascending
// index order, frozen indices zero, times the n x n polar transform.
LinearCode build_ca_polar(const CaPolarSpec& spec);

// The 5G CRC-aided polar (128, 105+11) code.
LinearCode ca_polar_128_105();

// F^{(x) log2 n} with F = [[1, 0], [1, 1]].
Gf2Matrix polar_transform(std::size_t n);

// Remainder of u(D) * D^len mod g(D); bit 0 of the message is the highest
// degree coefficient and bit 0 of the result the highest remainder degree.
BitWord crc_bits(const BitWord& message, std::uint64_t poly, std::size_t len);

// Information indices of the spec, ascending.
std::vector<std::size_t> information_set(const CaPolarSpec& spec);

}  // namespace grandkit
