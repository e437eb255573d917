#include "grandkit/polar.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "grandkit/matrix_io.hpp"

namespace grandkit {

namespace detail {
extern const char* const polar_5g_fixture_text;
}

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

std::vector<std::size_t> PolarFixture::reliability_for(std::size_t n) const {
    std::vector<std::size_t> out;
    out.reserve(n);
    for (auto idx : reliability) {
        if (idx < n) out.push_back(idx);
    }
    if (out.size() != n) {
        throw std::invalid_argument("polar fixture: reliability sequence does not cover block length " +
                                    std::to_string(n));
    }
    return out;
}

std::uint64_t PolarFixture::crc_polynomial(std::size_t degree) const {
    auto it = crc_polynomials.find(degree);
    if (it == crc_polynomials.end()) {
        throw std::invalid_argument("polar fixture: no CRC polynomial of degree " + std::to_string(degree));
    }
    return it->second;
}

PolarFixture parse_polar_fixture(std::string_view text, std::string_view origin) {
    PolarFixture fx;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::size_t expected = 0;
    bool in_sequence = false;
    auto fail = [&](const std::string& msg) { throw ParseError(std::string(origin), line_no, 1, msg); };

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (in_sequence) {
            std::string tok;
            while (ls >> tok) {
                try {
                    fx.reliability.push_back(std::stoul(tok));
                } catch (const std::exception&) {
                    fail("bad reliability entry '" + tok + "'");
                }
            }
            continue;
        }
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "format") {
            std::string name;
            if (!(ls >> name >> fx.version) || name != "grandkit-polar") fail("unsupported fixture format");
        } else if (key == "crc") {
            std::size_t degree = 0;
            std::string poly;
            if (!(ls >> degree >> poly)) fail("expected 'crc <degree> <hex polynomial>'");
            const std::uint64_t value = std::stoull(poly, nullptr, 16);
            if (degree == 0 || degree > 62 || (value >> degree) != 1) {
                fail("CRC polynomial must have degree " + std::to_string(degree));
            }
            fx.crc_polynomials[degree] = value;
        } else if (key == "reliability") {
            if (!(ls >> expected)) fail("expected 'reliability <count>'");
            in_sequence = true;
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (fx.version != 1) throw ParseError(std::string(origin), line_no, 1, "missing 'format grandkit-polar 1'");
    if (fx.reliability.size() != expected) {
        throw ParseError(std::string(origin), line_no, 1,
                         "reliability sequence has " + std::to_string(fx.reliability.size()) + " entries, expected " +
                             std::to_string(expected));
    }
    std::vector<std::size_t> sorted = fx.reliability;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) throw ParseError(std::string(origin), line_no, 1, "reliability sequence is not a permutation");
    }
    return fx;
}

PolarFixture load_polar_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open polar fixture " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_polar_fixture(buf.str(), path.string());
}

const PolarFixture& builtin_polar_fixture() {
    static const PolarFixture fx = parse_polar_fixture(detail::polar_5g_fixture_text, "builtin:polar_5g_nr.txt");
    return fx;
}

CaPolarSpec make_ca_polar_spec(std::size_t n, std::size_t k, std::size_t crc_len, const PolarFixture& fixture) {
    if (!is_power_of_two(n)) throw std::invalid_argument("CA-polar: n must be a power of two");
    if (k + crc_len > n) throw std::invalid_argument("CA-polar: k + crc_len exceeds n");
    CaPolarSpec spec;
    spec.n = n;
    spec.k = k;
    spec.crc_len = crc_len;
    spec.crc_poly = crc_len ? fixture.crc_polynomial(crc_len) : 0;
    const auto seq = fixture.reliability_for(n);
    spec.frozen_set.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(n - k - crc_len));
    std::sort(spec.frozen_set.begin(), spec.frozen_set.end());
    return spec;
}

std::vector<std::size_t> information_set(const CaPolarSpec& spec) {
    std::vector<bool> frozen(spec.n, false);
    for (auto f : spec.frozen_set) {
        if (f >= spec.n) throw std::invalid_argument("CA-polar: frozen index out of range");
        if (frozen[f]) throw std::invalid_argument("CA-polar: duplicate frozen index");
        frozen[f] = true;
    }
    std::vector<std::size_t> info;
    for (std::size_t i = 0; i < spec.n; ++i) {
        if (!frozen[i]) info.push_back(i);
    }
    return info;
}

Gf2Matrix polar_transform(std::size_t n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("polar_transform: n must be a power of two");
    Gf2Matrix f(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if ((c & ~r) == 0) f.set(r, c);
        }
    }
    return f;
}

BitWord crc_bits(const BitWord& message, std::uint64_t poly, std::size_t len) {
    if (len == 0) return BitWord(0);
    const std::uint64_t mask = (len == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << len) - 1);
    const std::uint64_t feedback_taps = poly & mask;
    std::uint64_t reg = 0;
    for (std::size_t i = 0; i < message.size(); ++i) {
        const std::uint64_t fb = ((reg >> (len - 1)) & 1u) ^ (message.get(i) ? 1u : 0u);
        reg = (reg << 1) & mask;
        if (fb) reg ^= feedback_taps;
    }
    BitWord out(len);
    for (std::size_t j = 0; j < len; ++j) {
        if ((reg >> (len - 1 - j)) & 1u) out.set(j);
    }
    return out;
}

LinearCode build_ca_polar(const CaPolarSpec& spec) {
    if (!is_power_of_two(spec.n)) throw std::invalid_argument("CA-polar: n must be a power of two");
    if (spec.k == 0 || spec.k + spec.crc_len > spec.n) throw std::invalid_argument("CA-polar: invalid k / crc_len");
    if (spec.frozen_set.size() != spec.n - spec.k - spec.crc_len) {
        throw std::invalid_argument("CA-polar: frozen set must have n - (k + crc_len) = " +
                                    std::to_string(spec.n - spec.k - spec.crc_len) + " entries");
    }
    if (spec.crc_len && (spec.crc_poly >> spec.crc_len) != 1) {
        throw std::invalid_argument("CA-polar: CRC polynomial degree does not match crc_len");
    }
    const auto info = information_set(spec);
    const Gf2Matrix transform = polar_transform(spec.n);

    Gf2Matrix g(spec.k, spec.n);
    for (std::size_t i = 0; i < spec.k; ++i) {
        const BitWord unit = BitWord::unit(spec.k, i);
        const BitWord parity = crc_bits(unit, spec.crc_poly, spec.crc_len);
        BitWord u(spec.n);
        u.set(info[i]);
        for (std::size_t j = 0; j < spec.crc_len; ++j) {
            if (parity.get(j)) u.set(info[spec.k + j]);
        }
        g.row(i) = left_multiply(u, transform);
    }
    std::string name = "ca-polar(" + std::to_string(spec.n) + "," + std::to_string(spec.k) + "+" +
                       std::to_string(spec.crc_len) + ")";
    return LinearCode::from_generator(std::move(g), std::move(name));
}

LinearCode ca_polar_128_105() { return build_ca_polar(make_ca_polar_spec(128, 105, 11)); }

}  // namespace grandkit
