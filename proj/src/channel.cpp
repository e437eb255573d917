#include "grandkit/channel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "grandkit/matrix_io.hpp"

namespace grandkit {

namespace {

// SplitMix64 finaliser, used only to derive substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<double> parse_reals(std::string_view field, std::size_t expected, const char* what) {
    std::vector<double> out;
    out.reserve(expected);
    std::size_t start = 0;
    while (start <= field.size()) {
        const std::size_t comma = std::min(field.find(',', start), field.size());
        const std::string tok(field.substr(start, comma - start));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size()) {
            throw ParseError("frame", 1, start + 1, std::string(what) + ": bad number '" + tok + "'");
        }
        out.push_back(v);
        start = comma + 1;
    }
    if (out.size() != expected) {
        throw ParseError("frame", 1, 1,
                         std::string(what) + ": expected " + std::to_string(expected) + " values, got " +
                             std::to_string(out.size()));
    }
    return out;
}

std::string join_reals(std::span<const double> v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += fmt::format("{:.17g}", v[i]);
    }
    return s;
}

}  // namespace

double QuantSpec::step() const noexcept { return std::ldexp(1.0, -frac_bits); }

int QuantSpec::max_level() const noexcept { return (1 << (total_bits - 1)) - 1; }

double noise_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

std::uint64_t frame_seed(std::uint64_t campaign_seed, std::uint64_t frame_index) noexcept {
    return mix64(mix64(campaign_seed) ^ mix64(frame_index ^ 0x6a09e667f3bcc909ULL));
}

std::mt19937_64 frame_rng(std::uint64_t campaign_seed, std::uint64_t frame_index) {
    return std::mt19937_64(frame_seed(campaign_seed, frame_index));
}

std::vector<double> transmit(const BitWord& codeword, double sigma2, std::mt19937_64& rng) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("transmit: noise variance must be positive");
    std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
    std::vector<double> y(codeword.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = (codeword.get(i) ? -1.0 : 1.0) + noise(rng);
    return y;
}

std::vector<double> transmit(const BitWord& codeword, const ChannelConfig& cfg, std::uint64_t frame_index) {
    auto rng = frame_rng(cfg.seed, frame_index);
    return transmit(codeword, cfg.sigma2(), rng);
}

std::vector<double> llr(std::span<const double> y, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("llr: noise variance must be positive");
    std::vector<double> out(y.size());
    const double scale = 2.0 / sigma2;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = scale * y[i];
    return out;
}

std::vector<double> quantize(std::span<const double> llrs, const QuantSpec& q) {
    if (q.total_bits < 2 || q.frac_bits < 0 || q.total_bits > 31) throw std::invalid_argument("quantize: bad format");
    double scale = 1.0;
    if (q.prescale) {
        scale = *q.prescale;
    } else {
        double peak = 0.0;
        for (double v : llrs) peak = std::max(peak, std::fabs(v));
        scale = peak > 0.0 ? q.max_magnitude() / peak : 1.0;
    }
    const double step = q.step();
    const double top = q.max_level();
    std::vector<double> out(llrs.size());
    for (std::size_t i = 0; i < llrs.size(); ++i) {
        // nearbyint rounds half to even under the default rounding mode.
        const double level = std::min(top, std::nearbyint(std::fabs(llrs[i]) * scale / step));
        out[i] = std::copysign(level * step, llrs[i]);
        if (level == 0.0) out[i] = 0.0;
    }
    return out;
}

Frame make_frame(const LinearCode& code, const ChannelConfig& cfg, std::uint64_t frame_index) {
    Frame f;
    f.seed = frame_seed(cfg.seed, frame_index);
    std::mt19937_64 rng(f.seed);
    f.message = BitWord(code.k());
    for (std::size_t i = 0; i < code.k(); i += 64) {
        const std::uint64_t bits = rng();
        for (std::size_t b = 0; b < 64 && i + b < code.k(); ++b) {
            if ((bits >> b) & 1u) f.message.set(i + b);
        }
    }
    f.codeword = code.encode(f.message);
    const double sigma2 = cfg.sigma2();
    f.y = transmit(f.codeword, sigma2, rng);
    f.llrs = llr(f.y, sigma2);
    if (cfg.quant) f.llrs = quantize(f.llrs, *cfg.quant);
    return f;
}

std::vector<double> FrameRecord::decoder_llrs() const {
    if (quantized_llrs) return *quantized_llrs;
    return llr(y, noise_variance(snr_db));
}

std::string format_frame_record(const FrameRecord& rec) {
    return fmt::format("{}\t{:.17g}\t{}\t{}\t{}", rec.seed, rec.snr_db, rec.tx.to_hex(), join_reals(rec.y),
                       rec.quantized_llrs ? join_reals(*rec.quantized_llrs) : std::string("-"));
}

FrameRecord parse_frame_record(const std::string& line, std::size_t n) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string tok;
    while (std::getline(in, tok, '\t')) fields.push_back(tok);
    if (fields.size() != 5) {
        throw ParseError("frame", 1, 1, "expected 5 tab-separated fields, got " + std::to_string(fields.size()));
    }
    FrameRecord rec;
    try {
        std::size_t used = 0;
        rec.seed = std::stoull(fields[0], &used);
        if (used != fields[0].size()) throw std::invalid_argument("seed");
        rec.snr_db = std::stod(fields[1], &used);
        if (used != fields[1].size()) throw std::invalid_argument("snr");
        rec.tx = BitWord::from_hex(fields[2], n);
    } catch (const std::exception& e) {
        throw ParseError("frame", 1, 1, std::string("bad header field: ") + e.what());
    }
    rec.y = parse_reals(fields[3], n, "y");
    if (fields[4] != "-") rec.quantized_llrs = parse_reals(fields[4], n, "llr");
    return rec;
}

std::vector<FrameRecord> read_frame_file(std::istream& in, std::size_t n, const std::string& origin) {
    std::vector<FrameRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        try {
            out.push_back(parse_frame_record(line, n));
        } catch (const ParseError& e) {
            throw ParseError(origin, line_no, e.column(), e.message());
        }
    }
    return out;
}

}  // namespace grandkit
