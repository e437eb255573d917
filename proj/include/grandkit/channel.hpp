#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "grandkit/linear_code.hpp"

namespace grandkit {

// Fixed-point LLR input format: 1 sign bit, (total - 1 - frac) integer bits,
// frac fractional bits. With the defaults, magnitudes are k * 0.125 for
// k = 0..15, i.e. 0 to 1.875.
struct QuantSpec {
    int total_bits = 5;
    int frac_bits = 3;
    // Multiplier applied to |llr| before rounding. Unset means per-frame
    // normalisation: scale so that max |llr| maps to max_magnitude().
    std::optional<double> prescale;

    double step() const noexcept;
    int max_level() const noexcept;
    double max_magnitude() const noexcept { return max_level() * step(); }
};

// snr_db = -10 log10(sigma^2).
double noise_variance(double snr_db);

struct ChannelConfig {
    double snr_db = 0.0;
    std::uint64_t seed = 0;
    std::optional<QuantSpec> quant;

    double sigma2() const { return noise_variance(snr_db); }
};

// Seed of the independent substream for one frame. Every frame of a campaign
// draws from its own generator, so results do not depend on which worker ran it.
std::uint64_t frame_seed(std::uint64_t campaign_seed, std::uint64_t frame_index) noexcept;
std::mt19937_64 frame_rng(std::uint64_t campaign_seed, std::uint64_t frame_index);

// BPSK (bit 0 -> +1, bit 1 -> -1) plus N(0, sigma^2) noise drawn from rng.
std::vector<double> transmit(const BitWord& codeword, double sigma2, std::mt19937_64& rng);
std::vector<double> transmit(const BitWord& codeword, const ChannelConfig& cfg, std::uint64_t frame_index);

// 2 y / sigma^2.
std::vector<double> llr(std::span<const double> y, double sigma2);

// Scale, round half-to-even onto the step grid, saturate, keep the sign.
std::vector<double> quantize(std::span<const double> llrs, const QuantSpec& q);

struct Frame {
    std::uint64_t seed = 0;  // frame_seed(...) of this frame
    BitWord message;
    BitWord codeword;
    std::vector<double> y;
    std::vector<double> llrs;  // quantised when cfg.quant is set
};

// Draws message bits, then noise, from the frame's substream.
Frame make_frame(const LinearCode& code, const ChannelConfig& cfg, std::uint64_t frame_index);

// Diagnostic dump, one frame per line, tab separated:
//   frame_seed  snr_db  tx_bits_hex  y_1,...,y_n  llr_1,...,llr_n
// The LLR field holds the quantised LLRs, or "-" when quantisation is off.
// Reals are written with 17 significant digits so they round-trip.
struct FrameRecord {
    std::uint64_t seed = 0;
    double snr_db = 0.0;
    BitWord tx;
    std::vector<double> y;
    std::optional<std::vector<double>> quantized_llrs;

    // Decoder input: the quantised LLRs if present, else 2 y / sigma^2.
    std::vector<double> decoder_llrs() const;
};

std::string format_frame_record(const FrameRecord& rec);
// Throws ParseError (line is reported as 1; callers add context).
FrameRecord parse_frame_record(const std::string& line, std::size_t n);
std::vector<FrameRecord> read_frame_file(std::istream& in, std::size_t n, const std::string& origin);

}  // namespace grandkit
