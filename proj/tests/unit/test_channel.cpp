#include <doctest.h>

#include <cmath>
#include <sstream>

#include "grandkit/channel.hpp"
#include "grandkit/decoders.hpp"
#include "grandkit/matrix_io.hpp"
#include "grandkit/polar.hpp"

using namespace grandkit;

TEST_CASE("noise variance") {
    CHECK(noise_variance(0.0) == doctest::Approx(1.0));
    CHECK(noise_variance(10.0) == doctest::Approx(0.1));
    CHECK(noise_variance(-3.0) == doctest::Approx(std::pow(10.0, 0.3)));
}

TEST_CASE("llr") {
    const std::vector<double> y{0.0, 0.25, -0.7};
    const auto l = llr(y, 0.25);
    CHECK(l[0] == 0.0);
    CHECK(l[1] == doctest::Approx(2.0));
    CHECK(l[2] < 0.0);
    CHECK_THROWS_AS(llr(y, 0.0), std::invalid_argument);
}

TEST_CASE("quantize") {
    QuantSpec q;
    q.prescale = 1.0;
    CHECK(q.step() == 0.125);
    CHECK(q.max_magnitude() == 1.875);
    const std::vector<double> in{0.0, 1000.0, -1000.0, 0.3, 0.0625, 0.1875, -0.3125, 1.9};
    const auto out = quantize(in, q);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 1.875);
    CHECK(out[2] == -1.875);
    CHECK(out[3] == 0.25);
    CHECK(out[4] == 0.0);    // 0.5 steps -> even level 0
    CHECK(out[5] == 0.25);   // 1.5 steps -> even level 2
    CHECK(out[6] == -0.25);  // 2.5 steps -> even level 2
    CHECK(out[7] == 1.875);
    q.prescale = 0.5;
    CHECK(quantize(std::vector<double>{-1000.0}, q)[0] == -1.875);

    // Per-frame scaling maps the peak onto the top level; monotone and sign-preserving.
    const std::vector<double> ramp{-8.0, -3.0, -0.1, 0.0, 0.2, 2.5, 6.0};
    const auto r = quantize(ramp, QuantSpec{});
    CHECK(r.front() == -1.875);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        CHECK(std::fabs(r[i] / 0.125 - std::round(r[i] / 0.125)) == 0.0);
        if (r[i] != 0.0) CHECK(std::signbit(r[i]) == std::signbit(ramp[i]));
    }
    for (std::size_t i = 4; i + 1 < ramp.size(); ++i) CHECK(std::fabs(r[i]) <= std::fabs(r[i + 1]));
}

TEST_CASE("transmit determinism and noiseless limit") {
    const LinearCode code = ca_polar_128_105();
    ChannelConfig cfg;
    cfg.snr_db = 100.0;
    cfg.seed = 9;
    const Frame f = make_frame(code, cfg, 3);
    CHECK(hard_decision(f.llrs) == f.codeword);
    for (std::size_t i = 0; i < f.y.size(); ++i) CHECK(std::fabs(f.y[i] - (f.codeword.get(i) ? -1.0 : 1.0)) < 1e-3);

    cfg.snr_db = 2.0;
    const Frame a = make_frame(code, cfg, 17), b = make_frame(code, cfg, 17), c = make_frame(code, cfg, 18);
    CHECK(a.y == b.y);
    CHECK(a.message == b.message);
    CHECK(a.y != c.y);
    CHECK(transmit(a.codeword, cfg, 4) == transmit(a.codeword, cfg, 4));
    CHECK(frame_seed(1, 0) != frame_seed(2, 0));
    CHECK(frame_seed(1, 0) != frame_seed(1, 1));
}

TEST_CASE("hard decision error rate matches Q(1/sigma)") {
    // y = x + N(0, sigma^2) with |x| = 1, so P(error) = Q(1 / sigma).
    const double snr_db = 3.0, sigma2 = noise_variance(snr_db);
    const double p = 0.5 * std::erfc(1.0 / std::sqrt(2.0 * sigma2));
    std::uint64_t errors = 0, bits = 0;
    const BitWord zero(1000);
    for (std::uint64_t f = 0; f < 1000; ++f) {
        auto rng = frame_rng(42, f);
        const auto y = transmit(zero, sigma2, rng);
        for (double v : y) errors += v < 0.0;
        bits += y.size();
    }
    const double est = static_cast<double>(errors) / static_cast<double>(bits);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(bits));
    CHECK(std::fabs(est - p) < 3 * se);
}

TEST_CASE("decoding depends only on signs and reliability order") {
    const LinearCode code = ca_polar_128_105();
    ChannelConfig cfg;
    cfg.snr_db = 6.0;
    cfg.seed = 3;
    OrbgrandDecoder dec(code, PatternBudget{64, 6, 128});
    for (std::uint64_t f = 0; f < 50; ++f) {
        const Frame fr = make_frame(code, cfg, f);
        // A positive rescale keeps signs and the reliability order.
        std::vector<double> scaled(fr.llrs);
        for (auto& v : scaled) v *= 0.37;
        CHECK(dec.decode(scaled) == dec.decode(fr.llrs));
        // Quantised input is a valid decoder input.
        const auto q = quantize(fr.llrs, QuantSpec{});
        const DecodeOutcome oq = dec.decode(q);
        CHECK(oq.found != oq.abandoned);
        if (oq.found) CHECK(code.is_codeword(oq.codeword));
    }
    const std::vector<double> exact{1.875, -0.125, 0.5, -1.0};
    CHECK(quantize(exact, QuantSpec{}) == exact);
}

TEST_CASE("frame record round trip and errors") {
    const LinearCode code = hamming_7_4();
    ChannelConfig cfg;
    cfg.snr_db = 3.0;
    cfg.seed = 1;
    cfg.quant = QuantSpec{};
    const Frame f = make_frame(code, cfg, 0);
    FrameRecord rec{f.seed, cfg.snr_db, f.codeword, f.y, f.llrs};
    const std::string line = format_frame_record(rec);
    const FrameRecord back = parse_frame_record(line, 7);
    CHECK(back.seed == rec.seed);
    CHECK(back.snr_db == rec.snr_db);
    CHECK(back.tx == rec.tx);
    CHECK(back.y == rec.y);
    CHECK(back.quantized_llrs == rec.quantized_llrs);
    CHECK(back.decoder_llrs() == f.llrs);

    rec.quantized_llrs.reset();
    const FrameRecord plain = parse_frame_record(format_frame_record(rec), 7);
    CHECK_FALSE(plain.quantized_llrs);
    CHECK(plain.decoder_llrs() == llr(f.y, noise_variance(3.0)));

    CHECK_THROWS_AS(parse_frame_record("1\t2\t3", 7), ParseError);
    CHECK_THROWS_AS(parse_frame_record("1\t0\t00\t1,2\t-", 7), ParseError);
    std::istringstream in("# comment\n" + line + "\nbad line\n");
    try {
        read_frame_file(in, 7, "frames.txt");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.origin() == "frames.txt");
        CHECK(e.line() == 3);
    }
}
