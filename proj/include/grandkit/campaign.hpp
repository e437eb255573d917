#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "grandkit/cycle_model.hpp"
#include "grandkit/decoders.hpp"
#include "grandkit/linear_code.hpp"

namespace grandkit {

enum class CodeKind { ca_polar, random, hamming, matrix };

struct CodeSelector {
    CodeKind kind = CodeKind::ca_polar;
    int n = 128;
    int k = 105;
    int crc_len = 11;            // ca_polar
    std::uint64_t code_seed = 1;  // random
    std::string generator_path;  // matrix: G, H or both
    std::string parity_path;
    std::optional<std::string> format;  // matrix file format; default from extension
};

// Throws ConstructionError, ParseError or std::invalid_argument.
LinearCode build_code(const CodeSelector& sel);

enum class DecoderKind { orbgrand, grandab };

struct CampaignSpec {
    CodeSelector code;
    DecoderKind decoder = DecoderKind::orbgrand;
    int lw_max = 64;
    int p_max = 6;  // PatternBudget::unbounded for no limit
    int ab = 3;
    MembershipCheck check = MembershipCheck::syndrome_combination;
    std::vector<double> snr_db;
    std::uint64_t max_frames = 100000;
    std::uint64_t min_errors = 100;  // 0: always run max_frames
    std::uint64_t seed = 1;
    int workers = 1;
    bool quantize = false;
    std::optional<double> quant_prescale;
    double freq_mhz = 454.0;  // for the cycle model

    // Throws std::invalid_argument.
    void validate() const;
};

std::string to_string(CodeKind kind);
std::string to_string(DecoderKind kind);
CodeKind code_kind_from_string(const std::string& s);
DecoderKind decoder_kind_from_string(const std::string& s);

struct FerRow {
    double snr_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    double fer = 0.0;
    double avg_queries = 0.0;
    std::uint64_t wc_queries_observed = 0;
    std::optional<double> avg_cycles;  // orbgrand with a valid schedule only
    double elapsed_s = 0.0;
};

// Seed of the frame substreams of the i-th SNR point.
std::uint64_t point_seed(std::uint64_t campaign_seed, std::size_t snr_index) noexcept;

struct CampaignHooks {
    // Called once per SNR point after it finishes.
    std::function<void(const FerRow&)> on_row;
    // When set, receives every counted frame's trace entry in frame order.
    std::function<void(double snr_db, const TraceEntry&)> on_trace;
};

// Frames are drawn from per-frame substreams and each point stops at the
// smallest frame index whose running error count reaches min_errors, so the
// rows are a pure function of (spec, code) whatever the worker count.
std::vector<FerRow> run_fer(const CampaignSpec& spec, const LinearCode& code, const CampaignHooks& hooks = {});

// Columns: snr_db,frames,frame_errors,fer,avg_queries,wc_queries_observed,avg_cycles
// and, with include_elapsed, elapsed_s. Wall-clock time is off by default so
// repeated runs give identical bytes.
std::string fer_csv_header(bool include_elapsed = false);
std::string fer_csv_row(const FerRow& row, bool include_elapsed = false);
std::string fer_csv(const std::vector<FerRow>& rows, bool include_elapsed = false);

// JSON run manifest: schema version, library version, full spec, per-point
// seeds and the rows (with timing).
std::string campaign_manifest(const CampaignSpec& spec, const LinearCode& code, const std::vector<FerRow>& rows);

// Trace file: one "lw,p,suffix_rank,abandoned" line per frame.
void write_trace_entry(std::ostream& out, const TraceEntry& e);
std::vector<TraceEntry> read_trace(std::istream& in, const std::string& origin);

inline constexpr const char* version_string = "0.1.0";
inline constexpr int csv_schema_version = 1;

}  // namespace grandkit
