#include "grandkit/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "grandkit/channel.hpp"
#include "grandkit/matrix_io.hpp"
#include "grandkit/polar.hpp"

namespace grandkit {

namespace {

struct FrameResult {
    bool error = false;
    std::uint64_t queries = 0;
    std::uint64_t cycles = 0;
    TraceEntry trace;
};

std::optional<CycleModel> make_model(const CampaignSpec& spec, const LinearCode& code) {
    if (spec.decoder != DecoderKind::orbgrand) return std::nullopt;
    ScheduleConfig cfg;
    cfg.n = static_cast<int>(code.n());
    cfg.k = static_cast<int>(code.k());
    cfg.lw_max = spec.lw_max;
    cfg.p_max = spec.p_max;
    cfg.freq_mhz = spec.freq_mhz;
    try {
        return CycleModel(cfg);
    } catch (const std::invalid_argument&) {
        return std::nullopt;  // no schedule for this code / budget
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

// One decoder per worker; OrbgrandDecoder keeps scratch state.
class Worker {
public:
    Worker(const CampaignSpec& spec, const LinearCode& code, const CycleModel* model)
        : spec_(spec), code_(code), model_(model) {
        if (spec.decoder == DecoderKind::orbgrand) {
            orb_.emplace(code, PatternBudget{spec.lw_max, spec.p_max, static_cast<int>(code.n())}, spec.check);
        }
    }

    FrameResult run(const ChannelConfig& cfg, std::uint64_t index) {
        const Frame f = make_frame(code_, cfg, index);
        const DecodeOutcome o = orb_ ? orb_->decode(f.llrs)
                                     : grandab_decode(hard_decision(f.llrs), code_, spec_.ab, spec_.check);
        FrameResult r;
        r.error = !o.found || o.message != f.message;
        r.queries = o.queries;
        if (orb_) {
            r.trace = trace_entry(o, static_cast<int>(code_.n()));
            if (model_) r.cycles = model_->frame_cycles(r.trace);
        }
        return r;
    }

private:
    const CampaignSpec& spec_;
    const LinearCode& code_;
    const CycleModel* model_;
    std::optional<OrbgrandDecoder> orb_;
};

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{:.4f}", *v) : std::string(); }

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

LinearCode build_code(const CodeSelector& sel) {
    switch (sel.kind) {
        case CodeKind::ca_polar: {
            if (sel.n <= 0 || sel.k <= 0 || sel.crc_len < 0) throw std::invalid_argument("ca_polar: bad dimensions");
            auto spec = make_ca_polar_spec(static_cast<std::size_t>(sel.n), static_cast<std::size_t>(sel.k),
                                           static_cast<std::size_t>(sel.crc_len));
            return build_ca_polar(spec);
        }
        case CodeKind::random:
            if (sel.n <= 0 || sel.k <= 0 || sel.k > sel.n) throw std::invalid_argument("random: need 0 < k <= n");
            return build_random_linear(static_cast<std::size_t>(sel.n), static_cast<std::size_t>(sel.k), sel.code_seed);
        case CodeKind::hamming:
            return hamming_7_4();
        case CodeKind::matrix: {
            if (sel.generator_path.empty() && sel.parity_path.empty()) {
                throw std::invalid_argument("matrix code needs a generator and/or parity-check file");
            }
            auto load = [&](const std::string& path) {
                const MatrixFormat f = sel.format ? matrix_format_from_string(*sel.format) : matrix_format_from_path(path);
                return load_matrix(path, f);
            };
            if (sel.parity_path.empty()) return LinearCode::from_generator(load(sel.generator_path), sel.generator_path);
            if (sel.generator_path.empty()) return LinearCode::from_parity_check(load(sel.parity_path), sel.parity_path);
            return LinearCode::from_matrices(load(sel.generator_path), load(sel.parity_path), sel.generator_path);
        }
    }
    throw std::invalid_argument("unknown code kind");
}

void CampaignSpec::validate() const {
    if (snr_db.empty()) throw std::invalid_argument("campaign: SNR list is empty");
    if (max_frames < 1) throw std::invalid_argument("campaign: frame budget must be >= 1");
    if (workers < 1) throw std::invalid_argument("campaign: workers must be >= 1");
    if (lw_max < 0 || p_max < 1) throw std::invalid_argument("campaign: need lw_max >= 0 and p_max >= 1");
    if (ab < 0) throw std::invalid_argument("campaign: ab must be >= 0");
    if (!(freq_mhz > 0.0)) throw std::invalid_argument("campaign: freq_mhz must be positive");
    if (quant_prescale && !(*quant_prescale > 0.0)) throw std::invalid_argument("campaign: prescale must be positive");
}

std::string to_string(CodeKind kind) {
    switch (kind) {
        case CodeKind::ca_polar: return "polar";
        case CodeKind::random: return "random";
        case CodeKind::hamming: return "hamming";
        case CodeKind::matrix: return "matrix";
    }
    return "?";
}

std::string to_string(DecoderKind kind) { return kind == DecoderKind::orbgrand ? "orbgrand" : "grandab"; }

CodeKind code_kind_from_string(const std::string& s) {
    if (s == "polar" || s == "ca-polar") return CodeKind::ca_polar;
    if (s == "random") return CodeKind::random;
    if (s == "hamming") return CodeKind::hamming;
    if (s == "matrix") return CodeKind::matrix;
    throw std::invalid_argument("unknown code kind '" + s + "'");
}

DecoderKind decoder_kind_from_string(const std::string& s) {
    if (s == "orbgrand") return DecoderKind::orbgrand;
    if (s == "grandab") return DecoderKind::grandab;
    throw std::invalid_argument("unknown decoder '" + s + "'");
}

std::uint64_t point_seed(std::uint64_t campaign_seed, std::size_t snr_index) noexcept {
    return mix64(campaign_seed ^ mix64(0x5eed0000ULL + snr_index));
}

std::vector<FerRow> run_fer(const CampaignSpec& spec, const LinearCode& code, const CampaignHooks& hooks) {
    spec.validate();
    if (spec.decoder == DecoderKind::orbgrand) {
        PatternBudget{spec.lw_max, spec.p_max, static_cast<int>(code.n())}.validate();
    } else if (static_cast<std::size_t>(spec.ab) > code.n()) {
        throw std::invalid_argument("campaign: ab exceeds n");
    }
    const std::optional<CycleModel> model = make_model(spec, code);
    const CycleModel* model_ptr = model ? &*model : nullptr;

    std::vector<Worker> workers;
    for (int w = 0; w < spec.workers; ++w) workers.emplace_back(spec, code, model_ptr);
    const std::uint64_t batch = spec.workers == 1 ? 64 : static_cast<std::uint64_t>(spec.workers) * 64;

    std::vector<FerRow> rows;
    for (std::size_t i = 0; i < spec.snr_db.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        ChannelConfig cfg;
        cfg.snr_db = spec.snr_db[i];
        cfg.seed = point_seed(spec.seed, i);
        if (spec.quantize) {
            QuantSpec q;
            q.prescale = spec.quant_prescale;
            cfg.quant = q;
        }

        FerRow row;
        row.snr_db = spec.snr_db[i];
        std::uint64_t query_sum = 0, cycle_sum = 0;
        std::vector<FrameResult> results;
        bool stop = false;
        for (std::uint64_t start = 0; start < spec.max_frames && !stop; start += batch) {
            const std::uint64_t count = std::min(batch, spec.max_frames - start);
            results.assign(count, FrameResult{});
            if (spec.workers == 1) {
                // Sequential: stop decoding as soon as the target is met.
                std::uint64_t errors = row.frame_errors;
                for (std::uint64_t j = 0; j < count; ++j) {
                    results[j] = workers[0].run(cfg, start + j);
                    errors += results[j].error;
                    if (spec.min_errors && errors >= spec.min_errors) {
                        results.resize(j + 1);
                        break;
                    }
                }
            } else {
                std::atomic<std::uint64_t> next{0};
                std::vector<std::thread> threads;
                std::exception_ptr failure;
                std::mutex failure_mutex;
                for (auto& w : workers) {
                    threads.emplace_back([&, wp = &w] {
                        try {
                            for (std::uint64_t j; (j = next.fetch_add(1)) < count;) results[j] = wp->run(cfg, start + j);
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure) failure = std::current_exception();
                            next = count;
                        }
                    });
                }
                for (auto& t : threads) t.join();
                if (failure) std::rethrow_exception(failure);
            }
            for (const auto& r : results) {
                ++row.frames;
                row.frame_errors += r.error;
                query_sum += r.queries;
                cycle_sum += r.cycles;
                row.wc_queries_observed = std::max(row.wc_queries_observed, r.queries);
                if (hooks.on_trace && spec.decoder == DecoderKind::orbgrand) hooks.on_trace(row.snr_db, r.trace);
                if (spec.min_errors && row.frame_errors >= spec.min_errors) {
                    stop = true;
                    break;
                }
            }
        }
        row.fer = static_cast<double>(row.frame_errors) / static_cast<double>(row.frames);
        row.avg_queries = static_cast<double>(query_sum) / static_cast<double>(row.frames);
        if (model) row.avg_cycles = static_cast<double>(cycle_sum) / static_cast<double>(row.frames);
        row.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (hooks.on_row) hooks.on_row(row);
        rows.push_back(row);
    }
    return rows;
}

std::string fer_csv_header(bool include_elapsed) {
    std::string h = "snr_db,frames,frame_errors,fer,avg_queries,wc_queries_observed,avg_cycles";
    if (include_elapsed) h += ",elapsed_s";
    return h;
}

std::string fer_csv_row(const FerRow& r, bool include_elapsed) {
    std::string s = fmt::format("{},{},{},{:.6e},{:.4f},{},{}", r.snr_db, r.frames, r.frame_errors, r.fer,
                                r.avg_queries, r.wc_queries_observed, fmt_opt(r.avg_cycles));
    if (include_elapsed) s += fmt::format(",{:.3f}", r.elapsed_s);
    return s;
}

std::string fer_csv(const std::vector<FerRow>& rows, bool include_elapsed) {
    std::string out = fer_csv_header(include_elapsed) + "\n";
    for (const auto& r : rows) out += fer_csv_row(r, include_elapsed) + "\n";
    return out;
}

std::string campaign_manifest(const CampaignSpec& spec, const LinearCode& code, const std::vector<FerRow>& rows) {
    using json = nlohmann::ordered_json;
    json j;
    j["schema"] = "grandkit-fer-manifest";
    j["csv_schema_version"] = csv_schema_version;
    j["grandkit_version"] = version_string;
    j["compiler"] = __VERSION__;
    json code_j;
    code_j["kind"] = to_string(spec.code.kind);
    code_j["name"] = code.name();
    code_j["n"] = code.n();
    code_j["k"] = code.k();
    if (spec.code.kind == CodeKind::ca_polar) code_j["crc_len"] = spec.code.crc_len;
    if (spec.code.kind == CodeKind::random) code_j["code_seed"] = spec.code.code_seed;
    if (spec.code.kind == CodeKind::matrix) {
        code_j["generator"] = spec.code.generator_path;
        code_j["parity_check"] = spec.code.parity_path;
    }
    json s;
    s["code"] = code_j;
    s["decoder"] = to_string(spec.decoder);
    if (spec.decoder == DecoderKind::orbgrand) {
        s["lw_max"] = spec.lw_max;
        if (spec.p_max == PatternBudget::unbounded) {
            s["p_max"] = nullptr;
        } else {
            s["p_max"] = spec.p_max;
        }
    } else {
        s["ab"] = spec.ab;
    }
    s["membership_check"] = spec.check == MembershipCheck::direct ? "direct" : "syndrome_combination";
    s["snr_db"] = spec.snr_db;
    s["max_frames"] = spec.max_frames;
    s["min_errors"] = spec.min_errors;
    s["seed"] = spec.seed;
    s["workers"] = spec.workers;
    s["quantize"] = spec.quantize;
    if (spec.quant_prescale) s["quant_prescale"] = *spec.quant_prescale;
    s["freq_mhz"] = spec.freq_mhz;
    j["spec"] = s;
    json pts = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        json r;
        r["snr_db"] = rows[i].snr_db;
        r["point_seed"] = point_seed(spec.seed, i);
        r["frames"] = rows[i].frames;
        r["frame_errors"] = rows[i].frame_errors;
        r["fer"] = rows[i].fer;
        r["avg_queries"] = rows[i].avg_queries;
        r["wc_queries_observed"] = rows[i].wc_queries_observed;
        r["avg_cycles"] = rows[i].avg_cycles ? json(*rows[i].avg_cycles) : json(nullptr);
        r["elapsed_s"] = rows[i].elapsed_s;
        pts.push_back(r);
    }
    j["points"] = pts;
    return j.dump(2);
}

void write_trace_entry(std::ostream& out, const TraceEntry& e) {
    out << e.lw << ',' << e.p << ',' << e.suffix_rank << ',' << (e.abandoned ? 1 : 0) << '\n';
}

std::vector<TraceEntry> read_trace(std::istream& in, const std::string& origin) {
    std::vector<TraceEntry> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        TraceEntry e;
        int abandoned = 0;
        char c1 = 0, c2 = 0, c3 = 0;
        std::istringstream ls(line);
        if (!(ls >> e.lw >> c1 >> e.p >> c2 >> e.suffix_rank >> c3 >> abandoned) || c1 != ',' || c2 != ',' ||
            c3 != ',' || (abandoned != 0 && abandoned != 1) || e.lw < 0 || e.p < 0) {
            throw ParseError(origin, line_no, 1, "expected 'lw,p,suffix_rank,abandoned'");
        }
        std::string rest;
        if (ls >> rest) throw ParseError(origin, line_no, 1, "trailing data in trace line");
        e.abandoned = abandoned == 1;
        out.push_back(e);
    }
    return out;
}

}  // namespace grandkit
