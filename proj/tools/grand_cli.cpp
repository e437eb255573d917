// grand: FER campaigns, single-frame decoding, query and cycle reports.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "grandkit/campaign.hpp"
#include "grandkit/channel.hpp"
#include "grandkit/cycle_model.hpp"
#include "grandkit/decoders.hpp"
#include "grandkit/matrix_io.hpp"
#include "grandkit/partitions.hpp"

using namespace grandkit;
using json = nlohmann::ordered_json;

namespace {

constexpr int exit_data_error = 2;

struct CodeArgs {
    std::string kind = "polar";
    CodeSelector sel;
};

void add_code_options(CLI::App* app, CodeArgs& c) {
    app->add_option("--code", c.kind, "Code: polar, random, hamming or matrix")
        ->check(CLI::IsMember({"polar", "random", "hamming", "matrix"}))
        ->capture_default_str();
    app->add_option("--n", c.sel.n, "Block length (polar, random)")->capture_default_str();
    app->add_option("--k", c.sel.k, "Message length (polar, random)")->capture_default_str();
    app->add_option("--crc", c.sel.crc_len, "CRC length for polar (6 or 11)")->capture_default_str();
    app->add_option("--code-seed", c.sel.code_seed, "Seed of the random code")->capture_default_str();
    app->add_option("--generator", c.sel.generator_path, "Generator matrix file (matrix)");
    app->add_option("--parity", c.sel.parity_path, "Parity-check matrix file (matrix)");
    app->add_option("--format", c.sel.format, "Matrix file format: alist or hex (default: from extension)");
}

LinearCode make_code(CodeArgs& c) {
    c.sel.kind = code_kind_from_string(c.kind);
    return build_code(c.sel);
}

struct BudgetArgs {
    std::string decoder = "orbgrand";
    int lw_max = 64;
    int p_max = 6;
    int ab = 3;
    std::string check = "combination";
};

void add_budget_options(CLI::App* app, BudgetArgs& b) {
    app->add_option("--decoder", b.decoder, "orbgrand or grandab")
        ->check(CLI::IsMember({"orbgrand", "grandab"}))
        ->capture_default_str();
    app->add_option("--lw-max", b.lw_max, "Largest logistic weight")->capture_default_str();
    app->add_option("--p-max", b.p_max, "Largest Hamming weight (0: unbounded)")->capture_default_str();
    app->add_option("--ab", b.ab, "GRANDAB abandonment weight")->capture_default_str();
    app->add_option("--check", b.check, "Membership check: combination or direct")
        ->check(CLI::IsMember({"combination", "direct"}))
        ->capture_default_str();
}

int p_max_of(int p) { return p == 0 ? PatternBudget::unbounded : p; }

MembershipCheck check_of(const std::string& s) {
    return s == "direct" ? MembershipCheck::direct : MembershipCheck::syndrome_combination;
}

std::string sci3(const QueryCount& q) { return fmt::format("{:.2e}", q.convert_to<double>()); }

// Output stream that is either a file or stdout.
std::ostream& open_out(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
    if (path.empty() || path == "-") return std::cout;
    holder = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*holder) throw std::runtime_error("cannot write " + path);
    return *holder;
}

json outcome_json(const DecodeOutcome& o) {
    json j;
    j["found"] = o.found;
    j["abandoned"] = o.abandoned;
    j["queries"] = o.queries;
    if (o.found) {
        j["solution_lw"] = o.solution_lw;
        j["solution_hw"] = o.solution_hw;
        j["solution_parts"] = o.solution_parts;
        j["message_hex"] = o.message.to_hex();
        j["codeword_hex"] = o.codeword.to_hex();
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GRAND / ORBGRAND decoding benchmarks"};
    app.set_config("--spec", "", "Read options from a config file (TOML/INI)");
    app.require_subcommand(1);
    app.set_version_flag("--version", version_string);

    // fer
    auto* fer = app.add_subcommand("fer", "Monte-Carlo FER / query-count campaign");
    CodeArgs fer_code;
    BudgetArgs fer_budget;
    CampaignSpec spec;
    std::string fer_out, fer_manifest, fer_trace, fer_dump;
    std::uint64_t dump_limit = 10;
    bool timing = false;
    std::optional<double> prescale;
    add_code_options(fer, fer_code);
    add_budget_options(fer, fer_budget);
    fer->add_option("--snr", spec.snr_db, "SNR points in dB (SNR = -10 log10 sigma^2)")->required()->delimiter(',');
    fer->add_option("--frames", spec.max_frames, "Frame budget per point")->capture_default_str();
    fer->add_option("--min-errors", spec.min_errors, "Stop a point at this many frame errors (0: never)")
        ->capture_default_str();
    fer->add_option("--seed", spec.seed, "Campaign seed")->capture_default_str();
    fer->add_option("--workers", spec.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    fer->add_flag("--quantize", spec.quantize, "Quantise LLRs to 5 bits (1 sign, 1 integer, 3 fraction)");
    fer->add_option("--prescale", prescale, "Fixed LLR scale before quantisation (default: per-frame peak)");
    fer->add_option("--freq", spec.freq_mhz, "Clock for the cycle model, MHz")->capture_default_str();
    fer->add_option("--out", fer_out, "CSV output (default stdout)");
    fer->add_option("--manifest", fer_manifest, "Write a JSON run manifest");
    fer->add_flag("--timing", timing, "Add the elapsed_s column to the CSV");
    fer->add_option("--trace", fer_trace, "Write per-frame schedule trace (orbgrand)");
    fer->add_option("--dump-frames", fer_dump, "Write the first frames of every point as a frame file");
    fer->add_option("--dump-limit", dump_limit, "Frames per point for --dump-frames")->capture_default_str();

    // decode
    auto* dec = app.add_subcommand("decode", "Decode the frames of a frame file, one JSON object per frame");
    CodeArgs dec_code;
    BudgetArgs dec_budget;
    std::string frame_file;
    add_code_options(dec, dec_code);
    add_budget_options(dec, dec_budget);
    dec->add_option("frames", frame_file, "Frame file (see fer --dump-frames)")->required();

    // queries
    auto* qry = app.add_subcommand("queries", "Exact ORBGRAND query budget");
    int q_n = 128, q_lw = 64, q_p = 0;
    qry->add_option("--n", q_n, "Block length")->capture_default_str();
    qry->add_option("--lw-max", q_lw, "Largest logistic weight")->capture_default_str();
    qry->add_option("--p-max", q_p, "Largest Hamming weight (0: unbounded)")->capture_default_str();

    // cycles
    auto* cyc = app.add_subcommand("cycles", "Worst-case and trace-driven cycle report");
    ScheduleConfig sched;
    std::optional<int> overhead;
    std::string cyc_trace;
    cyc->add_option("--n", sched.n, "Block length")->capture_default_str();
    cyc->add_option("--k", sched.k, "Message length")->capture_default_str();
    cyc->add_option("--lw-max", sched.lw_max, "Largest logistic weight")->capture_default_str();
    cyc->add_option("--p-max", sched.p_max, "Largest Hamming weight (0: unbounded)")->capture_default_str();
    cyc->add_option("--freq", sched.freq_mhz, "Clock, MHz")->capture_default_str();
    cyc->add_option("--overhead", overhead, "Cycles before the first multi-bit step (default 1 + log2 n + 1)");
    cyc->add_option("--trace", cyc_trace, "Trace file written by fer --trace");

    // make-code
    auto* mk = app.add_subcommand("make-code", "Write G and H of a code to files");
    CodeArgs mk_code;
    std::string g_out, h_out, out_format;
    add_code_options(mk, mk_code);
    mk->add_option("--generator-out", g_out, "Where to write G");
    mk->add_option("--parity-out", h_out, "Where to write H");
    mk->add_option("--out-format", out_format, "alist or hex (default: from extension)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*fer) {
            const LinearCode code = make_code(fer_code);
            spec.code = fer_code.sel;
            spec.decoder = decoder_kind_from_string(fer_budget.decoder);
            spec.lw_max = fer_budget.lw_max;
            spec.p_max = p_max_of(fer_budget.p_max);
            spec.ab = fer_budget.ab;
            spec.check = check_of(fer_budget.check);
            spec.quant_prescale = prescale;

            std::unique_ptr<std::ofstream> trace_file;
            CampaignHooks hooks;
            double last_snr = std::numeric_limits<double>::quiet_NaN();
            if (!fer_trace.empty()) {
                trace_file = std::make_unique<std::ofstream>(fer_trace, std::ios::binary);
                if (!*trace_file) throw std::runtime_error("cannot write " + fer_trace);
                hooks.on_trace = [&](double snr, const TraceEntry& e) {
                    if (snr != last_snr) {
                        *trace_file << "# snr_db=" << snr << '\n';
                        last_snr = snr;
                    }
                    write_trace_entry(*trace_file, e);
                };
            }
            std::unique_ptr<std::ofstream> csv_file;
            std::ostream& csv = open_out(fer_out, csv_file);
            csv << fer_csv_header(timing) << '\n' << std::flush;
            hooks.on_row = [&](const FerRow& r) { csv << fer_csv_row(r, timing) << '\n' << std::flush; };
            const auto rows = run_fer(spec, code, hooks);

            if (!fer_manifest.empty()) {
                std::ofstream m(fer_manifest, std::ios::binary);
                if (!m) throw std::runtime_error("cannot write " + fer_manifest);
                m << campaign_manifest(spec, code, rows) << '\n';
            }
            if (!fer_dump.empty()) {
                std::ofstream d(fer_dump, std::ios::binary);
                if (!d) throw std::runtime_error("cannot write " + fer_dump);
                for (std::size_t i = 0; i < spec.snr_db.size(); ++i) {
                    ChannelConfig cfg;
                    cfg.snr_db = spec.snr_db[i];
                    cfg.seed = point_seed(spec.seed, i);
                    if (spec.quantize) cfg.quant = QuantSpec{5, 3, prescale};
                    for (std::uint64_t f = 0; f < dump_limit; ++f) {
                        const Frame fr = make_frame(code, cfg, f);
                        FrameRecord rec{fr.seed, cfg.snr_db, fr.codeword, fr.y, std::nullopt};
                        if (cfg.quant) rec.quantized_llrs = fr.llrs;
                        d << format_frame_record(rec) << '\n';
                    }
                }
            }
        } else if (*dec) {
            const LinearCode code = make_code(dec_code);
            std::ifstream in(frame_file);
            if (!in) throw std::runtime_error("cannot open " + frame_file);
            const auto records = read_frame_file(in, code.n(), frame_file);
            std::optional<OrbgrandDecoder> orb;
            if (dec_budget.decoder == "orbgrand") {
                orb.emplace(code, PatternBudget{dec_budget.lw_max, p_max_of(dec_budget.p_max), static_cast<int>(code.n())},
                            check_of(dec_budget.check));
            }
            for (std::size_t i = 0; i < records.size(); ++i) {
                const auto llrs = records[i].decoder_llrs();
                const DecodeOutcome o = orb ? orb->decode(llrs)
                                            : grandab_decode(hard_decision(llrs), code, dec_budget.ab,
                                                             check_of(dec_budget.check));
                json j;
                j["frame"] = i;
                j["seed"] = records[i].seed;
                j["snr_db"] = records[i].snr_db;
                j["outcome"] = outcome_json(o);
                j["matches_tx"] = o.found && o.codeword == records[i].tx;
                std::cout << j.dump() << '\n';
            }
        } else if (*qry) {
            const PatternBudget b{q_lw, p_max_of(q_p), q_n};
            const QueryCount q = count_queries(b);
            json j;
            j["n"] = q_n;
            j["lw_max"] = q_lw;
            j["p_max"] = q_p == 0 ? json(nullptr) : json(q_p);
            j["queries"] = q.str();
            j["queries_3sf"] = sci3(q);
            std::cout << j.dump(2) << '\n';
        } else if (*cyc) {
            sched.p_max = p_max_of(sched.p_max);
            sched.overhead = overhead;
            const CycleModel model(sched);
            CycleReport r;
            if (!cyc_trace.empty()) {
                std::ifstream in(cyc_trace);
                if (!in) throw std::runtime_error("cannot open " + cyc_trace);
                const auto trace = read_trace(in, cyc_trace);
                r = model.trace_latency(trace);
            } else {
                r.wc_cycles = model.worst_case_cycles();
                r.wc_latency_ns = static_cast<double>(r.wc_cycles) * 1000.0 / sched.freq_mhz;
                r.overhead_constant_used = sched.overhead_cycles();
            }
            json j = json::parse(r.to_json());
            if (cyc_trace.empty()) {
                for (const char* key : {"frames", "avg_cycles", "avg_latency_ns", "avg_tp_gbps"}) j.erase(key);
            }
            std::cout << j.dump(2) << '\n';
        } else if (*mk) {
            const LinearCode code = make_code(mk_code);
            if (g_out.empty() && h_out.empty()) throw CLI::RequiredError("--generator-out or --parity-out");
            auto fmt_for = [&](const std::string& path) {
                return out_format.empty() ? matrix_format_from_path(path) : matrix_format_from_string(out_format);
            };
            if (!g_out.empty()) save_matrix(g_out, code.generator(), fmt_for(g_out));
            if (!h_out.empty()) save_matrix(h_out, code.parity_check(), fmt_for(h_out));
            json j;
            j["name"] = code.name();
            j["n"] = code.n();
            j["k"] = code.k();
            std::cout << j.dump() << '\n';
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data_error;
    }
    return 0;
}
