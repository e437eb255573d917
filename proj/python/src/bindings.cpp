#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grandkit/campaign.hpp"
#include "grandkit/channel.hpp"
#include "grandkit/cycle_model.hpp"
#include "grandkit/decoders.hpp"
#include "grandkit/matrix_io.hpp"
#include "grandkit/partitions.hpp"
#include "grandkit/polar.hpp"

namespace py = pybind11;
using namespace grandkit;

namespace {

int p_max_arg(const std::optional<int>& p) { return p ? *p : PatternBudget::unbounded; }

MembershipCheck check_arg(const std::string& s) {
    if (s == "combination") return MembershipCheck::syndrome_combination;
    if (s == "direct") return MembershipCheck::direct;
    throw py::value_error("check must be 'combination' or 'direct'");
}

BitWord bits_arg(const std::vector<int>& bits) {
    BitWord w(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) throw py::value_error("bits must be 0 or 1");
        if (bits[i]) w.set(i);
    }
    return w;
}

std::vector<int> bits_out(const BitWord& w) {
    std::vector<int> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w.get(i) ? 1 : 0;
    return out;
}

py::int_ to_py_int(const QueryCount& q) { return py::int_(py::str(q.str())); }

py::dict outcome_dict(const DecodeOutcome& o) {
    py::dict d;
    d["found"] = o.found;
    d["abandoned"] = o.abandoned;
    d["queries"] = o.queries;
    d["solution_lw"] = o.solution_lw;
    d["solution_hw"] = o.solution_hw;
    d["solution_parts"] = o.solution_parts;
    d["message"] = o.found ? py::cast(bits_out(o.message)) : py::none();
    d["codeword"] = o.found ? py::cast(bits_out(o.codeword)) : py::none();
    return d;
}

py::dict row_dict(const FerRow& r) {
    py::dict d;
    d["snr_db"] = r.snr_db;
    d["frames"] = r.frames;
    d["frame_errors"] = r.frame_errors;
    d["fer"] = r.fer;
    d["avg_queries"] = r.avg_queries;
    d["wc_queries_observed"] = r.wc_queries_observed;
    d["avg_cycles"] = r.avg_cycles ? py::cast(*r.avg_cycles) : py::none();
    d["elapsed_s"] = r.elapsed_s;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "GRAND / ORBGRAND decoding core";
    m.attr("__version__") = version_string;

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_ValueError);

    py::class_<LinearCode>(m, "LinearCode")
        .def_property_readonly("n", &LinearCode::n)
        .def_property_readonly("k", &LinearCode::k)
        .def_property_readonly("name", &LinearCode::name)
        .def("encode", [](const LinearCode& c, const std::vector<int>& u) {
            if (u.size() != c.k()) throw py::value_error("message length must equal k");
            return bits_out(c.encode(bits_arg(u)));
        })
        .def("is_codeword", [](const LinearCode& c, const std::vector<int>& w) {
            if (w.size() != c.n()) throw py::value_error("word length must equal n");
            return c.is_codeword(bits_arg(w));
        })
        .def("generator_hex", [](const LinearCode& c) { return write_dense_hex(c.generator()); })
        .def("parity_check_hex", [](const LinearCode& c) { return write_dense_hex(c.parity_check()); })
        .def_static("from_generator_hex", [](const std::string& text) {
            return LinearCode::from_generator(parse_dense_hex(text, "<python>"));
        })
        .def_static("from_parity_check_hex", [](const std::string& text) {
            return LinearCode::from_parity_check(parse_dense_hex(text, "<python>"));
        })
        .def("__repr__", [](const LinearCode& c) {
            return "<LinearCode " + c.name() + " n=" + std::to_string(c.n()) + " k=" + std::to_string(c.k()) + ">";
        });

    m.def("ca_polar", [](int n, int k, int crc) {
        return build_ca_polar(make_ca_polar_spec(static_cast<std::size_t>(n), static_cast<std::size_t>(k),
                                                 static_cast<std::size_t>(crc)));
    }, py::arg("n") = 128, py::arg("k") = 105, py::arg("crc") = 11);
    m.def("hamming_7_4", &hamming_7_4);
    m.def("random_linear", &build_random_linear, py::arg("n"), py::arg("k"), py::arg("seed") = 1);

    m.def("count_queries", [](int n, int lw_max, std::optional<int> p_max) {
        return to_py_int(count_queries(PatternBudget{lw_max, p_max_arg(p_max), n}));
    }, py::arg("n"), py::arg("lw_max"), py::arg("p_max") = py::none());
    m.def("partitions_of", [](int m_, int p, int max_part) {
        std::vector<std::vector<int>> out;
        for (auto& part : partitions_of(m_, p, max_part)) out.push_back(std::move(part.parts));
        return out;
    }, py::arg("m"), py::arg("p"), py::arg("max_part"));
    m.def("pattern_stream", [](int n, int lw_max, std::optional<int> p_max, std::size_t limit) {
        std::vector<std::vector<int>> out;
        PatternStream s(PatternBudget{lw_max, p_max_arg(p_max), n});
        while (out.size() < limit && s.next()) out.emplace_back(s.parts().begin(), s.parts().end());
        return out;
    }, py::arg("n"), py::arg("lw_max"), py::arg("p_max") = py::none(), py::arg("limit") = 1000000);
    m.def("lambda_max", [](int m_, int i, const std::vector<int>& suffix) { return lambda_max(m_, i, suffix); },
          py::arg("m"), py::arg("i"), py::arg("suffix"));

    m.def("orbgrand_decode", [](const std::vector<double>& llrs, const LinearCode& code, int lw_max,
                                std::optional<int> p_max, const std::string& check) {
        return outcome_dict(orbgrand_decode(llrs, code, PatternBudget{lw_max, p_max_arg(p_max), static_cast<int>(code.n())},
                                            check_arg(check)));
    }, py::arg("llrs"), py::arg("code"), py::arg("lw_max"), py::arg("p_max") = py::none(),
          py::arg("check") = "combination");
    m.def("grandab_decode", [](const std::vector<int>& hard, const LinearCode& code, int ab, const std::string& check) {
        return outcome_dict(grandab_decode(bits_arg(hard), code, ab, check_arg(check)));
    }, py::arg("hard"), py::arg("code"), py::arg("ab") = 3, py::arg("check") = "combination");

    m.def("noise_variance", &noise_variance, py::arg("snr_db"));
    m.def("quantize", [](const std::vector<double>& llrs, std::optional<double> prescale) {
        QuantSpec q;
        q.prescale = prescale;
        return quantize(llrs, q);
    }, py::arg("llrs"), py::arg("prescale") = py::none());
    m.def("make_frame", [](const LinearCode& code, double snr_db, std::uint64_t seed, std::uint64_t index, bool quant) {
        ChannelConfig cfg;
        cfg.snr_db = snr_db;
        cfg.seed = seed;
        if (quant) cfg.quant = QuantSpec{};
        const Frame f = make_frame(code, cfg, index);
        py::dict d;
        d["seed"] = f.seed;
        d["message"] = bits_out(f.message);
        d["codeword"] = bits_out(f.codeword);
        d["y"] = f.y;
        d["llrs"] = f.llrs;
        return d;
    }, py::arg("code"), py::arg("snr_db"), py::arg("seed"), py::arg("index") = 0, py::arg("quantize") = false);

    m.def("worst_case_cycles", [](int n, int k, int lw_max, std::optional<int> p_max, std::optional<int> overhead) {
        ScheduleConfig cfg{n, k, lw_max, p_max_arg(p_max), 454.0, overhead};
        return worst_case_cycles(cfg);
    }, py::arg("n") = 128, py::arg("k") = 105, py::arg("lw_max") = 64, py::arg("p_max") = 6,
          py::arg("overhead") = py::none());
    m.def("steps_for_lw", [](int lw, int p_max, int n) { return steps_for_lw(lw, p_max, n); }, py::arg("lw"),
          py::arg("p_max") = 6, py::arg("n") = 128);

    m.def("run_fer", [](const LinearCode& code, const std::vector<double>& snr_db, const std::string& decoder, int lw_max,
                        std::optional<int> p_max, int ab, std::uint64_t max_frames, std::uint64_t min_errors,
                        std::uint64_t seed, int workers, bool quant) {
        CampaignSpec spec;
        spec.decoder = decoder_kind_from_string(decoder);
        spec.lw_max = lw_max;
        spec.p_max = p_max_arg(p_max);
        spec.ab = ab;
        spec.snr_db = snr_db;
        spec.max_frames = max_frames;
        spec.min_errors = min_errors;
        spec.seed = seed;
        spec.workers = workers;
        spec.quantize = quant;
        std::vector<FerRow> rows;
        {
            py::gil_scoped_release release;
            rows = run_fer(spec, code);
        }
        py::list out;
        for (const auto& r : rows) out.append(row_dict(r));
        return out;
    }, py::arg("code"), py::arg("snr_db"), py::arg("decoder") = "orbgrand", py::arg("lw_max") = 64,
          py::arg("p_max") = 6, py::arg("ab") = 3, py::arg("max_frames") = 10000, py::arg("min_errors") = 100,
          py::arg("seed") = 1, py::arg("workers") = 1, py::arg("quantize") = false);
}
