#include "grandkit/matrix_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace grandkit {

ParseError::ParseError(std::string origin, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      origin_(std::move(origin)),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

// Whitespace tokenizer that remembers where each token came from.
class Tokens {
public:
    Tokens(std::string_view text, std::string_view origin) : text_(text), origin_(origin) {}

    struct Token {
        std::string_view text;
        std::size_t line;
        std::size_t column;
    };

    bool next(Token& tok) {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
        if (pos_ >= text_.size()) return false;
        tok.line = line_;
        tok.column = column_;
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::string_view(" \t\r\n#").find(text_[pos_]) == std::string_view::npos) {
            advance();
        }
        tok.text = text_.substr(start, pos_ - start);
        return true;
    }

    std::size_t number(std::string_view what) {
        Token tok;
        if (!next(tok)) fail(std::string(what) + ": unexpected end of file");
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
            throw ParseError(std::string(origin_), tok.line, tok.column,
                             std::string(what) + ": expected a non-negative integer, got '" + std::string(tok.text) + "'");
        }
        last_ = tok;
        return value;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(std::string(origin_), line_, column_, message);
    }
    [[noreturn]] void fail_last(const std::string& message) const {
        throw ParseError(std::string(origin_), last_.line, last_.column, message);
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::string_view origin_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    Token last_{};
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

MatrixFormat matrix_format_from_string(std::string_view name) {
    if (name == "alist") return MatrixFormat::alist;
    if (name == "hex" || name == "dense-hex" || name == "dense_hex") return MatrixFormat::dense_hex;
    throw std::invalid_argument("unknown matrix format '" + std::string(name) + "'");
}

MatrixFormat matrix_format_from_path(const std::filesystem::path& path) {
    return path.extension() == ".alist" ? MatrixFormat::alist : MatrixFormat::dense_hex;
}

Gf2Matrix parse_alist(std::string_view text, std::string_view origin) {
    Tokens t(text, origin);
    const std::size_t cols = t.number("alist header (columns)");
    const std::size_t rows = t.number("alist header (rows)");
    const std::size_t max_col_weight = t.number("alist max column weight");
    const std::size_t max_row_weight = t.number("alist max row weight");

    std::vector<std::size_t> col_weight(cols), row_weight(rows);
    for (auto& w : col_weight) {
        w = t.number("alist column weight");
        if (w > max_col_weight) t.fail_last("column weight exceeds declared maximum");
    }
    for (auto& w : row_weight) {
        w = t.number("alist row weight");
        if (w > max_row_weight) t.fail_last("row weight exceeds declared maximum");
    }

    Gf2Matrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t j = 0; j < max_col_weight; ++j) {
            const std::size_t r = t.number("alist column entry");
            if (j < col_weight[c]) {
                if (r == 0 || r > rows) t.fail_last("row index out of range");
                m.set(r - 1, c);
            } else if (r != 0) {
                t.fail_last("expected zero padding after column entries");
            }
        }
    }
    // Row lists must agree with the column lists.
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t seen = 0;
        for (std::size_t j = 0; j < max_row_weight; ++j) {
            const std::size_t c = t.number("alist row entry");
            if (j < row_weight[r]) {
                if (c == 0 || c > cols) t.fail_last("column index out of range");
                if (!m.get(r, c - 1)) t.fail_last("row list disagrees with column list");
                ++seen;
            } else if (c != 0) {
                t.fail_last("expected zero padding after row entries");
            }
        }
        if (seen != m.row(r).weight()) {
            t.fail("row " + std::to_string(r + 1) + " weight disagrees with column lists");
        }
    }
    Tokens::Token extra;
    if (t.next(extra)) {
        throw ParseError(std::string(origin), extra.line, extra.column, "trailing data after alist matrix");
    }
    return m;
}

std::string write_alist(const Gf2Matrix& m) {
    const Gf2Matrix t = m.transpose();
    std::size_t max_col = 0, max_row = 0;
    for (const auto& c : t.row_words()) max_col = std::max(max_col, c.weight());
    for (const auto& r : m.row_words()) max_row = std::max(max_row, r.weight());

    std::ostringstream out;
    out << m.cols() << ' ' << m.rows() << '\n' << max_col << ' ' << max_row << '\n';
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << t.row(c).weight();
    out << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) out << (r ? " " : "") << m.row(r).weight();
    out << '\n';
    auto emit = [&](const Gf2Matrix& mat, std::size_t width) {
        for (std::size_t r = 0; r < mat.rows(); ++r) {
            std::size_t written = 0;
            for (std::size_t c = 0; c < mat.cols(); ++c) {
                if (mat.get(r, c)) out << (written++ ? " " : "") << c + 1;
            }
            for (; written < width; ++written) out << (written ? " " : "") << 0;
            out << '\n';
        }
    };
    emit(t, max_col);
    emit(m, max_row);
    return out.str();
}

Gf2Matrix parse_dense_hex(std::string_view text, std::string_view origin) {
    Tokens t(text, origin);
    const std::size_t rows = t.number("dense-hex header (rows)");
    const std::size_t cols = t.number("dense-hex header (cols)");
    std::vector<BitWord> out;
    out.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        Tokens::Token tok;
        if (!t.next(tok)) t.fail("dense-hex: expected " + std::to_string(rows) + " rows, got " + std::to_string(r));
        try {
            out.push_back(BitWord::from_hex(tok.text, cols));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string(origin), tok.line, tok.column, e.what());
        }
    }
    Tokens::Token extra;
    if (t.next(extra)) {
        throw ParseError(std::string(origin), extra.line, extra.column, "trailing data after dense-hex matrix");
    }
    if (rows == 0) return Gf2Matrix(0, cols);
    return Gf2Matrix(std::move(out));
}

std::string write_dense_hex(const Gf2Matrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (const auto& r : m.row_words()) out << r.to_hex() << '\n';
    return out.str();
}

Gf2Matrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
    const std::string text = read_file(path);
    return format == MatrixFormat::alist ? parse_alist(text, path.string()) : parse_dense_hex(text, path.string());
}

void save_matrix(const std::filesystem::path& path, const Gf2Matrix& m, MatrixFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << (format == MatrixFormat::alist ? write_alist(m) : write_dense_hex(m));
}

}  // namespace grandkit
