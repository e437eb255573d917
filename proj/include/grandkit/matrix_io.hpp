#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "grandkit/gf2_matrix.hpp"

namespace grandkit {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string origin, std::size_t line, std::size_t column, const std::string& message);

    const std::string& origin() const noexcept { return origin_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    // The message without the origin:line:column prefix.
    const std::string& message() const noexcept { return message_; }

private:
    std::string origin_;
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

enum class MatrixFormat { alist, dense_hex };

MatrixFormat matrix_format_from_string(std::string_view name);
// ".alist" -> alist, anything else -> dense_hex.
MatrixFormat matrix_format_from_path(const std::filesystem::path& path);

// alist (MacKay): "cols rows", max column/row weights, the weight lists, then
// 1-based row indices per column and column indices per row, zero padded.
Gf2Matrix parse_alist(std::string_view text, std::string_view origin = "<memory>");
std::string write_alist(const Gf2Matrix& m);

// Dense hex: a "rows cols" header line, then one hex string per matrix row
// with the MSB of the first digit = column 1. '#' starts a comment.
Gf2Matrix parse_dense_hex(std::string_view text, std::string_view origin = "<memory>");
std::string write_dense_hex(const Gf2Matrix& m);

Gf2Matrix load_matrix(const std::filesystem::path& path, MatrixFormat format);
void save_matrix(const std::filesystem::path& path, const Gf2Matrix& m, MatrixFormat format);

}  // namespace grandkit
