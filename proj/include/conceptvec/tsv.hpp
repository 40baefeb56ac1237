#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace conceptvec {

/// Raised for malformed input files; the message carries "path:line:".
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& message);

std::vector<std::string_view> split_tabs(std::string_view line);

/// Split on runs of ASCII whitespace; no empty tokens.
std::vector<std::string> split_whitespace(std::string_view text);

std::int64_t parse_int(std::string_view field, const std::string& path,
                       std::size_t line_no);
double parse_real(std::string_view field, const std::string& path,
                  std::size_t line_no);

/// Decimal with 17 significant digits; round-trips doubles exactly.
std::string format_real(double v);

std::vector<std::string> read_lines(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// FNV-1a 64 digest of the file's raw bytes, as fixed-width hex.
std::string file_digest_hex(const std::string& path);

}  // namespace conceptvec
