#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qrg/errors.hpp"

namespace qrg {

/// Locale-independent decimal rendering with 17 significant digits
/// (round-trips any double bit-exactly).
std::string format_double(double v);

/// Columnar dataset with a header row. Cells are preformatted strings so the
/// emitted bytes depend on nothing but the data.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    std::string to_string() const;  // comma separated, LF terminators
    void save(const std::filesystem::path& path) const;
};

std::string cell(double v);
std::string cell(int v);
std::string cell(std::uint64_t v);

/// "a..b" -> [a, b]; a single number is the degenerate range [x, x].
std::pair<double, double> parse_range(const std::string& text);
std::pair<int, int> parse_int_range(const std::string& text);

/// Output path resolution: explicit --out wins, otherwise QRG_OUT_DIR (if
/// set) or the working directory, with the command's default file name.
std::filesystem::path resolve_out_path(const std::string& cli_out,
                                       const std::string& default_name);

void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace qrg
