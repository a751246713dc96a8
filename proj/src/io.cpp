#include "qrg/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <system_error>

namespace qrg {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void Csv::add_row(std::vector<std::string> cells) {
    if (cells.size() != header.size())
        throw InvalidInput("csv: row width does not match header");
    rows.push_back(std::move(cells));
}

std::string Csv::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void Csv::save(const std::filesystem::path& path) const {
    write_text_file(path, to_string());
}

std::string cell(double v) { return format_double(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(std::uint64_t v) { return std::to_string(v); }

namespace {

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        throw InvalidInput("cannot parse number '" + text + "'");
    return value;
}

} // namespace

std::pair<double, double> parse_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) {
        const double v = parse_double(text);
        return {v, v};
    }
    const double lo = parse_double(text.substr(0, sep));
    const double hi = parse_double(text.substr(sep + 2));
    if (hi < lo)
        throw InvalidInput("range '" + text + "' is reversed");
    return {lo, hi};
}

std::pair<int, int> parse_int_range(const std::string& text) {
    const auto [lo, hi] = parse_range(text);
    const int ilo = static_cast<int>(lo);
    const int ihi = static_cast<int>(hi);
    if (ilo != lo || ihi != hi)
        throw InvalidInput("range '" + text + "' must be integral");
    return {ilo, ihi};
}

std::filesystem::path resolve_out_path(const std::string& cli_out,
                                       const std::string& default_name) {
    if (!cli_out.empty())
        return cli_out;
    if (const char* dir = std::getenv("QRG_OUT_DIR"); dir && *dir)
        return std::filesystem::path(dir) / default_name;
    return default_name;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidInput("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out)
        throw InvalidInput("failed writing '" + path.string() + "'");
}

} // namespace qrg
