#include "citesim/tsv.hpp"

#include <charconv>
#include <fstream>

#include "citesim/error.hpp"

namespace citesim::tsv {

namespace {

std::string where(const std::filesystem::path& path, std::size_t line_no) {
    return path.string() + ":" + std::to_string(line_no);
}

bool looks_numeric(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && ((s.front() >= '0' && s.front() <= '9') || s.front() == '.');
}

}  // namespace

void for_each_row(const std::filesystem::path& path,
                  const std::function<void(std::size_t, const std::vector<std::string_view>&)>& row) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    std::vector<std::string_view> fields;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        fields.clear();
        std::string_view rest(line);
        while (true) {
            const auto tab = rest.find('\t');
            fields.push_back(rest.substr(0, tab));
            if (tab == std::string_view::npos) break;
            rest.remove_prefix(tab + 1);
        }
        if (first_data_line) {
            first_data_line = false;
            if (!looks_numeric(fields.front())) continue;
        }
        row(line_no, fields);
    }
}

std::int64_t parse_int(std::string_view field, const std::filesystem::path& path, std::size_t line_no) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw DataError(where(path, line_no) + ": malformed integer '" + std::string(field) + "'");
    }
    return value;
}

double parse_double(std::string_view field, const std::filesystem::path& path, std::size_t line_no) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw DataError(where(path, line_no) + ": malformed number '" + std::string(field) + "'");
    }
    return value;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace citesim::tsv
