#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace citesim::tsv {

// Calls `row` for every data line of a tab-separated file. Blank lines and
// lines starting with '#' are skipped, as is a first line whose leading
// field is not numeric (a header). Throws DataError if the file cannot be
// opened; `row` receives the 1-based line number for diagnostics.
void for_each_row(const std::filesystem::path& path,
                  const std::function<void(std::size_t line_no, const std::vector<std::string_view>& fields)>& row);

std::int64_t parse_int(std::string_view field, const std::filesystem::path& path, std::size_t line_no);
double parse_double(std::string_view field, const std::filesystem::path& path, std::size_t line_no);

// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace citesim::tsv
