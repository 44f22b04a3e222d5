#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace jointmix::tsv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Reads a tab-separated file with a header line. Blank lines are skipped and
// a trailing '\r' is stripped. Every row must have as many fields as the
// header (FormatError otherwise, with the 1-based line number).
Table read(const std::filesystem::path& path);

std::vector<std::string> split(std::string_view line, char sep = '\t');

// Parses a whole field as a finite double; FormatError naming `context` if not.
double parse_double(std::string_view field, std::string_view context);

// Shortest representation that round-trips exactly.
std::string format_double(double v);

}  // namespace jointmix::tsv
