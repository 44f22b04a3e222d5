#include "jointmix/tsv.hpp"

#include "jointmix/error.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>

namespace jointmix::tsv {

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

Table read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(fmt::format("cannot open '{}'", path.string()));

    Table table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw FormatError(fmt::format("{}:{}: expected {} fields, found {}", path.string(),
                                          line_no, table.header.size(), fields.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    if (!have_header) throw FormatError(fmt::format("'{}' is empty", path.string()));
    return table;
}

double parse_double(std::string_view field, std::string_view context) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw FormatError(fmt::format("{}: '{}' is not a finite number", context, field));
    }
    return v;
}

std::string format_double(double v) { return fmt::format("{}", v); }

}  // namespace jointmix::tsv
