#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "compositedp/errors.hpp"

namespace compositedp::bench {

struct CsvSeries {
    std::vector<double> values;
    long dropped_rows = 0;
    double min = 0.0;
    double max = 0.0;
};

namespace detail {

// Split one CSV record; handles quoted fields with embedded commas and
// doubled quotes.
inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(field);
    return out;
}

inline bool parse_double(const std::string &s, double &out) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return false;
    std::size_t e = s.find_last_not_of(" \t");
    const char *first = s.data() + b;
    const char *last = s.data() + e + 1;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace detail

// Parse a headered CSV and extract one numeric column. Rows whose target cell
// is missing or unparseable are dropped and counted.
inline CsvSeries ingest_csv(const std::string &path, const std::string &column) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw NoNumericRows("empty file: " + path);
    }
    const auto header = detail::split_csv_line(line);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == column) {
            col = i;
            break;
        }
    }
    if (col == header.size()) {
        throw ColumnMissing("column '" + column + "' not found in " + path);
    }

    CsvSeries series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        double v;
        if (col < fields.size() && detail::parse_double(fields[col], v)) {
            series.values.push_back(v);
        } else {
            ++series.dropped_rows;
        }
    }
    if (series.values.empty()) {
        throw NoNumericRows("column '" + column + "' has no numeric rows in " + path);
    }
    series.min = series.values.front();
    series.max = series.values.front();
    for (double v : series.values) {
        series.min = std::min(series.min, v);
        series.max = std::max(series.max, v);
    }
    return series;
}

} // namespace compositedp::bench
