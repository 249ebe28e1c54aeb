// csv.hpp: fixed-precision CSV tables

#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wg/errors.hpp"

namespace wg {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row) { rows.push_back(std::move(row)); }

    /// Column count constant across rows, first column strictly increasing.
    void validate() const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != header.size())
                throw NumericalError("CSV row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                     " columns, header has " + std::to_string(header.size()));
            if (i > 0 && !(rows[i][0] > rows[i - 1][0]))
                throw NumericalError("CSV first column not strictly increasing at row " + std::to_string(i));
        }
    }

    std::vector<double> column(std::size_t k) const {
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r.at(k));
        return out;
    }

    std::size_t column_index(const std::string& name) const {
        for (std::size_t k = 0; k < header.size(); ++k)
            if (header[k] == name) return k;
        throw UsageError("no CSV column named " + name);
    }
};

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v); // no "-0"
    return buf;
}

inline void write_csv(std::ostream& os, const CsvTable& t) {
    t.validate();
    for (std::size_t k = 0; k < t.header.size(); ++k) os << (k ? "," : "") << t.header[k];
    os << "\n";
    for (const auto& r : t.rows) {
        for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << format_value(r[k]);
        os << "\n";
    }
}

inline std::string to_csv(const CsvTable& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

} // namespace wg
