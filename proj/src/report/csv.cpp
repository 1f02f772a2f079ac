#include "dhopf/report/output.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dhopf::report {

std::string num17(double v) {
    if (std::isnan(v)) {
        return {};
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num4(double v) {
    if (std::isnan(v)) {
        return "---";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& row) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row) {
        cells.push_back(num17(v));
    }
    add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& row) {
    if (row.size() != header_.size()) {
        throw std::logic_error("CsvTable: row width does not match header");
    }
    rows_.push_back(row);
}

std::string CsvTable::str() const {
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out += (i ? "," : "") + cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) {
        line(r);
    }
    return out;
}

}  // namespace dhopf::report
