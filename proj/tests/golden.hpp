#pragma once

// Reader for the pinned reference tables under tests/golden. Values keep their printed
// text so comparisons can honour the printed precision.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace golden {

struct Cell {
    std::string text;
    [[nodiscard]] bool empty() const { return text.empty(); }
    [[nodiscard]] double value() const { return std::stod(text); }
    // half a unit in the last printed decimal place
    [[nodiscard]] double half_ulp() const {
        const auto dot = text.find('.');
        const int decimals = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
        return 0.5 * std::pow(10.0, -decimals);
    }
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    [[nodiscard]] std::size_t col(const std::string& name) const {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::runtime_error("golden: no column " + name);
        }
        return static_cast<std::size_t>(it - header.begin());
    }
};

inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

inline Table parse(std::istream& in) {
    Table t;
    std::string line;
    std::getline(in, line);
    t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<Cell> row;
        for (auto& s : split(line)) {
            row.push_back({s});
        }
        row.resize(t.header.size());
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Table load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("golden: cannot open " + path);
    }
    return parse(in);
}

inline Table from_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

// Printed reference agrees with `v` to `rel`, or to its own printed rounding if coarser.
inline bool matches(const Cell& ref, double v, double rel) {
    const double r = ref.value();
    return std::abs(v - r) <= std::max(rel * std::abs(r), ref.half_ulp());
}

}  // namespace golden
