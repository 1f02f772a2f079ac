#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dhopf::report {

/// Round-trip (17 significant digit) formatting for machine-readable output.
std::string num17(double v);
/// 4 significant digits for human-facing tables.
std::string num4(double v);

/// Column-oriented CSV writer; NaN is written as an empty field.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(const std::vector<double>& row);
    void add_row(const std::vector<std::string>& row);
    [[nodiscard]] std::string str() const;
    [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Series {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;  // dots instead of a polyline
    bool dashed = false;
};

struct Panel {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Series> series;
    std::vector<double> vlines;  // dotted vertical guides
};

/// Static SVG of one or more panels stacked in a grid with `columns` columns.
/// `provenance` is embedded as an XML comment.
std::string render_svg(const std::vector<Panel>& panels, int columns,
                       const std::string& provenance);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

/// Collects emitted files and writes manifest.txt: the resolved config followed by one
/// `sha256  name` line per file, in emission order.
class Manifest {
public:
    explicit Manifest(std::filesystem::path dir);
    /// Writes the file under the output directory and records its hash.
    void write(const std::string& name, const std::string& content);
    void finish(const std::string& command, const std::vector<std::string>& config_lines);
    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }
    [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
        return entries_;
    }

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace dhopf::report
