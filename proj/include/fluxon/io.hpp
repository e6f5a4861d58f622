#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fluxon::io {

// Shortest round-trip decimal representation of a double; the CSV/JSON
// determinism contract depends on it.
std::string format_double(double v);

// CSV assembly with LF endings and the exact documented headers.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::string to_string() const;
};

// Writes via a temporary file in the same directory plus atomic rename, so a
// failure never leaves a partial output behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Sweep specification: either "start:stop:step" (endpoints inclusive within
// half a step) or a comma-separated value list.
std::vector<double> parse_range(const std::string& spec);

// Minimal standalone SVG line plot of y against x.
std::string render_svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                                 const std::string& x_label, const std::string& y_label);

}  // namespace fluxon::io
