#include "fluxon/io.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "fluxon/errors.hpp"

namespace fluxon::io {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc())
        throw NumericError("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

std::string CsvTable::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("CsvTable: row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    const fs::path tmp = dir / (path.filename().string() + ".tmp." +
                                std::to_string(static_cast<unsigned>(::getpid())));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " +
                                 ec.message());
    }
}

std::vector<double> parse_range(const std::string& spec) {
    auto parse_num = [](const std::string& s) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw std::domain_error("range: cannot parse number '" + s + "'");
        }
        if (pos != s.size()) throw std::domain_error("range: trailing junk in '" + s + "'");
        return v;
    };

    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::istringstream in(spec);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c))
            throw std::domain_error("range: expected start:stop:step in '" + spec + "'");
        const double start = parse_num(a), stop = parse_num(b), step = parse_num(c);
        if (!(step > 0.0)) throw std::domain_error("range: step must be positive");
        if (stop < start) throw std::domain_error("range: stop precedes start");
        // Endpoints are included within half a step.
        long m = std::lround((stop - start) / step);
        if (std::abs(start + static_cast<double>(m) * step - stop) > 0.5 * step)
            m = static_cast<long>(std::floor((stop - start) / step + 1e-12));
        if (m > 2000000) throw std::domain_error("range: too many points");
        for (long i = 0; i <= m; ++i)
            out.push_back(std::min(start + static_cast<double>(i) * step, stop));
        return out;
    }
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(parse_num(tok));
    if (out.empty()) throw std::domain_error("range: empty specification");
    return out;
}

std::string render_svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                                 const std::string& x_label, const std::string& y_label) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("svg plot: need matching series with >= 2 points");
    const double margin = 56.0, w = 640.0, h = 420.0;
    double x_lo = xs[0], x_hi = xs[0], y_lo = ys[0], y_hi = ys[0];
    for (std::size_t i = 1; i < xs.size(); ++i) {
        x_lo = std::min(x_lo, xs[i]);
        x_hi = std::max(x_hi, xs[i]);
        y_lo = std::min(y_lo, ys[i]);
        y_hi = std::max(y_hi, ys[i]);
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    auto px = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (w - 2 * margin); };
    auto py = [&](double y) { return h - margin - (y - y_lo) / (y_hi - y_lo) * (h - 2 * margin); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin
        << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << h - margin << "\" stroke=\"black\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) svg << ' ';
        svg << format_double(px(xs[i])) << ',' << format_double(py(ys[i]));
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\" "
        << "font-family=\"monospace\" font-size=\"12\">" << x_label << "</text>\n";
    svg << "<text x=\"14\" y=\"" << h / 2 << "\" text-anchor=\"middle\" "
        << "font-family=\"monospace\" font-size=\"12\" transform=\"rotate(-90 14 " << h / 2
        << ")\">" << y_label << "</text>\n";
    svg << "<text x=\"" << margin << "\" y=\"" << h - margin + 16
        << "\" font-family=\"monospace\" font-size=\"10\">" << format_double(x_lo) << "</text>\n";
    svg << "<text x=\"" << w - margin << "\" y=\"" << h - margin + 16
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
        << format_double(x_hi) << "</text>\n";
    svg << "<text x=\"" << margin - 4 << "\" y=\"" << h - margin
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
        << format_double(y_lo) << "</text>\n";
    svg << "<text x=\"" << margin - 4 << "\" y=\"" << margin + 4
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
        << format_double(y_hi) << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace fluxon::io
