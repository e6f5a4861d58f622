#include <stdexcept>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fluxon/io.hpp"

using namespace fluxon::io;

TEST_CASE("shortest round-trip decimals") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(-3.25) == "-3.25");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(std::stod(format_double(2.40e-5)) == 2.40e-5);
}

TEST_CASE("range parsing") {
    SUBCASE("inclusive endpoint within half a step") {
        const auto r = parse_range("0:1:0.05");
        REQUIRE(r.size() == 21);
        CHECK(r.front() == 0.0);
        CHECK(r.back() == 1.0);
    }
    SUBCASE("comma lists") {
        const auto r = parse_range("20,40,80,160");
        REQUIRE(r.size() == 4);
        CHECK(r[2] == 80.0);
    }
    SUBCASE("single value") {
        const auto r = parse_range("0.5");
        REQUIRE(r.size() == 1);
        CHECK(r[0] == 0.5);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(parse_range("1:0:0.1"), std::domain_error);
        CHECK_THROWS_AS(parse_range("0:1:-0.1"), std::domain_error);
        CHECK_THROWS_AS(parse_range("a:b:c"), std::domain_error);
        CHECK_THROWS_AS(parse_range("1.5x"), std::domain_error);
    }
}

TEST_CASE("csv assembly") {
    CsvTable t;
    t.header = {"alpha", "delta_e"};
    t.rows = {{0.1, 0.25}, {0.2, 1.0}};
    CHECK(t.to_string() == "alpha,delta_e\n0.1,0.25\n0.2,1\n");
    t.rows.push_back({1.0});
    CHECK_THROWS_AS(t.to_string(), std::invalid_argument);
}

TEST_CASE("atomic file writing") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fluxon_io_test";
    fs::create_directories(dir);
    const fs::path target = dir / "out.csv";
    write_file_atomic(target, "a,b\n1,2\n");
    std::ifstream in(target);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "a,b\n1,2\n");
    // no temporary debris
    int entries = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        (void)e;
        ++entries;
    }
    CHECK(entries == 1);
    fs::remove_all(dir);
}

TEST_CASE("svg plot smoke") {
    const std::vector<double> xs{1.0, 2.0, 3.0}, ys{0.5, 0.1, 0.9};
    const std::string svg = render_svg_line_plot(xs, ys, "x", "y");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK_THROWS_AS(render_svg_line_plot({1.0}, {2.0}, "x", "y"), std::invalid_argument);
}
