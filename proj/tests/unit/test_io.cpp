#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "levyhit/error.hpp"
#include "levyhit/io.hpp"

using namespace levyhit;

TEST_CASE("grid syntax") {
    CHECK(parse_grid("1.5") == std::vector<double>{1.5});
    CHECK(parse_grid("1,2, 3") == std::vector<double>{1, 2, 3});
    CHECK(parse_grid("0:1:3") == std::vector<double>{0, 0.5, 1});
    auto g = parse_grid("0.01:100:5:log");
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.01);
    CHECK(g.back() == 100.0);
    CHECK(g[2] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(parse_grid("1,0:1:2") == std::vector<double>{1, 0, 1});
    CHECK(parse_grid("").empty());
    CHECK_THROWS_AS(parse_grid("a"), ArgumentError);
    CHECK_THROWS_AS(parse_grid("0:1"), ArgumentError);
    CHECK_THROWS_AS(parse_grid("0:1:2.5"), ArgumentError);
    CHECK_THROWS_AS(parse_grid("-1:1:3:log"), ArgumentError);
    CHECK_THROWS_AS(parse_grid("1e999"), ArgumentError);
}

TEST_CASE("csv") {
    CsvTable t;
    t.columns = {"a", "b"};
    t.add_row({"1", "x,y"});
    t.add_row({"2", "say \"hi\""});
    CHECK(t.str() == "a,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");
    CHECK_THROWS_AS(t.add_row({"1"}), ArgumentError);
    CHECK(fmt(0.1) == "0.10000000000000001");
    CHECK(fmt(NAN) == "nan");
    CHECK(fmt(-INFINITY) == "-inf");
}

TEST_CASE("atomic writes") {
    const auto dir = std::filesystem::temp_directory_path() / "levyhit_io_test";
    std::filesystem::create_directories(dir);
    const auto p = dir / "out.csv";
    write_file_atomic(p, "first\n");
    write_file_atomic(p, "second\n");
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "second\n");
    CHECK_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
    CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.csv", "z"), ArgumentError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("svg and manifest") {
    SvgPlot p;
    p.title = "a < b";
    p.x = {1, 10, 100};
    p.series = {{"s", {1, -1, 3}}};
    p.log_x = p.log_y = true;
    const auto svg = render_svg(p);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("a &lt; b") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
    RunManifest m;
    m.seed = 4;
    m.outputs = {"x.csv"};
    auto j = m.to_json();
    CHECK(j["seed"] == 4);
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(utc_timestamp().size() == 20);
    CHECK(fnv1a("") == 1469598103934665603ULL);
    CHECK(hex64(255) == "00000000000000ff");
}
