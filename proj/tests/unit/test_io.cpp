#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dvr/datasets.hpp"
#include "dvr/diagram_metrics.hpp"
#include "dvr/io.hpp"
#include "support.hpp"

using namespace dvr;

TEST_CASE("point cloud CSV round-trip") {
    Rng rng(3);
    const auto cloud = sample_two_circles(rng, 50);
    std::stringstream ss;
    write_point_cloud_csv(ss, cloud);
    const std::string text = ss.str();
    CHECK(text.rfind("x0,x1,density\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    const auto back = read_point_cloud_csv(ss);
    CHECK(back.coords() == cloud.coords());
    CHECK(*back.oracle_density() == *cloud.oracle_density());

    std::stringstream plain("x0\n1.5\n-2\n");
    const auto p = read_point_cloud_csv(plain);
    CHECK(p.size() == 2);
    CHECK_FALSE(p.oracle_density().has_value());
}

TEST_CASE("point cloud CSV errors") {
    auto parse = [](const std::string& s) {
        std::stringstream ss(s);
        return read_point_cloud_csv(ss);
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("a,b\n1,2\n"), ParseError);
    CHECK_THROWS_AS(parse("x0,x1\n1\n"), ParseError);
    CHECK_THROWS_AS(parse("x0,x1\n1,abc\n"), ParseError);
    CHECK_THROWS_AS(parse("x0,density\n1,-2\n"), ParseError);
    CHECK_THROWS_AS(parse("x0\nnan\n"), ParseError);
    CHECK(parse("x0,x1\r\n1,2\r\n").size() == 1);
}

TEST_CASE("diagram JSON round-trip") {
    PersistenceDiagram d;
    d.field = 3;
    d.max_dim = 2;
    d.points = {{0, 0.0, kInfinity}, {0, 0.0, 0.1 + 0.2}, {1, 1.0 / 3.0, std::sqrt(2.0)}};
    d.sort();
    const auto json = diagram_to_json(d, "\"run\": {\"k\": 10}");
    CHECK(json.find("\"death\": \"inf\"") != std::string::npos);
    const auto back = diagram_from_json(json);
    CHECK(back.field == 3);
    CHECK(back.max_dim == 2);
    CHECK(back.points == d.points);
    CHECK(bottleneck(back, d, 0) == 0.0);
    CHECK(bottleneck(back, d, 1) == 0.0);

    CHECK_THROWS_AS(diagram_from_json("{"), ParseError);
    CHECK_THROWS_AS(diagram_from_json("{\"field\": 11}"), ParseError);
    CHECK_THROWS_AS(diagram_from_json(R"({"field":11,"max_dim":1,"points":[{"dim":0,"birth":1,"death":"never"}]})"),
                    ParseError);
    CHECK_THROWS_AS(diagram_from_json(R"({"field":11,"max_dim":1,"points":[{"dim":0,"birth":1,"death":0.5}]})"),
                    ParseError);
}

TEST_CASE("format_double round-trips") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::ldexp(rng.uniform(), static_cast<int>(rng.uniform() * 40) - 20);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(kInfinity) == "inf");
}

TEST_CASE("SVG plot") {
    PersistenceDiagram empty;
    const auto svg = diagram_to_svg(empty);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("class=\"diagonal\"") != std::string::npos);
    CHECK(svg.find("class=\"point\"") == std::string::npos);

    PersistenceDiagram d;
    d.points = {{1, 0.5, 1.0}, {1, 0.5, 1.0}, {0, 0.0, kInfinity}, {0, 0.0, 0.3}};
    const auto plot = diagram_to_svg(d);
    std::size_t markers = 0;
    for (auto pos = plot.find("class=\"point\""); pos != std::string::npos; pos = plot.find("class=\"point\"", pos + 1))
        ++markers;
    CHECK(markers == 3);
    CHECK(plot.find("class=\"multiplicity\" x=") != std::string::npos);
    CHECK(plot.find(">2</text>") != std::string::npos);
    CHECK(plot.find("&#8734;") != std::string::npos);
    CHECK(plot.find("</svg>") != std::string::npos);
}
