#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabscan/render.hpp"

#include <regex>

using namespace stabscan;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("every wall and boundary point drawn once") {
    for (const auto& n : driver_names()) {
        auto d = make_driver(n);
        for (int depth : {2, 3, 4}) {
            CAPTURE(n);
            CAPTURE(depth);
            auto at = scan(*d, depth);
            RenderSpec spec;
            spec.depth = depth;
            auto r = render_svg(at, *d, spec);
            CHECK(count(r.svg, "class=\"wall\"") == at.walls.size());
            for (const auto& w : at.walls) CHECK(count(r.svg, "class=\"wall\" data-key=\"" + w.key + "\"") == 1);
            CHECK(count(r.svg, "class=\"boundary\"") == at.boundary.size());
            for (const auto& b : at.boundary) CHECK(count(r.svg, "data-name=\"" + b.name + "\"") == 1);
            CHECK(count(r.svg, "class=\"cell\"") == at.cells.size());
            CHECK(count(r.svg, "<line") == at.speiser.size() + at.exchange.size());
            CHECK_FALSE(std::regex_search(r.svg, std::regex("[ =\"]-?(nan|inf)")));
            CHECK(r.svg.find(spec.speiser_color) != std::string::npos);
            CHECK(r.svg.find(spec.wall_color) != std::string::npos);
            CHECK(r.svg.find(spec.exchange_color) != std::string::npos);
            CHECK(r.svg.find(spec.shade_color) != std::string::npos);
        }
    }
}

TEST_CASE("rendering is byte identical across runs") {
    for (const auto& n : driver_names()) {
        auto d = make_driver(n);
        RenderSpec spec;
        CHECK(render_svg(scan(*d, 3), *d, spec).svg == render_svg(scan(*d, 3), *d, spec).svg);
    }
    auto d = driver_ginzburg_a2();
    RenderSpec p;
    p.style = RenderStyle::Poincare;
    CHECK(render_svg(scan(*d, 3), *d, p).svg == render_svg(scan(*d, 3), *d, p).svg);
}

TEST_CASE("poincare style only for hyperbolic drivers") {
    auto d = driver_p1();
    auto at = scan(*d, 3);
    RenderSpec spec;
    spec.style = RenderStyle::Poincare;
    CHECK_THROWS_AS(render_svg(at, *d, spec), PreconditionError);
    spec.force_poincare = true;
    auto r = render_svg(at, *d, spec);
    CHECK(r.svg.find("disclaimer=") != std::string::npos);

    auto g = driver_ginzburg_a2();
    spec.force_poincare = false;
    auto h = render_svg(scan(*g, 3), *g, spec);
    CHECK(h.svg.find("disclaimer=") == std::string::npos);
    CHECK(h.svg.find("style=poincare") != std::string::npos);
    // arcs or diameters, all endpoints on the disk
    std::regex path("d=\"M ([-0-9.]+) ([-0-9.]+)");
    for (auto it = std::sregex_iterator(h.svg.begin(), h.svg.end(), path); it != std::sregex_iterator(); ++it) {
        double x = std::stod((*it)[1]) - 300, y = std::stod((*it)[2]) - 300;
        CHECK(std::hypot(x, y) == doctest::Approx(252.0).epsilon(1e-4));
    }
}

TEST_CASE("excluded points are hollow") {
    auto d = driver_p1();
    auto at = scan(*d, 2);
    auto r = render_svg(at, *d, RenderSpec{});
    std::regex ex("class=\"excluded\" data-name=\"O_x\"[^>]*fill=\"#ffffff\"");
    CHECK(std::regex_search(r.svg, ex));
    CHECK(count(r.svg, "class=\"excluded\"") == 1);
    CHECK(r.svg.find("disclaimer=") != std::string::npos);
}

TEST_CASE("label down-sampling warns") {
    auto d = driver_lambda210();
    auto at = scan(*d, 5);
    RenderSpec spec;
    spec.max_labels = 3;
    auto r = render_svg(at, *d, spec);
    REQUIRE(r.warnings.size() == 1);
    CHECK(count(r.svg, "<text") <= 3);
    spec.max_labels = 64;
    CHECK(render_svg(at, *d, spec).warnings.empty());
}

TEST_CASE("a single cell atlas is one shaded disk") {
    auto d = driver_a2();
    ChamberAtlas one;
    one.driver = "a2";
    one.depth = 1;
    CellInfo c;
    c.rep = {d->seed_heart().a, d->seed_heart().b};
    c.key = d->cell_key(c.rep, 1);
    one.cells.push_back(c);
    auto r = render_svg(one, *d, RenderSpec{});
    CHECK(count(r.svg, "class=\"disk\"") == 1);
    CHECK(count(r.svg, "class=\"cell\"") == 1);
    CHECK(count(r.svg, "class=\"wall\"") == 0);
}

TEST_CASE("layers can be switched off") {
    auto d = driver_a2();
    RenderSpec spec;
    spec.speiser = spec.exchange = spec.labels = false;
    auto r = render_svg(scan(*d, 2), *d, spec);
    CHECK(count(r.svg, "<line") == 0);
    CHECK(count(r.svg, "<text") == 0);
}
