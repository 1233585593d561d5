#include <catch2/catch_amalgamated.hpp>

#include "k2local/chart.hpp"
#include "k2local/config.hpp"

using namespace k2local;

namespace {

// small deterministic table: the first period of the finite fixed-point page
HomotopyTable small_table() {
    Window win{-10, 40, 0, 12};
    auto res = run_declared_page("g24", rules_from_text(g24_rules_text()), win, "g24 sample");
    REQUIRE(res.report.ok);
    res.table.period = 72;
    return res.table;
}

}  // namespace

TEST_CASE("text chart golden") {
    auto t = small_table();
    ChartSpec spec;
    spec.table = &t;
    spec.title = "g24 sample";
    spec.stem_lo = 0;
    spec.stem_hi = 31;
    spec.bold_lo = 0;
    spec.bold_hi = 31;
    spec.lead_labels = {"1"};
    // frozen from a verified run: w-lines at stems 0/8/16, alpha-lines at
    // 3/11/19/27, beta-multiples above them, nothing at filtration 5 because
    // the alpha towers stop at beta-height one
    CHECK(render_text(spec) == std::string(
        "# g24 sample  stems 0..31  bold 0..31\n"
        "# dot = Z/3; columns are stems, rows are filtrations\n"
        "s= 6 |                              * \n"
        "s= 5 |                                \n"
        "s= 4 |                    *       *   \n"
        "s= 3 |             *       *       *  \n"
        "s= 2 |          *       *       *     \n"
        "s= 1 |   *       *       *       *    \n"
        "s= 0 |*       *       *               \n"
        "     +================================\n"
        "      |       |       |       |       \n"
        "      0                       24      \n"
        "label: 1 @ stem 0 (s=0)\n"));
}

TEST_CASE("rendering is a pure function of the table") {
    auto t = small_table();
    ChartSpec spec;
    spec.table = &t;
    spec.title = "twice";
    spec.stem_lo = 0;
    spec.stem_hi = 40;
    spec.bold_lo = 0;
    spec.bold_hi = 40;
    CHECK(render_text(spec) == render_text(spec));
    CHECK(render_svg(spec) == render_svg(spec));
}

TEST_CASE("dot counts equal table dimensions over the range") {
    auto t = small_table();
    ChartSpec spec;
    spec.table = &t;
    spec.stem_lo = 0;
    spec.stem_hi = 40;
    std::size_t total = 0;
    for (int n = 0; n <= 40; ++n) total += t.dim(n);
    CHECK(chart_dot_count(spec) == total);

    auto svg = render_svg(spec);
    std::size_t circles = 0;
    for (std::size_t p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1))
        ++circles;
    CHECK(circles == total);
}

TEST_CASE("svg structure") {
    auto t = small_table();
    ChartSpec spec;
    spec.table = &t;
    spec.title = "svg sample";
    spec.stem_lo = 0;
    spec.stem_hi = 20;
    spec.bold_lo = 0;
    spec.bold_hi = 10;
    auto svg = render_svg(spec);
    CHECK(svg.find("<svg xmlns") == 0);
    CHECK(svg.find("viewBox=\"0 0 ") != std::string::npos);
    CHECK(svg.find("<title>svg sample</title>") != std::string::npos);
    // 12 units per stem: 21 stems + 2*30 margin
    CHECK(svg.find("viewBox=\"0 0 " + std::to_string(21 * 12 + 60)) != std::string::npos);
}

TEST_CASE("empty table draws the axis only") {
    HomotopyTable t;
    t.stem_lo = -5;
    t.stem_hi = 5;
    ChartSpec spec;
    spec.table = &t;
    spec.title = "empty";
    spec.stem_lo = -5;
    spec.stem_hi = 5;
    auto text = render_text(spec);
    CHECK(text.find('*') == std::string::npos);
    CHECK(text.find('+') != std::string::npos);
    auto svg = render_svg(spec);
    CHECK(svg.find("<circle") == std::string::npos);
    CHECK(svg.find("<line") != std::string::npos);
}

TEST_CASE("out-of-range chart requests are rejected") {
    auto t = small_table();
    ChartSpec spec;
    spec.table = &t;
    spec.stem_lo = -100;
    spec.stem_hi = 100;
    CHECK_THROWS_AS(render_text(spec), ChartError);
}

TEST_CASE("edges connect stems three or ten apart") {
    auto t = small_table();
    for (const auto& e : t.edges) {
        int shift = e.kind == 'a' ? 3 : 10;
        CHECK((shift == 3 || shift == 10));
        auto tgt = t.classes.find(e.stem + shift);
        CHECK(tgt != t.classes.end());
    }
}
