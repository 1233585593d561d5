#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "k2local/config.hpp"
#include "k2local/specseq.hpp"

using namespace k2local;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}
}  // namespace

TEST_CASE("rule line grammar") {
    auto r = parse_rule_line(
        "d5 w^(i+3) -> - alpha*beta^2*w^i  where i mod 9 in {0,1,2,3,4,5}  linear beta,w^9");
    CHECK(r.page == 5);
    CHECK(r.sign == -1);
    CHECK(r.tracked == Gen::w);
    CHECK(r.source.exps[gid(Gen::w)].a == 1);
    CHECK(r.source.exps[gid(Gen::w)].b == 3);
    CHECK(r.target.exps[gid(Gen::alpha)].b == 1);
    CHECK(r.target.exps[gid(Gen::beta)].b == 2);
    CHECK(r.cond.mod == 9);
    CHECK(r.cond.residues == std::set<int>{0, 1, 2, 3, 4, 5});
    REQUIRE(r.linear.size() == 2);
    CHECK(r.linear[0].g == Gen::beta);
    CHECK(r.linear[1].g == Gen::w);
    CHECK(r.linear[1].step == 9);

    auto shifted = parse_rule_line("d5 w*v2half^(i+3)*beta -> - v2half^(i+1)*alpha*beta^3  "
                                   "where i+1 mod 9 in {0,1,2,3,4,5}  linear beta,v2half^9,zeta");
    CHECK(shifted.cond.shift == 1);
    CHECK(shifted.linear.size() == 3);
}

TEST_CASE("rule matching follows the congruence and the multipliers") {
    auto ring = g24_ring();
    auto rules = rules_from_text(g24_rules_text());
    const auto& d5 = rules[0];

    // w^3 is the first instance (i = 0)
    auto hit = match_rule(d5, mono({{Gen::w, 3}}), ring);
    REQUIRE(hit);
    CHECK(hit->i == 0);
    CHECK(to_string(hit->target, ring) == "alpha*beta^2");

    // beta and w^9 linearity, in both w directions
    auto up = match_rule(d5, mono({{Gen::w, 12}, {Gen::beta, 2}}), ring);
    REQUIRE(up);
    CHECK(to_string(up->target, ring) == "w^9*alpha*beta^4");
    auto down = match_rule(d5, mono({{Gen::w, -6}}), ring);
    REQUIRE(down);
    CHECK(to_string(down->target, ring) == "w^-9*alpha*beta^2");

    // the permanent w-lines do not match
    CHECK(!match_rule(d5, mono({{Gen::w, 0}}), ring));
    CHECK(!match_rule(d5, mono({{Gen::w, 1}}), ring));
    CHECK(!match_rule(d5, mono({{Gen::w, 11}}), ring));  // 11 = 2 mod 9
    // alpha-multiples of d5 sources die into alpha^2 = 0 and are not sources
    CHECK(!match_rule(d5, mono({{Gen::w, 3}, {Gen::alpha, 1}}), ring));
}

TEST_CASE("validation accepts the shipped families and flags a corruption") {
    Window win{-40, 120, 0, 14};
    auto g24 = declared_module("g24", win);

    auto ok = validate_rules(rules_from_text(g24_rules_text()), g24, win);
    CHECK(ok.ok);

    auto corrupt = rules_from_text(
        "d5 w^(i+3) -> alpha*beta*w^i  where i mod 9 in {0,1,2,3,4,5}  linear beta,w^9\n");
    auto bad = validate_rules(corrupt, g24, win);
    REQUIRE(!bad.ok);
    CHECK(bad.first().find("bidegree violation") != std::string::npos);

    auto g20 = declared_module("g20", win);
    auto rep = validate_rules(rules_from_text(g20_rules_text()), g20, win);
    INFO(rep.first());
    CHECK(rep.ok);
}

TEST_CASE("rule files on disk agree with the built-in text") {
    std::string dir = K2LOCAL_RULES_DIR;
    CHECK(slurp(dir + "/g24_hfpss.rules") == g24_rules_text());
    CHECK(slurp(dir + "/g12_hfpss.rules") == g12_rules_text());
    CHECK(slurp(dir + "/g20_hfpss.rules") == g20_rules_text());
    CHECK(slurp(dir + "/centralizer_resolution.rules") == algebraic_resolution_rules_text(false));
    CHECK(slurp(dir + "/centralizer_resolution_full.rules") == algebraic_resolution_rules_text(true));
}

TEST_CASE("configurable signs do not change dimensions") {
    Window win{-20, 100, 0, 10};
    auto minus = run_declared_page("g24", rules_from_text(g24_rules_text('-', '+')), win, "a");
    auto plus = run_declared_page("g24", rules_from_text(g24_rules_text('+', '-')), win, "b");
    REQUIRE(minus.report.ok);
    REQUIRE(plus.report.ok);
    for (int n = win.stem_lo; n <= win.stem_hi; ++n) CHECK(minus.table.dim(n) == plus.table.dim(n));
}

TEST_CASE("config files set windows and signs") {
    std::string path = "k2local_test_config.tmp";
    {
        std::ofstream out(path);
        out << "# comment\nstem_min = -12\nstem_max= 34\ns_max =7\nd5_sign = +\nout_dir = \"charts\"\n";
    }
    auto cfg = Config::from_file(path);
    CHECK(cfg.window.stem_lo == -12);
    CHECK(cfg.window.stem_hi == 34);
    CHECK(cfg.window.s_hi == 7);
    CHECK(cfg.d5_sign == '+');
    CHECK(cfg.out_dir == "charts");
    std::remove(path.c_str());
}
