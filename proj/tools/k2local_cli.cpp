// Command-line surface for the engine: compute subgroup cohomology, run the
// spectral sequences, inspect the resolutions, do the invertible-class
// arithmetic, render charts, and run the whole verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "k2local/verify.hpp"

using json = nlohmann::json;
using namespace k2local;

namespace {

struct Output {
    std::string path;  // empty = stdout
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << "\n";
            return;
        }
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << text;
    }
};

json table_json(const HomotopyTable& t) {
    json stems = json::array();
    for (const auto& [n, cls] : t.classes) {
        json labels = json::array();
        for (const auto& c : cls) {
            json e{{"label", c.label}, {"filtration", c.filtration}};
            if (!c.toda.empty()) e["bracket"] = c.toda;
            labels.push_back(e);
        }
        stems.push_back({{"stem", n}, {"dim", cls.size()}, {"classes", labels}});
    }
    json edges = json::array();
    for (const auto& e : t.edges)
        edges.push_back({{"stem", e.stem},
                         {"index", e.idx},
                         {"to_index", e.to_idx},
                         {"kind", e.kind == 'a' ? "alpha" : "beta"},
                         {"bracket_induced", e.exotic}});
    json out{{"name", t.name}, {"stem_lo", t.stem_lo}, {"stem_hi", t.stem_hi},
             {"stems", stems}, {"edges", edges}};
    if (t.period) out["period"] = t.period;
    if (!t.period_label.empty()) out["period_generator"] = t.period_label;
    return out;
}

std::string table_text(const HomotopyTable& t) {
    std::ostringstream os;
    os << "table " << t.name << "  stems " << t.stem_lo << ".." << t.stem_hi;
    if (t.period) os << "  period " << t.period << " on " << t.period_label;
    os << "\n";
    for (const auto& [n, cls] : t.classes) {
        if (cls.empty()) continue;
        os << "  pi_" << n << "  dim " << cls.size() << " :";
        for (const auto& c : cls) {
            os << "  " << c.label << "(s=" << c.filtration << ")";
            if (!c.toda.empty()) os << "[" << c.toda << "]";
        }
        os << "\n";
    }
    return os.str();
}

std::string module_text(const BigradedModule& mod) {
    std::ostringstream os;
    os << "module " << mod.name << " over " << (mod.ring.f9 ? "F9" : "F3") << "\n";
    for (const auto& [d, basis] : mod.buckets) {
        if (basis.empty()) continue;
        os << "  (s=" << d.s << ", t=" << d.t << ", stem=" << d.stem() << ")  dim " << basis.size() << " :";
        for (const auto& v : basis) os << "  " << v.str(mod.ring);
        os << "\n";
    }
    return os.str();
}

json module_by_filtration(const BigradedModule& mod) {
    std::map<int, json> per_filtration;
    for (const auto& [d, basis] : mod.buckets) {
        if (basis.empty()) continue;
        json bucket{{"s", d.s}, {"t", d.t}, {"stem", d.stem()}};
        json labels = json::array();
        for (const auto& v : basis) labels.push_back(v.str(mod.ring));
        bucket["basis"] = labels;
        auto& slot = per_filtration[d.s];
        if (slot.is_null()) slot = json{{"p", d.s}, {"buckets", json::array()}};
        slot["buckets"].push_back(bucket);
    }
    json out = json::array();
    for (auto& [p_, j] : per_filtration) out.push_back(j);
    return out;
}

HomotopyTable make_g24_table(const Window& win, const Config& cfg = {}) {
    auto run = run_declared_page("g24", rules_from_text(g24_rules_text(cfg.d5_sign, cfg.d9_sign)), win,
                                 "E^{hG24} ^ V(1)");
    if (!run.report.ok) throw std::runtime_error(run.report.first());
    run.table.period = 72;
    run.table.period_label = "w^9";
    return run.table;
}

struct V1Tables {
    HomotopyTable v1, g21, minus;
};

V1Tables make_v1_tables(const Window& win, const Config& cfg = {}) {
    auto run = run_declared_page("g20", rules_from_text(g20_rules_text(cfg.d5_sign, cfg.d9_sign)), win,
                                 "E^{hG2^0} ^ V(1)");
    if (!run.report.ok) throw std::runtime_error(run.report.first());
    auto [plus, minus] = split_table_by_parity(run.table);
    V1Tables t;
    t.v1 = plus;
    t.v1.name = "V(1)";
    t.v1.period = 144;
    t.v1.period_label = "v2^9";
    t.g21 = strip_zeta(t.v1);
    t.g21.name = "E^{hG2^1} ^ V(1)";
    t.g21.period = 144;
    t.g21.period_label = "v2^9";
    t.minus = minus;
    return t;
}

int cmd_cohomology(const std::string& subgroup, const Window& win, bool as_json, const Output& out) {
    static const std::map<std::string, std::string> declared_names{
        {"G24", "g24"}, {"G12", "g12"}, {"N", "n"}, {"SD16", "sd16"},
        {"G2^0", "g20"}, {"G2", "g2"}, {"G2^1", "g21"},
    };
    BigradedModule mod = subgroup_cohomology(subgroup, win);
    if (as_json) {
        json j = json::parse(module_json(mod));
        j["subgroup"] = subgroup;
        if (declared_names.count(subgroup)) {
            auto span = declared_module(declared_names.at(subgroup), win);
            j["normal_form"] = json::parse(module_json(span));
        }
        out.write(j.dump(2));
    } else {
        out.write(module_text(mod));
    }
    return 0;
}

int cmd_specseq(const std::string& rules_path, const std::string& e2_name, const Window& win,
                bool as_json, const Output& out) {
    auto rules = load_rules(rules_path);
    auto res = run_declared_page(e2_name, rules, win, "E2=" + e2_name);
    std::ostringstream os;
    if (as_json) {
        json j{{"e2", e2_name},
               {"rules", rules_path},
               {"ok", res.report.ok},
               {"table", table_json(res.table)},
               {"einf", json::parse(module_json(res.einf))}};
        for (const auto& e : res.report.errors) j["errors"].push_back(e.message);
        for (const auto& w : res.report.warnings) j["warnings"].push_back(w);
        out.write(j.dump(2));
    } else {
        for (const auto& e : res.report.errors) os << "error: " << e.message << "\n";
        for (const auto& w : res.report.warnings) os << "warning: " << w << "\n";
        os << table_text(res.table);
        out.write(os.str());
    }
    return res.report.ok ? 0 : 1;
}

int cmd_resolution(const std::string& tower, const Window& win, bool as_json, const Output& out) {
    std::ostringstream os;
    json j{{"tower", tower}};
    bool ok = true;

    if (tower == "algebraic-G2^1" || tower == "algebraic-G2") {
        bool zeta = tower == "algebraic-G2";
        auto rules = rules_from_text(algebraic_resolution_rules_text(zeta));
        Window w = win.stem_lo == -60 && win.stem_hi == 230 ? Window{-20, 120, 0, 6} : win;
        auto rep = run_algebraic_resolution(rules, w, 24, zeta);
        ok = rep.run.ok && rep.e3_vanishes && rep.totals_match;
        os << "columns:\n";
        for (const auto& col : algebraic_columns(zeta)) {
            os << "  p=" << col.p << ":";
            for (const auto& s : col.summands) os << "  " << s;
            os << "\n";
        }
        os << "E3 vanishing above filtration 1: " << (rep.e3_vanishes ? "yes" : "NO") << "\n";
        os << "per-stem totals match the eight-class module: " << (rep.totals_match ? "yes" : "NO") << "\n";
        if (as_json) {
            j["e3_vanishes"] = rep.e3_vanishes;
            j["totals_match"] = rep.totals_match;
            json per_stem = json::array();
            for (const auto& [n, k] : rep.einf_by_stem) per_stem.push_back({{"stem", n}, {"dim", k}});
            j["einf_by_stem"] = per_stem;
            auto ss = build_algebraic_e1(w, 24, zeta);
            RunReport rr;
            ss.run(rules, rr);
            j["e3_pages"] = module_by_filtration(ss.page_module());
        }
    } else if (tower == "topological-N") {
        Window g12win{win.stem_lo - 60, win.stem_hi + 60, 0, 26};
        auto g12 = run_declared_page("g12", rules_from_text(g12_rules_text()), g12win, "E^{hG12} ^ V(1)");
        Window w = win.stem_lo == -60 && win.stem_hi == 230 ? Window{-10, 140, 0, 8} : win;
        auto rep = check_n_tower_collapse(w, g12.table);
        ok = rep.collapse_matches;
        os << "three-column tower on the G12 table; no differentials\n";
        os << "collapse totals match the doubly extended table: " << (ok ? "yes" : "NO") << "\n";
        if (as_json) {
            j["collapse_matches"] = rep.collapse_matches;
            json per_stem = json::array();
            for (const auto& [n, k] : rep.einf_by_stem) per_stem.push_back({{"stem", n}, {"dim", k}});
            j["einf_by_stem"] = per_stem;
            j["e1_pages"] = module_by_filtration(build_n_tower(w, g12.table).page_module());
        }
    } else if (tower == "topological-sphere") {
        Window g24win{win.stem_lo - 60, win.stem_hi + 60, 0, 26};
        auto g24 = make_g24_table(g24win);
        Window w = win.stem_lo == -60 && win.stem_hi == 230 ? Window{-20, 120, 0, 8} : win;
        auto ss = build_sphere_tower(w, g24);
        auto rules = rules_from_text(algebraic_resolution_rules_text(true));
        RunReport rep;
        ss.run(rules, rep);
        ok = rep.ok;
        BigradedModule e3 = ss.page_module();
        os << "five-column tower over the finite fixed-point tables\n";
        os << module_text(e3);
        if (as_json) {
            j["ok"] = rep.ok;
            j["e3_pages"] = module_by_filtration(e3);
        }
    } else {
        throw CLI::ValidationError("--tower", "unknown tower " + tower);
    }

    if (as_json) {
        j["ok"] = ok;
        out.write(j.dump(2));
    } else {
        out.write(os.str());
    }
    return ok ? 0 : 1;
}

ExoticClass parse_exotic(const std::string& s) {
    if (s == "P") return ExoticClass::P();
    if (s == "Q") return ExoticClass::Q();
    if (s == "1" || s == "triv" || s == "S^0") return ExoticClass::trivial();
    std::size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("class", "expected 'a,b' exponents of P and Q, or P/Q/triv");
    return ExoticClass{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))}.normalized();
}

int cmd_picard_smash(const std::vector<std::string>& args, bool as_json, const Output& out) {
    ExoticClass acc = ExoticClass::trivial();
    for (const auto& a : args) acc = smash(acc, parse_exotic(a));
    std::ostringstream os;
    os << "smash product = " << acc.str() << "  (P-exponent " << ExoticClass::norm3(acc.p)
       << ", Q-exponent " << ExoticClass::norm3(acc.q) << ")\n";
    os << "finite fixed-point shift: " << g24_shift(acc) << " (mod 72)\n";
    os << "truly exotic: " << (acc.truly_exotic() ? "yes" : "no") << "\n";
    if (as_json) {
        json j{{"p", ExoticClass::norm3(acc.p)},
               {"q", ExoticClass::norm3(acc.q)},
               {"label", acc.str()},
               {"g24_shift", g24_shift(acc)},
               {"truly_exotic", acc.truly_exotic()}};
        out.write(j.dump(2));
    } else {
        out.write(os.str());
    }
    return 0;
}

int cmd_picard_solve(bool as_json, const Output& out) {
    auto sol = solve_brown_comenetz();
    std::ostringstream os;
    os << "I_2 = S^2 ^ S<det> ^ P\n";
    os << "48*1 + 74 = 122 = -22 (mod 144)\n";
    os << "enumeration of the nine candidates S^2 ^ S<det> ^ P^a ^ Q^b:\n";
    for (const auto& step : sol.enumeration) {
        os << "  a=" << step.a << " b=" << step.b << ": ";
        if (!step.free_over_zeta) os << "excluded (dual not free over the zeta line)\n";
        else os << "shift " << step.shift << (step.matches ? "  <- matches -22 mod 144" : "") << "\n";
    }
    if (as_json) {
        json cand = json::array();
        for (const auto& step : sol.enumeration)
            cand.push_back({{"a", step.a},
                            {"b", step.b},
                            {"free_over_zeta", step.free_over_zeta},
                            {"shift", step.free_over_zeta ? json(step.shift) : json(nullptr)},
                            {"matches", step.matches}});
        json j{{"word", sol.word.str()},
               {"sphere", sol.word.sphere},
               {"det", sol.word.det},
               {"p", sol.word.p},
               {"q", sol.word.q},
               {"target_shift_mod_144", sol.target},
               {"candidates", cand}};
        out.write(j.dump(2));
    } else {
        out.write(os.str());
    }
    return 0;
}

int cmd_picard_checkdet(bool as_json, const Output& out) {
    auto rep = det_twist_invariance_check(f9_units(), exponents_4_mod_8(-36, 36));
    std::ostringstream os;
    os << "determinant-twisted action on u-powers with exponent 4 mod 8:\n";
    os << "checked " << rep.checked << " unit/exponent pairs: " << (rep.ok ? "all invariant" : "FAILED")
       << "\n";
    if (!rep.ok) os << "first failure: " << rep.first_failure << "\n";
    if (as_json) {
        json j{{"ok", rep.ok}, {"checked", rep.checked}};
        if (!rep.ok) j["first_failure"] = rep.first_failure;
        out.write(j.dump(2));
    } else {
        out.write(os.str());
    }
    return rep.ok ? 0 : 1;
}

int cmd_chart(const std::string& target, const std::string& format, const Config& cfg, bool as_json,
              const Output& out) {
    ChartSpec spec;
    HomotopyTable table;
    if (target == "g24-v1") {
        Window w{-40, 230, 0, 26};
        table = make_g24_table(w, cfg);
        spec.title = "homotopy of E^{hG24} ^ V(1)";
        spec.stem_lo = 0;
        spec.stem_hi = 143;
        spec.bold_lo = 0;
        spec.bold_hi = 71;
        spec.lead_labels = {"1"};
    } else if (target == "g21-v1") {
        Window w{-80, 340, 0, 26};
        table = make_v1_tables(w, cfg).g21;
        spec.title = "homotopy of E^{hG2^1} ^ V(1)";
        spec.stem_lo = -10;
        spec.stem_hi = 290;
        spec.bold_lo = 0;
        spec.bold_hi = 143;
        spec.lead_labels = {"1", "w*alpha", "a35*w*beta", "a35*alpha"};
    } else if (target == "v1") {
        Window w{-80, 340, 0, 26};
        table = make_v1_tables(w, cfg).v1;
        spec.title = "homotopy of V(1)";
        spec.stem_lo = -10;
        spec.stem_hi = 290;
        spec.bold_lo = 0;
        spec.bold_hi = 143;
        spec.lead_labels = {"1"};
    } else {
        throw CLI::ValidationError("chart", "unknown target " + target +
                                            " (expected g24-v1, g21-v1 or v1)");
    }
    spec.table = &table;
    if (as_json) {
        json j{{"target", target}, {"table", table_json(table)}, {"dots", chart_dot_count(spec)}};
        out.write(j.dump(2));
        return 0;
    }
    out.write(format == "svg" ? render_svg(spec) : render_text(spec));
    return 0;
}

int cmd_verify(bool as_json, const Output& out) {
    auto results = run_acceptance();
    bool all = true;
    std::ostringstream os;
    for (const auto& c : results) {
        all = all && c.pass;
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "\n";
        os << "      " << c.detail << "\n";
    }
    os << (all ? "all checks passed" : "CHECKS FAILED") << " (" << results.size() << " criteria)\n";
    if (as_json) {
        json arr = json::array();
        for (const auto& c : results)
            arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        json j{{"ok", all}, {"criteria", arr}};
        out.write(j.dump(2));
    } else {
        out.write(os.str());
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact-arithmetic engine for the K(2)-local duality computations at p=3:\n"
        "finite-subgroup cohomology over F9[u^{+-1}], rule-driven spectral sequences,\n"
        "centralizer-resolution towers, invertible-class arithmetic, chart rendering"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path;
    bool as_json = false;
    std::optional<int> stem_min, stem_max, s_max;
    app.add_option("--config", config_path, "key=value config file (window bounds, signs, out_dir)");
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("-o,--output", out_path, "write output to a file instead of stdout");
    app.add_option("--stem-min", stem_min, "window lower stem bound");
    app.add_option("--stem-max", stem_max, "window upper stem bound");
    app.add_option("--s-max", s_max, "window filtration bound");

    std::string subgroup = "G24";
    auto* coh = app.add_subcommand("cohomology", "compute a subgroup's cohomology over F9[u^{+-1}]");
    coh->fallthrough();
    coh->add_option("subgroup,--subgroup", subgroup,
                    "one of C3, C, N, N1, G12, G24, SD16, G2^1, G2^0, G2");

    std::string rules_path, e2_name = "g24";
    auto* ss = app.add_subcommand("specseq", "spectral sequence operations");
    ss->fallthrough();
    auto* ssrun = ss->add_subcommand("run", "run a rule file against a named E2 page");
    ssrun->fallthrough();
    ssrun->add_option("rules", rules_path, "rule file")->required();
    ssrun->add_option("e2", e2_name, "E2 page: g24, g12, g20, g2, g21, n, sd16");

    std::string tower = "algebraic-G2^1";
    auto* res = app.add_subcommand("resolution", "centralizer-resolution spectral sequences");
    res->fallthrough();
    res->add_option("tower,--tower", tower,
                    "algebraic-G2^1, algebraic-G2, topological-sphere, topological-N");

    auto* pic = app.add_subcommand("picard", "invertible-class arithmetic");
    pic->fallthrough();
    std::vector<std::string> smash_args;
    auto* psmash = pic->add_subcommand("smash", "smash exotic classes given as 'a,b' exponents of P,Q");
    psmash->fallthrough();
    psmash->add_option("classes", smash_args, "classes to smash")->required();
    auto* psolve = pic->add_subcommand("solve", "solve for the dualizing word");
    psolve->fallthrough();
    auto* pcheck = pic->add_subcommand("check-det", "determinant-twist invariance check");
    pcheck->fallthrough();

    std::string chart_target = "g24-v1", chart_format = "text";
    auto* chart = app.add_subcommand("chart", "render a homotopy chart");
    chart->fallthrough();
    chart->add_option("target", chart_target, "g24-v1, g21-v1 or v1");
    chart->add_option("--format", chart_format, "text or svg")
        ->check(CLI::IsMember({"text", "svg"}));

    std::string verify_what = "all";
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->fallthrough();
    verify->add_option("what", verify_what, "'all'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        Config cfg;
        if (!config_path.empty()) cfg = Config::from_file(config_path);
        if (stem_min) cfg.window.stem_lo = *stem_min;
        if (stem_max) cfg.window.stem_hi = *stem_max;
        if (s_max) cfg.window.s_hi = *s_max;
        Output out{out_path};
        if (!out_path.empty() && cfg.out_dir != "." && out_path.find('/') == std::string::npos)
            out.path = cfg.out_dir + "/" + out_path;

        if (*coh) return cmd_cohomology(subgroup, cfg.window, as_json, out);
        if (*ssrun) return cmd_specseq(rules_path, e2_name, cfg.window, as_json, out);
        if (*res) return cmd_resolution(tower, cfg.window, as_json, out);
        if (*psmash) return cmd_picard_smash(smash_args, as_json, out);
        if (*psolve) return cmd_picard_solve(as_json, out);
        if (*pcheck) return cmd_picard_checkdet(as_json, out);
        if (*chart) return cmd_chart(chart_target, chart_format, cfg, as_json, out);
        if (*verify) {
            if (verify_what != "all") {
                std::cerr << "usage: verify all\n";
                return 2;
            }
            return cmd_verify(as_json, out);
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
