#pragma once

#include "specseq.hpp"

namespace k2local {

inline RingSpec resolution_ring() { return {"resolution", false, false, false}; }
inline RingSpec resolution_ring_f9() { return {"resolution-F9", true, false, false}; }

// Page coordinates of a marker-tagged monomial: filtration = marker column
// plus the zeta shift, internal degree chosen so that t - s is the honest
// stem of the class.
inline Bidegree resolution_grade(const Monomial& m) {
    int p = 0;
    for (Gen g : {Gen::b0, Gen::b36, Gen::e8, Gen::e36, Gen::e44, Gen::e48})
        if (m.exp(g)) p += marker_filtration(g);
    int z = m.exp(Gen::zeta);
    return {p + z, m.bidegree().stem() + z};
}

// Columns of the algebraic E1-term, for reporting.
struct ResolutionColumn {
    int p = 0;
    std::vector<std::string> summands;
};

inline std::vector<ResolutionColumn> algebraic_columns(bool with_zeta) {
    std::vector<ResolutionColumn> cols{
        {0, {"H^q(G24) b0"}},
        {1, {"H^q(G24) b36", "H^q(SD16) e8"}},
        {2, {"H^q(SD16) e36", "H^q(SD16) e44"}},
        {3, {"H^q(SD16) e48"}},
    };
    if (with_zeta) {
        std::vector<ResolutionColumn> doubled{{0, {}}, {1, {}}, {2, {}}, {3, {}}, {4, {}}};
        for (const auto& c : cols) {
            for (const auto& s : c.summands) {
                doubled[c.p].summands.push_back(s);
                doubled[c.p + 1].summands.push_back("zeta " + s);
            }
        }
        return doubled;
    }
    return cols;
}

namespace detail {

// all G24-cohomology monomials beta^b alpha^a w^k with q <= q_cap and stem in
// the given closed range
inline std::vector<Monomial> g24_monomials(int q_cap, int stem_lo, int stem_hi) {
    std::vector<Monomial> out;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; 2 * b + a <= q_cap; ++b) {
            // stem = 10b + 3a + 8k
            for (int k = (stem_lo - 10 * b - 3 * a - 7 * ((stem_lo > 0) ? 0 : 1)) / 8 - 2;; ++k) {
                int stem = 10 * b + 3 * a + 8 * k;
                if (stem > stem_hi) break;
                if (stem < stem_lo) continue;
                Monomial m;
                m.set(Gen::beta, b);
                m.set(Gen::alpha, a);
                m.set(Gen::w, k);
                out.push_back(m);
            }
        }
    return out;
}

inline std::vector<Monomial> sd16_monomials(int stem_lo, int stem_hi) {
    std::vector<Monomial> out;
    for (int i = stem_lo / 16 - 2; 16 * i <= stem_hi + 16; ++i) {
        if (16 * i < stem_lo || 16 * i > stem_hi) continue;
        Monomial m;
        m.set(Gen::v2, i);
        out.push_back(m);
    }
    return out;
}

}  // namespace detail

// E1 of the algebraic centralizer resolution as a page set; q_cap bounds the
// cohomological degree of the column entries.
inline SpectralSequence build_algebraic_e1(const Window& win, int q_cap, bool with_zeta) {
    SpectralSequence ss;
    ss.ring = resolution_ring();
    ss.grade = resolution_grade;
    ss.inner = win;
    ss.padded = win.padded(8, 4);
    ss.start_page = 1;
    ss.last_page = 2;

    int lo = ss.padded.stem_lo, hi = ss.padded.stem_hi;
    auto add_marked = [&](const std::vector<Monomial>& entries, Gen marker) {
        for (int z = 0; z <= (with_zeta ? 1 : 0); ++z)
            for (const auto& m : entries) {
                Monomial t = m;
                t.set(marker, 1);
                t.set(Gen::zeta, z);
                ss.insert(t);
            }
    };
    // stems of marked classes: stem(m) + deg - p - z; enumerate wide and let
    // insert() clip to the padded window
    auto g24 = detail::g24_monomials(q_cap, lo - 48, hi + 8);
    auto sd16 = detail::sd16_monomials(lo - 56, hi + 8);
    add_marked(g24, Gen::b0);
    add_marked(g24, Gen::b36);
    add_marked(sd16, Gen::e8);
    add_marked(sd16, Gen::e36);
    add_marked(sd16, Gen::e44);
    add_marked(sd16, Gen::e48);
    ss.freeze();
    return ss;
}

struct ResolutionReport {
    RunReport run;
    bool e3_vanishes = true;               // E3^{p,q} = 0 for p > 1
    std::vector<std::string> violations;   // offending classes
    bool totals_match = true;
    std::vector<int> mismatched_stems;
    std::map<int, std::size_t> einf_by_stem;
    std::map<int, std::size_t> expected_by_stem;
};

// Independent dimension count of the free module on the eight detection
// classes over F3[beta, v2^{+-1}] (tensor Lambda(zeta) at the full-group
// level), counting classes with total cohomological degree <= s_cap.
inline std::map<int, std::size_t> eight_class_free_module_dims(int stem_lo, int stem_hi, int s_cap,
                                                               bool with_zeta) {
    // (s, t) of the eight classes
    static constexpr std::array<std::pair<int, int>, 8> gens{{
        {0, 0}, {1, 4}, {1, 12}, {2, 20}, {2, 40}, {3, 48}, {3, 56}, {4, 60},
    }};
    std::map<int, std::size_t> dims;
    for (auto [gs, gt] : gens)
        for (int z = 0; z <= (with_zeta ? 1 : 0); ++z)
            for (int b = 0; gs + 2 * b + z <= s_cap; ++b) {
                // stem = gt - gs + 10b + 16l - z
                int base = gt - gs + 10 * b - z;
                for (int l = (stem_lo - base) / 16 - 2; base + 16 * l <= stem_hi; ++l) {
                    int stem = base + 16 * l;
                    if (stem < stem_lo || stem > stem_hi) continue;
                    dims[stem] += 1;
                }
            }
    return dims;
}

inline int marker_p_of(const Monomial& m) {
    for (Gen g : {Gen::b0, Gen::b36, Gen::e8, Gen::e36, Gen::e44, Gen::e48})
        if (m.exp(g)) return marker_filtration(g);
    return 0;
}

// Runs the algebraic resolution and checks the collapse pattern: everything
// in filtration > 1 dies by E3, and what is left matches the free module on
// the eight classes (zeta stripped at the G2^1 level).
inline ResolutionReport run_algebraic_resolution(const std::vector<DifferentialRule>& rules,
                                                 const Window& win, int q_cap, bool with_zeta) {
    ResolutionReport rep;
    auto ss = build_algebraic_e1(win, q_cap, with_zeta);
    ss.run(rules, rep.run);
    BigradedModule e3 = ss.page_module();

    int s_cap = q_cap;  // compare classes with p + q (+zeta) <= q_cap
    for (const auto& [d, basis] : e3.buckets) {
        for (const auto& v : basis) {
            const Monomial& m = v.terms.begin()->first;
            int p = marker_p_of(m);
            if (p > 1) {
                rep.e3_vanishes = false;
                rep.violations.push_back("p=" + std::to_string(p) + " survivor " +
                                         to_string(m, e3.ring) + " at stem " + std::to_string(d.stem()));
            }
            int total_s = m.bidegree().s + p;  // q + zeta + p
            if (total_s > s_cap) continue;
            if (!win.contains_stem(d.stem())) continue;
            rep.einf_by_stem[d.stem()] += 1;
        }
    }
    rep.expected_by_stem = eight_class_free_module_dims(win.stem_lo, win.stem_hi, s_cap, with_zeta);
    for (int n = win.stem_lo; n <= win.stem_hi; ++n) {
        std::size_t got = rep.einf_by_stem.count(n) ? rep.einf_by_stem[n] : 0;
        std::size_t want = rep.expected_by_stem.count(n) ? rep.expected_by_stem[n] : 0;
        if (got != want) {
            rep.totals_match = false;
            rep.mismatched_stems.push_back(n);
        }
    }
    return rep;
}

// ---- topological towers ------------------------------------------------------

// The semidihedral fixed points are concentrated in filtration zero, so
// their table is the page read along stems: the v2 line.
inline HomotopyTable sd16_table(const Window& win) {
    auto mod = declared_module("sd16", win);
    auto res = run_spectral_sequence(mod, {}, win, "E^{hSD16} ^ V(1)");
    res.table.period = 16;
    res.table.period_label = "v2";
    return res.table;
}

// Tower pages are built from the two input homotopy tables: b-markers carry
// the finite fixed-point entries, e-markers the semidihedral ones.
inline SpectralSequence build_sphere_tower(const Window& win, const HomotopyTable& g24_table,
                                           const HomotopyTable& sd16) {
    SpectralSequence ss;
    ss.ring = resolution_ring();
    ss.grade = resolution_grade;
    ss.inner = win;
    ss.padded = win.padded(8, 4);
    ss.start_page = 1;
    ss.last_page = 2;

    auto add_table = [&](const HomotopyTable& table, Gen marker) {
        for (int z = 0; z <= 1; ++z)
            for (const auto& [n, cls] : table.classes)
                for (const auto& c : cls) {
                    if (c.rep.terms.size() != 1) continue;
                    Monomial t = c.rep.terms.begin()->first;
                    t.set(marker, 1);
                    t.set(Gen::zeta, z);
                    ss.insert(t);
                }
    };
    add_table(g24_table, Gen::b0);
    add_table(g24_table, Gen::b36);
    add_table(sd16, Gen::e8);
    add_table(sd16, Gen::e36);
    add_table(sd16, Gen::e44);
    add_table(sd16, Gen::e48);
    ss.freeze();
    return ss;
}

inline SpectralSequence build_sphere_tower(const Window& win, const HomotopyTable& g24_table) {
    return build_sphere_tower(win, g24_table,
                              sd16_table(Window{win.stem_lo - 64, win.stem_hi + 64, 0, 4}));
}

// Short normalizer tower: three columns built from the G12 table, markers
// b0/b36 tensored with the zeta line.
inline SpectralSequence build_n_tower(const Window& win, const HomotopyTable& g12_table) {
    SpectralSequence ss;
    ss.ring = resolution_ring_f9();
    ss.grade = resolution_grade;
    ss.inner = win;
    ss.padded = win.padded(8, 4);
    ss.start_page = 1;
    ss.last_page = 1;

    for (Gen marker : {Gen::b0, Gen::b36})
        for (int z = 0; z <= 1; ++z)
            for (const auto& [n, cls] : g12_table.classes)
                for (const auto& c : cls) {
                    if (c.rep.terms.size() != 1) continue;
                    Monomial t = c.rep.terms.begin()->first;
                    t.set(marker, 1);
                    t.set(Gen::zeta, z);
                    ss.insert(t);  // om-duplicates collapse; the F9 page doubles them back
                }
    ss.freeze();
    return ss;
}

struct NTowerReport {
    bool collapse_matches = true;
    std::vector<int> failing_stems;
    std::map<int, std::size_t> einf_by_stem;
    std::map<int, std::size_t> expected_by_stem;
};

// The normalizer tower has no differentials for this input; its E1 totals
// must already match the doubly-extended G12 table.
inline NTowerReport check_n_tower_collapse(const Window& win, const HomotopyTable& g12_table) {
    NTowerReport rep;
    auto ss = build_n_tower(win, g12_table);
    BigradedModule e1 = ss.page_module();
    for (const auto& [d, basis] : e1.buckets)
        if (win.contains_stem(d.stem())) rep.einf_by_stem[d.stem()] += basis.size();

    HomotopyTable expected = tensor_with_exterior(tensor_with_exterior(g12_table, 35, "a35"), -1, "zeta");
    for (int n = win.stem_lo; n <= win.stem_hi; ++n) {
        std::size_t got = rep.einf_by_stem.count(n) ? rep.einf_by_stem[n] : 0;
        std::size_t want = expected.dim(n);
        if (got != want) {
            rep.collapse_matches = false;
            rep.failing_stems.push_back(n);
        }
    }
    return rep;
}

struct ExoticDetectionReport {
    bool unit_dies = false;            // the unit class is gone at E3
    bool witness_survives = false;     // beta v2^-3 alpha a35 in filtration 1 is present at E3
    bool zeta_multiple_dies = false;   // its zeta multiple is not present at E3
    bool high_filtration_empty = true; // E3^{s, s-1} = 0 for s > 2 (stem -1)
    bool ok() const { return unit_dies && witness_survives && zeta_multiple_dies && high_filtration_empty; }
};

// Reproduces the detection pattern for a truly exotic twist: feed the sphere
// tower the extra d2 on the unit and inspect E3 around stems 0 and -1.
inline ExoticDetectionReport run_exotic_detection(const Window& win, const HomotopyTable& g24_table,
                                                  const std::vector<DifferentialRule>& tower_rules,
                                                  bool with_exotic_d2) {
    auto rules = tower_rules;
    if (with_exotic_d2)
        rules.push_back(parse_rule_line("d2 b0 -> zeta*alpha*beta*w^-6*b36"));

    auto ss = build_sphere_tower(win, g24_table);
    RunReport run;
    ss.run(rules, run);
    BigradedModule e3 = ss.page_module();

    ExoticDetectionReport rep;
    RingSpec ring = resolution_ring();
    Monomial y = parse_monomial("alpha*beta*w^-6*b36", ring).second;
    Monomial zy = parse_monomial("zeta*alpha*beta*w^-6*b36", ring).second;
    Monomial unit;
    unit.set(Gen::b0, 1);

    rep.unit_dies = true;
    rep.zeta_multiple_dies = true;
    for (const auto& [d, basis] : e3.buckets)
        for (const auto& v : basis) {
            const Monomial& m = v.terms.begin()->first;
            if (m == unit) rep.unit_dies = false;
            if (m == y) rep.witness_survives = true;
            if (m == zy) rep.zeta_multiple_dies = false;
            if (d.stem() == -1 && d.s > 2) rep.high_filtration_empty = false;
        }
    return rep;
}

}  // namespace k2local
