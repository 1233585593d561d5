#pragma once

#include "chart.hpp"
#include "config.hpp"
#include "picard.hpp"
#include "resolution.hpp"

namespace k2local {

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;

    explicit Criterion(std::string n = "") : name(std::move(n)) {}
};

// ---- table filters ----------------------------------------------------------

inline int v2half_parity(const Vec& v) {
    int parity = -1;
    for (const auto& [m, c] : v.terms) {
        int p = ((m.exp(Gen::v2half) % 2) + 2) % 2;
        if (parity == -1) parity = p;
        else if (parity != p) throw std::logic_error("mixed-parity class in eigensplit");
    }
    return parity;
}

// (+1)/(-1) eigenparts of a table for the residual omega action: the sign of
// a class is the parity of its v2half exponent.
inline std::pair<HomotopyTable, HomotopyTable> split_table_by_parity(const HomotopyTable& t) {
    HomotopyTable plus = t, minus = t;
    plus.classes.clear();
    minus.classes.clear();
    plus.name = t.name + "^+";
    minus.name = t.name + "^-";
    plus.edges.clear();
    minus.edges.clear();
    for (const auto& [n, cls] : t.classes)
        for (const auto& c : cls)
            (v2half_parity(c.rep) == 0 ? plus : minus).classes[n].push_back(c);
    attach_multiplication_edges(plus);
    attach_multiplication_edges(minus);
    attach_toda_brackets(plus);
    return {plus, minus};
}

inline HomotopyTable strip_zeta(const HomotopyTable& t) {
    HomotopyTable out = t;
    out.classes.clear();
    out.edges.clear();
    out.name = t.name + " / zeta-free";
    for (const auto& [n, cls] : t.classes)
        for (const auto& c : cls) {
            bool has_zeta = false;
            for (const auto& [m, cc] : c.rep.terms)
                if (m.exp(Gen::zeta)) has_zeta = true;
            if (!has_zeta) out.classes[n].push_back(c);
        }
    attach_multiplication_edges(out);
    attach_toda_brackets(out);
    return out;
}

// ---- frozen expected values ---------------------------------------------------

// Stems of one 72-period of the maximal-finite-subgroup table, one class
// each; 27 in total.
inline const std::set<int>& g24_period_stems() {
    static const std::set<int> stems{0,  3,  8,  10, 11, 13, 16, 18, 19, 20, 21, 26, 27, 28,
                                     29, 30, 35, 36, 37, 38, 40, 43, 45, 46, 48, 53, 56};
    return stems;
}

// Independent enumeration of the same set from the kernel/cokernel pattern of
// the two differential families: w-lines survive for w = 0,1,2 mod 9 with
// beta-height < 5, alpha-lines for w = 0..5 mod 9 with beta-height < 2.
inline std::set<int> g24_period_stems_oracle() {
    std::set<int> stems;
    for (int k = 0; k <= 2; ++k)
        for (int b = 0; b <= 4; ++b) stems.insert((8 * k + 10 * b) % 72);
    for (int j = 0; j <= 5; ++j)
        for (int b = 0; b <= 1; ++b) stems.insert((3 + 8 * j + 10 * b) % 72);
    return stems;
}

struct FamilyDesc {
    int gen_stem;
    int beta_cap;             // classes gen * beta^k, k < cap
    std::array<int, 9> lset;  // allowed v2half exponents mod 9 (-1 terminated)
};

// The eight-family decomposition of the detection-image abutment, stated on
// v2half exponents mod 9.  The sixth family is l = {0,1,5} in v2-terms (its
// printed form elsewhere is a transcription slip; duality forces this set,
// see the notes in the tests).
inline std::vector<FamilyDesc> einf_families() {
    auto L = [](std::initializer_list<int> xs) {
        std::array<int, 9> a;
        a.fill(-1);
        int i = 0;
        for (int x : xs) a[i++] = x;
        return a;
    };
    return {
        {0, 5, L({0, 1, 2})},          // 1-family        = S/(b^5){v2^l}, l=0,1,5
        {3, 3, L({0, 1, 2, 3, 4, 5})}, // alpha           = S/(b^3){v2^l a}, l=0,1,2,5,6,7
        {18, 4, L({0, 1, 8})},         // w*beta          = S/(b^4){v2^l wb}, l=0,4,5
        {11, 2, L({0, 1, 2, 3, 4, 8})},// w*alpha         = S/(b^2){v2^l wa}, l=0,1,2,4,5,6
        {45, 4, L({0, 1, 2})},         // beta*a35        = S/(b^4){v2^l b a35}, l=0,1,5
        {38, 3, L({0, 1, 2, 3, 4, 5})},// alpha*a35       = S/(b^3){v2^l a a35}, l=0,1,2,5,6,7
        {53, 5, L({0, 1, 8})},         // w*beta*a35      = S/(b^5){v2^l wb a35}, l=0,4,5
        {56, 2, L({0, 1, 2, 3, 4, 8})},// w*beta*alpha*a35= S/(b^2){v2^l wba a35}, l=0,1,2,4,5,6
    };
}

// per-stem dimensions of the family decomposition over a stem range
inline std::map<int, std::size_t> family_dims(int stem_lo, int stem_hi) {
    std::map<int, std::size_t> dims;
    for (const auto& fam : einf_families()) {
        for (int z = 0; z <= 1; ++z)
            for (int k = 0; k < fam.beta_cap; ++k)
                for (int r : fam.lset) {
                    if (r < 0) continue;
                    int base = fam.gen_stem - z + 10 * k;
                    // v2half exponent r + 9m contributes 8*(r+9m) to the stem
                    for (int m = (stem_lo - base - 8 * r) / 72 - 2; base + 8 * r + 72 * m <= stem_hi; ++m) {
                        int stem = base + 8 * r + 72 * m;
                        if (stem < stem_lo || stem > stem_hi) continue;
                        dims[stem] += 1;
                    }
                }
    }
    return dims;
}

// ---- shared heavy computations ------------------------------------------------

struct AcceptanceContext {
    Window g20_window{-150, 310, 0, 26};
    SpecSeqResult g20;           // detection-image page run
    HomotopyTable v1_table;      // (+1)-eigenpart
    HomotopyTable minus_table;   // (-1)-eigenpart
    HomotopyTable g21_table;     // zeta-free part of v1_table
    SpecSeqResult g24;
    Window g24_window{-40, 230, 0, 26};

    static AcceptanceContext make() {
        AcceptanceContext ctx;
        ctx.g20 = run_declared_page("g20", rules_from_text(g20_rules_text()), ctx.g20_window,
                                    "E^{hG2^0} ^ V(1)");
        auto [plus, minus] = split_table_by_parity(ctx.g20.table);
        ctx.v1_table = plus;
        ctx.v1_table.name = "V(1)";
        ctx.v1_table.period = 144;
        ctx.v1_table.period_label = "v2^9";
        ctx.minus_table = minus;
        ctx.g21_table = strip_zeta(ctx.v1_table);
        ctx.g21_table.name = "E^{hG2^1} ^ V(1)";

        ctx.g24 = run_declared_page("g24", rules_from_text(g24_rules_text()), ctx.g24_window,
                                     "E^{hG24} ^ V(1)");
        ctx.g24.table.period = 72;
        ctx.g24.table.period_label = "w^9";
        return ctx;
    }
};

// ---- the individual criteria ---------------------------------------------------

inline Criterion check_sd16_invariants() {
    Criterion c{"1. semidihedral invariants of F9[u^{+-1}] are F3[v2^{+-1}]"};
    Window win{-200, 200, 0, 0};
    auto mod = build_f9u_module(win);
    auto inv = invariants(mod, {actions::omega(), actions::phi()}, win);
    std::map<Bidegree, std::vector<Vec>> expected;
    auto sd = declared_module("sd16", win);
    for (const auto& [d, basis] : sd.buckets)
        for (const auto& v : basis) {
            const Monomial& m = v.terms.begin()->first;
            Monomial u;
            u.set(Gen::u, -8 * m.exp(Gen::v2));
            expected[d].push_back(Vec::of(u));
        }
    auto rep = compare_f3_span(inv, expected, win);
    c.pass = rep.ok;
    c.detail = rep.ok ? "every bucket has exactly the v2 line" : rep.detail;
    return c;
}

inline Criterion check_g24_cohomology() {
    Criterion c{"2. quaternion invariants of H*(C3) match F3[beta,w^{+-1}] (x) L(alpha)"};
    Window win{-220, 220, 0, 20};
    auto c3 = build_c3_cohomology(win);
    auto ring = centralizer_ring();
    auto inv = invariants(c3, {actions::omega_sq(ring), actions::omega_phi(ring)}, win);
    auto span = declared_module("g24", win);
    std::map<Bidegree, std::vector<Vec>> expected;
    for (const auto& [d, basis] : span.buckets)
        for (const auto& v : basis) expected[d].push_back(expand_g24(v.terms.begin()->first));
    auto rep = compare_f3_span(inv, expected, win);
    c.pass = rep.ok;
    c.detail = rep.ok ? "bucketwise equality on the window" : rep.detail;
    return c;
}

inline Criterion check_detection_image_invariants() {
    Criterion c{"3. dihedral invariants of the detection image + eigensplit"};
    Window win{-220, 220, 0, 20};
    auto img = build_detection_image(win);
    auto inv = invariants(img, {actions::omega_sq(product_ring()), actions::phi()}, win);
    auto span = declared_module("g20", win);
    std::map<Bidegree, std::vector<Vec>> expected;
    for (const auto& [d, basis] : span.buckets)
        for (const auto& v : basis) expected[d].push_back(expand_pair(v.terms.begin()->first));
    auto rep = compare_f3_span(inv, expected, win);
    if (!rep.ok) {
        c.detail = rep.detail;
        return c;
    }
    // eigensplit of the invariants under the residual omega: minus = v2half * plus
    auto split = eigenspace_split(inv, actions::omega(), win);
    Vec v2half_pair = expand_pair(mono({{Gen::v2half, 1}}));
    for (const auto& [d, plus_basis] : split.plus.buckets) {
        Bidegree shifted{d.s, d.t + 8};
        if (!win.contains(shifted)) continue;
        std::vector<Vec> moved;
        for (const auto& v : plus_basis) moved.push_back(mul(v2half_pair, v, product_ring()));
        auto it = split.minus.buckets.find(shifted);
        std::size_t have = it == split.minus.buckets.end() ? 0 : it->second.size();
        if (have != moved.size()) {
            c.detail = "eigensplit mismatch at (s=" + std::to_string(shifted.s) +
                       ",t=" + std::to_string(shifted.t) + ")";
            return c;
        }
        if (have == 0) continue;
        BucketCoords coords;
        for (const auto& v : it->second) coords.absorb(v);
        for (const auto& v : moved) coords.absorb(v);
        coords.freeze();
        F3Matrix B(0, coords.cols());
        for (const auto& v : it->second) B.append_row(coords.row(v));
        RowSpace rs(B);
        for (const auto& v : moved)
            if (!rs.contains(coords.row(v))) {
                c.detail = "v2half * plus escapes the minus part at t=" + std::to_string(shifted.t);
                return c;
            }
    }
    c.pass = true;
    c.detail = "image matches the eight-class module; minus = v2half * plus";
    return c;
}

inline Criterion check_g24_run(const AcceptanceContext& ctx) {
    Criterion c{"4. finite fixed-point page: 27 classes per 72-period, stated vanishing"};
    const auto& t = ctx.g24.table;
    if (!ctx.g24.report.ok) {
        c.detail = ctx.g24.report.first();
        return c;
    }
    auto oracle = g24_period_stems_oracle();
    if (oracle != g24_period_stems()) {
        c.detail = "oracle enumeration disagrees with the frozen stem set";
        return c;
    }
    for (int n = 0; n < 72; ++n) {
        std::size_t want = g24_period_stems().count(n) ? 1 : 0;
        if (t.dim(n) != want) {
            c.detail = "stem " + std::to_string(n) + ": dim " + std::to_string(t.dim(n)) +
                       ", expected " + std::to_string(want);
            return c;
        }
    }
    std::size_t per_period = 0;
    for (int n = 0; n < 72; ++n) per_period += t.dim(n);
    if (per_period != 27) {
        c.detail = "period total " + std::to_string(per_period) + " != 27";
        return c;
    }
    if (t.dim(4) || t.dim(5) || t.dim(41) || t.dim(42) || t.dim(43) != 1) {
        c.detail = "stated vanishing/non-vanishing at stems 4,5,41,42,43 fails";
        return c;
    }
    c.pass = true;
    c.detail = "27 classes per period at the frozen stems; pi_4 = pi_5 = pi_41 = pi_42 = 0, pi_43 = Z/3";
    return c;
}

inline Criterion check_einf_families(const AcceptanceContext& ctx) {
    Criterion c{"5. detection-image abutment: eight-family module + eigensplit"};
    if (!ctx.g20.report.ok) {
        c.detail = ctx.g20.report.first();
        return c;
    }
    int lo = -30, hi = 260;
    auto want = family_dims(lo, hi);
    for (int n = lo; n <= hi; ++n) {
        std::size_t got = ctx.g20.table.dim(n);
        std::size_t exp = want.count(n) ? want[n] : 0;
        if (got != exp) {
            c.detail = "stem " + std::to_string(n) + ": dim " + std::to_string(got) + ", family formula " +
                       std::to_string(exp);
            return c;
        }
    }
    // eigensplit: plus-part = exterior zeta line tensor the zeta-free part
    for (int n = lo; n <= hi - 1; ++n) {
        std::size_t want_plus = ctx.g21_table.dim(n) + ctx.g21_table.dim(n + 1);
        if (ctx.v1_table.dim(n) != want_plus) {
            c.detail = "zeta splitting fails at stem " + std::to_string(n);
            return c;
        }
    }
    // and the minus part is the 72-shift of the plus part
    for (int n = lo + 80; n <= hi; ++n) {
        if (ctx.minus_table.dim(n) != ctx.v1_table.dim(n - 72)) {
            c.detail = "minus part is not the 72-shifted plus part at stem " + std::to_string(n);
            return c;
        }
    }
    c.pass = true;
    c.detail = "per-stem dimensions match the eight families on -30..260; eigensplit consistent";
    return c;
}

inline Criterion check_self_duality_criterion(const AcceptanceContext& ctx) {
    Criterion c{"6. duality of the V(1) table around stem 28, with witness"};
    auto rep = check_self_duality(ctx.v1_table, 28, Window{-120, 148, 0, 40});
    if (!rep.ok) {
        c.detail = rep.detail;
        return c;
    }
    auto [cc, witness] = parse_monomial("zeta*a35*w^-7*beta^5", g20_ring());
    bool found = false;
    auto it = ctx.v1_table.classes.find(28);
    if (it != ctx.v1_table.classes.end())
        for (const auto& cls : it->second)
            if (cls.rep.terms.size() == 1 && cls.rep.terms.begin()->first == witness) found = true;
    if (!found) {
        c.detail = "witness zeta*a35*w^-7*beta^5 missing from stem 28";
        return c;
    }
    c.pass = true;
    c.detail = "dim pi_n = dim pi_{28-n} on [-120, 92]; witness class present at stem 28";
    return c;
}

inline Criterion check_periodicity_criterion(const AcceptanceContext& ctx) {
    Criterion c{"7. periodicity: 72 for the finite page, 144 (not 72) for V(1)"};
    auto g24rep = check_periodicity(ctx.g24.table, 72, Window{-20, 220, 0, 40});
    if (!g24rep.ok) {
        c.detail = "finite fixed-point table not 72-periodic: " + g24rep.detail;
        return c;
    }
    auto v144 = check_periodicity(ctx.v1_table, 144, Window{-140, 300, 0, 40});
    if (!v144.ok) {
        c.detail = "V(1) table not 144-periodic: " + v144.detail;
        return c;
    }
    auto v72 = check_periodicity(ctx.v1_table, 72, Window{-140, 300, 0, 40});
    if (v72.ok) {
        c.detail = "V(1) table unexpectedly 72-periodic";
        return c;
    }
    c.pass = true;
    c.detail = "72-periodic finite table; V(1) 144-periodic and 72-aperiodic (first break at stem " +
               std::to_string(v72.failing_stems.front()) + ")";
    return c;
}

inline Criterion check_algebraic_resolution() {
    Criterion c{"8. centralizer resolution: E3 vanishes above filtration 1, totals match"};
    Window win{-20, 120, 0, 6};
    auto rules = rules_from_text(algebraic_resolution_rules_text(false));
    auto rep = run_algebraic_resolution(rules, win, 24, false);
    if (!rep.run.ok) {
        c.detail = rep.run.first();
        return c;
    }
    if (!rep.e3_vanishes) {
        c.detail = rep.violations.front();
        return c;
    }
    if (!rep.totals_match) {
        c.detail = "per-stem totals disagree first at stem " + std::to_string(rep.mismatched_stems.front());
        return c;
    }
    c.pass = true;
    c.detail = "E3^{p,q} = 0 for p > 1; E-infinity totals equal the eight-class module without zeta";
    return c;
}

inline Criterion check_n_tower() {
    Criterion c{"9. normalizer tower collapse onto the doubly extended G12 table"};
    Window g12win{-70, 200, 0, 26};
    auto g12 = run_declared_page("g12", rules_from_text(g12_rules_text()), g12win, "E^{hG12} ^ V(1)");
    if (!g12.report.ok) {
        c.detail = g12.report.first();
        return c;
    }
    Window win{-10, 140, 0, 8};
    auto rep = check_n_tower_collapse(win, g12.table);
    if (!rep.collapse_matches) {
        c.detail = "totals disagree first at stem " + std::to_string(rep.failing_stems.front());
        return c;
    }
    c.pass = true;
    c.detail = "E1 totals equal the G12 table tensored with the two exterior lines on -10..140";
    return c;
}

inline Criterion check_picard() {
    Criterion c{"10. dualizing-word solver and determinant-twist invariance"};
    auto sol = solve_brown_comenetz();
    if (!(sol.word.sphere == 2 && sol.word.det == 1 && sol.word.p == 1 && sol.word.q == 0)) {
        c.detail = "solver returned " + sol.word.str();
        return c;
    }
    if (v1_shift(sol.word) != ((-22 % 144) + 144) % 144) {
        c.detail = "solved word has the wrong shift";
        return c;
    }
    if (center_mod(2 + 72 + 48, 144) != -22) {
        c.detail = "shift arithmetic 2 + 72 + 48 != -22 mod 144";
        return c;
    }
    auto posets = det_twist_invariance_check(f9_units(), exponents_4_mod_8(-36, 36));
    if (!posets.ok) {
        c.detail = posets.first_failure;
        return c;
    }
    c.pass = true;
    c.detail = "unique word S^2 ^ S<det> ^ P with shift -22; twist fixes all u^(4 mod 8) lines (" +
               std::to_string(posets.checked) + " checks)";
    return c;
}

inline Criterion check_structural() {
    Criterion c{"11. structural suite: rule validation, span periodicity, smash additivity"};
    {
        Window win{-40, 150, 0, 20};
        auto rep = validate_rules(rules_from_text(g24_rules_text()), declared_module("g24", win), win);
        if (!rep.ok) {
            c.detail = "g24 rules: " + rep.first();
            return c;
        }
        rep = validate_rules(rules_from_text(g12_rules_text()), declared_module("g12", win), win);
        if (!rep.ok) {
            c.detail = "g12 rules: " + rep.first();
            return c;
        }
        rep = validate_rules(rules_from_text(g20_rules_text()), declared_module("g20", win), win);
        if (!rep.ok) {
            c.detail = "g20 rules: " + rep.first();
            return c;
        }
        Window rwin{-20, 100, 0, 6};
        auto ss = build_algebraic_e1(rwin, 20, false);
        BigradedModule e1 = ss.page_module();
        auto rrep = validate_rules(rules_from_text(algebraic_resolution_rules_text(false)), e1, rwin,
                                   resolution_grade);
        if (!rrep.ok) {
            c.detail = "resolution rules: " + rrep.first();
            return c;
        }
    }
    {
        Window win{-80, 160, 0, 16};
        auto span = declared_module("g20", win);
        for (const auto& [d, basis] : span.buckets) {
            Bidegree shifted{d.s, d.t + 72};
            if (!win.contains(d) || !win.contains(shifted)) continue;
            if (span.dim(shifted) != basis.size()) {
                c.detail = "span not 72-translation-invariant at (s=" + std::to_string(d.s) +
                           ",t=" + std::to_string(d.t) + ")";
                return c;
            }
        }
    }
    {
        for (int p1 = 0; p1 < 3; ++p1)
            for (int q1 = 0; q1 < 3; ++q1)
                for (int p2 = 0; p2 < 3; ++p2)
                    for (int q2 = 0; q2 < 3; ++q2) {
                        ExoticClass a{p1, q1}, b{p2, q2};
                        auto s = smash(a, b);
                        if (!(s == ExoticClass{p1 + p2, q1 + q2}.normalized())) {
                            c.detail = "smash not additive";
                            return c;
                        }
                        if (g24_shift(s) != (g24_shift(a) + g24_shift(b)) % 72) {
                            c.detail = "fixed-point shift not additive under smash";
                            return c;
                        }
                    }
    }
    c.pass = true;
    c.detail = "all shipped rule sets validate; spans are periodic; smash additivity over 81 pairs";
    return c;
}

inline std::vector<Criterion> run_acceptance() {
    auto ctx = AcceptanceContext::make();
    std::vector<Criterion> out;
    out.push_back(check_sd16_invariants());
    out.push_back(check_g24_cohomology());
    out.push_back(check_detection_image_invariants());
    out.push_back(check_g24_run(ctx));
    out.push_back(check_einf_families(ctx));
    out.push_back(check_self_duality_criterion(ctx));
    out.push_back(check_periodicity_criterion(ctx));
    out.push_back(check_algebraic_resolution());
    out.push_back(check_n_tower());
    out.push_back(check_picard());
    out.push_back(check_structural());
    return out;
}

}  // namespace k2local
