#pragma once

#include <functional>
#include <optional>

#include "action.hpp"
#include "linalg.hpp"
#include "module.hpp"

namespace k2local {

// ---- ring specs ----------------------------------------------------------

inline RingSpec centralizer_ring() { return {"centralizer", true, false, false}; }
inline RingSpec product_ring() { return {"centralizer-pair", true, false, true}; }
inline RingSpec g24_ring() { return {"G24", false, false, false}; }
inline RingSpec g12_ring() { return {"G12", true, true, false}; }
inline RingSpec n_ring() { return {"N", true, true, false}; }
inline RingSpec g20_ring() { return {"G2^0", false, true, false}; }
inline RingSpec sd16_ring() { return {"SD16", false, false, false}; }

// ---- bucket-level linear algebra over F3 ---------------------------------

// Coordinates for a set of Vecs: one column pair (1, om) per monomial.
struct BucketCoords {
    std::vector<Monomial> monos;
    std::map<Monomial, std::size_t> index;

    void absorb(const Vec& v) {
        for (const auto& [m, c] : v.terms)
            if (index.emplace(m, 0).second) monos.push_back(m);
    }
    void freeze() {
        std::sort(monos.begin(), monos.end());
        for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    }
    std::size_t cols() const { return monos.size() * 2; }
    std::vector<int8_t> row(const Vec& v) const {
        std::vector<int8_t> r(cols(), 0);
        for (const auto& [m, c] : v.terms) {
            std::size_t j = index.at(m);
            r[2 * j] = c.c0.v;
            r[2 * j + 1] = c.c1.v;
        }
        return r;
    }
    Vec vec(const std::vector<int8_t>& r) const {
        Vec v;
        for (std::size_t j = 0; j < monos.size(); ++j) {
            F9 c(F3(r[2 * j]), F3(r[2 * j + 1]));
            v.add_term(c, monos[j]);
        }
        return v;
    }
};

// Solve x*B = target in row coordinates; nullopt when target is outside the
// row space of B.
struct RowSolver {
    F3Matrix red;   // rref of B
    F3Matrix ops;   // row operations: red = ops * B
    std::vector<std::size_t> pivots;

    explicit RowSolver(const F3Matrix& B) {
        F3Matrix aug(B.rows, B.cols + B.rows);
        for (std::size_t i = 0; i < B.rows; ++i) {
            for (std::size_t j = 0; j < B.cols; ++j) aug.at(i, j) = B.at(i, j);
            aug.at(i, B.cols + i) = 1;
        }
        // eliminate on the left block only
        std::size_t r = 0;
        for (std::size_t c = 0; c < B.cols && r < aug.rows; ++c) {
            std::size_t sel = r;
            while (sel < aug.rows && aug.at(sel, c) == 0) ++sel;
            if (sel == aug.rows) continue;
            for (std::size_t j = 0; j < aug.cols; ++j) std::swap(aug.at(sel, j), aug.at(r, j));
            int8_t inv = aug.at(r, c);
            for (std::size_t j = 0; j < aug.cols; ++j) aug.at(r, j) = F3Matrix::norm(aug.at(r, j) * inv);
            for (std::size_t i = 0; i < aug.rows; ++i) {
                if (i == r || aug.at(i, c) == 0) continue;
                int8_t f = aug.at(i, c);
                for (std::size_t j = 0; j < aug.cols; ++j)
                    aug.at(i, j) = F3Matrix::norm(aug.at(i, j) - f * aug.at(r, j));
            }
            pivots.push_back(c);
            ++r;
        }
        red = F3Matrix(aug.rows, B.cols);
        ops = F3Matrix(aug.rows, B.rows);
        for (std::size_t i = 0; i < aug.rows; ++i) {
            for (std::size_t j = 0; j < B.cols; ++j) red.at(i, j) = aug.at(i, j);
            for (std::size_t j = 0; j < B.rows; ++j) ops.at(i, j) = aug.at(i, B.cols + j);
        }
    }

    std::optional<std::vector<int8_t>> solve(const std::vector<int8_t>& target) const {
        std::vector<int8_t> res = target;
        std::vector<int8_t> coeff(ops.cols, 0);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            int8_t f = res[pivots[r]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < red.cols; ++j) res[j] = F3Matrix::norm(res[j] - f * red.at(r, j));
            for (std::size_t j = 0; j < ops.cols; ++j) coeff[j] = F3Matrix::norm(coeff[j] + f * ops.at(r, j));
        }
        for (int8_t x : res)
            if (x != 0) return std::nullopt;
        return coeff;
    }
};

// ---- invariants -----------------------------------------------------------

struct InvariantsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// F3-basis of a bucket: the stored Vecs, doubled by om for F9-modules.
inline std::vector<Vec> f3_basis(const BigradedModule& mod, const std::vector<Vec>& bucket) {
    std::vector<Vec> out;
    out.reserve(bucket.size() * (mod.ring.f9 ? 2 : 1));
    for (const auto& v : bucket) {
        out.push_back(v);
        if (mod.ring.f9) out.push_back(F9::om() * v);
    }
    return out;
}

// Per-bidegree fixed points of the group generated by `ops`, computed as the
// kernel of the stacked (g - id) maps over F3.  Semilinear generators are
// F3-linear, so nothing special is needed beyond the doubled coordinates.
inline BigradedModule invariants(const BigradedModule& mod, const std::vector<ActionOp>& ops,
                                 const Window& win) {
    BigradedModule out;
    out.name = mod.name + "^inv";
    out.ring = mod.ring;
    out.ring.f9 = false;  // the fixed space is only an F3-space in general

    for (const auto& [d, bucket] : mod.buckets) {
        if (!win.contains(d)) continue;
        if (bucket.empty()) continue;
        auto basis = f3_basis(mod, bucket);

        BucketCoords coords;
        std::vector<std::vector<Vec>> images(ops.size());
        for (const auto& v : basis) coords.absorb(v);
        for (std::size_t k = 0; k < ops.size(); ++k) {
            for (const auto& v : basis) {
                Vec img = ops[k].apply(v, mod.ring);
                for (const auto& [m, c] : img.terms) {
                    if (m.bidegree() != d)
                        throw InvariantsError("operator " + ops[k].name + " does not preserve bidegree (s=" +
                                              std::to_string(d.s) + ",t=" + std::to_string(d.t) + ")");
                }
                images[k].push_back(img);
                coords.absorb(img);
            }
        }
        coords.freeze();

        F3Matrix B(0, coords.cols());
        for (const auto& v : basis) B.append_row(coords.row(v));
        RowSolver solver(B);

        // stacked (rho(g) - id)
        F3Matrix stacked(basis.size(), basis.size() * ops.size());
        for (std::size_t k = 0; k < ops.size(); ++k) {
            for (std::size_t i = 0; i < basis.size(); ++i) {
                auto sol = solver.solve(coords.row(images[k][i]));
                if (!sol)
                    throw InvariantsError("operator " + ops[k].name + " leaves the module span at (s=" +
                                          std::to_string(d.s) + ",t=" + std::to_string(d.t) +
                                          "), image of " + basis[i].str(mod.ring));
                for (std::size_t j = 0; j < basis.size(); ++j)
                    stacked.at(i, k * basis.size() + j) =
                        F3Matrix::norm((*sol)[j] - (i == j ? 1 : 0));
            }
        }

        F3Matrix ker = kernel(stacked);
        if (ker.rows == 0) continue;
        std::vector<Vec> fixed;
        for (std::size_t i = 0; i < ker.rows; ++i) {
            Vec v;
            for (std::size_t j = 0; j < basis.size(); ++j) {
                int8_t c = ker.at(i, j);
                if (c != 0) v += F9(c) * basis[j];
            }
            fixed.push_back(v);
        }
        out.buckets[d] = std::move(fixed);
    }
    return out;
}

struct EigenSplit {
    BigradedModule plus;
    BigradedModule minus;
};

// Splits every bucket into (+1)/(-1) eigenspaces of an involution.
inline EigenSplit eigenspace_split(const BigradedModule& mod, const ActionOp& invol, const Window& win) {
    EigenSplit out;
    out.plus.name = mod.name + "^+";
    out.minus.name = mod.name + "^-";
    out.plus.ring = out.minus.ring = mod.ring;
    out.plus.ring.f9 = out.minus.ring.f9 = false;

    for (const auto& [d, bucket] : mod.buckets) {
        if (!win.contains(d) || bucket.empty()) continue;
        auto basis = f3_basis(mod, bucket);
        BucketCoords coords;
        for (const auto& v : basis) coords.absorb(v);
        std::vector<Vec> images;
        for (const auto& v : basis) {
            images.push_back(invol.apply(v, mod.ring));
            coords.absorb(images.back());
        }
        coords.freeze();
        F3Matrix B(0, coords.cols());
        for (const auto& v : basis) B.append_row(coords.row(v));
        RowSolver solver(B);

        F3Matrix T(basis.size(), basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            auto sol = solver.solve(coords.row(images[i]));
            if (!sol) throw InvariantsError("involution leaves the module span");
            for (std::size_t j = 0; j < basis.size(); ++j) T.at(i, j) = (*sol)[j];
        }
        // involution check: T^2 = id
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                int acc = 0;
                for (std::size_t k = 0; k < basis.size(); ++k) acc += T.at(i, k) * T.at(k, j);
                if (F3Matrix::norm(acc) != (i == j ? 1 : 0))
                    throw InvariantsError("eigenspace_split: operator is not an involution at (s=" +
                                          std::to_string(d.s) + ",t=" + std::to_string(d.t) + ")");
            }

        for (int sign : {+1, -1}) {
            F3Matrix shifted = T;
            for (std::size_t i = 0; i < basis.size(); ++i)
                shifted.at(i, i) = F3Matrix::norm(shifted.at(i, i) - sign);
            F3Matrix ker = kernel(shifted);
            std::vector<Vec> part;
            for (std::size_t i = 0; i < ker.rows; ++i) {
                Vec v;
                for (std::size_t j = 0; j < basis.size(); ++j)
                    if (ker.at(i, j) != 0) v += F9(ker.at(i, j)) * basis[j];
                part.push_back(v);
            }
            if (part.empty()) continue;
            (sign > 0 ? out.plus : out.minus).buckets[d] = std::move(part);
        }
    }
    return out;
}

// ---- module builders ------------------------------------------------------

inline Monomial mono(std::initializer_list<std::pair<Gen, int>> facs) {
    Monomial m;
    for (auto [g, k] : facs) m.add(g, k);
    return m;
}

inline BigradedModule build_f9u_module(const Window& win) {
    return free_module_span("F9[u^{±}]", centralizer_ring(), {SpanGen::inv(mono({{Gen::u, 1}}))},
                            {Monomial::unit()}, win);
}

inline BigradedModule build_c3_cohomology(const Window& win) {
    auto m = free_module_span(
        "H*(C3)", centralizer_ring(),
        {SpanGen::poly(mono({{Gen::y1, 1}})), SpanGen::inv(mono({{Gen::u, 1}})), SpanGen::ext(mono({{Gen::x1, 1}}))},
        {Monomial::unit()}, win);
    return m;
}

// H*(C) for the centralizer C itself; the conjugate copy carries subscript-2
// generators and is produced by build_conjugate_centralizer.
inline BigradedModule build_centralizer_cohomology(const Window& win) {
    return free_module_span(
        "H*(C)", centralizer_ring(),
        {SpanGen::poly(mono({{Gen::y1, 1}})), SpanGen::inv(mono({{Gen::u, 1}})), SpanGen::ext(mono({{Gen::x1, 1}})),
         SpanGen::ext(mono({{Gen::a1, 1}})), SpanGen::ext(mono({{Gen::zeta1, 1}}))},
        {Monomial::unit()}, win);
}

inline BigradedModule build_conjugate_centralizer(const Window& win) {
    return free_module_span(
        "H*(wCw^-1)", centralizer_ring(),
        {SpanGen::poly(mono({{Gen::y2, 1}})), SpanGen::inv(mono({{Gen::u, 1}})), SpanGen::ext(mono({{Gen::x2, 1}})),
         SpanGen::ext(mono({{Gen::a2, 1}})), SpanGen::ext(mono({{Gen::zeta2, 1}}))},
        {Monomial::unit()}, win);
}

// H*(C) x H*(wCw^-1) with explicit factor tags.
inline BigradedModule build_centralizer_product(const Window& win) {
    auto ring = product_ring();
    auto f1 = free_module_span(
        "", ring,
        {SpanGen::poly(mono({{Gen::y1, 1}})), SpanGen::inv(mono({{Gen::u, 1}})), SpanGen::ext(mono({{Gen::x1, 1}})),
         SpanGen::ext(mono({{Gen::a1, 1}})), SpanGen::ext(mono({{Gen::zeta1, 1}}))},
        {mono({{Gen::c1, 1}})}, win);
    auto f2 = free_module_span(
        "", ring,
        {SpanGen::poly(mono({{Gen::y2, 1}})), SpanGen::inv(mono({{Gen::u, 1}})), SpanGen::ext(mono({{Gen::x2, 1}})),
         SpanGen::ext(mono({{Gen::a2, 1}})), SpanGen::ext(mono({{Gen::zeta2, 1}}))},
        {mono({{Gen::c2, 1}})}, win);
    BigradedModule out;
    out.name = "H*(C) x H*(wCw^-1)";
    out.ring = ring;
    out.buckets = std::move(f1.buckets);
    for (auto& [d, b] : f2.buckets) {
        auto& dst = out.buckets[d];
        dst.insert(dst.end(), b.begin(), b.end());
    }
    return out;
}

// The eight detection classes of the centralizer image, as product vectors.
inline std::vector<Vec> detection_classes() {
    auto ring = product_ring();
    auto pv = [&](std::string_view s) { return parse_vec(s, ring); };
    return {
        pv("c1") + pv("c2"),                     // 1 = (1,1)
        pv("c1*x1"),                             // x1
        pv("c2*x2"),                             // x2
        pv("c1*y1"),                             // y1
        pv("c1*x1*a1") - pv("c2*x2*a2"),         // x1a1 - x2a2
        pv("c1*y1*a1"),                          // y1a1
        pv("c2*y2*a2"),                          // y2a2
        pv("c1*y1*x1*a1"),                       // y1x1a1
    };
}

// Free F9[y1+y2, u^{±}] (x) Lambda(zeta1+zeta2)-module on the detection
// classes: the image of the centralizer detection map.
inline BigradedModule build_detection_image(const Window& win) {
    auto ring = product_ring();
    BigradedModule out;
    out.name = "detection-image";
    out.ring = ring;

    Vec ybar = parse_vec("c1*y1", ring) + parse_vec("c2*y2", ring);
    Vec zbar = parse_vec("c1*zeta1", ring) + parse_vec("c2*zeta2", ring);
    auto gens = detection_classes();

    // only u carries internal degree here, so |t| <= max|stem| + s_hi bounds it
    int ymax = win.s_hi / 2 + 1;
    int umax = (std::max(std::abs(win.stem_lo), std::abs(win.stem_hi)) + win.s_hi) / 2 + 8;

    for (const auto& g : gens) {
        for (int e = 0; e <= 1; ++e) {
            Vec ge = e ? mul(zbar, g, ring) : g;
            if (ge.is_zero()) continue;
            for (int k = 0; k <= ymax; ++k) {
                Vec gy = ge;
                for (int i = 0; i < k; ++i) gy = mul(ybar, gy, ring);
                if (gy.is_zero()) break;
                for (int j = -umax; j <= umax; ++j) {
                    Monomial uj;
                    uj.set(Gen::u, j);
                    Vec v = mul(Vec::of(uj), gy, ring);
                    if (v.is_zero()) continue;
                    Bidegree d = v.terms.begin()->first.bidegree();
                    if (!win.contains(d)) continue;
                    out.buckets[d].push_back(v);
                }
            }
        }
    }
    return out;
}

// ---- expansion of named classes into centralizer coordinates --------------

// Component pair for the invariant classes: class = c1*L + c2*R.
struct PairForm {
    F9 cl, cr;
    Monomial ml, mr;
};

inline PairForm pair_form(Gen g) {
    auto m = [](std::initializer_list<std::pair<Gen, int>> f) { return mono(f); };
    switch (g) {
        case Gen::v2half: return {F9::one(), F9::one(), m({{Gen::u, -4}}), m({{Gen::u, -4}})};
        case Gen::w: return {om_pow(2), om_pow(-2), m({{Gen::u, -4}}), m({{Gen::u, -4}})};
        case Gen::zeta: return {F9::one(), F9::one(), m({{Gen::zeta1, 1}}), m({{Gen::zeta2, 1}})};
        case Gen::a35: return {om_pow(1), om_pow(-1), m({{Gen::a1, 1}, {Gen::u, -18}}), m({{Gen::a2, 1}, {Gen::u, -18}})};
        case Gen::alpha: return {om_pow(1), om_pow(-1), m({{Gen::x1, 1}, {Gen::u, -2}}), m({{Gen::x2, 1}, {Gen::u, -2}})};
        case Gen::beta: return {om_pow(3), om_pow(-3), m({{Gen::y1, 1}, {Gen::u, -6}}), m({{Gen::y2, 1}, {Gen::u, -6}})};
        default: throw std::logic_error("pair_form: no expansion for this generator");
    }
}

// Expand a G2^0-level monomial into the two-centralizer product.
inline Vec expand_pair(const Monomial& m) {
    auto ring = product_ring();
    F9 cl = F9::one(), cr = F9::one();
    Monomial ml, mr;
    auto push = [&](Gen g, int k) {
        if (k == 0) return;
        PairForm f = pair_form(g);
        for (int i = 0; i < std::abs(k); ++i) {
            if (k > 0) {
                cl *= f.cl;
                cr *= f.cr;
                auto [sl, nl] = mul(ml, f.ml, product_ring());
                auto [sr, nr] = mul(mr, f.mr, product_ring());
                cl *= sl; cr *= sr;
                ml = nl; mr = nr;
            } else {
                cl *= f.cl.inverse();
                cr *= f.cr.inverse();
                Monomial il, ir;
                for (std::size_t j = 0; j < kGenCount; ++j) {
                    il.e[j] = static_cast<int16_t>(-f.ml.e[j]);
                    ir.e[j] = static_cast<int16_t>(-f.mr.e[j]);
                }
                auto [sl, nl] = mul(ml, il, product_ring());
                auto [sr, nr] = mul(mr, ir, product_ring());
                cl *= sl; cr *= sr;
                ml = nl; mr = nr;
            }
        }
    };
    for (std::size_t i = 0; i < kGenCount; ++i) push(static_cast<Gen>(i), m.e[i]);
    Monomial l = ml, r = mr;
    l.set(Gen::c1, 1);
    r.set(Gen::c2, 1);
    Vec out;
    F9 nl = normalize(l, ring), nr = normalize(r, ring);
    out.add_term(cl * nl, l);
    out.add_term(cr * nr, r);
    return out;
}

// Expand a G24-level monomial (beta^b alpha^a w^k) into H*(C3).
inline Vec expand_g24(const Monomial& m) {
    int b = m.exp(Gen::beta), a = m.exp(Gen::alpha), k = m.exp(Gen::w);
    Monomial t;
    t.set(Gen::y1, b);
    t.set(Gen::x1, a);
    t.set(Gen::u, -6 * b - 2 * a - 4 * k);
    return Vec(om_pow(3 * b + a + 2 * k), t);
}

// Expand a G12/N-level monomial (also v2half, a35, zeta) into H*(C).
inline Vec expand_single(const Monomial& m) {
    int b = m.exp(Gen::beta), a = m.exp(Gen::alpha), k = m.exp(Gen::w);
    int j = m.exp(Gen::v2half), a35 = m.exp(Gen::a35), z = m.exp(Gen::zeta);
    Monomial t;
    t.set(Gen::y1, b);
    t.set(Gen::x1, a);
    t.set(Gen::a1, a35);
    t.set(Gen::zeta1, z);
    t.set(Gen::u, -6 * b - 2 * a - 4 * k - 4 * j - 18 * a35);
    return Vec(om_pow(3 * b + a + 2 * k), t);
}

// ---- comparison of computed invariants with declared spans ----------------

struct CompareReport {
    bool ok = true;
    std::string detail;
    void fail(std::string msg) {
        if (ok) detail = std::move(msg);
        ok = false;
    }
};

// Checks, bucket by bucket inside the window, that the span of `expected`
// (arbitrary Vecs, F3-coefficients) equals the computed F3-module `got`.
inline CompareReport compare_f3_span(const BigradedModule& got,
                                     const std::map<Bidegree, std::vector<Vec>>& expected,
                                     const Window& win) {
    CompareReport rep;
    auto check_bucket = [&](Bidegree d, const std::vector<Vec>* gotb, const std::vector<Vec>* expb) {
        std::size_t gdim = gotb ? gotb->size() : 0;
        std::size_t edim = expb ? expb->size() : 0;
        if (gdim != edim) {
            rep.fail("dimension mismatch at (s=" + std::to_string(d.s) + ",t=" + std::to_string(d.t) +
                     "): computed " + std::to_string(gdim) + ", expected " + std::to_string(edim));
            return;
        }
        if (edim == 0) return;
        BucketCoords coords;
        for (const auto& v : *gotb) coords.absorb(v);
        for (const auto& v : *expb) coords.absorb(v);
        coords.freeze();
        F3Matrix B(0, coords.cols());
        for (const auto& v : *gotb) B.append_row(coords.row(v));
        RowSpace rs(B);
        for (const auto& v : *expb) {
            if (!rs.contains(coords.row(v))) {
                rep.fail("expected vector outside computed span at (s=" + std::to_string(d.s) +
                         ",t=" + std::to_string(d.t) + "): " + v.str(got.ring));
                return;
            }
        }
        F3Matrix E(0, coords.cols());
        for (const auto& v : *expb) E.append_row(coords.row(v));
        if (E.rank() != edim) {
            rep.fail("expected vectors dependent at (s=" + std::to_string(d.s) + ",t=" +
                     std::to_string(d.t) + ")");
        }
    };

    for (const auto& [d, b] : got.buckets) {
        if (!win.contains(d)) continue;
        auto it = expected.find(d);
        check_bucket(d, &b, it == expected.end() ? nullptr : &it->second);
        if (!rep.ok) return rep;
    }
    for (const auto& [d, b] : expected) {
        if (!win.contains(d) || b.empty()) continue;
        if (!got.bucket(d) || got.bucket(d)->empty()) {
            rep.fail("expected nonzero bucket missing at (s=" + std::to_string(d.s) + ",t=" +
                     std::to_string(d.t) + ")");
            return rep;
        }
    }
    return rep;
}

// Closure of the detection image under the two semidihedral generators,
// bucket by bucket; reports the first offending vector.
inline CompareReport verify_rho_image(const Window& win) {
    CompareReport rep;
    auto img = build_detection_image(win);
    std::vector<ActionOp> ops{actions::omega(), actions::phi()};
    for (const auto& [d, bucket] : img.buckets) {
        if (!win.contains(d) || bucket.empty()) continue;
        auto basis = f3_basis(img, bucket);
        BucketCoords coords;
        std::vector<Vec> images;
        for (const auto& v : basis) coords.absorb(v);
        for (const auto& op : ops)
            for (const auto& v : basis) {
                images.push_back(op.apply(v, img.ring));
                coords.absorb(images.back());
            }
        coords.freeze();
        F3Matrix B(0, coords.cols());
        for (const auto& v : basis) B.append_row(coords.row(v));
        RowSpace rs(B);
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (!rs.contains(coords.row(images[i]))) {
                rep.fail("action closure fails at (s=" + std::to_string(d.s) + ",t=" + std::to_string(d.t) +
                         ") on " + basis[i % basis.size()].str(img.ring));
                return rep;
            }
        }
    }
    return rep;
}

// ---- named subgroup cohomology --------------------------------------------

// A cohomology ring: the underlying bigraded module together with the group
// actions it carries and the subgroup it came from.
struct CohomologyRing {
    BigradedModule module;
    std::vector<ActionOp> actions;
    std::string subgroup;
};

// H*(C, F9[u^{+-1}]) with the conjugation actions attached; the conjugate
// copy with subscript-2 generators is reached through the omega action.
inline CohomologyRing centralizer_with_actions(const Window& win) {
    CohomologyRing ring;
    ring.module = build_centralizer_cohomology(win);
    ring.subgroup = "C";
    auto base = centralizer_ring();
    ring.actions = {actions::omega_sq(base)};  // the factor-preserving part
    return ring;
}

inline CohomologyRing centralizer_pair_with_actions(const Window& win) {
    CohomologyRing ring;
    ring.module = build_centralizer_product(win);
    ring.subgroup = "C x wCw^-1";
    ring.actions = {actions::omega(), actions::phi()};
    return ring;
}

// The eight module generators of the detection image at the G2^0 level.
inline std::vector<Monomial> eight_classes() {
    return {
        Monomial::unit(),
        mono({{Gen::alpha, 1}}),
        mono({{Gen::w, 1}, {Gen::alpha, 1}}),
        mono({{Gen::w, 1}, {Gen::beta, 1}}),
        mono({{Gen::alpha, 1}, {Gen::a35, 1}}),
        mono({{Gen::beta, 1}, {Gen::a35, 1}}),
        mono({{Gen::w, 1}, {Gen::beta, 1}, {Gen::a35, 1}}),
        mono({{Gen::w, 1}, {Gen::beta, 1}, {Gen::alpha, 1}, {Gen::a35, 1}}),
    };
}

// Computed (not declared) cohomology of the finite subgroups, as invariants
// of the explicit centralizer actions.
inline BigradedModule subgroup_cohomology(const std::string& subgroup, const Window& win) {
    auto ring = centralizer_ring();
    if (subgroup == "C3") return build_c3_cohomology(win);
    if (subgroup == "C") return build_centralizer_cohomology(win);
    if (subgroup == "SD16") {
        auto m = invariants(build_f9u_module(win), {actions::omega(), actions::phi()}, win);
        m.name = "H*(SD16)";
        return m;
    }
    if (subgroup == "G24") {
        auto m = invariants(build_c3_cohomology(win), {actions::omega_sq(ring), actions::omega_phi(ring)}, win);
        m.name = "H*(G24)";
        return m;
    }
    if (subgroup == "G12") {
        auto m = invariants(build_c3_cohomology(win), {actions::omega_sq(ring)}, win);
        m.name = "H*(G12)";
        return m;
    }
    if (subgroup == "N") {
        auto m = invariants(build_centralizer_cohomology(win), {actions::omega_sq(ring)}, win);
        m.name = "H*(N)";
        return m;
    }
    if (subgroup == "N1") {
        auto base = free_module_span(
            "H*(C3 x Z3)", ring,
            {SpanGen::poly(mono({{Gen::y1, 1}})), SpanGen::inv(mono({{Gen::u, 1}})),
             SpanGen::ext(mono({{Gen::x1, 1}})), SpanGen::ext(mono({{Gen::a1, 1}}))},
            {Monomial::unit()}, win);
        auto m = invariants(base, {actions::omega_sq(ring)}, win);
        m.name = "H*(N1)";
        return m;
    }
    if (subgroup == "G2^0") {
        auto m = invariants(build_detection_image(win), {actions::omega_sq(product_ring()), actions::phi()}, win);
        m.name = "H*(G2^0)";
        return m;
    }
    if (subgroup == "G2") {
        auto m = invariants(build_detection_image(win), {actions::omega(), actions::phi()}, win);
        m.name = "H*(G2)";
        return m;
    }
    if (subgroup == "G2^1") {
        // the zeta-free part of H*(G2): declared form, see declared_module
        return free_module_span("H*(G2^1)", g20_ring(),
                                {SpanGen::poly(mono({{Gen::beta, 1}})), SpanGen::inv(mono({{Gen::v2half, 2}}))},
                                eight_classes(), win);
    }
    throw std::invalid_argument("unknown subgroup: " + subgroup);
}

// Declared (normal-form) modules used as spectral sequence inputs.
inline BigradedModule declared_module(const std::string& which, const Window& win) {
    if (which == "g24")
        return free_module_span("H*(G24)", g24_ring(),
                                {SpanGen::poly(mono({{Gen::beta, 1}})), SpanGen::inv(mono({{Gen::w, 1}})),
                                 SpanGen::ext(mono({{Gen::alpha, 1}}))},
                                {Monomial::unit()}, win);
    if (which == "g12")
        return free_module_span("H*(G12)", g12_ring(),
                                {SpanGen::poly(mono({{Gen::beta, 1}})), SpanGen::inv(mono({{Gen::v2half, 1}})),
                                 SpanGen::ext(mono({{Gen::alpha, 1}}))},
                                {Monomial::unit()}, win);
    if (which == "n")
        return free_module_span("H*(N)", n_ring(),
                                {SpanGen::poly(mono({{Gen::beta, 1}})), SpanGen::inv(mono({{Gen::v2half, 1}})),
                                 SpanGen::ext(mono({{Gen::alpha, 1}})), SpanGen::ext(mono({{Gen::a35, 1}})),
                                 SpanGen::ext(mono({{Gen::zeta, 1}}))},
                                {Monomial::unit()}, win);
    if (which == "g20")
        return free_module_span("H*(G2^0)", g20_ring(),
                                {SpanGen::poly(mono({{Gen::beta, 1}})), SpanGen::inv(mono({{Gen::v2half, 1}})),
                                 SpanGen::ext(mono({{Gen::zeta, 1}}))},
                                eight_classes(), win);
    if (which == "g2")
        return free_module_span("H*(G2)", g20_ring(),
                                {SpanGen::poly(mono({{Gen::beta, 1}})), SpanGen::inv(mono({{Gen::v2half, 2}})),
                                 SpanGen::ext(mono({{Gen::zeta, 1}}))},
                                eight_classes(), win);
    if (which == "g21")
        return free_module_span("H*(G2^1)", g20_ring(),
                                {SpanGen::poly(mono({{Gen::beta, 1}})), SpanGen::inv(mono({{Gen::v2half, 2}}))},
                                eight_classes(), win);
    if (which == "sd16")
        return free_module_span("H*(SD16)", sd16_ring(), {SpanGen::inv(mono({{Gen::v2, 1}}))},
                                {Monomial::unit()}, win);
    throw std::invalid_argument("unknown declared module: " + which);
}

}  // namespace k2local
