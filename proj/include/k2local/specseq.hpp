#pragma once

#include <functional>

#include "cohomology.hpp"
#include "rules.hpp"

namespace k2local {

struct RunError {
    std::string message;
};

struct RunReport {
    bool ok = true;
    std::vector<RunError> errors;
    std::vector<std::string> warnings;  // boundary truncation notices
    void fail(std::string msg) {
        ok = false;
        errors.push_back({std::move(msg)});
    }
    void warn(std::string msg) { warnings.push_back(std::move(msg)); }
    std::string first() const { return errors.empty() ? "" : errors.front().message; }
};

using GradeFn = std::function<Bidegree(const Monomial&)>;

inline Bidegree standard_grade(const Monomial& m) { return m.bidegree(); }

// Page state of a rule-driven spectral sequence.  Every bucket keeps its E2
// monomial coordinates together with the surviving cycle space Z and boundary
// space B; the page currently represented is Z/B.
class SpectralSequence {
public:
    RingSpec ring;
    GradeFn grade = standard_grade;
    Window inner, padded;
    int start_page = 2;
    int last_page = 2;

    struct Bucket {
        std::vector<Monomial> monos;
        std::map<Monomial, std::size_t> index;
        F3Matrix Z;  // rows: cycle coordinates
        F3Matrix B;  // rows: boundary coordinates
        bool tainted = false;

        std::size_t cols(bool f9) const { return monos.size() * (f9 ? 2 : 1); }
    };
    std::map<Bidegree, Bucket> buckets;

    static SpectralSequence from_module(const BigradedModule& e2, const Window& win, int start,
                                        int last, GradeFn grade_fn = standard_grade) {
        SpectralSequence ss;
        ss.ring = e2.ring;
        ss.grade = std::move(grade_fn);
        ss.inner = win;
        int pad = 2 * last;
        ss.padded = win.padded(pad, pad);
        ss.start_page = start;
        ss.last_page = last;
        for (const auto& [d, basis] : e2.buckets) {
            for (const auto& v : basis) {
                if (v.terms.size() != 1)
                    throw std::invalid_argument("spectral sequence input needs monomial bases");
                const Monomial& m = v.terms.begin()->first;
                Bidegree pd = ss.grade(m);
                if (!ss.padded.contains(pd)) continue;
                auto& bucket = ss.buckets[pd];
                if (bucket.index.emplace(m, bucket.monos.size()).second) bucket.monos.push_back(m);
            }
        }
        for (auto& [d, bucket] : ss.buckets) {
            std::sort(bucket.monos.begin(), bucket.monos.end());
            bucket.index.clear();
            for (std::size_t i = 0; i < bucket.monos.size(); ++i) bucket.index[bucket.monos[i]] = i;
            std::size_t n = bucket.cols(ss.ring.f9);
            bucket.Z = F3Matrix(n, n);
            for (std::size_t i = 0; i < n; ++i) bucket.Z.at(i, i) = 1;
            bucket.B = F3Matrix(0, n);
        }
        return ss;
    }

    // add one monomial directly (used by the resolution builders)
    void insert(const Monomial& m) {
        Bidegree pd = grade(m);
        if (!padded.contains(pd)) return;
        auto& bucket = buckets[pd];
        if (bucket.index.emplace(m, bucket.monos.size()).second) bucket.monos.push_back(m);
    }
    void freeze() {
        for (auto& [d, bucket] : buckets) {
            std::sort(bucket.monos.begin(), bucket.monos.end());
            bucket.index.clear();
            for (std::size_t i = 0; i < bucket.monos.size(); ++i) bucket.index[bucket.monos[i]] = i;
            std::size_t n = bucket.cols(ring.f9);
            bucket.Z = F3Matrix(n, n);
            for (std::size_t i = 0; i < n; ++i) bucket.Z.at(i, i) = 1;
            bucket.B = F3Matrix(0, n);
        }
    }

    // full-coordinate differential matrix of page r out of bucket at d;
    // truncated is set when an instance leaves the stored grid
    F3Matrix diff_matrix(const std::vector<DifferentialRule>& rules, int r, Bidegree d,
                         const Bucket& src, RunReport& rep, bool& truncated) {
        Bidegree td{d.s + r, d.t + r - 1};
        auto it = buckets.find(td);
        const Bucket* tgt = it == buckets.end() ? nullptr : &it->second;
        std::size_t tcols = tgt ? tgt->cols(ring.f9) : 0;
        F3Matrix D(src.cols(ring.f9), tcols);
        int mult = ring.f9 ? 2 : 1;
        for (std::size_t mi = 0; mi < src.monos.size(); ++mi) {
            Vec dv = apply_rules(rules, r, src.monos[mi], ring);
            if (dv.is_zero()) continue;
            for (const auto& [tm, c] : dv.terms) {
                Bidegree realtd = grade(tm);
                if (realtd != td) {
                    rep.fail("rule target at wrong bidegree: d" + std::to_string(r) + " of " +
                             to_string(src.monos[mi], ring) + " hits " + to_string(tm, ring) +
                             " at (s=" + std::to_string(realtd.s) + ",t=" + std::to_string(realtd.t) +
                             "), expected (s=" + std::to_string(td.s) + ",t=" + std::to_string(td.t) + ")");
                    continue;
                }
                if (!tgt || !tgt->index.count(tm)) {
                    if (!padded.contains(td)) {
                        truncated = true;  // boundary truncation, not an error
                        continue;
                    }
                    rep.fail("rule target absent from page: d" + std::to_string(r) + "(" +
                             to_string(src.monos[mi], ring) + ") = " + to_string(tm, ring));
                    continue;
                }
                std::size_t tj = tgt->index.at(tm);
                // coefficient c on the (m, part) rows
                D.at(mult * mi, mult * tj) = F3Matrix::norm(D.at(mult * mi, mult * tj) + c.c0.v);
                if (ring.f9) {
                    D.at(mult * mi, mult * tj + 1) = F3Matrix::norm(D.at(mult * mi, mult * tj + 1) + c.c1.v);
                    F9 oc = F9::om() * c;
                    D.at(mult * mi + 1, mult * tj) = F3Matrix::norm(D.at(mult * mi + 1, mult * tj) + oc.c0.v);
                    D.at(mult * mi + 1, mult * tj + 1) =
                        F3Matrix::norm(D.at(mult * mi + 1, mult * tj + 1) + oc.c1.v);
                }
            }
        }
        return D;
    }

    // advance from E_r to E_{r+1} for every bucket
    void turn_page(const std::vector<DifferentialRule>& rules, int r, RunReport& rep) {
        bool any = false;
        for (const auto& rule : rules)
            if (rule.page == r) any = true;
        if (!any) return;

        struct Update {
            F3Matrix newZ, incoming;
            bool taint = false;
        };
        std::map<Bidegree, Update> updates;

        for (auto& [d, bucket] : buckets) {
            if (bucket.monos.empty()) continue;
            bool truncated = false;
            F3Matrix D = diff_matrix(rules, r, d, bucket, rep, truncated);
            Bidegree td{d.s + r, d.t + r - 1};
            auto tit = buckets.find(td);
            Bucket* tgt = tit == buckets.end() ? nullptr : &tit->second;

            bool has_diff = false;
            for (int8_t x : D.a)
                if (x != 0) { has_diff = true; break; }

            auto& up = updates[d];
            if (up.newZ.cols == 0) up.newZ = F3Matrix(0, bucket.cols(ring.f9));
            if (truncated) up.taint = true;  // kept classes may be spurious here

            if (!has_diff || !tgt) {
                up.newZ = bucket.Z;
                continue;
            }

            RowSpace btgt(tgt->B);
            // rows of Z whose image lies in the target's boundary space
            F3Matrix residues(0, tgt->cols(ring.f9));
            for (std::size_t i = 0; i < bucket.Z.rows; ++i) {
                std::vector<int8_t> img(D.cols, 0);
                for (std::size_t j = 0; j < D.rows; ++j) {
                    int8_t f = bucket.Z.at(i, j);
                    if (f == 0) continue;
                    for (std::size_t k = 0; k < D.cols; ++k)
                        img[k] = F3Matrix::norm(img[k] + f * D.at(j, k));
                }
                residues.append_row(btgt.residue(img));
            }
            F3Matrix ker = kernel(residues);
            F3Matrix newZ(0, bucket.cols(ring.f9));
            for (std::size_t i = 0; i < ker.rows; ++i) {
                std::vector<int8_t> row(bucket.cols(ring.f9), 0);
                for (std::size_t j = 0; j < ker.cols; ++j) {
                    int8_t f = ker.at(i, j);
                    if (f == 0) continue;
                    for (std::size_t k = 0; k < row.size(); ++k)
                        row[k] = F3Matrix::norm(row[k] + f * bucket.Z.at(j, k));
                }
                newZ.append_row(row);
            }
            up.newZ = newZ;

            // boundaries arriving in the target
            auto& tup = updates[td];
            if (tup.incoming.cols == 0) tup.incoming = F3Matrix(0, tgt->cols(ring.f9));
            for (std::size_t i = 0; i < bucket.Z.rows; ++i) {
                std::vector<int8_t> img(D.cols, 0);
                bool nz = false;
                for (std::size_t j = 0; j < D.rows; ++j) {
                    int8_t f = bucket.Z.at(i, j);
                    if (f == 0) continue;
                    for (std::size_t k = 0; k < D.cols; ++k) {
                        img[k] = F3Matrix::norm(img[k] + f * D.at(j, k));
                        if (img[k]) nz = true;
                    }
                }
                if (nz) tup.incoming.append_row(img);
            }

            // well-definedness: boundaries must map into boundaries
            for (std::size_t i = 0; i < bucket.B.rows; ++i) {
                std::vector<int8_t> img(D.cols, 0);
                bool nz = false;
                for (std::size_t j = 0; j < D.rows; ++j) {
                    int8_t f = bucket.B.at(i, j);
                    if (f == 0) continue;
                    for (std::size_t k = 0; k < D.cols; ++k) {
                        img[k] = F3Matrix::norm(img[k] + f * D.at(j, k));
                        if (img[k]) nz = true;
                    }
                }
                if (nz && !btgt.contains(img))
                    rep.fail("rule set is not well defined on page " + std::to_string(r));
            }
        }

        for (auto& [d, bucket] : buckets) {
            auto it = updates.find(d);
            if (it == updates.end()) continue;
            auto& up = it->second;
            if (up.newZ.cols != 0 || up.newZ.rows != 0) bucket.Z = up.newZ;
            if (up.taint) bucket.tainted = true;
            for (std::size_t i = 0; i < up.incoming.rows; ++i) {
                std::vector<int8_t> row(up.incoming.cols);
                for (std::size_t j = 0; j < up.incoming.cols; ++j) row[j] = up.incoming.at(i, j);
                bucket.B.append_row(row);
            }
        }
    }

    void run(const std::vector<DifferentialRule>& rules, RunReport& rep) {
        for (int r = start_page; r <= last_page; ++r) turn_page(rules, r, rep);
        std::size_t tainted = 0;
        bool inner_tainted = false;
        for (const auto& [d, bucket] : buckets)
            if (bucket.tainted) {
                ++tainted;
                if (inner.contains(d)) inner_tainted = true;
            }
        if (tainted)
            rep.warn("differentials truncated at the window boundary in " + std::to_string(tainted) +
                     " padding buckets");
        if (inner_tainted)
            rep.fail("boundary truncation reached the reported window; enlarge the padding");
    }

    // current page as a module over the inner window
    BigradedModule page_module() const {
        BigradedModule out;
        out.ring = ring;
        out.ring.f9 = false;  // representatives are F3-classes
        for (const auto& [d, bucket] : buckets) {
            if (!inner.contains(d)) continue;
            if (bucket.monos.empty()) continue;
            F3Matrix reps = quotient_basis(bucket.Z, bucket.B);
            if (reps.rows == 0) continue;
            std::vector<Vec> vecs;
            int mult = ring.f9 ? 2 : 1;
            for (std::size_t i = 0; i < reps.rows; ++i) {
                Vec v;
                for (std::size_t mi = 0; mi < bucket.monos.size(); ++mi) {
                    F9 c(F3(reps.at(i, mult * mi)), F3(ring.f9 ? reps.at(i, mult * mi + 1) : 0));
                    v.add_term(c, bucket.monos[mi]);
                }
                if (!v.is_zero()) vecs.push_back(v);
            }
            if (!vecs.empty()) out.buckets[d] = std::move(vecs);
        }
        return out;
    }
};

// ---- rule validation --------------------------------------------------------

// Bidegree-shift correctness, d∘d = 0, and compatibility of the declared
// linearity multipliers, instance by instance over the window.
inline RunReport validate_rules(const std::vector<DifferentialRule>& rules, const BigradedModule& e2,
                                const Window& win, GradeFn grade = standard_grade) {
    RunReport rep;
    RingSpec ring = e2.ring;

    std::set<Monomial> page_monos;
    for (const auto& [d, basis] : e2.buckets)
        for (const auto& v : basis)
            if (!v.terms.empty()) page_monos.insert(v.terms.begin()->first);

    for (const auto& [d, basis] : e2.buckets) {
        if (!win.contains(d)) continue;
        for (const auto& v : basis) {
            const Monomial& m = v.terms.begin()->first;
            for (const auto& rule : rules) {
                auto hit = match_rule(rule, m, ring);
                if (!hit) continue;
                Bidegree ds = grade(m), dt = grade(hit->target);
                if (dt.s - ds.s != rule.page || dt.t - ds.t != rule.page - 1) {
                    rep.fail("bidegree violation for instance i=" + std::to_string(hit->i) + " of '" +
                             rule.text + "': source (s=" + std::to_string(ds.s) + ",t=" + std::to_string(ds.t) +
                             ") target (s=" + std::to_string(dt.s) + ",t=" + std::to_string(dt.t) + ")");
                    continue;
                }
                if (win.contains(dt) && !page_monos.count(hit->target))
                    rep.fail("target absent for instance i=" + std::to_string(hit->i) + " of '" + rule.text +
                             "': " + to_string(hit->target, ring));
                // d after d vanishes on the same page
                Vec dd = apply_rules(rules, rule.page, hit->target, ring);
                if (!dd.is_zero())
                    rep.fail("d∘d nonzero on page " + std::to_string(rule.page) + " at " + to_string(m, ring));
                // declared multipliers commute with the rule (up to sign)
                for (const auto& mu : rule.linear) {
                    Monomial mm = m;
                    mm.add(mu.g, mu.step);
                    Monomial c1 = mm;
                    if (normalize(c1, ring).is_zero()) continue;
                    Vec lhs = apply_rules(rules, rule.page, c1, ring);
                    Monomial tt = hit->target;
                    tt.add(mu.g, mu.step);
                    Monomial c2 = tt;
                    F9 cc = normalize(c2, ring);
                    bool same_support =
                        (cc.is_zero() && lhs.is_zero()) ||
                        (lhs.terms.size() == 1 && lhs.terms.begin()->first == c2);
                    if (!same_support)
                        rep.fail("multiplier " + std::string(info(mu.g).name) + " does not commute with '" +
                                 rule.text + "' at " + to_string(m, ring));
                }
            }
        }
    }
    return rep;
}

// ---- homotopy tables ---------------------------------------------------------

struct TableClass {
    Vec rep;
    int filtration = 0;
    std::string label;
    std::string toda;  // bracket annotation, if any
};

struct TableEdge {
    int stem = 0;
    std::size_t idx = 0, to_idx = 0;
    char kind = 'b';     // 'a' = alpha (stem +3), 'b' = beta (stem +10)
    bool exotic = false;  // bracket-induced multiplication, not a monomial product
};

struct HomotopyTable {
    std::string name;
    RingSpec ring;
    std::map<int, std::vector<TableClass>> classes;
    std::vector<TableEdge> edges;
    int stem_lo = 0, stem_hi = 0;
    int period = 0;
    std::string period_label;

    std::size_t dim(int n) const {
        auto it = classes.find(n);
        return it == classes.end() ? 0 : it->second.size();
    }
    std::size_t total() const {
        std::size_t k = 0;
        for (const auto& [n, c] : classes) k += c.size();
        return k;
    }
};

inline HomotopyTable table_from_module(const BigradedModule& einf, const Window& win,
                                       const std::string& name) {
    HomotopyTable t;
    t.name = name;
    t.ring = einf.ring;
    t.stem_lo = win.stem_lo;
    t.stem_hi = win.stem_hi;
    for (const auto& [d, basis] : einf.buckets) {
        if (!win.contains(d)) continue;
        for (const auto& v : basis) {
            TableClass c;
            c.rep = v;
            c.filtration = d.s;
            c.label = v.str(einf.ring);
            t.classes[d.stem()].push_back(std::move(c));
        }
    }
    for (auto& [n, cl] : t.classes)
        std::sort(cl.begin(), cl.end(), [](const TableClass& a, const TableClass& b) {
            if (a.filtration != b.filtration) return a.filtration < b.filtration;
            return a.label < b.label;
        });
    return t;
}

// multiplication edges: alpha raises stems by 3, beta by 10; an edge exists
// when the monomial product survives
inline void attach_multiplication_edges(HomotopyTable& t) {
    auto single = [](const Vec& v) -> const Monomial* {
        return v.terms.size() == 1 ? &v.terms.begin()->first : nullptr;
    };
    for (const auto& [n, cls] : t.classes) {
        for (std::size_t i = 0; i < cls.size(); ++i) {
            const Monomial* m = single(cls[i].rep);
            if (!m) continue;
            for (auto [g, stemshift, kind] : {std::tuple{Gen::alpha, 3, 'a'}, std::tuple{Gen::beta, 10, 'b'}}) {
                Monomial prod = *m;
                prod.add(g, 1);
                Monomial norm = prod;
                if (normalize(norm, t.ring).is_zero()) continue;
                auto it = t.classes.find(n + stemshift);
                if (it == t.classes.end()) continue;
                for (std::size_t j = 0; j < it->second.size(); ++j) {
                    const Monomial* tm = single(it->second[j].rep);
                    if (tm && *tm == norm) {
                        t.edges.push_back({n, i, j, kind, false});
                        break;
                    }
                }
            }
        }
    }
}

// Toda bracket annotations on the classes detected by alpha*w^(i+3), with the
// induced extra alpha-multiplication landing on beta^3*w^i.
inline void attach_toda_brackets(HomotopyTable& t) {
    for (auto& [n, cls] : t.classes) {
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (cls[i].rep.terms.size() != 1) continue;
            const Monomial& m = cls[i].rep.terms.begin()->first;
            if (m.exp(Gen::alpha) != 1 || m.exp(Gen::beta) != 0) continue;
            int wexp = m.exp(Gen::w);
            if (m.exp(Gen::zeta) || m.exp(Gen::a35) || m.exp(Gen::v2half)) continue;
            int j = ((wexp % 9) + 9) % 9;
            if (j < 3 || j > 5) continue;
            cls[i].toda = "z" + std::to_string(j - 3) + (wexp >= 9 || wexp < 0 ? "*w^" + std::to_string(wexp - j) : "");
            // alpha * z_i = beta^3 w^i
            Monomial target;
            target.set(Gen::w, wexp - 3);
            target.set(Gen::beta, 3);
            auto it = t.classes.find(n + 3);
            if (it == t.classes.end()) continue;
            for (std::size_t k = 0; k < it->second.size(); ++k) {
                if (it->second[k].rep.terms.size() == 1 && it->second[k].rep.terms.begin()->first == target) {
                    t.edges.push_back({n, i, k, 'a', true});
                    break;
                }
            }
        }
    }
}

// Doubles a table against an exterior class of the given stem: the second
// copy is shifted and carries the class's label as a prefix.
inline HomotopyTable tensor_with_exterior(const HomotopyTable& t, int gen_stem,
                                          const std::string& gen_label) {
    HomotopyTable out;
    out.name = t.name + " (x) L(" + gen_label + ")";
    out.ring = t.ring;
    out.stem_lo = t.stem_lo + std::min(0, gen_stem);
    out.stem_hi = t.stem_hi + std::max(0, gen_stem);
    for (const auto& [n, cls] : t.classes) {
        for (const auto& c : cls) {
            out.classes[n].push_back(c);
            TableClass shifted = c;
            shifted.filtration += 1;
            shifted.label = gen_label + "*" + c.label;
            out.classes[n + gen_stem].push_back(shifted);
        }
    }
    return out;
}

struct CheckReport {
    bool ok = true;
    std::vector<int> failing_stems;
    std::string detail;
};

// dim pi_n = dim pi_{n+period} over the comparable sub-range
inline CheckReport check_periodicity(const HomotopyTable& t, int period, const Window& win) {
    CheckReport rep;
    int lo = std::max(t.stem_lo, win.stem_lo);
    int hi = std::min(t.stem_hi, win.stem_hi);
    if (hi - lo + 1 < 2 * std::abs(period)) {
        rep.ok = false;
        rep.detail = "window does not span two periods";
        return rep;
    }
    for (int n = lo; n + period <= hi; ++n) {
        if (t.dim(n) != t.dim(n + period)) {
            rep.ok = false;
            rep.failing_stems.push_back(n);
        }
    }
    if (!rep.ok && rep.detail.empty())
        rep.detail = "first failing stem " + std::to_string(rep.failing_stems.front());
    return rep;
}

// dim pi_n = dim pi_{shift-n}: graded F3-duality with a total shift
inline CheckReport check_self_duality(const HomotopyTable& t, int shift, const Window& win) {
    CheckReport rep;
    int lo = std::max(t.stem_lo, win.stem_lo);
    int hi = std::min(t.stem_hi, win.stem_hi);
    for (int n = lo; n <= hi; ++n) {
        int m = shift - n;
        if (m < t.stem_lo || m > t.stem_hi) continue;
        if (!win.contains_stem(m)) continue;
        if (t.dim(n) != t.dim(m)) {
            rep.ok = false;
            rep.failing_stems.push_back(n);
        }
    }
    if (!rep.ok) rep.detail = "first failing stem " + std::to_string(rep.failing_stems.front());
    return rep;
}

// ---- driver -----------------------------------------------------------------

struct SpecSeqResult {
    BigradedModule einf;
    HomotopyTable table;
    RunReport report;
};

inline SpecSeqResult run_spectral_sequence(const BigradedModule& e2,
                                           const std::vector<DifferentialRule>& rules, const Window& win,
                                           const std::string& table_name, int start_page = 2) {
    int last = start_page;
    for (const auto& r : rules) last = std::max(last, r.page);
    SpecSeqResult out;
    auto ss = SpectralSequence::from_module(e2, win, start_page, last);
    ss.run(rules, out.report);
    out.einf = ss.page_module();
    out.einf.name = e2.name + " E-infinity";
    out.einf.ring = e2.ring;
    out.einf.ring.f9 = false;
    out.table = table_from_module(out.einf, win, table_name);
    attach_multiplication_edges(out.table);
    attach_toda_brackets(out.table);
    return out;
}

// Builds the named page over a window enlarged by the differential reach, so
// that the reported range is free of boundary artifacts.
inline SpecSeqResult run_declared_page(const std::string& which, const std::vector<DifferentialRule>& rules,
                                       const Window& win, const std::string& table_name,
                                       int start_page = 2) {
    int last = start_page;
    for (const auto& r : rules) last = std::max(last, r.page);
    int pad = 2 * last;
    auto e2 = declared_module(which, win.padded(pad, pad));
    return run_spectral_sequence(e2, rules, win, table_name, start_page);
}

}  // namespace k2local
