#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monomial.hpp"

namespace k2local {

// Exact linear combination of monomials with F9 coefficients.
class Vec {
public:
    std::map<Monomial, F9> terms;

    Vec() = default;
    Vec(F9 c, const Monomial& m) {
        if (!c.is_zero()) terms.emplace(m, c);
    }
    static Vec of(const Monomial& m) { return Vec(F9::one(), m); }

    bool is_zero() const { return terms.empty(); }

    void add_term(F9 c, const Monomial& m) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    Vec& operator+=(const Vec& o) {
        for (const auto& [m, c] : o.terms) add_term(c, m);
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { a += b; return a; }
    friend Vec operator-(Vec a, const Vec& b) {
        for (const auto& [m, c] : b.terms) a.add_term(-c, m);
        return a;
    }
    friend Vec operator*(F9 c, const Vec& v) {
        Vec out;
        for (const auto& [m, k] : v.terms) out.add_term(c * k, m);
        return out;
    }

    // coefficientwise Frobenius, the antilinear half of semilinear operators
    Vec frobenius() const {
        Vec out;
        for (const auto& [m, c] : terms) out.add_term(c.frobenius(), m);
        return out;
    }

    friend Vec mul(const Vec& a, const Vec& b, const RingSpec& ring) {
        Vec out;
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) {
                auto [c, m] = k2local::mul(ma, mb, ring);
                out.add_term(ca * cb * c, m);
            }
        return out;
    }

    Vec pow(int k, const RingSpec& ring) const {
        Vec acc = Vec::of(Monomial::unit());
        if (k >= 0) {
            for (int i = 0; i < k; ++i) acc = mul(acc, *this, ring);
            return acc;
        }
        // negative powers only for single-term invertible monomials
        if (terms.size() != 1) throw std::logic_error("Vec::pow: negative power of a sum");
        const auto& [m, c] = *terms.begin();
        Monomial p;
        for (std::size_t i = 0; i < kGenCount; ++i) p.e[i] = static_cast<int16_t>(m.e[i] * k);
        F9 cc = normalize(p, ring);
        return Vec(c.pow(k) * cc, p);
    }

    std::string str(const RingSpec& ring) const {
        if (terms.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms) {
            std::string cs = c.str();
            std::string ms = to_string(m, ring);
            if (!out.empty()) {
                if (cs[0] == '-') { out += " - "; cs = cs.substr(1); }
                else out += " + ";
            } else if (cs[0] == '-') {
                out += "-";
                cs = cs.substr(1);
            }
            if (cs == "1" && ms != "1") out += ms;
            else if (ms == "1") out += cs;
            else if (cs.find('+') != std::string::npos || cs.find('-') != std::string::npos)
                out += "(" + cs + ")*" + ms;
            else out += cs + "*" + ms;
        }
        return out;
    }

    friend bool operator==(const Vec&, const Vec&) = default;
};

inline Vec parse_vec(std::string_view s, const RingSpec& ring) {
    auto [c, m] = parse_monomial(s, ring);
    return Vec(c, m);
}

// Equality of basis lines: v == w or v == -w.
inline bool same_line(const Vec& a, const Vec& b) {
    if (a == b) return true;
    Vec neg = F9(-1) * b;
    return a == neg;
}

struct Window {
    int stem_lo = -60;
    int stem_hi = 230;
    int s_lo = 0;
    int s_hi = 40;

    bool contains(Bidegree d) const {
        int n = d.stem();
        return n >= stem_lo && n <= stem_hi && d.s >= s_lo && d.s <= s_hi;
    }
    bool contains_stem(int n) const { return n >= stem_lo && n <= stem_hi; }
    Window padded(int stem_pad, int s_pad) const {
        return Window{stem_lo - stem_pad, stem_hi + stem_pad, std::max(0, s_lo - s_pad), s_hi + s_pad};
    }
};

// Monomial-labeled bigraded vector space.  Bases are stored as Vecs so that
// computed subspaces (invariants, eigenspaces) fit the same shape; declared
// modules use single-monomial basis vectors.
struct BigradedModule {
    std::string name;
    RingSpec ring;
    std::map<Bidegree, std::vector<Vec>> buckets;

    const std::vector<Vec>* bucket(Bidegree d) const {
        auto it = buckets.find(d);
        return it == buckets.end() ? nullptr : &it->second;
    }
    std::size_t dim(Bidegree d) const {
        auto* b = bucket(d);
        return b ? b->size() : 0;
    }
    // dimension over F3: F9-labeled buckets count double
    std::size_t dim_f3(Bidegree d) const { return dim(d) * (ring.f9 ? 2 : 1); }

    void add_basis_monomial(const Monomial& m) { buckets[m.bidegree()].push_back(Vec::of(m)); }

    std::size_t total_dim() const {
        std::size_t n = 0;
        for (const auto& [d, b] : buckets) n += b.size();
        return n;
    }
};

// A base-ring generator for free_module_span: a single monomial whose
// exponent range follows its kind (polynomial ladder, invertible ladder in
// both directions, exterior flag).
struct SpanGen {
    Monomial m;
    enum class Range { polynomial, invertible, exterior } range;

    static SpanGen poly(const Monomial& m) { return {m, Range::polynomial}; }
    static SpanGen inv(const Monomial& m) { return {m, Range::invertible}; }
    static SpanGen ext(const Monomial& m) { return {m, Range::exterior}; }

    // infer from the generator kinds: invertible iff every gen is invertible
    static SpanGen infer(const Monomial& m) {
        bool all_inv = true, any_ext = false;
        for (std::size_t i = 0; i < kGenCount; ++i) {
            if (m.e[i] == 0) continue;
            auto k = info(static_cast<Gen>(i)).kind;
            if (k != GenKind::invertible) all_inv = false;
            if (k == GenKind::exterior) any_ext = true;
        }
        if (any_ext) return ext(m);
        return all_inv ? inv(m) : poly(m);
    }
};

// Spans (products of base-ring generators) * (module generators) inside the
// window.  Exterior base generators contribute exponent 0/1, polynomial ones
// climb until the window's s or stem range is exhausted, invertible ones run
// in both directions.
inline BigradedModule free_module_span(const std::string& name, const RingSpec& ring,
                                       const std::vector<SpanGen>& base,
                                       const std::vector<Monomial>& gens, const Window& win,
                                       std::optional<Bidegree> periodicity = std::nullopt) {
    if (periodicity) {
        int p = std::abs(periodicity->stem());
        if (p == 0 || win.stem_hi - win.stem_lo + 1 < p)
            throw std::invalid_argument("window not closed under the declared periodicity generator");
    }
    BigradedModule out;
    out.name = name;
    out.ring = ring;

    // bounds for one generator's exponent so that its contribution can still
    // be compensated into the window by the other generators; polynomial
    // towers climb with s, so the slack includes the worst stem-per-s ratio
    int reach = std::max(std::abs(win.stem_lo), std::abs(win.stem_hi)) + 7 * std::abs(win.s_hi) + 64;
    auto bounds = [&](const SpanGen& g) -> std::pair<int, int> {
        Bidegree d = g.m.bidegree();
        if (d.stem() == 0 && d.s == 0) throw std::invalid_argument("span generator with zero bidegree");
        switch (g.range) {
            case SpanGen::Range::exterior: return {0, 1};
            case SpanGen::Range::polynomial: {
                int hi = 1 << 14;
                if (d.s > 0) hi = std::min(hi, win.s_hi / d.s + 1);
                else if (d.stem() != 0) hi = std::min(hi, reach / std::abs(d.stem()) + 2);
                return {0, hi};
            }
            case SpanGen::Range::invertible: {
                int hi = d.stem() != 0 ? reach / std::abs(d.stem()) + 2 : win.s_hi / std::abs(d.s) + 1;
                return {-hi, hi};
            }
        }
        return {0, 0};
    };

    std::set<Monomial> seen;
    std::vector<std::pair<int, int>> bb;
    bb.reserve(base.size());
    for (const auto& g : base) bb.push_back(bounds(g));

    std::vector<int> exps(base.size(), 0);
    auto emit = [&](const Monomial& prod) {
        for (const auto& g : gens) {
            auto [c, m] = mul(prod, g, ring);
            if (c.is_zero()) continue;
            if (!win.contains(m.bidegree())) continue;
            if (seen.insert(m).second) out.add_basis_monomial(m);
        }
    };
    // depth-first product over base generator exponents
    auto rec = [&](auto&& self, std::size_t idx, const Monomial& acc, F9 coeff) -> void {
        if (coeff.is_zero()) return;
        if (idx == base.size()) {
            emit(acc);
            return;
        }
        auto [lo, hi] = bb[idx];
        for (int k = lo; k <= hi; ++k) {
            Monomial step;
            for (std::size_t i = 0; i < kGenCount; ++i)
                step.e[i] = static_cast<int16_t>(base[idx].m.e[i] * k);
            Monomial next = acc;
            for (std::size_t i = 0; i < kGenCount; ++i)
                next.e[i] = static_cast<int16_t>(next.e[i] + step.e[i]);
            // normalization deferred to emit-time mul(); skip early if the
            // partial s-degree already exceeds the window
            self(self, idx + 1, next, coeff);
        }
    };
    rec(rec, 0, Monomial::unit(), F9::one());

    // keep bucket bases deterministically ordered
    for (auto& [d, b] : out.buckets) {
        std::sort(b.begin(), b.end(), [](const Vec& x, const Vec& y) {
            return x.terms.begin()->first < y.terms.begin()->first;
        });
    }
    return out;
}

inline std::string module_json(const BigradedModule& mod) {
    std::ostringstream os;
    os << "{\"name\":\"" << mod.name << "\",\"field\":\"" << (mod.ring.f9 ? "F9" : "F3")
       << "\",\"buckets\":[";
    bool first = true;
    for (const auto& [d, basis] : mod.buckets) {
        if (basis.empty()) continue;
        if (!first) os << ",";
        first = false;
        os << "{\"s\":" << d.s << ",\"t\":" << d.t << ",\"basis\":[";
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (i) os << ",";
            os << "\"" << basis[i].str(mod.ring) << "\"";
        }
        os << "]}";
    }
    os << "]}";
    return os.str();
}

}  // namespace k2local
