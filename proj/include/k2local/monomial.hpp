#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "generators.hpp"

namespace k2local {

struct Bidegree {
    int s = 0;
    int t = 0;
    friend constexpr bool operator==(Bidegree, Bidegree) = default;
    friend constexpr auto operator<=>(Bidegree, Bidegree) = default;
    Bidegree operator+(Bidegree o) const { return {s + o.s, t + o.t}; }
    int stem() const { return t - s; }
};

// A formal product of graded generators with integer exponents.  The
// coefficient lives outside (see Vec); a Monomial is a pure exponent vector
// and serves as a basis label.
struct Monomial {
    std::array<int16_t, kGenCount> e{};

    static Monomial unit() { return Monomial{}; }

    int exp(Gen g) const { return e[gid(g)]; }
    void set(Gen g, int k) { e[gid(g)] = static_cast<int16_t>(k); }
    void add(Gen g, int k) { e[gid(g)] = static_cast<int16_t>(e[gid(g)] + k); }

    bool is_unit() const {
        return std::all_of(e.begin(), e.end(), [](int16_t x) { return x == 0; });
    }

    Bidegree bidegree() const {
        Bidegree d;
        for (std::size_t i = 0; i < kGenCount; ++i) {
            d.s += e[i] * info(static_cast<Gen>(i)).s;
            d.t += e[i] * info(static_cast<Gen>(i)).t;
        }
        return d;
    }

    int stem() const { return bidegree().stem(); }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    // lexicographic with higher powers of earlier generators first, so c1
    // precedes c2 and the unit sorts last within a bucket
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < kGenCount; ++i)
            if (a.e[i] != b.e[i]) return b.e[i] <=> a.e[i];
        return std::strong_ordering::equal;
    }
};

// Koszul sign of concatenating factor lists a then b and resorting into the
// fixed generator order: each odd-degree factor of b moves past the odd
// factors of a that sit later in the order.
inline int koszul_sign(const Monomial& a, const Monomial& b) {
    long swaps = 0;
    for (std::size_t i = 0; i < kGenCount; ++i) {
        if (!is_odd(static_cast<Gen>(i)) || b.e[i] == 0) continue;
        long odd_after = 0;
        for (std::size_t j = i + 1; j < kGenCount; ++j)
            if (is_odd(static_cast<Gen>(j)) && a.e[j] != 0) odd_after += std::abs(a.e[j]);
        swaps += static_cast<long>(std::abs(b.e[i])) * odd_after;
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

// Canonicalize in place under the ring's rewrite hooks.  Returns the
// coefficient adjustment, or 0 when the monomial collapses (exterior square,
// mixed centralizer factors).  Throws on a negative power of a polynomial
// generator, which no legitimate construction produces.
inline F9 normalize(Monomial& m, const RingSpec& ring) {
    F9 c = F9::one();

    bool s1 = false, s2 = false;
    for (std::size_t i = 0; i < kGenCount; ++i) {
        Gen g = static_cast<Gen>(i);
        if (m.e[i] != 0 && is_subscript1(g)) s1 = true;
        if (m.e[i] != 0 && is_subscript2(g)) s2 = true;
    }
    if (s1 && s2) return F9::zero();
    if (ring.product_tags) {
        if (s1) m.set(Gen::c1, 1);
        if (s2) m.set(Gen::c2, 1);
        if (m.exp(Gen::c1) > 1) m.set(Gen::c1, 1);  // idempotent
        if (m.exp(Gen::c2) > 1) m.set(Gen::c2, 1);
        if (m.exp(Gen::c1) > 0 && m.exp(Gen::c2) > 0) return F9::zero();
    }

    for (std::size_t i = 0; i < kGenCount; ++i) {
        Gen g = static_cast<Gen>(i);
        switch (info(g).kind) {
            case GenKind::exterior:
            case GenKind::marker:
                if (m.e[i] >= 2) return F9::zero();
                if (m.e[i] < 0) throw std::logic_error(std::string("negative exterior power of ") + std::string(info(g).name));
                break;
            case GenKind::polynomial:
                if (m.e[i] < 0) throw std::logic_error(std::string("negative power of ") + std::string(info(g).name));
                break;
            default:
                break;
        }
    }

    if (ring.fold_w) {
        int k = m.exp(Gen::w);
        if (k < 0 || k > 1) {
            int r = ((k % 2) + 2) % 2;
            int q = (k - r) / 2;  // w^2 = -v2half^2
            m.set(Gen::w, r);
            m.add(Gen::v2half, 2 * q);
            if (q % 2 != 0) c = -c;
        }
    }
    return c;
}

// ---- printing ----------------------------------------------------------

namespace detail {
inline void append_power(std::string& out, std::string_view name, long k) {
    if (k == 0) return;
    if (!out.empty()) out += '*';
    out += name;
    if (k != 1) {
        out += '^';
        out += std::to_string(k);
    }
}
}  // namespace detail

// Deterministic display form.  In rings that identify w^2 with -v2, an odd
// power of w absorbs the even v2half part (the charts only ever show odd
// w-powers), and bare even v2half powers print as v2^k.
inline std::string to_string(const Monomial& m, const RingSpec& ring) {
    std::string out;
    for (std::size_t i = 0; i < kGenCount; ++i) {
        Gen g = static_cast<Gen>(i);
        long k = m.e[i];
        if (k == 0) continue;
        if (ring.fold_w) {
            if (g == Gen::w) {
                long j = m.exp(Gen::v2half);
                if (j % 2 == 0) {
                    detail::append_power(out, "w", k + j);
                    continue;
                }
                detail::append_power(out, "w", k);
                continue;
            }
            if (g == Gen::v2half) {
                long j = k;
                if (m.exp(Gen::w) == 1 && j % 2 == 0) continue;  // folded into w
                if (j % 2 == 0) {
                    detail::append_power(out, "v2", j / 2);
                } else {
                    detail::append_power(out, "v2half", j);
                }
                continue;
            }
        }
        detail::append_power(out, info(g).name, k);
    }
    if (out.empty()) out = "1";
    return out;
}

// ---- parsing -----------------------------------------------------------

// Parses "a35*w^-7*beta^5" style products into (sign, factor list).  "v2^k"
// is accepted in any ring and becomes v2half^(2k) where v2half is in play,
// i.e. in fold_w rings.
struct ParsedFactor {
    Gen g;
    long exp;
};

inline std::vector<ParsedFactor> parse_factors(std::string_view s, int& sign) {
    std::vector<ParsedFactor> out;
    sign = 1;
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; };
    skip_ws();
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        if (s[pos] == '-') sign = -1;
        ++pos;
        skip_ws();
    }
    while (pos < s.size()) {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        std::string name(s.substr(start, pos - start));
        if (name.empty()) throw std::invalid_argument("monomial parse error at '" + std::string(s.substr(pos)) + "'");
        if (name == "1") {  // literal unit factor
            skip_ws();
            if (pos < s.size()) {
                if (s[pos] != '*') throw std::invalid_argument("expected '*' in monomial string");
                ++pos;
            }
            continue;
        }
        long exp = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            std::size_t estart = pos;
            if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            exp = std::stol(std::string(s.substr(estart, pos - estart)));
        }
        auto g = gen_by_name(name);
        if (!g) throw std::invalid_argument("unknown generator '" + name + "'");
        out.push_back({*g, exp});
        skip_ws();
        if (pos < s.size()) {
            if (s[pos] != '*') throw std::invalid_argument("expected '*' in monomial string");
            ++pos;
        }
    }
    return out;
}

// Full parse + normalize; returns the coefficient (sign and rewrite signs).
inline std::pair<F9, Monomial> parse_monomial(std::string_view s, const RingSpec& ring) {
    if (s == "1") return {F9::one(), Monomial::unit()};
    int sign = 1;
    auto factors = parse_factors(s, sign);
    Monomial m;
    F9 c = sign < 0 ? F9(-1) : F9::one();
    // build left-to-right so the Koszul signs follow the written order
    for (const auto& f : factors) {
        Monomial step;
        Gen g = f.g;
        long exp = f.exp;
        if (ring.fold_w && g == Gen::v2) {
            g = Gen::v2half;
            exp *= 2;
        }
        step.set(g, static_cast<int>(exp));
        c *= F9(koszul_sign(m, step));
        for (std::size_t i = 0; i < kGenCount; ++i) m.e[i] = static_cast<int16_t>(m.e[i] + step.e[i]);
    }
    c *= normalize(m, ring);
    return {c, m};
}

// product of labeled monomials: (1,a)*(1,b) with Koszul sign and rewrites
inline std::pair<F9, Monomial> mul(const Monomial& a, const Monomial& b, const RingSpec& ring) {
    Monomial m;
    for (std::size_t i = 0; i < kGenCount; ++i) m.e[i] = static_cast<int16_t>(a.e[i] + b.e[i]);
    F9 c{koszul_sign(a, b)};
    c *= normalize(m, ring);
    return {c, m};
}

}  // namespace k2local
