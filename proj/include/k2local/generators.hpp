#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace k2local {

// Every graded generator the engine ever uses, in the fixed order that
// determines monomial comparison and printing.  Deterministic golden files
// depend on this order; do not reorder.
enum class Gen : uint8_t {
    c1, c2,          // factor tags for the two-centralizer product ring
    u,
    x1, x2, y1, y2,  // cyclic-group cohomology generators, one set per centralizer
    a1, a2, zeta1, zeta2,
    zeta, a35,
    w, v2half, v2,
    alpha, beta,
    b0, b36, e8, e36, e44, e48,  // resolution degree markers
    count_
};

inline constexpr std::size_t kGenCount = static_cast<std::size_t>(Gen::count_);

enum class GenKind : uint8_t {
    polynomial,      // exponents >= 0
    invertible,      // exponents in Z
    exterior,        // exponents in {0, 1}, square is zero
    tag,             // factor idempotent: exp in {0,1}, c1*c2 = 0
    marker,          // resolution marker: at most one per monomial
};

struct GenInfo {
    std::string_view name;
    int s;  // cohomological degree
    int t;  // internal degree
    GenKind kind;
};

inline constexpr std::array<GenInfo, kGenCount> kGens{{
    {"c1", 0, 0, GenKind::tag},
    {"c2", 0, 0, GenKind::tag},
    {"u", 0, -2, GenKind::invertible},
    {"x1", 1, 0, GenKind::exterior},
    {"x2", 1, 0, GenKind::exterior},
    {"y1", 2, 0, GenKind::polynomial},
    {"y2", 2, 0, GenKind::polynomial},
    {"a1", 1, 0, GenKind::exterior},
    {"a2", 1, 0, GenKind::exterior},
    {"zeta1", 1, 0, GenKind::exterior},
    {"zeta2", 1, 0, GenKind::exterior},
    {"zeta", 1, 0, GenKind::exterior},
    {"a35", 1, 36, GenKind::exterior},
    {"w", 0, 8, GenKind::invertible},
    {"v2half", 0, 8, GenKind::invertible},
    {"v2", 0, 16, GenKind::invertible},
    {"alpha", 1, 4, GenKind::exterior},
    {"beta", 2, 12, GenKind::polynomial},
    {"b0", 0, 0, GenKind::marker},
    {"b36", 0, 36, GenKind::marker},
    {"e8", 0, 8, GenKind::marker},
    {"e36", 0, 36, GenKind::marker},
    {"e44", 0, 44, GenKind::marker},
    {"e48", 0, 48, GenKind::marker},
}};

inline constexpr const GenInfo& info(Gen g) { return kGens[static_cast<std::size_t>(g)]; }
inline constexpr std::size_t gid(Gen g) { return static_cast<std::size_t>(g); }

// Koszul parity.  Markers use the filtration parity of the column they mark;
// only consistency matters for dimension counts.
inline constexpr bool is_odd(Gen g) {
    switch (g) {
        case Gen::b36: return true;  // filtration 1
        case Gen::e8: return true;   // filtration 1
        case Gen::e48: return true;  // filtration 3
        default: return info(g).s % 2 != 0;
    }
}

inline std::optional<Gen> gen_by_name(std::string_view name) {
    for (std::size_t i = 0; i < kGenCount; ++i)
        if (kGens[i].name == name) return static_cast<Gen>(i);
    return std::nullopt;
}

// Which rewrite hooks a ring applies during normalization.
struct RingSpec {
    std::string name;
    bool f9 = true;          // coefficient field of the bases (F9 or F3)
    bool fold_w = false;     // w^2 -> -v2half^2 (rings carrying both w and v2^{1/2})
    bool product_tags = false;  // two-centralizer product: c1/c2 bookkeeping

    // polynomial-kind generators whose exponents should nonetheless be allowed
    // to be negative never exist; enforced in normalization
};

inline constexpr bool is_subscript1(Gen g) {
    return g == Gen::x1 || g == Gen::y1 || g == Gen::a1 || g == Gen::zeta1;
}
inline constexpr bool is_subscript2(Gen g) {
    return g == Gen::x2 || g == Gen::y2 || g == Gen::a2 || g == Gen::zeta2;
}
inline constexpr bool is_marker(Gen g) { return info(g).kind == GenKind::marker; }

// Filtration of a resolution marker within its column.
inline constexpr int marker_filtration(Gen g) {
    switch (g) {
        case Gen::b0: return 0;
        case Gen::b36: return 1;
        case Gen::e8: return 1;
        case Gen::e36: return 2;
        case Gen::e44: return 2;
        case Gen::e48: return 3;
        default: throw std::logic_error("marker_filtration: not a marker");
    }
}

}  // namespace k2local
