#pragma once

#include <map>
#include <string>

#include "module.hpp"

namespace k2local {

// A multiplicative (semi)linear operator given by its images on generators.
// F9-antilinear operators twist scalars by Frobenius; both kinds are
// F3-linear, which is what the kernel computations use.
struct ActionOp {
    std::string name;
    bool antilinear = false;
    std::map<Gen, Vec> images;  // generators absent from the map are fixed

    Vec image_of(Gen g) const {
        auto it = images.find(g);
        if (it != images.end()) return it->second;
        Monomial m;
        m.set(g, 1);
        return Vec::of(m);
    }

    Vec apply(const Monomial& m, F9 coeff, const RingSpec& ring) const {
        Vec acc(antilinear ? coeff.frobenius() : coeff, Monomial::unit());
        // expand generator by generator in the fixed order; signs are
        // consistent because every application uses the same order
        for (std::size_t i = 0; i < kGenCount; ++i) {
            int k = m.e[i];
            if (k == 0) continue;
            Vec img = image_of(static_cast<Gen>(i));
            acc = mul(acc, img.pow(k, ring), ring);
        }
        return acc;
    }

    Vec apply(const Vec& v, const RingSpec& ring) const {
        Vec out;
        for (const auto& [m, c] : v.terms) out += apply(m, c, ring);
        return out;
    }
};

inline ActionOp compose(const ActionOp& f, const ActionOp& g, const RingSpec& ring) {
    // (f∘g): apply g first
    ActionOp out;
    out.name = f.name + "*" + g.name;
    out.antilinear = f.antilinear != g.antilinear;
    for (std::size_t i = 0; i < kGenCount; ++i) {
        Gen gen = static_cast<Gen>(i);
        Vec gi = g.image_of(gen);
        Vec fi = f.apply(gi, ring);
        Monomial id;
        id.set(gen, 1);
        if (fi == Vec::of(id)) continue;
        out.images[gen] = fi;
    }
    return out;
}

namespace actions {

inline Vec signed_gen(int sign, Gen g) {
    Monomial m;
    m.set(g, 1);
    return Vec(F9(sign), m);
}
inline Vec coeff_gen(F9 c, Gen g, Gen h, int hexp) {
    Monomial m;
    m.set(g, 1);
    if (hexp) m.add(h, hexp);
    return Vec(c, m);
}

// omega: F9-linear, swaps the two centralizers, u -> om*u
inline ActionOp omega() {
    ActionOp op;
    op.name = "omega";
    op.antilinear = false;
    op.images[Gen::x1] = signed_gen(+1, Gen::x2);
    op.images[Gen::x2] = signed_gen(-1, Gen::x1);
    op.images[Gen::y1] = signed_gen(+1, Gen::y2);
    op.images[Gen::y2] = signed_gen(-1, Gen::y1);
    op.images[Gen::a1] = signed_gen(+1, Gen::a2);
    op.images[Gen::a2] = signed_gen(-1, Gen::a1);
    op.images[Gen::zeta1] = signed_gen(+1, Gen::zeta2);
    op.images[Gen::zeta2] = signed_gen(+1, Gen::zeta1);
    op.images[Gen::c1] = signed_gen(+1, Gen::c2);
    op.images[Gen::c2] = signed_gen(+1, Gen::c1);
    Monomial u;
    u.set(Gen::u, 1);
    op.images[Gen::u] = Vec(F9::om(), u);
    return op;
}

// phi (Frobenius): F9-antilinear, swaps the centralizers with signs, fixes u
inline ActionOp phi() {
    ActionOp op;
    op.name = "phi";
    op.antilinear = true;
    op.images[Gen::x1] = signed_gen(-1, Gen::x2);
    op.images[Gen::x2] = signed_gen(-1, Gen::x1);
    op.images[Gen::y1] = signed_gen(-1, Gen::y2);
    op.images[Gen::y2] = signed_gen(-1, Gen::y1);
    op.images[Gen::a1] = signed_gen(-1, Gen::a2);
    op.images[Gen::a2] = signed_gen(-1, Gen::a1);
    op.images[Gen::zeta1] = signed_gen(+1, Gen::zeta2);
    op.images[Gen::zeta2] = signed_gen(+1, Gen::zeta1);
    op.images[Gen::c1] = signed_gen(+1, Gen::c2);
    op.images[Gen::c2] = signed_gen(+1, Gen::c1);
    return op;
}

inline ActionOp omega_sq(const RingSpec& ring) {
    auto om = omega();
    auto op = compose(om, om, ring);
    op.name = "omega^2";
    return op;
}

// omega*phi, the antilinear generator completing Q8 alongside omega^2
inline ActionOp omega_phi(const RingSpec& ring) {
    auto op = compose(omega(), phi(), ring);
    op.name = "omega*phi";
    return op;
}

// residual action of omega on the G2^0-level generators: v2half is the
// (-1)-eigenvector, everything else in sight is fixed
inline ActionOp residual_omega() {
    ActionOp op;
    op.name = "residual-omega";
    op.images[Gen::v2half] = signed_gen(-1, Gen::v2half);
    return op;
}

inline ActionOp identity() {
    ActionOp op;
    op.name = "id";
    return op;
}

}  // namespace actions

}  // namespace k2local
