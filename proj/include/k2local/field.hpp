#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace k2local {

// Arithmetic in F3, with values normalized to {-1, 0, 1}.  The sign-heavy
// formulas of the action tables are the reason for the balanced
// representation.
struct F3 {
    int8_t v = 0;  // always -1, 0 or 1

    constexpr F3() = default;
    constexpr F3(int x) : v(static_cast<int8_t>(((x % 3) + 3 + 1) % 3 - 1)) {}

    static constexpr F3 zero() { return F3(0); }
    static constexpr F3 one() { return F3(1); }

    constexpr bool is_zero() const { return v == 0; }

    friend constexpr F3 operator+(F3 a, F3 b) { return F3(a.v + b.v); }
    friend constexpr F3 operator-(F3 a, F3 b) { return F3(a.v - b.v); }
    friend constexpr F3 operator-(F3 a) { return F3(-a.v); }
    friend constexpr F3 operator*(F3 a, F3 b) { return F3(a.v * b.v); }
    friend constexpr bool operator==(F3 a, F3 b) { return a.v == b.v; }
    friend constexpr bool operator!=(F3 a, F3 b) { return a.v != b.v; }

    F3& operator+=(F3 b) { *this = *this + b; return *this; }
    F3& operator-=(F3 b) { *this = *this - b; return *this; }
    F3& operator*=(F3 b) { *this = *this * b; return *this; }

    constexpr F3 inverse() const {
        if (v == 0) throw std::domain_error("F3: inverse of 0");
        return *this;  // 1 and -1 are self-inverse
    }
};

// F9 = F3(om) with om^2 = om + 1.  This choice of minimal polynomial makes
// om itself a primitive 8th root of unity (om^4 = -1), so no discrete-log
// table is needed anywhere.
struct F9 {
    F3 c0, c1;  // c0 + c1*om

    constexpr F9() = default;
    constexpr F9(int x) : c0(x), c1(0) {}
    constexpr F9(F3 a) : c0(a), c1(0) {}
    constexpr F9(F3 a, F3 b) : c0(a), c1(b) {}

    static constexpr F9 zero() { return F9(); }
    static constexpr F9 one() { return F9(1); }
    static constexpr F9 om() { return F9(F3(0), F3(1)); }

    constexpr bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    constexpr bool in_f3() const { return c1.is_zero(); }

    friend constexpr F9 operator+(F9 a, F9 b) { return F9(a.c0 + b.c0, a.c1 + b.c1); }
    friend constexpr F9 operator-(F9 a, F9 b) { return F9(a.c0 - b.c0, a.c1 - b.c1); }
    friend constexpr F9 operator-(F9 a) { return F9(-a.c0, -a.c1); }

    // (a0 + a1 om)(b0 + b1 om) with om^2 = om + 1
    friend constexpr F9 operator*(F9 a, F9 b) {
        F3 cross = a.c0 * b.c1 + a.c1 * b.c0;
        F3 sq = a.c1 * b.c1;
        return F9(a.c0 * b.c0 + sq, cross + sq);
    }

    friend constexpr bool operator==(F9 a, F9 b) { return a.c0 == b.c0 && a.c1 == b.c1; }
    friend constexpr bool operator!=(F9 a, F9 b) { return !(a == b); }

    F9& operator+=(F9 b) { *this = *this + b; return *this; }
    F9& operator-=(F9 b) { *this = *this - b; return *this; }
    F9& operator*=(F9 b) { *this = *this * b; return *this; }

    constexpr F9 inverse() const {
        // norm = x * frobenius(x) lies in F3
        if (is_zero()) throw std::domain_error("F9: inverse of 0");
        F9 conj = frobenius();
        F9 n = (*this) * conj;  // in F3
        return conj * F9(n.c0.inverse());
    }

    // x -> x^3, the order-2 automorphism with fixed field F3
    constexpr F9 frobenius() const {
        // om^3 = om * (om + 1) = om^2 + om = 1 - om
        return F9(c0 + c1, -c1);
    }

    constexpr F9 pow(long e) const {
        if (is_zero()) {
            if (e <= 0) throw std::domain_error("F9: 0^nonpositive");
            return zero();
        }
        long r = ((e % 8) + 8) % 8;  // unit group has order 8
        F9 acc = one(), base = *this;
        while (r) {
            if (r & 1) acc *= base;
            base *= base;
            r >>= 1;
        }
        return acc;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        if (!c0.is_zero()) s += (c0.v == 1) ? "1" : "-1";
        if (!c1.is_zero()) {
            if (!s.empty()) s += (c1.v == 1) ? "+om" : "-om";
            else s = (c1.v == 1) ? "om" : "-om";
        }
        return s;
    }
};

inline F9 frobenius(F9 x) { return x.frobenius(); }

// om^k as a field element, for any integer k
inline F9 om_pow(long k) { return F9::om().pow(((k % 8) + 8) % 8); }

inline std::array<F9, 9> all_f9() {
    std::array<F9, 9> out{};
    int idx = 0;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) out[idx++] = F9(F3(a), F3(b));
    return out;
}

}  // namespace k2local
