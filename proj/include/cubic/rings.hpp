#pragma once

// The cubic ring R(f) attached to a binary cubic form, on the basis 1, w, t:
//   w t = n,  w^2 = m + b w - a t,  t^2 = l + d w - c t,
// with l = -bd, m = -ac, n = -ad.

#include <array>
#include <ostream>

#include "cubic/arith.hpp"
#include "cubic/forms.hpp"
#include "cubic/modp.hpp"
#include "cubic/reduction.hpp"

namespace cubic {

struct CubicRingTable {
    i64 a = 0, b = 0, c = 0, d = 0;
    i128 l = 0, m = 0, n = 0;
};

struct RingElement {
    i128 u0 = 0, u1 = 0, u2 = 0;
    bool operator==(const RingElement&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const RingElement& e) {
    return os << "(" << to_string(e.u0) << "," << to_string(e.u1) << "," << to_string(e.u2) << ")";
}

inline CubicRingTable ring_from_form(const BinaryCubicForm& f) {
    CubicRingTable t;
    t.a = f.a;
    t.b = f.b;
    t.c = f.c;
    t.d = f.d;
    t.l = -mul_checked(i128{f.b}, i128{f.d});
    t.m = -mul_checked(i128{f.a}, i128{f.c});
    t.n = -mul_checked(i128{f.a}, i128{f.d});
    return t;
}

inline RingElement ring_one() { return {1, 0, 0}; }
inline RingElement ring_basis(int i) {
    RingElement e;
    (i == 0 ? e.u0 : i == 1 ? e.u1 : e.u2) = 1;
    return e;
}

inline RingElement multiply(const CubicRingTable& t, const RingElement& u, const RingElement& v) {
    auto mul = [](i128 x, i128 y) { return mul_checked(x, y); };
    auto add = [](i128 x, i128 y) { return add_checked(x, y); };
    RingElement r;
    // 1 * anything
    r.u0 = add(mul(u.u0, v.u0), 0);
    r.u1 = add(mul(u.u0, v.u1), mul(u.u1, v.u0));
    r.u2 = add(mul(u.u0, v.u2), mul(u.u2, v.u0));
    const i128 ww = mul(u.u1, v.u1);
    const i128 tt = mul(u.u2, v.u2);
    const i128 wt = add(mul(u.u1, v.u2), mul(u.u2, v.u1));
    r.u0 = add(r.u0, add(add(mul(ww, t.m), mul(tt, t.l)), mul(wt, t.n)));
    r.u1 = add(r.u1, add(mul(ww, t.b), mul(tt, t.d)));
    r.u2 = add(r.u2, sub_checked(mul(tt, -t.c), mul(ww, t.a)));
    return r;
}

inline i128 ring_trace(const CubicRingTable& t, const RingElement& u) {
    return add_checked(add_checked(mul_checked(i128{3}, u.u0), mul_checked(u.u1, i128{t.b})),
                       mul_checked(u.u2, i128{-t.c}));
}

// det of the trace pairing Tr(e_i e_j)
inline i128 ring_discriminant(const CubicRingTable& t) {
    std::array<std::array<i128, 3>, 3> M{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = ring_trace(t, multiply(t, ring_basis(i), ring_basis(j)));
    auto minor = [&](int r0, int r1, int c0, int c1) {
        return sub_checked(mul_checked(M[r0][c0], M[r1][c1]), mul_checked(M[r0][c1], M[r1][c0]));
    };
    i128 det = mul_checked(M[0][0], minor(1, 2, 1, 2));
    det = sub_checked(det, mul_checked(M[0][1], minor(1, 2, 0, 2)));
    det = add_checked(det, mul_checked(M[0][2], minor(1, 2, 0, 1)));
    return det;
}

// Subrings of index p in R(f): one for each root of f mod p in P^1(F_p).
inline int index_p_subring_count(const BinaryCubicForm& f, u64 p) {
    if (content(f) % static_cast<i64>(p) == 0) throw DomainError("index-p subring count needs p not dividing the content");
    return root_structure(f, p).distinct;
}

}  // namespace cubic
