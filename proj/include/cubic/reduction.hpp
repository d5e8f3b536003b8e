#pragma once

// Canonical representatives of GL2(Z)-classes of irreducible cubic forms.
//
// Every class is reduced against a positive definite quadratic covariant:
// twice the Hessian when Disc > 0, and for Disc < 0 the form
//   a^2 * sum_i |r_j - r_k|^2 |x - r_i y|^2
// built from the roots. A form is near-reduced when its covariant (A,B,C)
// satisfies |B| <= A <= C (exactly for Disc > 0, with relative slack 1e-9
// otherwise). The near-reduced members of a class form a small finite set;
// the canonical form is its minimum under a fixed integer key, so floating
// point only decides set membership and never the choice of representative.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "cubic/forms.hpp"

namespace cubic {

struct RealQuadratic {
    long double A = 0, B = 0, C = 0;
};

namespace detail {

inline constexpr long double kReducedSlack = 1e-9L;
inline constexpr long double kInteriorMargin = 1e-7L;

// a > 0, then b > 0 or (b == 0 and d >= 0), using -I and diag(-1,1)
inline BinaryCubicForm orient(BinaryCubicForm f) {
    if (f.a < 0 || (f.a == 0 && (f.b < 0 || (f.b == 0 && (f.c < 0 || (f.c == 0 && f.d < 0)))))) f = f.negated();
    if (f.b < 0 || (f.b == 0 && f.d < 0)) f = {f.a, -f.b, f.c, -f.d};
    return f;
}

inline bool key_less(const BinaryCubicForm& x, const BinaryCubicForm& y) {
    auto key = [](const BinaryCubicForm& f) {
        return std::array<i64, 7>{f.a, abs_value(f.b), -f.b, abs_value(f.c), -f.c, abs_value(f.d), -f.d};
    };
    return key(x) < key(y);
}

struct ComplexRoots {
    long double r = 0;   // real root of f(x, 1)
    long double u = 0;   // real part of the conjugate pair
    long double v2 = 0;  // squared imaginary part
};

// Roots of a x^3 + b x^2 + c x + d with a != 0 and negative discriminant.
[[gnu::noinline]] inline ComplexRoots complex_cubic_roots(const BinaryCubicForm& f, i128 disc) {
    const long double a = f.a, B = f.b / a, C = f.c / a, D = f.d / a;
    const long double shift = -B / 3;
    const long double p = C - B * B / 3;
    const long double q = 2 * B * B * B / 27 - B * C / 3 + D;
    long double delta = q * q / 4 + p * p * p / 27;
    if (delta < 0) delta = 0;
    long double s = std::sqrt(delta);
    long double w = q >= 0 ? -q / 2 - s : -q / 2 + s;
    long double uu = std::cbrt(w);
    long double t = uu == 0 ? 0 : uu - p / (3 * uu);
    long double r = t + shift;
    for (int it = 0; it < 4; ++it) {
        long double val = ((r + B) * r + C) * r + D;
        long double der = (3 * r + 2 * B) * r + C;
        if (der == 0) break;
        long double nr = r - val / der;
        if (nr == r) break;
        r = nr;
    }
    ComplexRoots out;
    out.r = r;
    out.u = (-B - r) / 2;
    // v^2 ((r-u)^2 + v^2)^2 = |Disc| / (4 a^4), solved by monotone Newton from above
    const long double K = static_cast<long double>(disc < 0 ? -disc : disc) / (4 * a * a * a * a);
    const long double e = (r - out.u) * (r - out.u);
    long double v2 = std::cbrt(K);
    if (e > 0) v2 = std::min(v2, K / (e * e));
    for (int it = 0; it < 200; ++it) {
        long double g = v2 * (e + v2) * (e + v2) - K;
        long double dg = (e + v2) * (e + 3 * v2);
        if (dg <= 0) break;
        long double nv = v2 - g / dg;
        if (!(nv < v2)) break;
        v2 = nv;
    }
    out.v2 = v2;
    return out;
}

}  // namespace detail

// Covariant (A, B, C) up to a positive scalar; for Disc > 0 it equals the Hessian.
[[gnu::noinline]] inline RealQuadratic reduction_covariant(const BinaryCubicForm& f) {
    i128 D = discriminant(f);
    if (D == 0) throw DomainError("covariant needs a nonzero discriminant");
    if (D > 0) {
        HessianForm h = hessian(f);
        return {static_cast<long double>(h.P), static_cast<long double>(h.Q), static_cast<long double>(h.R)};
    }
    if (f.a == 0) throw DomainError("covariant needs a nonzero leading coefficient");
    bool neg = f.a < 0;
    BinaryCubicForm g = neg ? f.negated() : f;
    auto roots = detail::complex_cubic_roots(g, D);
    const long double r = roots.r, u = roots.u, v2 = roots.v2;
    const long double m2 = (r - u) * (r - u) + v2;
    return {2 * v2 + m2, -4 * v2 * r - 2 * m2 * u, 2 * v2 * r * r + m2 * (u * u + v2)};
}

namespace detail {

enum class Placement { Outside, Boundary, Interior };

[[gnu::noinline]] inline Placement placement(const BinaryCubicForm& f, i128 disc) {
    if (disc > 0) {
        HessianForm h = hessian(f);
        i128 aq = abs_value(h.Q);
        if (aq > h.P || h.P > h.R) return Placement::Outside;
        if (aq < h.P && h.P < h.R) return Placement::Interior;
        return Placement::Boundary;
    }
    if (f.a == 0) return Placement::Outside;  // reducible, never a class member
    RealQuadratic q = reduction_covariant(f);
    long double ab = std::fabs(q.B);
    if (ab > q.A * (1 + kReducedSlack) || q.A > q.C * (1 + kReducedSlack)) return Placement::Outside;
    if (ab < q.A * (1 - kInteriorMargin) && q.A < q.C * (1 - kInteriorMargin)) return Placement::Interior;
    return Placement::Boundary;
}

inline const std::vector<UnimodularMatrix>& small_unimodular() {
    static const std::vector<UnimodularMatrix> mats = [] {
        std::vector<UnimodularMatrix> out;
        for (i64 p = -1; p <= 1; ++p)
            for (i64 q = -1; q <= 1; ++q)
                for (i64 r = -1; r <= 1; ++r)
                    for (i64 s = -1; s <= 1; ++s) {
                        i64 det = p * s - q * r;
                        if (det == 1 || det == -1) out.emplace_back(p, q, r, s);
                    }
        return out;
    }();
    return mats;
}

}  // namespace detail

// Near-reduced test on the oriented representative, so the verdict is the
// same for f, -f and the x -> -x mirror.
inline bool is_near_reduced(const BinaryCubicForm& f) {
    BinaryCubicForm g = detail::orient(f);
    return detail::placement(g, discriminant(g)) != detail::Placement::Outside;
}

// Walk to a near-reduced member of the class by translations and swaps.
inline BinaryCubicForm reduce_form(BinaryCubicForm f) {
    i128 D = discriminant(f);
    if (D == 0) throw DomainError("reduction needs a nonzero discriminant");
    const UnimodularMatrix swap(0, 1, 1, 0);
    for (int iter = 0; iter < 100000; ++iter) {
        if (D > 0) {
            HessianForm h = hessian(f);
            if (abs_value(h.Q) > h.P) {
                // Q -> Q + 2 P t; pick t nearest to -Q / 2P
                i128 t = floor_div<i128>(h.P - h.Q, 2 * h.P);
                f = act(UnimodularMatrix(1, 0, narrow_i64(t), 1), f);
                continue;
            }
            if (h.P > h.R) {
                f = act(swap, f);
                continue;
            }
            return detail::orient(f);
        }
        RealQuadratic q = reduction_covariant(f);
        if (std::fabs(q.B) > q.A * (1 + detail::kReducedSlack)) {
            long double t = std::floor(-q.B / (2 * q.A) + 0.5L);
            if (t != 0) {
                f = act(UnimodularMatrix(1, 0, static_cast<i64>(t), 1), f);
                continue;
            }
        }
        if (q.A > q.C * (1 + detail::kReducedSlack)) {
            f = act(swap, f);
            continue;
        }
        return detail::orient(f);
    }
    throw DomainError("reduction did not terminate");
}

// All oriented near-reduced forms in the class of f, where f is near-reduced
// or within rounding of it.
inline std::vector<BinaryCubicForm> near_reduced_members(const BinaryCubicForm& f) {
    const BinaryCubicForm start = detail::orient(f);
    const i128 D = discriminant(f);
    const detail::Placement pl = detail::placement(start, D);
    if (pl == detail::Placement::Interior) return {start};
    std::vector<BinaryCubicForm> members{start};
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (const auto& g : detail::small_unimodular()) {
            BinaryCubicForm h = detail::orient(act(g, members[i]));
            if (std::find(members.begin(), members.end(), h) != members.end()) continue;
            if (detail::placement(h, D) == detail::Placement::Outside) continue;
            members.push_back(h);
        }
    }
    if (pl == detail::Placement::Outside) members.erase(members.begin());
    if (members.empty()) throw DomainError("no near-reduced member found");
    return members;
}

inline BinaryCubicForm min_by_key(const std::vector<BinaryCubicForm>& forms) {
    return *std::min_element(forms.begin(), forms.end(), detail::key_less);
}

inline BinaryCubicForm canonical_form(const BinaryCubicForm& f) {
    i128 D = discriminant(f);
    if (D == 0) throw DomainError("canonical form needs a nonzero discriminant");
    if (!is_irreducible(f)) throw DomainError("canonical form needs an irreducible form");
    return min_by_key(near_reduced_members(reduce_form(f)));
}

// True iff f is the canonical representative of its class. Fast for
// interior forms, which are canonical iff already oriented.
inline bool is_canonical(const BinaryCubicForm& f, i128 disc) {
    if (!(detail::orient(f) == f)) return false;
    detail::Placement pl = detail::placement(f, disc);
    if (pl == detail::Placement::Outside) return false;
    if (pl == detail::Placement::Interior) return true;
    return min_by_key(near_reduced_members(f)) == f;
}

// Stabilizer size of the class under the twisted action, read off from the
// canonical form: only Disc > 0 with a reduced Hessian proportional to
// x^2 + xy + y^2 can carry an order-3 automorphism.
inline int automorphism_count_canonical(const BinaryCubicForm& f) {
    if (discriminant(f) < 0) return 1;
    HessianForm h = hessian(f);
    if (!(h.P == h.R && abs_value(h.Q) == h.P)) return 1;
    int n = 0;
    for (const auto& g : detail::small_unimodular())
        if (act(g, f) == f) ++n;
    return n;
}

inline int automorphism_count(const BinaryCubicForm& f) {
    if (!is_irreducible(f)) throw DomainError("automorphism count needs an irreducible form");
    return automorphism_count_canonical(canonical_form(f));
}

}  // namespace cubic
