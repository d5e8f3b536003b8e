#pragma once

// Integral binary cubic forms a x^3 + b x^2 y + c x y^2 + d y^3 and the
// twisted GL2(Z) action (g.f)(x,y) = det(g)^-1 f((x,y) g).

#include <array>
#include <compare>
#include <ostream>
#include <vector>

#include "cubic/arith.hpp"

namespace cubic {

struct BinaryCubicForm {
    i64 a = 0, b = 0, c = 0, d = 0;

    constexpr auto operator<=>(const BinaryCubicForm&) const = default;

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

    BinaryCubicForm negated() const { return {-a, -b, -c, -d}; }

    // f(x, y) evaluated exactly
    i128 eval(i128 x, i128 y) const {
        i128 x2 = mul_checked(x, x), y2 = mul_checked(y, y);
        i128 t0 = mul_checked<i128>(a, mul_checked(x2, x));
        i128 t1 = mul_checked<i128>(b, mul_checked(x2, y));
        i128 t2 = mul_checked<i128>(c, mul_checked(x, y2));
        i128 t3 = mul_checked<i128>(d, mul_checked(y2, y));
        return add_checked(add_checked(t0, t1), add_checked(t2, t3));
    }
};

inline std::ostream& operator<<(std::ostream& os, const BinaryCubicForm& f) {
    return os << '(' << f.a << ',' << f.b << ',' << f.c << ',' << f.d << ')';
}

struct HessianForm {
    i128 P = 0, Q = 0, R = 0;

    constexpr auto operator<=>(const HessianForm&) const = default;

    i128 discriminant() const {
        return sub_checked(mul_checked(Q, Q), mul_checked<i128>(4, mul_checked(P, R)));
    }
};

enum class Signature { PositiveDisc, NegativeDisc };

// size of the stabilizer of a generic real form: 6 for three real roots, 2 otherwise
constexpr int stabilizer_order(Signature s) { return s == Signature::PositiveDisc ? 6 : 2; }

inline const char* signature_name(Signature s) {
    return s == Signature::PositiveDisc ? "positive" : "negative";
}

class UnimodularMatrix {
public:
    UnimodularMatrix() = default;
    UnimodularMatrix(i64 p, i64 q, i64 r, i64 s) : p_(p), q_(q), r_(r), s_(s) {
        i128 det = static_cast<i128>(p) * s - static_cast<i128>(q) * r;
        if (det != 1 && det != -1) throw DomainError("matrix is not unimodular");
    }

    static UnimodularMatrix identity() { return {}; }

    i64 p() const { return p_; }
    i64 q() const { return q_; }
    i64 r() const { return r_; }
    i64 s() const { return s_; }
    int det() const { return static_cast<int>(static_cast<i128>(p_) * s_ - static_cast<i128>(q_) * r_); }

    UnimodularMatrix operator*(const UnimodularMatrix& o) const {
        i64 np = narrow_i64(static_cast<i128>(p_) * o.p_ + static_cast<i128>(q_) * o.r_);
        i64 nq = narrow_i64(static_cast<i128>(p_) * o.q_ + static_cast<i128>(q_) * o.s_);
        i64 nr = narrow_i64(static_cast<i128>(r_) * o.p_ + static_cast<i128>(s_) * o.r_);
        i64 ns = narrow_i64(static_cast<i128>(r_) * o.q_ + static_cast<i128>(s_) * o.s_);
        return {np, nq, nr, ns};
    }

    bool operator==(const UnimodularMatrix&) const = default;

private:
    i64 p_ = 1, q_ = 0, r_ = 0, s_ = 1;
};

inline i128 discriminant(const BinaryCubicForm& f) {
    const i128 a = f.a, b = f.b, c = f.c, d = f.d;
    auto m = [](i128 x, i128 y) { return mul_checked(x, y); };
    i128 bc = m(b, c), ad = m(a, d);
    i128 t1 = m(bc, bc);
    i128 t2 = m(m(4, a), m(c, m(c, c)));
    i128 t3 = m(m(4, d), m(b, m(b, b)));
    i128 t4 = m(27, m(ad, ad));
    i128 t5 = m(18, m(ad, bc));
    return add_checked(sub_checked(sub_checked(sub_checked(t1, t2), t3), t4), t5);
}

inline HessianForm hessian(const BinaryCubicForm& f) {
    const i128 a = f.a, b = f.b, c = f.c, d = f.d;
    return {sub_checked(mul_checked(b, b), mul_checked(mul_checked<i128>(3, a), c)),
            sub_checked(mul_checked(b, c), mul_checked(mul_checked<i128>(9, a), d)),
            sub_checked(mul_checked(c, c), mul_checked(mul_checked<i128>(3, b), d))};
}

// Twisted action. The substitution is x -> p x + r y, y -> q x + s y.
inline BinaryCubicForm act(const UnimodularMatrix& g, const BinaryCubicForm& f) {
    const i128 p = g.p(), q = g.q(), r = g.r(), s = g.s();
    const i128 a = f.a, b = f.b, c = f.c, d = f.d;
    auto m = [](i128 x, i128 y) { return mul_checked(x, y); };
    auto ad = [](i128 x, i128 y) { return add_checked(x, y); };
    i128 na = f.eval(p, q);
    i128 nd = f.eval(r, s);
    i128 nb = ad(ad(m(m(3, a), m(m(p, p), r)), m(b, ad(m(m(p, p), s), m(2, m(p, m(q, r)))))),
                 ad(m(c, ad(m(m(q, q), r), m(2, m(p, m(q, s))))), m(m(3, d), m(m(q, q), s))));
    i128 nc = ad(ad(m(m(3, a), m(p, m(r, r))), m(b, ad(m(2, m(p, m(r, s))), m(q, m(r, r))))),
                 ad(m(c, ad(m(p, m(s, s)), m(2, m(q, m(r, s))))), m(m(3, d), m(q, m(s, s)))));
    if (g.det() < 0) {
        na = -na;
        nb = -nb;
        nc = -nc;
        nd = -nd;
    }
    return {narrow_i64(na), narrow_i64(nb), narrow_i64(nc), narrow_i64(nd)};
}

// Binary quadratic form P x^2 + Q x y + R y^2 under plain substitution by g.
inline HessianForm act_quadratic(const UnimodularMatrix& g, const HessianForm& h) {
    const i128 p = g.p(), q = g.q(), r = g.r(), s = g.s();
    auto m = [](i128 x, i128 y) { return mul_checked(x, y); };
    auto ad = [](i128 x, i128 y) { return add_checked(x, y); };
    i128 P = ad(ad(m(h.P, m(p, p)), m(h.Q, m(p, q))), m(h.R, m(q, q)));
    i128 R = ad(ad(m(h.P, m(r, r)), m(h.Q, m(r, s))), m(h.R, m(s, s)));
    i128 Q = ad(ad(m(m(2, h.P), m(p, r)), m(h.Q, ad(m(p, s), m(q, r)))), m(m(2, h.R), m(q, s)));
    return {P, Q, R};
}

inline i64 content(const BinaryCubicForm& f) {
    return gcd_value(gcd_value(f.a, f.b), gcd_value(f.c, f.d));
}

namespace detail {

inline std::vector<i64> positive_divisors(i64 n) {
    n = abs_value(n);
    std::vector<i64> small, large;
    for (i64 k = 1; k * k <= n; ++k) {
        if (n % k == 0) {
            small.push_back(k);
            if (k != n / k) large.push_back(n / k);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace detail

// A linear factor s x - r y ... is detected as a rational root [x:y] = [-s:r].
inline bool is_irreducible(const BinaryCubicForm& f) {
    if (f.is_zero()) throw DomainError("irreducibility of the zero form is undefined");
    if (f.a == 0 || f.d == 0) return false;
    // a root [x:y] in lowest terms has x | d and y | a
    for (i64 r : detail::positive_divisors(f.a)) {
        for (i64 s : detail::positive_divisors(f.d)) {
            if (gcd_value(r, s) != 1) continue;
            if (f.eval(-s, r) == 0 || f.eval(s, r) == 0) return false;
        }
    }
    return true;
}

inline Signature signature_of(const BinaryCubicForm& f) {
    i128 D = discriminant(f);
    if (D == 0) throw DomainError("zero discriminant has no signature");
    return D > 0 ? Signature::PositiveDisc : Signature::NegativeDisc;
}

}  // namespace cubic
