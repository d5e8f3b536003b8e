#pragma once

// Arithmetic in F_p and Z/p^k for cubic forms: root structure in P^1(F_p),
// multiple-root location, and evaluation modulo p^2.

#include <algorithm>
#include <optional>
#include <vector>

#include "cubic/forms.hpp"

namespace cubic {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline u64 reduce_mod(i128 v, u64 m) {
    i128 r = v % static_cast<i128>(m);
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

// inverse of a unit modulo m (m need not be prime)
inline u64 invmod(u64 a, u64 m) {
    i128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        i128 q = r / nr;
        i128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw DomainError("element is not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

// f(x, y) mod m for m < 2^63
inline u64 eval_mod(const BinaryCubicForm& f, u64 x, u64 y, u64 m) {
    u64 a = reduce_mod(f.a, m), b = reduce_mod(f.b, m), c = reduce_mod(f.c, m), d = reduce_mod(f.d, m);
    x %= m;
    y %= m;
    u64 x2 = mulmod(x, x, m), y2 = mulmod(y, y, m);
    u64 r = mulmod(a, mulmod(x2, x, m), m);
    r = (r + mulmod(b, mulmod(x2, y, m), m)) % m;
    r = (r + mulmod(c, mulmod(x, y2, m), m)) % m;
    r = (r + mulmod(d, mulmod(y2, y, m), m)) % m;
    return r;
}

struct ProjectivePoint {
    u64 x = 0, y = 0;
};

struct RootStructure {
    bool degenerate = false;     // f = 0 mod p
    int distinct = 0;            // distinct roots in P^1(F_p)
    bool multiple = false;       // some root of multiplicity >= 2
    std::optional<ProjectivePoint> multiple_root;
};

namespace detail {

using Poly = std::vector<u64>;  // low degree first, trimmed

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_mod(Poly f, const Poly& g, u64 p) {
    trim(f);
    u64 inv = invmod(g.back(), p);
    while (f.size() >= g.size()) {
        u64 coef = mulmod(f.back(), inv, p);
        std::size_t shift = f.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
            f[shift + i] = (f[shift + i] + p - mulmod(coef, g[i], p)) % p;
        trim(f);
    }
    return f;
}

inline Poly poly_mulmod(const Poly& f, const Poly& g, const Poly& m, u64 p) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = (r[i + j] + mulmod(f[i], g[j], p)) % p;
    return poly_mod(r, m, p);
}

inline Poly poly_gcd(Poly f, Poly g, u64 p) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        Poly r = poly_mod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) {
        u64 inv = invmod(f.back(), p);
        for (auto& c : f) c = mulmod(c, inv, p);
    }
    return f;
}

// x^e mod g
inline Poly poly_pow_x(u64 e, const Poly& g, u64 p) {
    Poly result = poly_mod({1}, g, p);
    Poly base = poly_mod({0, 1}, g, p);
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, base, g, p);
        base = poly_mulmod(base, base, g, p);
        e >>= 1;
    }
    return result;
}

inline bool partials_vanish(const BinaryCubicForm& f, u64 x, u64 y, u64 p) {
    u64 a = reduce_mod(f.a, p), b = reduce_mod(f.b, p), c = reduce_mod(f.c, p), d = reduce_mod(f.d, p);
    u64 x2 = mulmod(x, x, p), y2 = mulmod(y, y, p), xy = mulmod(x, y, p);
    u64 fx = (mulmod(3 * a % p, x2, p) + mulmod(2 * b % p, xy, p) + mulmod(c, y2, p)) % p;
    u64 fy = (mulmod(b, x2, p) + mulmod(2 * c % p, xy, p) + mulmod(3 * d % p, y2, p)) % p;
    return fx == 0 && fy == 0;
}

inline RootStructure roots_bruteforce(const BinaryCubicForm& f, u64 p) {
    RootStructure rs;
    auto consider = [&](u64 x, u64 y) {
        if (eval_mod(f, x, y, p) != 0) return;
        ++rs.distinct;
        if (partials_vanish(f, x, y, p)) {
            rs.multiple = true;
            rs.multiple_root = ProjectivePoint{x, y};
        }
    };
    consider(1, 0);
    for (u64 t = 0; t < p; ++t) consider(t, 1);
    return rs;
}

inline RootStructure roots_polynomial(const BinaryCubicForm& f, u64 p) {
    RootStructure rs;
    // move a non-root to [1:0] so the dehomogenized cubic keeps degree 3
    static const i64 candidates[4][4] = {{1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 1}, {1, 2, 0, 1}};
    UnimodularMatrix g;
    bool found = false;
    for (const auto& cnd : candidates) {
        if (eval_mod(f, reduce_mod(cnd[0], p), reduce_mod(cnd[1], p), p) != 0) {
            g = UnimodularMatrix(cnd[0], cnd[1], cnd[2], cnd[3]);
            found = true;
            break;
        }
    }
    if (!found) throw DomainError("no non-root found among test points");
    BinaryCubicForm h = act(g, f);
    Poly hp = {reduce_mod(h.d, p), reduce_mod(h.c, p), reduce_mod(h.b, p), reduce_mod(h.a, p)};
    Poly xp = poly_pow_x(p, hp, p);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = (xp[1] + p - 1) % p;
    trim(xp);
    Poly split = poly_gcd(hp, xp, p);
    rs.distinct = split.empty() ? 3 : static_cast<int>(split.size()) - 1;
    rs.multiple = reduce_mod(discriminant(f), p) == 0;
    if (rs.multiple) {
        Poly deriv = {hp[1], 2 * hp[2] % p, 3 * hp[3] % p};
        trim(deriv);
        Poly m = poly_gcd(hp, deriv, p);
        u64 r;
        if (m.size() == 2) {
            r = (p - m[0]) % p;
        } else if (m.size() == 3) {
            r = mulmod((p - m[1]) % p, invmod(2, p), p);
        } else {
            throw DomainError("inconsistent multiple-root computation");
        }
        // (r, 1) is a root of h; h = +-f((x,y) g), so f vanishes at (r,1) g
        u64 x = (mulmod(r, reduce_mod(g.p(), p), p) + reduce_mod(g.r(), p)) % p;
        u64 y = (mulmod(r, reduce_mod(g.q(), p), p) + reduce_mod(g.s(), p)) % p;
        rs.multiple_root = ProjectivePoint{x, y};
    }
    return rs;
}

}  // namespace detail

// Root structure of f mod p in P^1(F_p). Requires p prime, p < 2^30.
inline RootStructure root_structure(const BinaryCubicForm& f, u64 p) {
    if (p < 2) throw DomainError("modulus must be prime");
    if (p >= (u64(1) << 30)) throw ResourceError("prime too large for residue arithmetic");
    if (reduce_mod(f.a, p) == 0 && reduce_mod(f.b, p) == 0 && reduce_mod(f.c, p) == 0 &&
        reduce_mod(f.d, p) == 0) {
        RootStructure rs;
        rs.degenerate = true;
        rs.distinct = static_cast<int>(std::min<u64>(p + 1, 1u << 30));
        return rs;
    }
    if (p < 64) return detail::roots_bruteforce(f, p);
    BinaryCubicForm r{static_cast<i64>(reduce_mod(f.a, p)), static_cast<i64>(reduce_mod(f.b, p)),
                      static_cast<i64>(reduce_mod(f.c, p)), static_cast<i64>(reduce_mod(f.d, p))};
    return detail::roots_polynomial(r, p);
}

}  // namespace cubic
