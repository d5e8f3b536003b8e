#pragma once

// Fundamental discriminants, form class groups (narrow for D > 0) and their
// 3-torsion, and the comparison with nowhere totally ramified cubic counts.

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "cubic/arith.hpp"
#include "cubic/enumerate.hpp"
#include "cubic/rational.hpp"

namespace cubic {

inline bool squarefree_i64(i64 n) {
    n = abs_value(n);
    if (n == 0) return false;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        if (n % p == 0) n /= p;
    }
    return true;
}

inline bool is_fundamental(i64 D) {
    if (D == 0 || D == 1) return false;
    i64 r = mod_floor<i64>(D, 4);
    if (r == 1) return squarefree_i64(D);
    if (r != 0) return false;
    i64 m = D / 4;
    i64 rm = mod_floor<i64>(m, 4);
    return (rm == 2 || rm == 3) && squarefree_i64(m);
}

// Fundamental D with 0 < sign*D < X, increasing in |D|.
inline std::vector<i64> fundamental_discriminants(i64 X, int sign) {
    std::vector<i64> out;
    if (X <= 1) return out;
    std::vector<char> sf(static_cast<std::size_t>(X), 1);  // squarefree flag for 0..X-1
    for (i64 p = 2; p * p < X; ++p)
        for (i64 k = p * p; k < X; k += p * p) sf[static_cast<std::size_t>(k)] = 0;
    auto squarefree = [&](i64 n) { return n > 0 && sf[static_cast<std::size_t>(n)]; };
    for (i64 n = 2; n < X; ++n) {
        i64 D = sign > 0 ? n : -n;
        i64 r = mod_floor<i64>(D, 4);
        bool ok = false;
        if (r == 1) {
            ok = squarefree(n);
        } else if (r == 0) {
            i64 m = D / 4;
            i64 rm = mod_floor<i64>(m, 4);
            ok = (rm == 2 || rm == 3) && squarefree(abs_value(m));
        }
        if (ok) out.push_back(D);
    }
    return out;
}

struct QuadraticForm {
    i64 a = 0, b = 0, c = 0;
    auto operator<=>(const QuadraticForm&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const QuadraticForm& q) {
    return os << "(" << q.a << "," << q.b << "," << q.c << ")";
}

namespace detail {

struct QFHash {
    std::size_t operator()(const QuadraticForm& q) const {
        u64 h = static_cast<u64>(q.a) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<u64>(q.b) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        h ^= static_cast<u64>(q.c) + 0x94D049BB133111EBULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// (g, x, y) with a x + b y = g >= 0
inline std::tuple<i128, i128, i128> xgcd(i128 a, i128 b) {
    i128 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        i128 q = floor_div(r0, r1);
        std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_tuple(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_tuple(t1, t0 - q * t1);
    }
    if (r0 < 0) return {-r0, -s0, -t0};
    return {r0, s0, t0};
}

inline i64 c_from(i64 a, i64 b, i64 D) {
    i128 num = static_cast<i128>(b) * b - D;
    if (num % (4 * static_cast<i128>(a)) != 0) throw DomainError("form coefficients do not match the discriminant");
    return narrow_i64(num / (4 * static_cast<i128>(a)));
}

// Reduction of a positive definite form: |b| <= a <= c, b >= 0 on the boundary.
inline QuadraticForm reduce_definite(QuadraticForm q, i64 D) {
    for (;;) {
        if (q.b > q.a || q.b <= -q.a) {
            // b -> b + 2 a k into (-a, a]
            i64 two_a = 2 * q.a;
            i64 nb = mod_floor<i64>(q.b + q.a - 1, two_a) - q.a + 1;
            q.b = nb;
            q.c = c_from(q.a, q.b, D);
        }
        if (q.a > q.c) {
            q = {q.c, -q.b, q.a};
            continue;
        }
        if (q.a == q.c && q.b < 0) q.b = -q.b;
        return q;
    }
}

inline bool is_reduced_indefinite(const QuadraticForm& q, i64 D) {
    if (q.b <= 0 || static_cast<i128>(q.b) * q.b >= D) return false;
    i128 two_a = 2 * static_cast<i128>(abs_value(q.a));
    i128 lo = two_a - q.b, hi = two_a + q.b;
    return hi * hi > D && (lo <= 0 || lo * lo < D);
}

// One reduction step (a, b, c) -> (c, b', (b'^2 - D) / 4c), properly equivalent.
inline QuadraticForm rho(const QuadraticForm& q, i64 D, i64 s) {
    i64 ac = abs_value(q.c);
    i64 two = 2 * ac;
    i64 nb;
    if (static_cast<i128>(ac) * ac < D) {
        // sqrt(D) - 2|c| < b' < sqrt(D), b' = -b mod 2|c|
        nb = s - mod_floor<i64>(s + q.b, two);
    } else {
        nb = mod_floor<i64>(-q.b + ac - 1, two) - ac + 1;
    }
    return {q.c, nb, c_from(q.c, nb, D)};
}

inline QuadraticForm reduce_indefinite(QuadraticForm q, i64 D) {
    const i64 s = static_cast<i64>(isqrt_u64(static_cast<u64>(D)));
    for (int it = 0; it < 100000 && !is_reduced_indefinite(q, D); ++it) q = rho(q, D, s);
    if (!is_reduced_indefinite(q, D)) throw DomainError("indefinite reduction did not terminate");
    return q;
}

// Dirichlet composition of primitive forms with positive leading coefficients.
inline QuadraticForm compose_raw(QuadraticForm f1, QuadraticForm f2, i64 D) {
    if (f1.a > f2.a) std::swap(f1, f2);
    const i128 a1 = f1.a, a2 = f2.a, b1 = f1.b, b2 = f2.b, c2 = f2.c;
    const i128 s = (b1 + b2) / 2, n = b2 - s;
    i128 y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        auto [g, u, v] = xgcd(a2, a1);
        d = g;
        y1 = u;
    }
    i128 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        auto [g, u, v] = xgcd(s, d);
        d1 = g;
        x2 = u;
        y2 = -v;
    }
    const i128 v1 = a1 / d1, v2 = a2 / d1;
    i128 r = mod_floor<i128>(mul_checked(mul_checked(y1, y2), n) - mul_checked(x2, c2), v1);
    i128 b3 = b2 + 2 * v2 * r;
    i128 a3 = v1 * v2;
    i128 num = b3 * b3 - D;
    if (num % (4 * a3) != 0) throw DomainError("composition produced a non-integral form");
    return {narrow_i64(a3), narrow_i64(b3), narrow_i64(num / (4 * a3))};
}

inline std::vector<i64> divisors_i64(i64 n) {
    std::vector<i64> out;
    for (i64 k = 1; k * k <= n; ++k)
        if (n % k == 0) {
            out.push_back(k);
            if (k * k != n) out.push_back(n / k);
        }
    return out;
}

}  // namespace detail

struct FormClassGroup {
    i64 D = 0;
    std::vector<QuadraticForm> reps;  // one per class, leading coefficient > 0
    int identity = 0;

    std::size_t order() const { return reps.size(); }

    // Class index of a form of discriminant D.
    int class_of(QuadraticForm q) const {
        QuadraticForm r = D < 0 ? detail::reduce_definite(q, D) : detail::reduce_indefinite(q, D);
        auto it = index_.find(r);
        if (it == index_.end()) throw DomainError("form not found among class representatives");
        return it->second;
    }

    int compose(int i, int j) const { return class_of(detail::compose_raw(reps[i], reps[j], D)); }

    int power(int i, int k) const {
        int r = identity;
        for (int t = 0; t < k; ++t) r = compose(r, i);
        return r;
    }

    std::unordered_map<QuadraticForm, int, detail::QFHash> index_;
};

inline FormClassGroup class_group(i64 D) {
    if (!is_fundamental(D)) throw DomainError("class group needs a fundamental discriminant");
    if (abs_value(D) > 10000000) throw ResourceError("class group guard: |D| <= 10^7");
    FormClassGroup G;
    G.D = D;
    if (D < 0) {
        for (i64 a = 1; 3 * a * a <= -D; ++a) {
            for (i64 b = -a + 1; b <= a; ++b) {
                i128 num = static_cast<i128>(b) * b - D;
                if (num % (4 * a) != 0) continue;
                i64 c = static_cast<i64>(num / (4 * a));
                if (c < a) continue;
                if (c == a && b < 0) continue;
                if (gcd_value(gcd_value(a, abs_value(b)), c) != 1) continue;
                QuadraticForm q{a, b, c};
                G.index_[q] = static_cast<int>(G.reps.size());
                G.reps.push_back(q);
            }
        }
        i64 b0 = mod_floor<i64>(D, 2);
        G.identity = G.class_of({1, b0, detail::c_from(1, b0, D)});
        return G;
    }
    // reduced indefinite forms, grouped into rho-cycles
    const i64 s = static_cast<i64>(isqrt_u64(static_cast<u64>(D)));
    std::vector<QuadraticForm> reduced;
    for (i64 b = 1; b <= s; ++b) {
        if (((b - D) % 2) != 0) continue;
        i128 num = D - static_cast<i128>(b) * b;
        if (num % 4 != 0) continue;
        i64 ac = static_cast<i64>(num / 4);  // -a c
        for (i64 a : detail::divisors_i64(ac)) {
            for (i64 sa : {a, -a}) {
                QuadraticForm q{sa, b, -ac / sa};
                if (gcd_value(gcd_value(abs_value(q.a), q.b), abs_value(q.c)) != 1) continue;
                if (detail::is_reduced_indefinite(q, D)) reduced.push_back(q);
            }
        }
    }
    std::sort(reduced.begin(), reduced.end());
    std::unordered_map<QuadraticForm, int, detail::QFHash> cycle_of;
    int cycles = 0;
    std::vector<QuadraticForm> cycle_rep;
    for (const auto& q0 : reduced) {
        if (cycle_of.count(q0)) continue;
        QuadraticForm q = q0;
        QuadraticForm best{};
        bool have = false;
        do {
            cycle_of[q] = cycles;
            if (q.a > 0 && (!have || q < best)) {
                best = q;
                have = true;
            }
            q = detail::rho(q, D, s);
        } while (!(q == q0));
        if (!have) throw DomainError("rho-cycle without a positive leading coefficient");
        cycle_rep.push_back(best);
        ++cycles;
    }
    G.reps = cycle_rep;
    for (const auto& [q, id] : cycle_of) G.index_[q] = id;
    i64 b0 = mod_floor<i64>(D, 2);
    G.identity = G.class_of({1, b0, detail::c_from(1, b0, D)});
    return G;
}

// Number of classes killed by 3.
inline i64 h3_star(const FormClassGroup& G) {
    if (G.order() % 3 != 0) return 1;
    i64 n = 0;
    for (int i = 0; i < static_cast<int>(G.order()); ++i)
        if (G.power(i, 3) == G.identity) ++n;
    return n;
}

inline i64 h3_star(i64 D) { return h3_star(class_group(D)); }

struct ClassGroupRow {
    i64 D = 0;
    i64 h = 0;
    i64 h3 = 0;
};

inline std::vector<ClassGroupRow> class_group_table(i64 X, int sign) {
    std::vector<ClassGroupRow> out;
    for (i64 D : fundamental_discriminants(X, sign)) {
        FormClassGroup G = class_group(D);
        out.push_back({D, static_cast<i64>(G.order()), h3_star(G)});
    }
    return out;
}

inline void write_class_group_csv(std::ostream& os, const std::vector<ClassGroupRow>& rows) {
    os << "D,h,h3star\n";
    for (const auto& r : rows) os << r.D << "," << r.h << "," << r.h3 << "\n";
}

struct L4Check {
    i64 lhs = 0;  // sum of (h3* - 1) / 2
    i64 rhs = 0;  // nowhere totally ramified cubic classes
    i64 residual() const { return lhs - rhs; }
};

inline L4Check verify_l4eq(i64 X, int sign, int threads = 1) {
    if (X > 100000) throw ResourceError("l4eq check guard: X <= 10^5");
    L4Check out;
    for (const auto& r : class_group_table(X, sign)) out.lhs += (r.h3 - 1) / 2;
    Signature sig = sign > 0 ? Signature::PositiveDisc : Signature::NegativeDisc;
    out.rhs = count(X, sig, CountMode::NowhereTotRam, threads).raw;
    return out;
}

struct TorsionAverage {
    i64 discriminants = 0;
    std::optional<Rational> direct;  // sum h3* / #D
    Rational via_cubic;              // 1 + 2 N / #D
};

inline TorsionAverage three_torsion_average(i64 X, int sign, bool direct = true, int threads = 1) {
    if (X < 10) throw DomainError("three-torsion average needs X >= 10");
    TorsionAverage out;
    std::vector<i64> Ds = fundamental_discriminants(X, sign);
    out.discriminants = static_cast<i64>(Ds.size());
    if (direct) {
        if (X > 100000) throw ResourceError("direct class-group route guard: X <= 10^5");
        i64 sum = 0;
        for (i64 D : Ds) sum += h3_star(D);
        out.direct = Rational(sum, out.discriminants);
    }
    Signature sig = sign > 0 ? Signature::PositiveDisc : Signature::NegativeDisc;
    i64 n = count(X, sig, CountMode::NowhereTotRam, threads).raw;
    out.via_cubic = Rational(1) + Rational(2 * n, out.discriminants);
    return out;
}

}  // namespace cubic
