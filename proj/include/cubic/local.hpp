#pragma once

// Local data at a prime p: splitting symbols, the maximality test, exact
// p-adic densities of first and second order, and mass formulas.

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cubic/factor.hpp"
#include "cubic/forms.hpp"
#include "cubic/modp.hpp"
#include "cubic/rational.hpp"

namespace cubic {

enum class SplittingSymbol { S111, S12, S3, S1sq1, S1cube, Degenerate };

inline constexpr SplittingSymbol kSymbols[5] = {SplittingSymbol::S111, SplittingSymbol::S12, SplittingSymbol::S3,
                                                SplittingSymbol::S1sq1, SplittingSymbol::S1cube};

inline std::string symbol_name(SplittingSymbol s) {
    switch (s) {
        case SplittingSymbol::S111: return "111";
        case SplittingSymbol::S12: return "12";
        case SplittingSymbol::S3: return "3";
        case SplittingSymbol::S1sq1: return "1^21";
        case SplittingSymbol::S1cube: return "1^3";
        case SplittingSymbol::Degenerate: return "degenerate";
    }
    return "?";
}

inline SplittingSymbol symbol_from_roots(const RootStructure& rs) {
    if (rs.degenerate) return SplittingSymbol::Degenerate;
    switch (rs.distinct) {
        case 3: return SplittingSymbol::S111;
        case 2: return SplittingSymbol::S1sq1;
        case 1: return rs.multiple ? SplittingSymbol::S1cube : SplittingSymbol::S12;
        default: return SplittingSymbol::S3;
    }
}

inline SplittingSymbol splitting_symbol(const BinaryCubicForm& f, u64 p) {
    return symbol_from_roots(root_structure(f, p));
}

namespace detail {

// Maximality at p read off f mod p^2; no discriminant precondition.
inline bool maximal_at_residue(const BinaryCubicForm& f, u64 p, const RootStructure& rs) {
    if (rs.degenerate) return false;
    if (!rs.multiple) return true;
    const ProjectivePoint& pt = *rs.multiple_root;
    return eval_mod(f, pt.x, pt.y, p * p) != 0;
}

}  // namespace detail

inline bool is_maximal_at(const BinaryCubicForm& f, u64 p) {
    if (discriminant(f) == 0) throw DomainError("maximality needs a nonzero discriminant");
    return detail::maximal_at_residue(f, p, root_structure(f, p));
}

// Primes p with p^2 | Disc are the only candidates for non-maximality.
inline bool is_maximal(const BinaryCubicForm& f, const Factorization& disc_factors) {
    for (const auto& [p, e] : disc_factors) {
        if (e >= 2 && !is_maximal_at(f, static_cast<u64>(p))) return false;
    }
    return true;
}

inline bool is_maximal(const BinaryCubicForm& f) {
    i128 D = discriminant(f);
    if (D == 0) throw DomainError("maximality needs a nonzero discriminant");
    return is_maximal(f, factorize(static_cast<u128>(abs_value(D))));
}

// A triple root mod p forces p^2 | Disc, so only those primes are inspected.
inline bool is_nowhere_totally_ramified(const BinaryCubicForm& f, const Factorization& disc_factors) {
    for (const auto& [p, e] : disc_factors) {
        if (e < 2) continue;
        RootStructure rs = root_structure(f, static_cast<u64>(p));
        if (!detail::maximal_at_residue(f, static_cast<u64>(p), rs)) return false;
        if (symbol_from_roots(rs) == SplittingSymbol::S1cube) return false;
    }
    return true;
}

inline bool is_nowhere_totally_ramified(const BinaryCubicForm& f) {
    i128 D = discriminant(f);
    if (D == 0) throw DomainError("ramification needs a nonzero discriminant");
    return is_nowhere_totally_ramified(f, factorize(static_cast<u128>(abs_value(D))));
}

// ---------------------------------------------------------------------------
// Local conditions used as class filters.

struct LocalCondition {
    enum class Mode { AnyRing, MaximalAny, MaximalNotTotRam, SplittingIn, ExplicitResidues };

    u64 p = 2;
    Mode mode = Mode::AnyRing;
    std::set<SplittingSymbol> symbols;  // SplittingIn: maximal at p with one of these symbols
    int level = 1;                      // ExplicitResidues: modulus p^level
    std::set<std::array<u64, 4>> residues;

    static LocalCondition any(u64 p) { return {p, Mode::AnyRing, {}, 1, {}}; }
    static LocalCondition maximal(u64 p) { return {p, Mode::MaximalAny, {}, 1, {}}; }
    static LocalCondition not_totally_ramified(u64 p) { return {p, Mode::MaximalNotTotRam, {}, 1, {}}; }
    static LocalCondition splitting_in(u64 p, std::set<SplittingSymbol> s) {
        return {p, Mode::SplittingIn, std::move(s), 1, {}};
    }
    static LocalCondition explicit_residues(u64 p, int level, std::set<std::array<u64, 4>> r) {
        if (level < 1) throw DomainError("residue level must be positive");
        return {p, Mode::ExplicitResidues, {}, level, std::move(r)};
    }

    std::string describe() const {
        std::string s = "p=" + std::to_string(p) + ":";
        switch (mode) {
            case Mode::AnyRing: return s + "any";
            case Mode::MaximalAny: return s + "maximal";
            case Mode::MaximalNotTotRam: return s + "maximal-not-totally-ramified";
            case Mode::SplittingIn: {
                s += "symbols{";
                bool first = true;
                for (auto sym : symbols) {
                    if (!first) s += ",";
                    s += symbol_name(sym);
                    first = false;
                }
                return s + "}";
            }
            case Mode::ExplicitResidues:
                return s + "residues(level " + std::to_string(level) + ", " + std::to_string(residues.size()) + ")";
        }
        return s;
    }
};

inline u64 int_pow(u64 b, int e) {
    u64 r = 1;
    for (int i = 0; i < e; ++i) r = mul_checked<u64>(r, b);
    return r;
}

inline bool satisfies(const LocalCondition& cond, const BinaryCubicForm& f) {
    using Mode = LocalCondition::Mode;
    switch (cond.mode) {
        case Mode::AnyRing: return true;
        case Mode::MaximalAny: {
            RootStructure rs = root_structure(f, cond.p);
            return detail::maximal_at_residue(f, cond.p, rs);
        }
        case Mode::MaximalNotTotRam: {
            RootStructure rs = root_structure(f, cond.p);
            return detail::maximal_at_residue(f, cond.p, rs) && symbol_from_roots(rs) != SplittingSymbol::S1cube;
        }
        case Mode::SplittingIn: {
            RootStructure rs = root_structure(f, cond.p);
            return detail::maximal_at_residue(f, cond.p, rs) && cond.symbols.count(symbol_from_roots(rs)) > 0;
        }
        case Mode::ExplicitResidues: {
            u64 m = int_pow(cond.p, cond.level);
            std::array<u64, 4> key{reduce_mod(f.a, m), reduce_mod(f.b, m), reduce_mod(f.c, m), reduce_mod(f.d, m)};
            return cond.residues.count(key) > 0;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Densities.

struct DensitySet {
    enum class Kind { T, U_sigma, U, V, W };
    Kind kind = Kind::U;
    SplittingSymbol sigma = SplittingSymbol::S111;

    static DensitySet T(SplittingSymbol s) { return {Kind::T, s}; }
    static DensitySet U_of(SplittingSymbol s) { return {Kind::U_sigma, s}; }
    static DensitySet U() { return {Kind::U, SplittingSymbol::S111}; }
    static DensitySet V() { return {Kind::V, SplittingSymbol::S111}; }
    static DensitySet W() { return {Kind::W, SplittingSymbol::S111}; }

    int level() const { return kind == Kind::T ? 1 : 2; }

    std::string name() const {
        switch (kind) {
            case Kind::T: return "T(" + symbol_name(sigma) + ")";
            case Kind::U_sigma: return "U(" + symbol_name(sigma) + ")";
            case Kind::U: return "U";
            case Kind::V: return "V";
            case Kind::W: return "W";
        }
        return "?";
    }

    bool contains(SplittingSymbol sym, bool maximal) const {
        switch (kind) {
            case Kind::T: return sym == sigma;
            case Kind::U_sigma: return maximal && sym == sigma;
            case Kind::U: return maximal;
            case Kind::V: return maximal && sym != SplittingSymbol::S1cube;
            case Kind::W: return !maximal;
        }
        return false;
    }
};

namespace detail {

// Visit every form mod p^level as a representative with coefficients in [0, p^level).
inline void for_each_residue_form(u64 modulus, const std::function<void(const BinaryCubicForm&)>& fn) {
    const i64 m = static_cast<i64>(modulus);
    for (i64 a = 0; a < m; ++a)
        for (i64 b = 0; b < m; ++b)
            for (i64 c = 0; c < m; ++c)
                for (i64 d = 0; d < m; ++d) fn(BinaryCubicForm{a, b, c, d});
}

}  // namespace detail

inline Rational density_bruteforce(u64 p, int level, const DensitySet& set) {
    if (level != 1 && level != 2) throw ResourceError("density level must be 1 or 2");
    if (!is_prime_u64(p)) throw DomainError("density needs a prime");
    if (level == 1 && p > 13) throw ResourceError("level-1 brute force limited to p <= 13");
    if (level == 2 && p > 5) throw ResourceError("level-2 brute force limited to p <= 5");
    if (set.level() > level) throw ResourceError("set " + set.name() + " needs level 2");
    u64 modulus = int_pow(p, level);
    i128 hits = 0;
    detail::for_each_residue_form(modulus, [&](const BinaryCubicForm& f) {
        RootStructure rs = root_structure(f, p);
        SplittingSymbol sym = symbol_from_roots(rs);
        bool maximal = level == 2 ? detail::maximal_at_residue(f, p, rs) : false;
        if (set.contains(sym, maximal)) ++hits;
    });
    i128 total = static_cast<i128>(modulus) * modulus * modulus * modulus;
    return Rational(hits, total);
}

inline Rational density_closed_form(const DensitySet& set, u64 p) {
    const Rational P(static_cast<i128>(p));
    const Rational p4 = Rational::pow(P, 4), p5 = Rational::pow(P, 5);
    const Rational gen = (P - 1) * (P - 1) * P * (P + 1) / p4;
    auto t_sigma = [&](SplittingSymbol s) -> Rational {
        switch (s) {
            case SplittingSymbol::S111: return Rational(1, 6) * gen;
            case SplittingSymbol::S12: return Rational(1, 2) * gen;
            case SplittingSymbol::S3: return Rational(1, 3) * gen;
            case SplittingSymbol::S1sq1: return (P - 1) * P * (P + 1) / p4;
            case SplittingSymbol::S1cube: return (P - 1) * (P + 1) / p4;
            default: throw DomainError("no density for the degenerate symbol");
        }
    };
    auto u_sigma = [&](SplittingSymbol s) -> Rational {
        switch (s) {
            case SplittingSymbol::S1sq1: return (P - 1) * (P - 1) * (P + 1) / p4;
            case SplittingSymbol::S1cube: return (P - 1) * (P - 1) * (P + 1) / p5;
            default: return t_sigma(s);
        }
    };
    switch (set.kind) {
        case DensitySet::Kind::T: return t_sigma(set.sigma);
        case DensitySet::Kind::U_sigma: return u_sigma(set.sigma);
        case DensitySet::Kind::U: return (P * P * P - 1) * (P * P - 1) / p5;
        case DensitySet::Kind::V: return (P * P - 1) * (P * P - 1) / p4;
        case DensitySet::Kind::W: return Rational(1) - (P * P * P - 1) * (P * P - 1) / p5;
    }
    return 0;
}

inline CubeRootRational mu1_sigma(SplittingSymbol s, u64 p) {
    return {static_cast<i64>(p), density_closed_form(DensitySet::U_of(s), p)};
}

// Second-order density of the maximal forms with symbol s.
inline CubeRootRational mu2_sigma(SplittingSymbol s, u64 p) {
    const i64 pi = static_cast<i64>(p);
    const Rational P(pi);
    const CubeRootRational t = CubeRootRational::t(pi);
    const CubeRootRational one(pi, 1);
    const CubeRootRational one_minus_t = one - t;
    const Rational inv_p3 = Rational(1) / (P * P * P);
    CubeRootRational body(pi);
    switch (s) {
        case SplittingSymbol::S111: {
            Rational choose3 = P * (P - 1) * (P - 2) / 6;
            body = choose3 * one_minus_t + (P * (P - 1) / 2 * (P - 1)) * t;
            break;
        }
        case SplittingSymbol::S12:
            body = (P * (P * P - P) / 2) * one_minus_t + ((P * P - P) / 2 * (P - 1)) * t;
            break;
        case SplittingSymbol::S3:
            body = ((P * P * P - P) / 3) * one_minus_t;
            break;
        case SplittingSymbol::S1sq1:
            body = CubeRootRational(pi, P * (P - 1) * (Rational(1) - Rational(1) / P)) +
                   (P * (P - 1)) * (one_minus_t * t);
            break;
        case SplittingSymbol::S1cube:
            body = (P * (Rational(1) - Rational(1) / P)) * one_minus_t + (P - 1) * (one_minus_t * t);
            break;
        default: throw DomainError("no density for the degenerate symbol");
    }
    return inv_p3 * body;
}

inline CubeRootRational mu1_total(u64 p) {
    CubeRootRational s(static_cast<i64>(p));
    for (auto sym : kSymbols) s += mu1_sigma(sym, p);
    return s;
}

inline CubeRootRational mu2_total(u64 p) {
    CubeRootRational s(static_cast<i64>(p));
    for (auto sym : kSymbols) s += mu2_sigma(sym, p);
    return s;
}

struct MassCheck {
    Rational order_mass;
    Rational field_mass;
    bool field_from_bruteforce = false;
};

inline Rational gl2_order(u64 p) {
    Rational P(static_cast<i128>(p));
    return (P * P - 1) * (P * P - P);
}

inline MassCheck mass_check(u64 p) {
    const Rational P(static_cast<i128>(p));
    const Rational scale = Rational::pow(P, 4) / gl2_order(p);
    MassCheck mc;
    mc.order_mass = scale;
    bool brute = p <= 5;
    Rational mu_u = brute ? density_bruteforce(p, 2, DensitySet::U()) : density_closed_form(DensitySet::U(), p);
    mc.field_mass = mu_u * scale;
    mc.field_from_bruteforce = brute;
    return mc;
}

// ---------------------------------------------------------------------------
// Second-order local densities from GL2(Z/p^m)-orbits.

namespace detail {

// (1 - t) times the weight attached to leading coefficient a mod p^m
inline CubeRootRational second_order_weight(u64 a, u64 p, int m) {
    const i64 pi = static_cast<i64>(p);
    const CubeRootRational one(pi, 1);
    const CubeRootRational t = CubeRootRational::t(pi);
    if (a == 0) return CubeRootRational::p_power_third(pi, -m);
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    Rational coef = Rational::pow(Rational(pi), 1 - m) / Rational(pi - 1);
    return coef * ((one - t) * CubeRootRational::p_power_third(pi, 2 * v));
}

struct ResidueSpace {
    u64 modulus;
    u64 index(u64 a, u64 b, u64 c, u64 d) const { return ((a * modulus + b) * modulus + c) * modulus + d; }
    std::array<u64, 4> unpack(u64 idx) const {
        std::array<u64, 4> r{};
        for (int i = 3; i >= 0; --i) {
            r[i] = idx % modulus;
            idx /= modulus;
        }
        return r;
    }
};

// twisted action of [[p,q],[r,s]] on residues, det_inv = det^-1 mod M
inline std::array<u64, 4> act_residue(const std::array<u64, 4>& f, i64 gp, i64 gq, i64 gr, i64 gs, u64 det_inv,
                                      u64 M) {
    BinaryCubicForm src{static_cast<i64>(f[0]), static_cast<i64>(f[1]), static_cast<i64>(f[2]),
                        static_cast<i64>(f[3])};
    const i128 p = gp, q = gq, r = gr, s = gs;
    const i128 a = src.a, b = src.b, c = src.c, d = src.d;
    i128 na = src.eval(p, q), nd = src.eval(r, s);
    i128 nb = 3 * a * p * p * r + b * (p * p * s + 2 * p * q * r) + c * (q * q * r + 2 * p * q * s) + 3 * d * q * q * s;
    i128 nc = 3 * a * p * r * r + b * (2 * p * r * s + q * r * r) + c * (p * s * s + 2 * q * r * s) + 3 * d * q * s * s;
    return {mulmod(reduce_mod(na, M), det_inv, M), mulmod(reduce_mod(nb, M), det_inv, M),
            mulmod(reduce_mod(nc, M), det_inv, M), mulmod(reduce_mod(nd, M), det_inv, M)};
}

// GL2(Z/M)-orbit of a residue form, as sorted packed indices.
inline std::vector<u64> residue_orbit(const std::array<u64, 4>& start, u64 p, u64 M, std::vector<char>& seen) {
    ResidueSpace sp{M};
    std::vector<u64> orbit;
    std::deque<u64> queue;
    u64 s0 = sp.index(start[0], start[1], start[2], start[3]);
    seen[s0] = 1;
    queue.push_back(s0);
    std::vector<u64> units;
    for (u64 u = 2; u < M; ++u)
        if (u % p != 0) units.push_back(u);
    while (!queue.empty()) {
        u64 cur = queue.front();
        queue.pop_front();
        orbit.push_back(cur);
        auto f = sp.unpack(cur);
        auto push = [&](const std::array<u64, 4>& g) {
            u64 id = sp.index(g[0], g[1], g[2], g[3]);
            if (!seen[id]) {
                seen[id] = 1;
                queue.push_back(id);
            }
        };
        push(act_residue(f, 1, 1, 0, 1, 1, M));
        push(act_residue(f, 1, 0, 1, 1, 1, M));
        push(act_residue(f, 0, 1, 1, 0, M - 1, M));
        for (u64 u : units) push(act_residue(f, static_cast<i64>(u), 0, 0, 1, invmod(u, M), M));
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

inline CubeRootRational orbit_mu2(const std::vector<u64>& orbit, u64 p, int m, u64 M) {
    ResidueSpace sp{M};
    CubeRootRational sum(static_cast<i64>(p));
    // group by leading coefficient to keep the exact arithmetic small
    std::vector<i64> per_a(M, 0);
    for (u64 id : orbit) ++per_a[sp.unpack(id)[0]];
    for (u64 a = 0; a < M; ++a)
        if (per_a[a] != 0) sum += Rational(per_a[a]) * second_order_weight(a, p, m);
    Rational scale = Rational(1) / Rational(static_cast<i128>(M) * M * M);
    return scale * sum;
}

inline int valuation(i128 n, u64 p) {
    if (n == 0) return 1 << 20;
    int v = 0;
    n = abs_value(n);
    while (n % static_cast<i128>(p) == 0) {
        n /= static_cast<i128>(p);
        ++v;
    }
    return v;
}

}  // namespace detail

inline CubeRootRational mu2_local(const BinaryCubicForm& f, u64 p, int m) {
    if (!is_prime_u64(p)) throw DomainError("mu2_local needs a prime");
    if (m < 1) throw DomainError("level must be positive");
    i128 D = discriminant(f);
    if (D == 0) throw DomainError("mu2_local needs a nonzero discriminant");
    if (detail::valuation(D, p) >= m) throw DomainError("p^m must exceed the p-part of the discriminant");
    u64 M = int_pow(p, m);
    if (M > 32) throw ResourceError("orbit enumeration limited to p^m <= 32");
    std::vector<char> seen(M * M * M * M, 0);
    std::array<u64, 4> start{reduce_mod(f.a, M), reduce_mod(f.b, M), reduce_mod(f.c, M), reduce_mod(f.d, M)};
    auto orbit = detail::residue_orbit(start, p, M, seen);
    return detail::orbit_mu2(orbit, p, m, M);
}

// Set-level second-order density: every residue form mod p^m in the set
// contributes its weight once. Used to cross-check Table-style values.
inline CubeRootRational mu2_bruteforce(u64 p, int m, const std::function<bool(const BinaryCubicForm&)>& in_set) {
    u64 M = int_pow(p, m);
    if (M > 32) throw ResourceError("brute-force second-order density limited to p^m <= 32");
    CubeRootRational sum(static_cast<i64>(p));
    std::vector<i64> per_a(M, 0);
    detail::for_each_residue_form(M, [&](const BinaryCubicForm& f) {
        if (in_set(f)) ++per_a[static_cast<u64>(f.a)];
    });
    for (u64 a = 0; a < M; ++a)
        if (per_a[a] != 0) sum += Rational(per_a[a]) * detail::second_order_weight(a, p, m);
    return (Rational(1) / Rational(static_cast<i128>(M) * M * M)) * sum;
}

// Sum of mu2_local over all GL2(Z/p^m)-orbits of residue forms accepted by in_set.
inline CubeRootRational mu2_orbit_sum(u64 p, int m, const std::function<bool(const BinaryCubicForm&)>& in_set,
                                      std::size_t* orbit_count = nullptr) {
    u64 M = int_pow(p, m);
    if (M > 32) throw ResourceError("orbit enumeration limited to p^m <= 32");
    std::vector<char> seen(M * M * M * M, 0);
    CubeRootRational total(static_cast<i64>(p));
    std::size_t count = 0;
    detail::ResidueSpace sp{M};
    for (u64 id = 0; id < M * M * M * M; ++id) {
        if (seen[id]) continue;
        auto r = sp.unpack(id);
        BinaryCubicForm f{static_cast<i64>(r[0]), static_cast<i64>(r[1]), static_cast<i64>(r[2]),
                          static_cast<i64>(r[3])};
        if (!in_set(f)) {
            seen[id] = 1;
            continue;
        }
        auto orbit = detail::residue_orbit(r, p, M, seen);
        total += detail::orbit_mu2(orbit, p, m, M);
        ++count;
    }
    if (orbit_count) *orbit_count = count;
    return total;
}

}  // namespace cubic
