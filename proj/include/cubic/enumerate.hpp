#pragma once

// Enumeration of canonical representatives of irreducible classes with
// 0 < +-Disc < X, class filters, counts, and root-weighted sums.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cubic/factor.hpp"
#include "cubic/forms.hpp"
#include "cubic/local.hpp"
#include "cubic/rational.hpp"
#include "cubic/reduction.hpp"

namespace cubic {

struct ClassRecord {
    BinaryCubicForm form;
    i128 disc = 0;
    Signature sig = Signature::PositiveDisc;
    i64 content = 1;
    int aut = 1;
    bool maximal = false;
    bool ntr = false;
};

inline bool inventory_order(const ClassRecord& x, const ClassRecord& y) {
    i128 ax = abs_value(x.disc), ay = abs_value(y.disc);
    if (ax != ay) return ax < ay;
    return x.form < y.form;
}

namespace detail {

inline long double fourth_root(long double x) { return std::sqrt(std::sqrt(x)); }

inline i64 leading_bound(i128 X) {
    // a <= (2/3)^(3/2) |Disc|^(1/4), plus margin
    return static_cast<i64>(std::floor(0.5443310539518174L * fourth_root(static_cast<long double>(X)))) + 1;
}

inline i64 second_bound(i64 a, i128 X) {
    return static_cast<i64>(std::floor(1.5L * a + fourth_root(static_cast<long double>(X)))) + 1;
}

// |d|^(2/3) <= X^(1/3) a^(-2/3) / 3 + X^(1/6) / 6
inline i64 last_bound(i64 a, i128 X) {
    long double x = static_cast<long double>(X);
    long double t = std::cbrt(x) / std::cbrt(static_cast<long double>(a) * a) / 3 + std::cbrt(std::sqrt(x)) / 6;
    return static_cast<i64>(std::floor(std::pow(t, 1.5L) * (1 + 1e-9L))) + 1;
}

// |c| <= 1.5 |d| + sqrt(C_max), C_max = X^(2/3) a^(-2/3) + X^(1/2) / 2
inline i64 third_bound(i64 a, i64 d, i128 X) {
    long double x = static_cast<long double>(X);
    long double cmax = std::cbrt(x * x) / std::cbrt(static_cast<long double>(a) * a) + std::sqrt(x) / 2;
    return static_cast<i64>(std::floor(1.5L * abs_value(d) + std::sqrt(cmax))) + 1;
}

// Real roots of k3 c^3 + k2 c^2 + k1 c + k0 (k3 != 0), sorted.
inline std::vector<long double> cubic_real_roots(long double k3, long double k2, long double k1, long double k0) {
    auto val = [&](long double c) { return ((k3 * c + k2) * c + k1) * c + k0; };
    long double bound = 1 + std::max({std::fabs(k2 / k3), std::fabs(k1 / k3), std::fabs(k0 / k3)});
    std::vector<long double> cuts{-bound};
    long double qa = 3 * k3, qb = 2 * k2, qc = k1;
    long double disc = qb * qb - 4 * qa * qc;
    if (disc > 0) {
        long double s = std::sqrt(disc);
        long double r1 = (-qb - s) / (2 * qa), r2 = (-qb + s) / (2 * qa);
        if (r1 > r2) std::swap(r1, r2);
        cuts.push_back(std::clamp(r1, -bound, bound));
        cuts.push_back(std::clamp(r2, -bound, bound));
    }
    cuts.push_back(bound);
    std::vector<long double> roots;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        long double lo = cuts[i], hi = cuts[i + 1];
        long double flo = val(lo), fhi = val(hi);
        if (flo == 0) {
            roots.push_back(lo);
            continue;
        }
        if ((flo < 0) == (fhi < 0)) continue;
        for (int it = 0; it < 100 && hi - lo > 1e-12L * (1 + std::fabs(lo)); ++it) {
            long double mid = (lo + hi) / 2;
            long double fm = val(mid);
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        roots.push_back((lo + hi) / 2);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Visit every integer c in [lo, hi] with -X < Disc(a,b,c,d) < 0.
template <class Fn>
inline void for_each_negative_c(i64 a, i64 b, i64 d, i64 lo, i64 hi, i128 X, Fn&& fn) {
    // Disc as a cubic in c
    const long double k3 = -4.0L * a, k2 = static_cast<long double>(b) * b, k1 = 18.0L * a * b * d;
    const long double k0 = -4.0L * b * b * b * d - 27.0L * a * a * d * d;
    const long double xf = static_cast<long double>(X);
    std::vector<long double> pts{static_cast<long double>(lo), static_cast<long double>(hi)};
    for (long double r : cubic_real_roots(k3, k2, k1, k0))
        if (r > lo && r < hi) pts.push_back(r);
    for (long double r : cubic_real_roots(k3, k2, k1, k0 + xf))
        if (r > lo && r < hi) pts.push_back(r);
    std::sort(pts.begin(), pts.end());
    const i128 ai = a, bi = b, di = d;
    auto exact = [&](i128 c) {
        return bi * bi * c * c - 4 * ai * c * c * c - 4 * bi * bi * bi * di - 27 * ai * ai * di * di + 18 * ai * bi * c * di;
    };
    i64 next = lo;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        long double s = pts[i], e = pts[i + 1];
        long double mid = (s + e) / 2;
        long double dv = ((k3 * mid + k2) * mid + k1) * mid + k0;
        long double scale = std::fabs(k3 * mid * mid * mid) + std::fabs(k2 * mid * mid) + std::fabs(k1 * mid) +
                            std::fabs(k0) + xf;
        long double tol = scale * 1e-12L + 1;
        if (!(dv < tol && dv > -xf - tol)) continue;
        i64 from = std::max<i64>(next, static_cast<i64>(std::floor(s)) - 1);
        i64 to = std::min<i64>(hi, static_cast<i64>(std::ceil(e)) + 1);
        for (i64 c = std::max(from, lo); c <= to; ++c) {
            i128 D = exact(c);
            if (D < 0 && D > -X) fn(c, D);
            next = c + 1;
        }
    }
}

}  // namespace detail

// Calls fn(form, disc) for each canonical irreducible form with leading
// coefficient a and 0 < sign*Disc < X.
template <class Fn>
inline void enumerate_leading(Signature sig, i128 X, i64 a, Fn&& fn) {
    if (X <= 1) return;
    const i64 bmax = detail::second_bound(a, X);
    if (sig == Signature::PositiveDisc) {
        // P <= sqrt(Disc), so P^2 <= X - 1
        const i128 pmax = static_cast<i128>(isqrt_u64(static_cast<u64>(X - 1)));
        for (i64 b = 0; b <= bmax; ++b) {
            const i128 b2 = static_cast<i128>(b) * b;
            i128 cmin = ceil_div<i128>(b2 - pmax, 3 * a);
            i128 cmax = floor_div<i128>(b2 - 1, 3 * a);
            for (i128 c = cmin; c <= cmax; ++c) {
                const i128 P = b2 - 3 * a * c;
                const i128 bc = b * c;
                i128 dlo = ceil_div<i128>(bc - P, 9 * a), dhi = floor_div<i128>(bc + P, 9 * a);
                if (b == 0) dlo = std::max<i128>(dlo, 1);
                for (i128 d = dlo; d <= dhi; ++d) {
                    if (d == 0) continue;
                    const i128 R = c * c - 3 * b * d;
                    if (R < P) continue;
                    const i128 Q = bc - 9 * a * d;
                    const i128 D = (4 * P * R - Q * Q) / 3;
                    if (D >= X) continue;
                    BinaryCubicForm f{a, b, static_cast<i64>(c), static_cast<i64>(d)};
                    if (!is_irreducible(f)) continue;
                    if (abs_value(Q) == P || P == R) {
                        if (!is_canonical(f, D)) continue;
                    }
                    fn(f, D);
                }
            }
        }
        return;
    }
    const i64 dmax = detail::last_bound(a, X);
    for (i64 b = 0; b <= bmax; ++b) {
        for (i64 d = -dmax; d <= dmax; ++d) {
            if (d == 0 || (b == 0 && d < 0)) continue;
            const i64 cb = detail::third_bound(a, d, X);
            detail::for_each_negative_c(a, b, d, -cb, cb, X, [&](i64 c, i128 D) {
                BinaryCubicForm f{a, b, c, d};
                if (!is_canonical(f, D)) return;
                if (!is_irreducible(f)) return;
                fn(f, D);
            });
        }
    }
}

inline i64 leading_coefficient_bound(i128 X) { return detail::leading_bound(X); }

// Runs enumerate_leading over all leading coefficients, partitioned across
// threads by a; each worker receives its own accumulator via make_acc and the
// accumulators are returned in increasing-a order of their first partition.
template <class Acc, class MakeAcc, class Visit>
inline std::vector<Acc> enumerate_partitioned(Signature sig, i128 X, int threads, MakeAcc make_acc, Visit visit) {
    const i64 amax = detail::leading_bound(X);
    threads = std::max(1, threads);
    std::vector<Acc> accs;
    for (int t = 0; t < threads; ++t) accs.push_back(make_acc());
    auto work = [&](int t) {
        for (i64 a = 1 + t; a <= amax; a += threads)
            enumerate_leading(sig, X, a, [&](const BinaryCubicForm& f, i128 D) { visit(accs[t], f, D); });
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    return accs;
}

// ---------------------------------------------------------------------------
// Filters and counts.

enum class CountMode { Orders, Fields, NowhereTotRam, Custom };

inline std::string count_mode_name(CountMode m) {
    switch (m) {
        case CountMode::Orders: return "orders";
        case CountMode::Fields: return "fields";
        case CountMode::NowhereTotRam: return "nowhere_tot_ram";
        case CountMode::Custom: return "custom";
    }
    return "?";
}

struct ClassFilter {
    bool require_maximal = false;
    bool require_ntr = false;
    std::vector<LocalCondition> local;

    static ClassFilter for_mode(CountMode m) {
        ClassFilter f;
        f.require_maximal = m == CountMode::Fields || m == CountMode::NowhereTotRam;
        f.require_ntr = m == CountMode::NowhereTotRam;
        return f;
    }

    bool needs_factorization() const { return require_maximal || require_ntr; }

    std::string describe() const {
        std::string s;
        if (require_ntr)
            s = "nowhere_tot_ram";
        else if (require_maximal)
            s = "maximal";
        else
            s = "all";
        for (const auto& c : local) s += ";" + c.describe();
        return s;
    }
};

// Fills the local fields of a record from a factorization of its discriminant.
class LocalAnnotator {
public:
    explicit LocalAnnotator(i128 X) {
        if (X <= 200000000) sieve_ = std::make_shared<PrimeSieve>(static_cast<u64>(std::max<i128>(X, 2)));
    }

    Factorization factor(i128 disc) const {
        u128 n = static_cast<u128>(abs_value(disc));
        if (sieve_ && n <= sieve_->limit()) return sieve_->factor(static_cast<u64>(n));
        return factorize(n);
    }

    void annotate(ClassRecord& r) const {
        Factorization fac = factor(r.disc);
        r.maximal = is_maximal(r.form, fac);
        r.ntr = r.maximal && is_nowhere_totally_ramified(r.form, fac);
    }

private:
    std::shared_ptr<PrimeSieve> sieve_;
};

inline ClassRecord make_record(const BinaryCubicForm& f, i128 D) {
    ClassRecord r;
    r.form = f;
    r.disc = D;
    r.sig = D > 0 ? Signature::PositiveDisc : Signature::NegativeDisc;
    r.content = content(f);
    r.aut = D > 0 ? automorphism_count_canonical(f) : 1;
    return r;
}

inline bool passes(const ClassFilter& filter, const ClassRecord& r) {
    if (filter.require_maximal && !r.maximal) return false;
    if (filter.require_ntr && !r.ntr) return false;
    for (const auto& c : filter.local)
        if (!satisfies(c, r.form)) return false;
    return true;
}

struct EnumerationOptions {
    int threads = 1;
    bool annotate = true;  // compute maximal / ntr flags
};

// All classes with lo < Disc < hi, sorted by (|disc|, a, b, c, d).
inline std::vector<ClassRecord> classes(i128 lo, i128 hi, const ClassFilter& filter = {},
                                        const EnumerationOptions& opt = {}) {
    std::vector<ClassRecord> out;
    if (hi <= lo + 1) return out;
    const bool need_flags = opt.annotate || filter.needs_factorization();
    for (Signature sig : {Signature::NegativeDisc, Signature::PositiveDisc}) {
        i128 X = sig == Signature::PositiveDisc ? hi : -lo;
        if (X <= 1) continue;
        if (sig == Signature::PositiveDisc && hi <= 0) continue;
        if (sig == Signature::NegativeDisc && lo >= 0) continue;
        std::optional<LocalAnnotator> ann;
        if (need_flags) ann.emplace(X);
        auto parts = enumerate_partitioned<std::vector<ClassRecord>>(
            sig, X, opt.threads, [] { return std::vector<ClassRecord>{}; },
            [&](std::vector<ClassRecord>& acc, const BinaryCubicForm& f, i128 D) {
                if (D <= lo || D >= hi) return;
                ClassRecord r = make_record(f, D);
                if (ann) ann->annotate(r);
                if (passes(filter, r)) acc.push_back(r);
            });
        for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    }
    std::sort(out.begin(), out.end(), inventory_order);
    return out;
}

struct CountReport {
    i128 X = 0;
    Signature sig = Signature::PositiveDisc;
    std::string filter;
    i64 raw = 0;
    i64 c3_classes = 0;
    Rational weighted;  // C3 classes weighted 1/3
};

inline CountReport count(i128 X, Signature sig, const ClassFilter& filter, int threads = 1) {
    CountReport rep;
    rep.X = X;
    rep.sig = sig;
    rep.filter = filter.describe();
    if (X <= 1) return rep;
    std::optional<LocalAnnotator> ann;
    if (filter.needs_factorization()) ann.emplace(X);
    struct Acc {
        i64 raw = 0, c3 = 0;
    };
    auto parts = enumerate_partitioned<Acc>(sig, X, threads, [] { return Acc{}; },
                                            [&](Acc& acc, const BinaryCubicForm& f, i128 D) {
                                                ClassRecord r = make_record(f, D);
                                                if (ann) ann->annotate(r);
                                                if (!passes(filter, r)) return;
                                                ++acc.raw;
                                                if (r.aut == 3) ++acc.c3;
                                            });
    for (const auto& p : parts) {
        rep.raw += p.raw;
        rep.c3_classes += p.c3;
    }
    rep.weighted = Rational(rep.raw - rep.c3_classes) + Rational(rep.c3_classes, 3);
    return rep;
}

inline CountReport count(i128 X, Signature sig, CountMode mode, int threads = 1) {
    return count(X, sig, ClassFilter::for_mode(mode), threads);
}

// Counts with a real bound: classes with 0 < sign*Disc and scale*|Disc| < X.
inline i64 count_scaled(const std::vector<ClassRecord>& inv, i128 scale, i128 X) {
    i64 n = 0;
    for (const auto& r : inv)
        if (mul_checked(abs_value(r.disc), scale) < X) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Root weights.

inline bool is_squarefree(u64 n) {
    for (const auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

// w_n(f): product over p | n of the number of roots of f in P^1(F_p).
inline i64 root_count_w(const BinaryCubicForm& f, u64 n) {
    if (n < 2 || !is_squarefree(n)) throw DomainError("w_n needs a squarefree n > 1");
    i64 w = 1;
    for (const auto& [p, e] : factorize(n)) {
        RootStructure rs = root_structure(f, static_cast<u64>(p));
        if (rs.degenerate) throw DomainError("form vanishes mod a prime factor of n");
        w *= rs.distinct;
    }
    return w;
}

// Number of roots of f mod p, or p + 1 when f = 0 mod p.
inline i64 roots_with_degenerate(const BinaryCubicForm& f, u64 p) {
    RootStructure rs = root_structure(f, p);
    return rs.degenerate ? static_cast<i64>(p) + 1 : rs.distinct;
}

inline i128 weighted_count_S(u64 n, i128 X, Signature sig, bool inclusive = false, int threads = 1) {
    if (n < 2 || !is_squarefree(n)) throw DomainError("S_n needs a squarefree n > 1");
    i128 bound = inclusive ? X + 1 : X;
    auto parts = enumerate_partitioned<i128>(sig, bound, threads, [] { return i128{0}; },
                                             [&](i128& acc, const BinaryCubicForm& f, i128) {
                                                 i128 w = 1;
                                                 for (const auto& [p, e] : factorize(n))
                                                     w *= roots_with_degenerate(f, static_cast<u64>(p));
                                                 acc += w;
                                             });
    i128 total = 0;
    for (auto v : parts) total += v;
    return total;
}

// Number of orbits of the automorphism group on the roots of f mod p, where
// f is a canonical form with aut(f) = 3 (Burnside over the order-3 stabilizer).
inline i64 aut_orbits_on_roots(const BinaryCubicForm& f, u64 p) {
    std::optional<UnimodularMatrix> gen;
    for (const auto& g : detail::small_unimodular()) {
        if (g == UnimodularMatrix::identity()) continue;
        if (act(g, f) == f) {
            gen = g;
            break;
        }
    }
    if (!gen) return roots_with_degenerate(f, p);
    RootStructure rs = root_structure(f, p);
    i64 roots = rs.degenerate ? static_cast<i64>(p) + 1 : rs.distinct;
    i64 fixed = 0;
    auto check = [&](u64 x, u64 y) {
        if (!rs.degenerate && eval_mod(f, x, y, p) != 0) return;
        // (x, y) g proportional to (x, y)
        u64 nx = (mulmod(x, reduce_mod(gen->p(), p), p) + mulmod(y, reduce_mod(gen->r(), p), p)) % p;
        u64 ny = (mulmod(x, reduce_mod(gen->q(), p), p) + mulmod(y, reduce_mod(gen->s(), p), p)) % p;
        if (mulmod(nx, y, p) == mulmod(ny, x, p)) ++fixed;
    };
    check(1, 0);
    for (u64 t = 0; t < p; ++t) check(t, 1);
    return (roots + 2 * fixed) / 3;
}

struct SwitchingResult {
    i64 non_maximal = 0;        // N(W_p; X)
    i64 s_p2 = 0;               // S_p(X/p^2), automorphism-orbit weights
    i64 s_p4 = 0;               // S_p(X/p^4)
    i64 n_p4 = 0;               // N(V; X/p^4)
    i64 residual = 0;           // with automorphism-orbit weights
    i64 residual_plain_w = 0;   // with plain root counts
};

// Exact switching identity at p, both signatures combined.
inline SwitchingResult verify_switching(u64 p, i128 X, int threads = 1) {
    if (!is_prime_u64(p)) throw DomainError("switching needs a prime");
    SwitchingResult res;
    i64 plain_p2 = 0, plain_p4 = 0;
    const i128 p2 = static_cast<i128>(p) * p, p4 = p2 * p2;
    for (Signature sig : {Signature::NegativeDisc, Signature::PositiveDisc}) {
        struct Acc {
            i64 nonmax = 0, s2 = 0, s4 = 0, n4 = 0, w2 = 0, w4 = 0;
        };
        auto parts = enumerate_partitioned<Acc>(sig, X, threads, [] { return Acc{}; },
                                                [&](Acc& acc, const BinaryCubicForm& f, i128 D) {
                                                    i128 ad = abs_value(D);
                                                    RootStructure rs = root_structure(f, p);
                                                    if (!detail::maximal_at_residue(f, p, rs)) ++acc.nonmax;
                                                    if (ad * p2 >= X) return;
                                                    i64 w = rs.degenerate ? static_cast<i64>(p) + 1 : rs.distinct;
                                                    int aut = D > 0 ? automorphism_count_canonical(f) : 1;
                                                    i64 o = aut == 3 ? aut_orbits_on_roots(f, p) : w;
                                                    acc.s2 += o;
                                                    acc.w2 += w;
                                                    if (ad * p4 < X) {
                                                        acc.s4 += o;
                                                        acc.w4 += w;
                                                        ++acc.n4;
                                                    }
                                                });
        for (const auto& a : parts) {
            res.non_maximal += a.nonmax;
            res.s_p2 += a.s2;
            res.s_p4 += a.s4;
            res.n_p4 += a.n4;
            plain_p2 += a.w2;
            plain_p4 += a.w4;
        }
    }
    res.residual = res.non_maximal - (res.s_p2 - res.s_p4 + res.n_p4);
    res.residual_plain_w = res.non_maximal - (plain_p2 - plain_p4 + res.n_p4);
    return res;
}

// N(W_p; X): classes with |Disc| < X, both signatures, non-maximal at p.
inline i64 count_non_maximal_at(u64 p, i128 X, int threads = 1) {
    i64 total = 0;
    for (Signature sig : {Signature::NegativeDisc, Signature::PositiveDisc}) {
        auto parts = enumerate_partitioned<i64>(sig, X, threads, [] { return i64{0}; },
                                                [&](i64& acc, const BinaryCubicForm& f, i128) {
                                                    RootStructure rs = root_structure(f, p);
                                                    if (!detail::maximal_at_residue(f, p, rs)) ++acc;
                                                });
        for (auto v : parts) total += v;
    }
    return total;
}


// ---------------------------------------------------------------------------
// Brute-force oracle: every form in a generous box, merged into classes by
// flooding each class with generator moves.

struct BruteForceCounts {
    i64 positive = 0;
    i64 negative = 0;
    std::vector<BinaryCubicForm> representatives;  // one per component, a > 0
};

namespace detail {

struct FormHash {
    std::size_t operator()(const BinaryCubicForm& f) const {
        u64 h = 1469598103934665603ULL;
        for (i64 v : {f.a, f.b, f.c, f.d}) h = (h ^ static_cast<u64>(v)) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
    }
};

}  // namespace detail

inline BruteForceCounts brute_force_classes(i128 X) {
    if (X > 5000) throw ResourceError("brute-force oracle guard: X <= 5000");
    BruteForceCounts out;
    if (X <= 1) return out;
    const long double q = std::sqrt(std::sqrt(static_cast<long double>(X)));
    const i64 A = 2 * (static_cast<i64>(0.55L * q) + 2);
    const i64 B = 2 * (static_cast<i64>(1.5L * A / 2 + q) + 2);
    const i64 Dm = 2 * (static_cast<i64>(std::pow(std::cbrt(static_cast<long double>(X)) / 3 + std::cbrt(std::sqrt(static_cast<long double>(X))) / 6, 1.5L)) + 2);
    const i64 C = 2 * (static_cast<i64>(1.5L * Dm / 2 + std::sqrt(std::cbrt(static_cast<long double>(X) * X) + std::sqrt(static_cast<long double>(X)))) + 2);
    auto normal = [](BinaryCubicForm f) { return f.a < 0 ? f.negated() : f; };
    std::vector<BinaryCubicForm> nodes;
    for (i64 a = 1; a <= A; ++a)
        for (i64 b = -B; b <= B; ++b)
            for (i64 c = -C; c <= C; ++c)
                for (i64 d = -Dm; d <= Dm; ++d) {
                    BinaryCubicForm f{a, b, c, d};
                    i128 D = discriminant(f);
                    if (D == 0 || abs_value(D) >= X) continue;
                    if (!is_irreducible(f)) continue;
                    nodes.push_back(f);
                }
    // Flood each class through all forms with coefficients inside a box
    // ten times larger, so connecting paths may leave the sampling box.
    const std::array<i64, 4> big{10 * A, 10 * B, 10 * C, 10 * Dm};
    auto inside = [&](const BinaryCubicForm& f) {
        return abs_value(f.a) <= big[0] && abs_value(f.b) <= big[1] && abs_value(f.c) <= big[2] &&
               abs_value(f.d) <= big[3];
    };
    const std::vector<UnimodularMatrix> gens{UnimodularMatrix(1, 0, 1, 1),  UnimodularMatrix(1, 0, -1, 1),
                                             UnimodularMatrix(1, 1, 0, 1),  UnimodularMatrix(1, -1, 0, 1),
                                             UnimodularMatrix(0, 1, 1, 0),  UnimodularMatrix(-1, 0, 0, 1)};
    std::unordered_set<BinaryCubicForm, detail::FormHash> seen;
    for (const auto& start : nodes) {
        if (seen.count(start)) continue;
        out.representatives.push_back(start);
        if (discriminant(start) > 0)
            ++out.positive;
        else
            ++out.negative;
        std::vector<BinaryCubicForm> queue{start};
        seen.insert(start);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            for (const auto& g : gens) {
                BinaryCubicForm h = normal(act(g, queue[i]));
                if (!inside(h) || seen.count(h)) continue;
                seen.insert(h);
                queue.push_back(h);
            }
        }
    }
    return out;
}

}  // namespace cubic
