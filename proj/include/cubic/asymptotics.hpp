#pragma once

// Constants of the counting functions, Euler factors for local
// specifications, and predictions compared against enumerated counts.

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cubic/enumerate.hpp"
#include "cubic/local.hpp"
#include "cubic/special.hpp"

namespace cubic {

struct NamedConstant {
    std::string name;
    std::string expression;
    long double value = 0;
};

// Two normalizations of the X^(5/6) coefficients. Theorem: the field
// coefficients as stated for cubic fields, with the form coefficients implied
// by undoing the sieve factor zeta(2) zeta(5/3). Composed: the form
// coefficients as stated, pushed through that sieve to fields.
enum class Normalization { Theorem, Composed };
enum class CountKind { Forms, Fields };

inline std::string normalization_name(Normalization n) { return n == Normalization::Theorem ? "theorem" : "composed"; }
inline std::string count_kind_name(CountKind k) { return k == CountKind::Forms ? "forms" : "fields"; }

struct ConstantSet {
    long double c1_pos = 0, c1_neg = 0;        // forms, first term
    long double r = 0;
    long double c2_pos = 0, c2_neg = 0;        // forms, second term as stated
    long double C1_pos = 0, C1_neg = 0;        // fields, first term
    long double C2_pos = 0, C2_neg = 0;        // fields, second term as stated
    long double sieve2 = 0;                    // zeta(2) zeta(5/3)
    std::vector<NamedConstant> table;

    long double c1(Signature s) const { return s == Signature::PositiveDisc ? c1_pos : c1_neg; }
    long double C1(Signature s) const { return s == Signature::PositiveDisc ? C1_pos : C1_neg; }

    long double forms_c2(Signature s, Normalization n) const {
        long double printed = s == Signature::PositiveDisc ? c2_pos : c2_neg;
        long double field = s == Signature::PositiveDisc ? C2_pos : C2_neg;
        return n == Normalization::Composed ? printed : field * sieve2;
    }
    long double fields_c2(Signature s, Normalization n) const {
        long double printed = s == Signature::PositiveDisc ? c2_pos : c2_neg;
        long double field = s == Signature::PositiveDisc ? C2_pos : C2_neg;
        return n == Normalization::Theorem ? field : printed / sieve2;
    }
};

inline ConstantSet constants() {
    const long double pi = detail::kPi;
    const long double z2 = zeta_real(2), z3 = zeta_real(3), z53 = zeta_real(5.0L / 3);
    const long double z23 = zeta_real(2.0L / 3), z13 = zeta_real(1.0L / 3);
    const long double g13 = gamma_real(1.0L / 3), g23 = gamma_real(2.0L / 3);
    ConstantSet c;
    c.c1_pos = pi * pi / 72;
    c.c1_neg = pi * pi / 24;
    c.r = z23 * g13 * std::cbrt(2 * pi) / g23;
    c.c2_pos = std::sqrt(3.0L) * c.r / 15;
    c.c2_neg = c.r / 5;
    c.C1_pos = 1 / (12 * z3);
    c.C1_neg = 1 / (4 * z3);
    c.C2_pos = 4 * z13 / (5 * g23 * g23 * g23 * z53);
    c.C2_neg = std::sqrt(3.0L) * c.C2_pos;
    c.sieve2 = z2 * z53;
    c.table = {
        {"c1_pos", "pi^2/72", c.c1_pos},
        {"c1_neg", "pi^2/24", c.c1_neg},
        {"r", "zeta(2/3) Gamma(1/3) (2 pi)^(1/3) / Gamma(2/3)", c.r},
        {"c2_pos", "sqrt(3) r / 15", c.c2_pos},
        {"c2_neg", "r / 5", c.c2_neg},
        {"C1_pos", "1 / (12 zeta(3))", c.C1_pos},
        {"C1_neg", "1 / (4 zeta(3))", c.C1_neg},
        {"C2_pos", "4 zeta(1/3) / (5 Gamma(2/3)^3 zeta(5/3))", c.C2_pos},
        {"C2_neg", "sqrt(3) 4 zeta(1/3) / (5 Gamma(2/3)^3 zeta(5/3))", c.C2_neg},
        {"C2_pos_composed", "c2_pos / (zeta(2) zeta(5/3))", c.c2_pos / c.sieve2},
        {"C2_neg_composed", "c2_neg / (zeta(2) zeta(5/3))", c.c2_neg / c.sieve2},
        {"c2_pos_theorem", "C2_pos zeta(2) zeta(5/3)", c.C2_pos * c.sieve2},
        {"c2_neg_theorem", "C2_neg zeta(2) zeta(5/3)", c.C2_neg * c.sieve2},
    };
    return c;
}

struct IdentityResidual {
    std::string name;
    long double lhs = 0, rhs = 0;
    long double residual() const { return std::fabs(lhs - rhs) / std::max<long double>(1, std::fabs(rhs)); }
};

// Gamma/zeta identities, each side from independent routes, plus the
// normalization ratio between composed and stated field coefficients.
inline std::vector<IdentityResidual> verify_identities() {
    const long double pi = detail::kPi;
    const long double g16 = gamma_real(1.0L / 6), g13 = gamma_real(1.0L / 3), g23 = gamma_real(2.0L / 3);
    std::vector<IdentityResidual> out;
    out.push_back({"Gamma(1/6) = 2^(5/3) 3^(-1/2) pi^(3/2) / Gamma(2/3)^2", g16,
                   std::pow(2.0L, 5.0L / 3) / std::sqrt(3.0L) * std::pow(pi, 1.5L) / (g23 * g23)});
    out.push_back({"Gamma(2/3) = 3^(-1/2) 2 pi / Gamma(1/3)", g23, 2 * pi / (std::sqrt(3.0L) * g13)});
    out.push_back({"zeta(1/3) = (2 pi)^(-2/3) Gamma(2/3) zeta(2/3)", zeta_euler_maclaurin(1.0L / 3),
                   std::pow(2 * pi, -2.0L / 3) * g23 * zeta_euler_maclaurin(2.0L / 3)});
    out.push_back({"zeta(1/3) by reflection", zeta_euler_maclaurin(1.0L / 3), zeta_reflection(1.0L / 3)});
    out.push_back({"zeta(2/3) by reflection", zeta_euler_maclaurin(2.0L / 3), zeta_reflection(2.0L / 3)});
    out.push_back({"zeta(2) = pi^2/6", zeta_real(2), pi * pi / 6});
    out.push_back({"Gamma(1/2) = sqrt(pi)", gamma_real(0.5L), std::sqrt(pi)});
    return out;
}

// [c2_neg / (zeta(2) zeta(5/3))] / C2_neg
inline long double normalization_ratio() {
    ConstantSet c = constants();
    return (c.c2_neg / c.sieve2) / c.C2_neg;
}

inline long double predict(long double X, CountKind kind, Signature sig, int terms, Normalization norm,
                           const ConstantSet& c = constants()) {
    if (X <= 0) return 0;
    if (terms != 1 && terms != 2) throw DomainError("terms must be 1 or 2");
    long double first = kind == CountKind::Forms ? c.c1(sig) : c.C1(sig);
    long double v = first * X;
    if (terms == 2) {
        long double second = kind == CountKind::Forms ? c.forms_c2(sig, norm) : c.fields_c2(sig, norm);
        v += second * std::pow(X, 5.0L / 6);
    }
    return v;
}

class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FactorOrder { First, Second };

struct LocalFactor {
    std::optional<CubeRootRational> exact;  // first-order factors have zero cube-root parts
    long double value = 0;
};

// Per-prime factor of the Euler products: first order mu(S)/(1 - p^-2),
// second order the sum of second-order densities over the specification.
inline LocalFactor euler_local_factor(const LocalCondition& spec, u64 p, FactorOrder order) {
    using Mode = LocalCondition::Mode;
    if (spec.p != p) throw DomainError("local condition is attached to a different prime");
    const i64 pi = static_cast<i64>(p);
    const Rational P(pi);
    const Rational norm1 = Rational(1) / (Rational(1) - Rational(1) / (P * P));
    auto finish = [](CubeRootRational v) { return LocalFactor{v, v.to_long_double()}; };
    auto sum_symbols = [&](auto&& fn, auto&& keep) {
        CubeRootRational s(pi);
        for (auto sym : kSymbols)
            if (keep(sym)) s += fn(sym, p);
        return s;
    };
    auto all = [](SplittingSymbol) { return true; };
    auto no_cube = [](SplittingSymbol s) { return s != SplittingSymbol::S1cube; };
    auto in_set = [&](SplittingSymbol s) { return spec.symbols.count(s) > 0; };
    if (order == FactorOrder::First) {
        switch (spec.mode) {
            case Mode::AnyRing: return finish(CubeRootRational(pi, norm1));
            case Mode::MaximalAny: return finish(norm1 * sum_symbols(mu1_sigma, all));
            case Mode::MaximalNotTotRam: return finish(norm1 * sum_symbols(mu1_sigma, no_cube));
            case Mode::SplittingIn: return finish(norm1 * sum_symbols(mu1_sigma, in_set));
            case Mode::ExplicitResidues: {
                u64 m = int_pow(p, spec.level);
                if (m > 32) throw ResourceError("explicit residue density guard: p^level <= 32");
                Rational frac(static_cast<i128>(spec.residues.size()), static_cast<i128>(m) * m * m * m);
                return finish(CubeRootRational(pi, norm1 * frac));
            }
        }
    }
    switch (spec.mode) {
        case Mode::MaximalAny: return finish(sum_symbols(mu2_sigma, all));
        case Mode::MaximalNotTotRam: return finish(sum_symbols(mu2_sigma, no_cube));
        case Mode::SplittingIn: return finish(sum_symbols(mu2_sigma, in_set));
        case Mode::ExplicitResidues: {
            u64 m = int_pow(p, spec.level);
            if (m > 32) throw ResourceError("explicit residue density guard: p^level <= 32");
            auto pred = [&](const BinaryCubicForm& f) { return satisfies(spec, f); };
            return finish(mu2_orbit_sum(p, spec.level, pred));
        }
        case Mode::AnyRing:
            throw CapabilityError("no finite second-order factor for all rings at p");
    }
    throw CapabilityError("unsupported local specification");
}

// Prediction for classes satisfying finitely many local conditions:
// c1 * prod mu(S_p) X + c2 * prod mu2(S_p) X^(5/6).
inline long double predict_local(long double X, Signature sig, const std::vector<LocalCondition>& specs, int terms,
                                 Normalization norm, const ConstantSet& c = constants()) {
    if (X <= 0) return 0;
    long double f1 = 1, f2 = 1;
    for (const auto& s : specs) {
        long double p = static_cast<long double>(s.p);
        f1 *= euler_local_factor(s, s.p, FactorOrder::First).value * (1 - 1 / (p * p));
        if (terms == 2) f2 *= euler_local_factor(s, s.p, FactorOrder::Second).value;
    }
    long double v = c.c1(sig) * f1 * X;
    if (terms == 2) v += c.forms_c2(sig, norm) * f2 * std::pow(X, 5.0L / 6);
    return v;
}

struct ResidualRow {
    long double X = 0;
    i64 count = 0;
    Rational weighted;
    long double pred1 = 0, pred2_theorem = 0, pred2_composed = 0;
    long double res1() const { return count - pred1; }
    long double res2_theorem() const { return count - pred2_theorem; }
    long double res2_composed() const { return count - pred2_composed; }
    long double scaled(long double r, long double e) const { return X > 0 ? r / std::pow(X, e) : 0; }
};

inline std::vector<ResidualRow> residual_report(const std::vector<i64>& Xs, CountKind kind, Signature sig,
                                                int threads = 1) {
    if (!Xs.empty() && *std::max_element(Xs.begin(), Xs.end()) > 100000000)
        throw ResourceError("residual report guard: X <= 10^8");
    ConstantSet c = constants();
    std::vector<ResidualRow> out;
    for (i64 X : Xs) {
        ResidualRow row;
        row.X = static_cast<long double>(X);
        if (X > 0) {
            CountReport rep = count(X, sig, kind == CountKind::Forms ? CountMode::Orders : CountMode::Fields, threads);
            row.count = rep.raw;
            row.weighted = rep.weighted;
            row.pred1 = predict(row.X, kind, sig, 1, Normalization::Theorem, c);
            row.pred2_theorem = predict(row.X, kind, sig, 2, Normalization::Theorem, c);
            row.pred2_composed = predict(row.X, kind, sig, 2, Normalization::Composed, c);
        }
        out.push_back(row);
    }
    return out;
}

inline void write_residual_csv(std::ostream& os, const std::vector<ResidualRow>& rows) {
    os << "X,count,weighted,pred1,pred2_theorem,pred2_composed,res1,res2_theorem,res2_composed\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.0Lf,%lld,%s,%.6Lf,%.6Lf,%.6Lf,%.6Lf,%.6Lf,%.6Lf\n", r.X,
                      static_cast<long long>(r.count), r.weighted.str().c_str(), r.pred1, r.pred2_theorem,
                      r.pred2_composed, r.res1(), r.res2_theorem(), r.res2_composed());
        os << buf;
    }
}

}  // namespace cubic
