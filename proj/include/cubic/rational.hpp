#pragma once

// Exact rationals over 128-bit integers, and the three-coefficient module
// Q + Q t + Q t^2 with t^3 = 1/p used for second-order densities.

#include <array>
#include <cmath>
#include <compare>
#include <ostream>
#include <string>

#include "cubic/arith.hpp"

namespace cubic {

class Rational {
public:
    Rational() = default;
    Rational(i128 n) : num_(n), den_(1) {}  // NOLINT implicit
    Rational(i128 n, i128 d) : num_(n), den_(d) {
        if (d == 0) throw DomainError("zero denominator");
        normalize();
    }

    i128 num() const { return num_; }
    i128 den() const { return den_; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        i128 g = gcd_value(x.den_, y.den_);
        i128 l = x.den_ / g;
        i128 n = add_checked(mul_checked(x.num_, y.den_ / g), mul_checked(y.num_, l));
        return Rational(n, mul_checked(l, y.den_));
    }
    friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
    friend Rational operator*(const Rational& x, const Rational& y) {
        i128 g1 = gcd_value(x.num_, y.den_), g2 = gcd_value(y.num_, x.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return Rational(mul_checked(x.num_ / g1, y.num_ / g2), mul_checked(x.den_ / g2, y.den_ / g1));
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw DomainError("division by zero");
        return x * Rational(y.den_, y.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& x, const Rational& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
        i128 l = mul_checked(x.num_, y.den_), r = mul_checked(y.num_, x.den_);
        return l <=> r;
    }

    long double to_long_double() const { return static_cast<long double>(num_) / static_cast<long double>(den_); }

    std::string str() const { return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_); }

    static Rational pow(const Rational& base, int e) {
        if (e < 0) return pow(Rational(1) / base, -e);
        Rational r(1);
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        i128 g = gcd_value(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    i128 num_ = 0;
    i128 den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// q0 + q1 t + q2 t^2 where t = p^(-1/3)
class CubeRootRational {
public:
    CubeRootRational() = default;
    explicit CubeRootRational(i64 p) : p_(p) {}
    CubeRootRational(i64 p, Rational q0, Rational q1 = 0, Rational q2 = 0) : p_(p), q_{q0, q1, q2} {}

    static CubeRootRational t(i64 p) { return {p, 0, 1, 0}; }

    // p^(k/3) for any integer k
    static CubeRootRational p_power_third(i64 p, int k) {
        int q = floor_div(k, 3);
        int r = k - 3 * q;
        // p^(r/3) = p * t^(3-r) for r = 1, 2
        Rational scale = Rational::pow(Rational(p), q);
        if (r == 0) return {p, scale, 0, 0};
        if (r == 1) return {p, 0, 0, scale * Rational(p)};
        return {p, 0, scale * Rational(p), 0};
    }

    i64 prime() const { return p_; }
    const Rational& coeff(int i) const { return q_[i]; }

    friend CubeRootRational operator+(const CubeRootRational& x, const CubeRootRational& y) {
        i64 p = common(x, y);
        return {p, x.q_[0] + y.q_[0], x.q_[1] + y.q_[1], x.q_[2] + y.q_[2]};
    }
    friend CubeRootRational operator-(const CubeRootRational& x, const CubeRootRational& y) {
        i64 p = common(x, y);
        return {p, x.q_[0] - y.q_[0], x.q_[1] - y.q_[1], x.q_[2] - y.q_[2]};
    }
    friend CubeRootRational operator*(const CubeRootRational& x, const CubeRootRational& y) {
        i64 p = common(x, y);
        std::array<Rational, 5> raw{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) raw[i + j] += x.q_[i] * y.q_[j];
        if (raw[3] == 0 && raw[4] == 0) return {p, raw[0], raw[1], raw[2]};
        if (p == 0) throw DomainError("cube-root product needs a prime");
        Rational inv_p(1, p);
        return {p, raw[0] + raw[3] * inv_p, raw[1] + raw[4] * inv_p, raw[2]};
    }
    friend CubeRootRational operator*(const Rational& s, const CubeRootRational& x) {
        return {x.p_, s * x.q_[0], s * x.q_[1], s * x.q_[2]};
    }
    CubeRootRational& operator+=(const CubeRootRational& o) { return *this = *this + o; }
    CubeRootRational& operator*=(const CubeRootRational& o) { return *this = *this * o; }

    friend bool operator==(const CubeRootRational& x, const CubeRootRational& y) {
        if (x.is_rational_zero_coeffs() && y.is_rational_zero_coeffs()) return true;
        return (x.p_ == y.p_ || x.p_ == 0 || y.p_ == 0) && x.q_ == y.q_;
    }

    long double to_long_double() const {
        long double t = std::pow(static_cast<long double>(p_), -1.0L / 3.0L);
        return q_[0].to_long_double() + q_[1].to_long_double() * t + q_[2].to_long_double() * t * t;
    }

    std::string str() const {
        std::string tp = "p^(-1/3)";
        if (p_ != 0) tp = std::to_string(p_) + "^(-1/3)";
        return "(" + q_[0].str() + ") + (" + q_[1].str() + ")*" + tp + " + (" + q_[2].str() + ")*" + tp + "^2";
    }

private:
    bool is_rational_zero_coeffs() const { return q_[0] == 0 && q_[1] == 0 && q_[2] == 0; }

    static i64 common(const CubeRootRational& x, const CubeRootRational& y) {
        if (x.p_ == y.p_) return x.p_;
        if (x.p_ == 0) return y.p_;
        if (y.p_ == 0) return x.p_;
        throw DomainError("mixing cube-root rationals over different primes");
    }

    i64 p_ = 0;
    std::array<Rational, 3> q_{};
};

inline std::ostream& operator<<(std::ostream& os, const CubeRootRational& x) { return os << x.str(); }

}  // namespace cubic
