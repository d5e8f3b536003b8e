#pragma once

// Gamma and zeta on the real line in long double.

#include <array>
#include <cmath>
#include <numbers>

#include "cubic/arith.hpp"

namespace cubic {

namespace detail {

// B_2, B_4, ..., B_24
inline constexpr std::array<long double, 12> kBernoulliEven = {
    1.0L / 6,         -1.0L / 30,          1.0L / 42,     -1.0L / 30,
    5.0L / 66,        -691.0L / 2730,      7.0L / 6,      -3617.0L / 510,
    43867.0L / 798,   -174611.0L / 330,    854513.0L / 138, -236364091.0L / 2730};

inline constexpr long double kPi = std::numbers::pi_v<long double>;

}  // namespace detail

// log Gamma(x) for x > 0: shift to x >= 20, then the Stirling series.
inline long double log_gamma_real(long double x) {
    if (!(x > 0)) throw DomainError("log gamma needs x > 0");
    long double shift = 0;
    while (x < 20) {
        shift += std::log(x);
        x += 1;
    }
    long double s = (x - 0.5L) * std::log(x) - x + 0.5L * std::log(2 * detail::kPi);
    long double xp = x, x2 = x * x;
    for (int k = 1; k <= 10; ++k) {
        s += detail::kBernoulliEven[k - 1] / ((2.0L * k) * (2.0L * k - 1) * xp);
        xp *= x2;
    }
    return s - shift;
}

inline long double gamma_real(long double x) {
    if (!(x > 0)) throw DomainError("gamma needs x > 0");
    return std::exp(log_gamma_real(x));
}

// Euler-Maclaurin with 20 explicit terms and 12 Bernoulli corrections.
inline long double zeta_euler_maclaurin(long double s) {
    if (s == 1) throw DomainError("zeta has a pole at 1");
    constexpr int N = 20;
    long double sum = 0;
    for (int n = 1; n < N; ++n) sum += std::pow(static_cast<long double>(n), -s);
    const long double Nl = N;
    sum += std::pow(Nl, 1 - s) / (s - 1) + 0.5L * std::pow(Nl, -s);
    long double rising = s;  // s (s+1) ... (s + 2k - 2)
    long double fact = 2;    // (2k)!
    long double npow = std::pow(Nl, -s - 1);
    for (int k = 1; k <= 12; ++k) {
        sum += detail::kBernoulliEven[k - 1] / fact * rising * npow;
        rising *= (s + 2 * k - 1) * (s + 2 * k);
        fact *= (2.0L * k + 1) * (2.0L * k + 2);
        npow /= Nl * Nl;
    }
    return sum;
}

// zeta(s) = 2 (2 pi)^(s-1) sin(pi s / 2) Gamma(1 - s) zeta(1 - s), for s < 1
inline long double zeta_reflection(long double s) {
    if (!(s < 1) || s <= 0) throw DomainError("reflection route needs 0 < s < 1");
    return 2 * std::pow(2 * detail::kPi, s - 1) * std::sin(detail::kPi * s / 2) * gamma_real(1 - s) *
           zeta_euler_maclaurin(1 - s);
}

inline long double zeta_real(long double s) { return zeta_euler_maclaurin(s); }

}  // namespace cubic
