#pragma once

// Integer factorization for discriminants: a smallest-prime-factor sieve for
// bulk work, trial division to 10^6, then Miller-Rabin and Pollard rho.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "cubic/arith.hpp"

namespace cubic {

class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Factorization = std::vector<std::pair<u128, int>>;  // (prime, exponent), increasing

namespace detail {

inline u128 mulmod128(u128 a, u128 b, u128 m) {
    if ((a >> 64) == 0 && (b >> 64) == 0 && (m >> 64) == 0) return a * b % m;
    a %= m;
    b %= m;
    u128 r = 0;
    while (b > 0) {
        if (b & 1) {
            r = (r >= m - a) ? r - (m - a) : r + a;
        }
        a = (a >= m - a) ? a - (m - a) : a + a;
        b >>= 1;
    }
    return r;
}

inline u128 powmod128(u128 b, u128 e, u128 m) {
    u128 r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = mulmod128(r, b, m);
        b = mulmod128(b, b, m);
        e >>= 1;
    }
    return r;
}

inline u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace detail

// Deterministic below 3.3e24 with the first 13 prime bases; the extra bases
// make a false positive above that range vanishingly unlikely.
inline bool is_probable_prime(u128 n) {
    if (n < 2) return false;
    static const u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    for (u64 p : bases) {
        if (n % p == 0) return n == p;
    }
    u128 dd = n - 1;
    int s = 0;
    while ((dd & 1) == 0) {
        dd >>= 1;
        ++s;
    }
    for (u64 a : bases) {
        u128 x = detail::powmod128(a, dd, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod128(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline u128 pollard_rho(u128 n) {
    if (n % 2 == 0) return 2;
    for (u128 c = 1; c < 200; ++c) {
        u128 x = 2, y = 2, d = 1;
        auto step = [&](u128 v) { return (mulmod128(v, v, n) + c) % n; };
        while (d == 1) {
            u128 q = 1;
            u128 xs = x, ys = y;
            for (int i = 0; i < 64; ++i) {
                x = step(x);
                y = step(step(y));
                u128 diff = x > y ? x - y : y - x;
                q = mulmod128(q, diff, n);
            }
            d = gcd128(q, n);
            if (d == n) {
                // retrace one step at a time
                x = xs;
                y = ys;
                d = 1;
                while (d == 1) {
                    x = step(x);
                    y = step(step(y));
                    d = gcd128(x > y ? x - y : y - x, n);
                }
            }
        }
        if (d != n) return d;
    }
    throw FactorizationError("Pollard rho failed to split " + to_string(static_cast<i128>(n)));
}

inline void factor_rec(u128 n, std::map<u128, int>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    u128 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace detail

inline Factorization factorize(u128 n) {
    if (n == 0) throw DomainError("cannot factor zero");
    std::map<u128, int> out;
    for (u64 p = 2; p <= 1000000 && static_cast<u128>(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) {
        if (n < static_cast<u128>(1000000) * 1000000) {
            ++out[n];
        } else {
            detail::factor_rec(n, out);
        }
    }
    Factorization f(out.begin(), out.end());
    for (const auto& [p, e] : f) {
        if (!is_probable_prime(p)) throw FactorizationError("composite survivor " + to_string(static_cast<i128>(p)));
    }
    return f;
}

// Smallest-prime-factor table for 0..limit.
class PrimeSieve {
public:
    explicit PrimeSieve(u64 limit) : limit_(limit), spf_(limit + 1, 0) {
        for (u64 i = 2; i <= limit_; ++i) {
            if (spf_[i] != 0) continue;
            primes_.push_back(static_cast<std::uint32_t>(i));
            for (u64 j = i; j <= limit_; j += i)
                if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
        }
    }

    u64 limit() const { return limit_; }
    const std::vector<std::uint32_t>& primes() const { return primes_; }
    bool is_prime(u64 n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

    Factorization factor(u64 n) const {
        if (n == 0) throw DomainError("cannot factor zero");
        if (n > limit_) return factorize(n);
        Factorization out;
        while (n > 1) {
            u64 p = spf_[n];
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        return out;
    }

private:
    u64 limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

inline std::vector<u64> primes_up_to(u64 n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

inline bool is_prime_u64(u64 n) { return is_probable_prime(n); }

}  // namespace cubic
