#pragma once

// Checked integer helpers shared by every module.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace cubic {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
inline T add_checked(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in addition");
    return r;
}

template <class T>
inline T sub_checked(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in subtraction");
    return r;
}

template <class T>
inline T mul_checked(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in multiplication");
    return r;
}

inline i64 narrow_i64(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw ArithmeticOverflow("value does not fit in 64 bits");
    return static_cast<i64>(v);
}

template <class T>
inline T abs_value(T v) { return v < 0 ? -v : v; }

template <class T>
inline T gcd_value(T a, T b) {
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
        T t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// floor(a / b) for b != 0
template <class T>
inline T floor_div(T a, T b) {
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

template <class T>
inline T ceil_div(T a, T b) { return -floor_div<T>(-a, b); }

// least nonnegative residue
template <class T>
inline T mod_floor(T a, T m) {
    T r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

inline u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square_i128(i128 n) {
    if (n < 0) return false;
    if (n > static_cast<i128>(std::numeric_limits<u64>::max())) {
        long double s = __builtin_sqrtl(static_cast<long double>(n));
        i128 r = static_cast<i128>(s);
        for (i128 t = r - 2; t <= r + 2; ++t)
            if (t >= 0 && t * t == n) return true;
        return false;
    }
    u64 r = isqrt_u64(static_cast<u64>(n));
    return static_cast<i128>(r) * r == n;
}

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

inline i128 parse_i128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("bad integer: " + s);
    i128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer: " + s);
        v = add_checked<i128>(mul_checked<i128>(v, 10), s[i] - '0');
    }
    return neg ? -v : v;
}

}  // namespace cubic
