#include <catch_amalgamated.hpp>

#include <random>

#include "cubic/forms.hpp"

using namespace cubic;

namespace {

// Disc = -Res(f, f') / a via the 5x5 Sylvester matrix, Bareiss elimination.
i128 disc_by_resultant(const BinaryCubicForm& f) {
    const i128 a = f.a, b = f.b, c = f.c, d = f.d;
    i128 M[5][5] = {{a, b, c, d, 0},
                    {0, a, b, c, d},
                    {3 * a, 2 * b, c, 0, 0},
                    {0, 3 * a, 2 * b, c, 0},
                    {0, 0, 3 * a, 2 * b, c}};
    int sign = 1;
    i128 prev = 1;
    for (int k = 0; k < 4; ++k) {
        if (M[k][k] == 0) {
            int r = k + 1;
            while (r < 5 && M[r][k] == 0) ++r;
            if (r == 5) return 0;
            for (int j = 0; j < 5; ++j) std::swap(M[k][j], M[r][j]);
            sign = -sign;
        }
        for (int i = k + 1; i < 5; ++i)
            for (int j = k + 1; j < 5; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return -sign * M[4][4] / a;
}

BinaryCubicForm random_form(std::mt19937_64& rng, i64 bound) {
    std::uniform_int_distribution<i64> dist(-bound, bound);
    return {dist(rng), dist(rng), dist(rng), dist(rng)};
}

UnimodularMatrix random_word(std::mt19937_64& rng, int length) {
    static const UnimodularMatrix gens[] = {UnimodularMatrix(1, 0, 1, 1), UnimodularMatrix(1, 0, -1, 1),
                                            UnimodularMatrix(1, 1, 0, 1), UnimodularMatrix(1, -1, 0, 1),
                                            UnimodularMatrix(0, 1, 1, 0), UnimodularMatrix(-1, 0, 0, 1)};
    std::uniform_int_distribution<int> pick(0, 5);
    UnimodularMatrix g = UnimodularMatrix::identity();
    for (int i = 0; i < length; ++i) g = g * gens[pick(rng)];
    return g;
}

bool has_rational_root(const BinaryCubicForm& f, i64 box) {
    for (i64 x = -box; x <= box; ++x)
        for (i64 y = 0; y <= box; ++y) {
            if (x == 0 && y == 0) continue;
            if (y == 0 && x != 1) continue;
            if (gcd_value(abs_value(x), y) != 1) continue;
            if (f.eval(x, y) == 0) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("discriminant examples", "[forms]") {
    CHECK(discriminant({1, 0, 1, 0}) == -4);
    CHECK(discriminant({0, 0, 0, 0}) == 0);
    CHECK(discriminant({1, 0, -1, -1}) == -23);
    CHECK(disc_by_resultant({1, 0, -1, -1}) == -23);
}

TEST_CASE("discriminant agrees with the resultant oracle", "[forms]") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20000; ++i) {
        BinaryCubicForm f = random_form(rng, 1000);
        if (f.a == 0) continue;
        REQUIRE(discriminant(f) == disc_by_resultant(f));
    }
}

TEST_CASE("discriminant overflow is reported", "[forms]") {
    const i64 big = i64{1} << 62;
    CHECK_THROWS_AS(discriminant({big, big, big, big}), ArithmeticOverflow);
}

TEST_CASE("hessian examples and identity", "[forms]") {
    CHECK(hessian({1, 0, -3, 0}) == HessianForm{9, 0, 9});
    CHECK(hessian({1, 0, 0, 0}) == HessianForm{0, 0, 0});
    HessianForm h = hessian({1, 0, 1, 0});
    CHECK(h == HessianForm{-3, 0, 1});
    CHECK(h.Q * h.Q - 4 * h.P * h.R == 12);

    std::mt19937_64 rng(12);
    for (int i = 0; i < 1000000; ++i) {
        BinaryCubicForm f = random_form(rng, 1 << 20);
        HessianForm H = hessian(f);
        REQUIRE(H.discriminant() == -3 * discriminant(f));
    }
}

TEST_CASE("twisted action", "[forms]") {
    BinaryCubicForm f{2, -3, 5, 7};
    CHECK(act(UnimodularMatrix::identity(), f) == f);
    CHECK(act(UnimodularMatrix(0, 1, 1, 0), f) == BinaryCubicForm{-7, -5, 3, -2});
    CHECK_THROWS_AS(UnimodularMatrix(2, 0, 0, 1), DomainError);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 100000; ++i) {
        BinaryCubicForm g0 = random_form(rng, 50);
        UnimodularMatrix g = random_word(rng, 6), h = random_word(rng, 6);
        BinaryCubicForm gf = act(g, g0);
        REQUIRE(discriminant(gf) == discriminant(g0));
        REQUIRE(content(gf) == content(g0));
        REQUIRE(act(g, act(h, g0)) == act(g * h, g0));
        if (g.det() == 1) REQUIRE(hessian(gf) == act_quadratic(g, hessian(g0)));
    }
}

TEST_CASE("irreducibility", "[forms]") {
    CHECK_FALSE(is_irreducible({1, 1, 1, 1}));
    CHECK_FALSE(is_irreducible({0, 1, 0, 0}));
    CHECK(is_irreducible({1, 0, -1, -1}));
    CHECK_THROWS_AS(is_irreducible({0, 0, 0, 0}), DomainError);

    std::mt19937_64 rng(14);
    for (int i = 0; i < 20000; ++i) {
        BinaryCubicForm f = random_form(rng, 12);
        if (f == BinaryCubicForm{}) continue;
        bool irr = is_irreducible(f);
        // roots x/y of f have |x| | d and y | a, so the box 12 is exhaustive
        REQUIRE(irr == !has_rational_root(f, 12));
        UnimodularMatrix g = random_word(rng, 5);
        REQUIRE(is_irreducible(act(g, f)) == irr);
    }
}

TEST_CASE("content", "[forms]") {
    CHECK(content({2, 2, 2, 2}) == 2);
    CHECK(content({1, 0, 1, 0}) == 1);
    CHECK(content({0, 0, 0, 0}) == 0);
}

TEST_CASE("real root count follows the discriminant sign", "[forms]") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 2000; ++i) {
        BinaryCubicForm f = random_form(rng, 30);
        if (f.a == 0) continue;
        i128 D = discriminant(f);
        if (D == 0) continue;
        // sign changes of f(x, 1) on a fine grid spanning every root
        long double bound = 1 + (std::abs(f.b) + std::abs(f.c) + std::abs(f.d)) / static_cast<long double>(std::abs(f.a));
        auto val = [&](long double x) { return ((f.a * x + f.b) * x + f.c) * x + f.d; };
        int changes = 0;
        const int steps = 200000;
        long double prev = val(-bound);
        for (int k = 1; k <= steps; ++k) {
            long double cur = val(-bound + 2 * bound * k / steps);
            if ((cur < 0) != (prev < 0)) ++changes;
            prev = cur;
        }
        if (D < 0) REQUIRE(changes == 1);
        if (D > 0) REQUIRE(changes <= 3);
    }
}
