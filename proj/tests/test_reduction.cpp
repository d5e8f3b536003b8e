#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "cubic/enumerate.hpp"

using namespace cubic;

namespace {

UnimodularMatrix random_word(std::mt19937_64& rng, int max_length) {
    static const UnimodularMatrix gens[] = {UnimodularMatrix(1, 0, 1, 1), UnimodularMatrix(1, 0, -1, 1),
                                            UnimodularMatrix(1, 1, 0, 1), UnimodularMatrix(1, -1, 0, 1),
                                            UnimodularMatrix(0, 1, 1, 0), UnimodularMatrix(-1, 0, 0, 1)};
    std::uniform_int_distribution<int> pick(0, 5), len(0, max_length);
    UnimodularMatrix g = UnimodularMatrix::identity();
    for (int i = len(rng); i > 0; --i) g = g * gens[pick(rng)];
    return g;
}

BinaryCubicForm random_irreducible(std::mt19937_64& rng, i64 bound) {
    std::uniform_int_distribution<i64> dist(-bound, bound);
    for (;;) {
        BinaryCubicForm f{dist(rng), dist(rng), dist(rng), dist(rng)};
        if (f == BinaryCubicForm{} || discriminant(f) == 0) continue;
        if (is_irreducible(f)) return f;
    }
}

// Roots of f in P^1(F_p) by direct evaluation.
i64 roots_by_evaluation(const BinaryCubicForm& f, i64 p) {
    auto zero = [&](i64 x, i64 y) { return mod_floor<i128>(f.eval(x, y), p) == 0; };
    i64 n = zero(1, 0) ? 1 : 0;
    for (i64 t = 0; t < p; ++t) n += zero(t, 1) ? 1 : 0;
    return n;
}

}  // namespace

TEST_CASE("canonical form is a class invariant", "[reduction]") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 10000; ++i) {
        BinaryCubicForm f = random_irreducible(rng, 30);
        UnimodularMatrix g = random_word(rng, 12);
        BinaryCubicForm cf = canonical_form(f);
        REQUIRE(canonical_form(act(g, f)) == cf);
        REQUIRE(canonical_form(cf) == cf);
        REQUIRE(discriminant(cf) == discriminant(f));
        REQUIRE(is_canonical(cf, discriminant(cf)));
    }
}

TEST_CASE("canonical form rejects degenerate input", "[reduction]") {
    CHECK_THROWS_AS(canonical_form({1, 1, 1, 1}), DomainError);
    CHECK_THROWS_AS(canonical_form({1, 0, 0, 0}), DomainError);
}

TEST_CASE("small field inventories", "[reduction]") {
    auto neg = classes(-24, 0, ClassFilter::for_mode(CountMode::Fields));
    REQUIRE(neg.size() == 1);
    CHECK(neg[0].disc == -23);
    CHECK(canonical_form({1, 0, -1, -1}) == neg[0].form);

    auto pos = classes(0, 50, ClassFilter::for_mode(CountMode::Fields));
    REQUIRE(pos.size() == 1);
    CHECK(pos[0].disc == 49);
    CHECK(pos[0].aut == 3);
    CHECK(pos[0].maximal);
    CHECK_FALSE(pos[0].ntr);

    CHECK(count(24, Signature::NegativeDisc, CountMode::Fields).raw == 1);
    CountReport r = count(100, Signature::PositiveDisc, CountMode::Fields);
    CHECK(r.raw == 2);
    CHECK(r.c3_classes == 2);
    CHECK(r.weighted == Rational(2, 3));
}

TEST_CASE("known field counts", "[reduction]") {
    CHECK(count(100000, Signature::PositiveDisc, CountMode::Fields).raw == 4804);
    CHECK(count(100000, Signature::NegativeDisc, CountMode::Fields).raw == 17041);
}

TEST_CASE("filters", "[reduction]") {
    const i128 X = 20000;
    for (Signature sig : {Signature::PositiveDisc, Signature::NegativeDisc}) {
        ClassFilter any;
        for (u64 p : {2, 3, 5, 7}) any.local.push_back(LocalCondition::any(p));
        i64 all = count(X, sig, CountMode::Orders).raw;
        CHECK(count(X, sig, any).raw == all);
        i64 fields = count(X, sig, CountMode::Fields).raw;
        i64 ntr = count(X, sig, CountMode::NowhereTotRam).raw;
        CHECK(fields <= all);
        CHECK(ntr <= fields);

        // non-maximality at p needs p^2 | Disc, so primes below sqrt(X) suffice
        ClassFilter local_max;
        for (u64 p : primes_up_to(150)) local_max.local.push_back(LocalCondition::maximal(p));
        CHECK(count(X, sig, local_max).raw == fields);

        CountReport rep = count(X, sig, CountMode::Orders);
        CHECK(rep.weighted <= Rational(rep.raw));
        CHECK(rep.weighted >= Rational(0));
    }
}

TEST_CASE("range additivity and sorting", "[reduction]") {
    auto whole = classes(-3000, 3000, {}, {1, true});
    auto left = classes(-3000, 0, {}, {1, true});
    auto right = classes(0, 3000, {}, {1, true});
    CHECK(whole.size() == left.size() + right.size());
    auto mid = classes(-1000, 1000, {}, {1, true});
    auto lo_part = classes(-3000, -999, {}, {1, true});
    auto hi_part = classes(999, 3000, {}, {1, true});
    CHECK(whole.size() == mid.size() + lo_part.size() + hi_part.size());
    CHECK(std::is_sorted(whole.begin(), whole.end(), inventory_order));
    for (const auto& r : whole) {
        REQUIRE(r.disc > -3000);
        REQUIRE(r.disc < 3000);
        REQUIRE(canonical_form(r.form) == r.form);
    }
    CHECK(classes(5, 6).empty());
}

TEST_CASE("parallel enumeration is identical to serial", "[reduction]") {
    auto serial = classes(-20000, 20000, ClassFilter::for_mode(CountMode::Fields), {1, true});
    auto parallel = classes(-20000, 20000, ClassFilter::for_mode(CountMode::Fields), {4, true});
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        REQUIRE(serial[i].form == parallel[i].form);
        REQUIRE(serial[i].disc == parallel[i].disc);
    }
}

TEST_CASE("brute-force oracle agreement", "[reduction][oracle]") {
    CHECK(brute_force_classes(5).positive == 0);
    CHECK(brute_force_classes(5).negative == 0);
    CHECK_THROWS_AS(brute_force_classes(5001), ResourceError);

    for (i128 X : {200, 1500}) {
        BruteForceCounts bf = brute_force_classes(X);
        CHECK(bf.positive == count(X, Signature::PositiveDisc, CountMode::Orders).raw);
        CHECK(bf.negative == count(X, Signature::NegativeDisc, CountMode::Orders).raw);
        // oracle representatives are pairwise inequivalent
        std::set<BinaryCubicForm> canon;
        for (const auto& f : bf.representatives) canon.insert(canonical_form(f));
        CHECK(canon.size() == bf.representatives.size());
    }
}

TEST_CASE("root weights", "[reduction]") {
    CHECK(root_count_w({1, 0, 1, 0}, 2) == 2);
    CHECK(root_count_w({1, 0, 1, 1}, 2) == 0);
    CHECK_THROWS_AS(root_count_w({1, 0, 1, 0}, 4), DomainError);
    CHECK_THROWS_AS(root_count_w({2, 2, 2, 2}, 2), DomainError);

    std::mt19937_64 rng(32);
    for (int i = 0; i < 5000; ++i) {
        BinaryCubicForm f = random_irreducible(rng, 40);
        if (content(f) % 2 == 0 || content(f) % 3 == 0 || content(f) % 5 == 0) continue;
        REQUIRE(root_count_w(f, 6) == root_count_w(f, 2) * root_count_w(f, 3));
        REQUIRE(root_count_w(f, 2) == roots_by_evaluation(f, 2));
        REQUIRE(root_count_w(f, 5) == roots_by_evaluation(f, 5));
        UnimodularMatrix g = random_word(rng, 8);
        REQUIRE(root_count_w(act(g, f), 5) == root_count_w(f, 5));
    }
}

TEST_CASE("weighted counts", "[reduction]") {
    // S_2(100, positive) from the oracle representatives, roots counted directly
    BruteForceCounts bf = brute_force_classes(100);
    i64 oracle = 0;
    for (const auto& f : bf.representatives)
        if (discriminant(f) > 0) oracle += roots_by_evaluation(f, 2);
    CHECK(weighted_count_S(2, 100, Signature::PositiveDisc) == oracle);

    for (u64 p : {2, 3}) {
        i64 n = count(20000, Signature::NegativeDisc, CountMode::Orders).raw;
        CHECK(weighted_count_S(p, 20000, Signature::NegativeDisc) <= static_cast<i128>(p + 1) * n);
    }
}

TEST_CASE("switching identity", "[reduction]") {
    for (u64 p : {2, 3}) {
        SwitchingResult s = verify_switching(p, 10000);
        CHECK(s.residual == 0);
        CHECK(s.non_maximal > 0);
    }
    CHECK_THROWS_AS(verify_switching(4, 1000), DomainError);
}

TEST_CASE("cyclic cubic fields by conductor", "[reduction]") {
    // Disc = f^2 with f = 9^e p_1 ... p_k, p_i = 1 mod 3 distinct; 2^(t-1)
    // fields of conductor f, t the number of factors
    i64 expect = 0;
    for (i64 f = 7; f * f < 1000000; ++f) {
        i64 m = f, t = 0;
        bool ok = true;
        if (m % 3 == 0) {
            if (m % 9 != 0 || m % 27 == 0) ok = false;
            m /= 9;
            ++t;
        }
        for (i64 p = 2; ok && p * p <= m; ++p) {
            if (m % p != 0) continue;
            m /= p;
            if (m % p == 0 || p % 3 != 1) ok = false;
            ++t;
        }
        if (ok && m > 1) {
            if (m % 3 != 1) ok = false;
            ++t;
        }
        if (ok && t > 0) expect += i64{1} << (t - 1);
    }
    CountReport r = count(1000000, Signature::PositiveDisc, CountMode::Fields, 2);
    CHECK(r.c3_classes == expect);
}

TEST_CASE("non-maximal counts shrink like 1/p^2", "[reduction]") {
    const i128 X = 100000;
    double prev = 1e9;
    for (u64 p : {2, 3, 5, 7}) {
        i64 n = count_non_maximal_at(p, X, 2);
        double scaled = static_cast<double>(n) * p * p / static_cast<double>(X);
        CHECK(scaled < 1.0);
        CHECK(n < prev);
        prev = static_cast<double>(n);
    }
}

TEST_CASE("first main term", "[reduction]") {
    const double pi = 3.14159265358979323846;
    double prev_ratio = 0;
    for (i128 X : {10000, 100000, 1000000}) {
        double n = static_cast<double>(count(X, Signature::PositiveDisc, CountMode::Orders, 2).raw);
        double x = static_cast<double>(X);
        double scaled = std::fabs(n - pi * pi / 72 * x) / std::pow(x, 5.0 / 6);
        CHECK(scaled < 1.0);
        double ratio = n / (pi * pi / 72 * x);
        CHECK(ratio > prev_ratio);
        prev_ratio = ratio;
    }
}
