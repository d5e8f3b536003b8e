#include <catch_amalgamated.hpp>

#include <random>

#include "cubic/local.hpp"
#include "cubic/reduction.hpp"
#include "cubic/rings.hpp"

using namespace cubic;

namespace {

BinaryCubicForm random_form(std::mt19937_64& rng, i64 bound) {
    std::uniform_int_distribution<i64> dist(-bound, bound);
    return {dist(rng), dist(rng), dist(rng), dist(rng)};
}

// Elements of R(f)/(p) as coordinate triples mod p.
struct Quotient {
    CubicRingTable t;
    i64 p;
    RingElement mul(const RingElement& u, const RingElement& v) const {
        RingElement r = multiply(t, u, v);
        return {mod_floor<i128>(r.u0, p), mod_floor<i128>(r.u1, p), mod_floor<i128>(r.u2, p)};
    }
};

// (#idempotents, #nilpotents) of R(f)/(p)
std::pair<int, int> idempotents_and_nilpotents(const BinaryCubicForm& f, i64 p) {
    Quotient q{ring_from_form(f), p};
    int idem = 0, nil = 0;
    for (i64 x = 0; x < p; ++x)
        for (i64 y = 0; y < p; ++y)
            for (i64 z = 0; z < p; ++z) {
                RingElement e{x, y, z};
                if (q.mul(e, e) == e) ++idem;
                RingElement pw = e;
                for (int k = 0; k < 3; ++k) pw = q.mul(pw, e);
                if (pw == RingElement{0, 0, 0}) ++nil;
            }
    return {idem, nil};
}

}  // namespace

TEST_CASE("structure constants", "[rings]") {
    CubicRingTable t = ring_from_form({1, 0, 1, 0});
    CHECK(t.l == 0);
    CHECK(t.m == -1);
    CHECK(t.n == 0);
    RingElement w = ring_basis(1), th = ring_basis(2);
    CHECK(multiply(t, w, th) == RingElement{0, 0, 0});
    CHECK(multiply(t, w, w) == RingElement{-1, 0, -1});
    CHECK(multiply(t, th, th) == RingElement{0, 0, -1});

    CubicRingTable z = ring_from_form({0, 0, 0, 0});
    CHECK((z.l == 0 && z.m == 0 && z.n == 0));

    CubicRingTable u = ring_from_form({1, 0, -1, -1});
    CHECK((u.l == 0 && u.m == 1 && u.n == 1));
}

TEST_CASE("ring discriminant examples", "[rings]") {
    CHECK(ring_discriminant(ring_from_form({1, 0, 1, 0})) == -4);
    CHECK(ring_discriminant(ring_from_form({2, 2, 2, 2})) == -256);
    CHECK(discriminant({2, 2, 2, 2}) == -256);
    CHECK(ring_discriminant(ring_from_form({0, 0, 0, 0})) == 0);
}

TEST_CASE("trace pairing reproduces the form discriminant", "[rings]") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 1000000; ++i) {
        BinaryCubicForm f = random_form(rng, 1000);
        REQUIRE(ring_discriminant(ring_from_form(f)) == discriminant(f));
    }
}

TEST_CASE("multiplication is a commutative associative unital law", "[rings]") {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 10000; ++it) {
        CubicRingTable t = ring_from_form(random_form(rng, 100));
        for (int i = 0; i < 3; ++i) {
            REQUIRE(multiply(t, ring_one(), ring_basis(i)) == ring_basis(i));
            for (int j = 0; j < 3; ++j) {
                REQUIRE(multiply(t, ring_basis(i), ring_basis(j)) == multiply(t, ring_basis(j), ring_basis(i)));
                for (int k = 0; k < 3; ++k) {
                    RingElement lhs = multiply(t, multiply(t, ring_basis(i), ring_basis(j)), ring_basis(k));
                    RingElement rhs = multiply(t, ring_basis(i), multiply(t, ring_basis(j), ring_basis(k)));
                    REQUIRE(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("zero divisors appear exactly for reducible forms", "[rings]") {
    std::mt19937_64 rng(23);
    int reducible_seen = 0;
    for (int it = 0; it < 3000; ++it) {
        BinaryCubicForm f = random_form(rng, 4);
        if (f == BinaryCubicForm{} || discriminant(f) == 0) continue;
        CubicRingTable t = ring_from_form(f);
        bool witness = false;
        const i64 B = 3;
        for (i64 x0 = -B; x0 <= B && !witness; ++x0)
            for (i64 x1 = -B; x1 <= B && !witness; ++x1)
                for (i64 x2 = -B; x2 <= B && !witness; ++x2) {
                    RingElement u{x0, x1, x2};
                    if (u == RingElement{}) continue;
                    for (i64 y0 = -B; y0 <= B && !witness; ++y0)
                        for (i64 y1 = -B; y1 <= B && !witness; ++y1)
                            for (i64 y2 = -B; y2 <= B; ++y2) {
                                RingElement v{y0, y1, y2};
                                if (v == RingElement{}) continue;
                                if (multiply(t, u, v) == RingElement{}) {
                                    witness = true;
                                    break;
                                }
                            }
                }
        if (is_irreducible(f)) {
            REQUIRE_FALSE(witness);
        } else if (witness) {
            ++reducible_seen;
        }
        if (it > 200) break;
    }
    // the a = 0 witness: w t = 0
    CubicRingTable t = ring_from_form({0, 1, 2, 3});
    CHECK(multiply(t, ring_basis(1), ring_basis(2)) == RingElement{});
    CHECK(reducible_seen > 0);
}

TEST_CASE("automorphism count", "[rings]") {
    CHECK(automorphism_count({1, -1, -2, 1}) == 3);
    CHECK(automorphism_count({1, 0, -1, -1}) == 1);
    CHECK_THROWS_AS(automorphism_count({1, 1, 1, 1}), DomainError);

    // brute-force stabilizer in a matrix box
    BinaryCubicForm f{1, -1, -2, 1};
    int stab = 0;
    for (i64 p = -3; p <= 3; ++p)
        for (i64 q = -3; q <= 3; ++q)
            for (i64 r = -3; r <= 3; ++r)
                for (i64 s = -3; s <= 3; ++s) {
                    i64 det = p * s - q * r;
                    if (det != 1 && det != -1) continue;
                    if (act(UnimodularMatrix(p, q, r, s), f) == f) ++stab;
                }
    CHECK(stab == 3);
}

TEST_CASE("index-p subrings", "[rings]") {
    CHECK(index_p_subring_count({1, 0, 1, 0}, 2) == 2);
    CHECK(index_p_subring_count({1, 0, 1, 1}, 2) == 0);
    CHECK_THROWS_AS(index_p_subring_count({2, 2, 2, 2}, 2), DomainError);
    std::mt19937_64 rng(24);
    for (int i = 0; i < 2000; ++i) {
        BinaryCubicForm f = random_form(rng, 50);
        if (content(f) % 3 == 0) continue;
        REQUIRE(index_p_subring_count(f, 3) <= 3);
    }
}

TEST_CASE("R(f)/(p) matches the splitting symbol", "[rings]") {
    // for f nonzero mod p the quotient is a product of F_q[t]/(t^e): the
    // idempotent count is 2^(#factors), the nilradical has p^(sum f (e-1)) elements
    for (i64 p : {2, 3}) {
        for (i64 a = 0; a < p; ++a)
            for (i64 b = 0; b < p; ++b)
                for (i64 c = 0; c < p; ++c)
                    for (i64 d = 0; d < p; ++d) {
                        BinaryCubicForm f{a, b, c, d};
                        if (content(f) % p == 0) continue;
                        RootStructure rs = root_structure(f, static_cast<u64>(p));
                        SplittingSymbol s = symbol_from_roots(rs);
                        auto [idem, nil] = idempotents_and_nilpotents(f, p);
                        int factors = 0, nil_exp = 0;
                        switch (s) {
                            case SplittingSymbol::S111: factors = 3; break;
                            case SplittingSymbol::S12: factors = 2; break;
                            case SplittingSymbol::S3: factors = 1; break;
                            case SplittingSymbol::S1sq1: factors = 2; nil_exp = 1; break;
                            case SplittingSymbol::S1cube: factors = 1; nil_exp = 2; break;
                            default: break;
                        }
                        i64 expect_nil = 1;
                        for (int k = 0; k < nil_exp; ++k) expect_nil *= p;
                        REQUIRE(idem == (1 << factors));
                        REQUIRE(nil == expect_nil);
                    }
    }
}

TEST_CASE("C3 classes have square discriminants", "[rings]") {
    for (i64 a = 1; a <= 3; ++a)
        for (i64 b = -6; b <= 6; ++b)
            for (i64 c = -6; c <= 6; ++c)
                for (i64 d = -6; d <= 6; ++d) {
                    BinaryCubicForm f{a, b, c, d};
                    if (discriminant(f) == 0 || !is_irreducible(f)) continue;
                    if (automorphism_count(f) == 3) REQUIRE(is_square_i128(discriminant(f)));
                }
}
