#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "prym/poly.hpp"

using namespace prym;

namespace {

Poly P(const FieldPtr& F, std::vector<std::uint64_t> c) { return Poly::from_indices(F, c); }

Poly random_poly(const FieldPtr& F, int degree, std::mt19937_64& rng, bool monic = false) {
    std::uniform_int_distribution<std::uint64_t> pick(0, F->order() - 1);
    std::vector<std::uint64_t> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = pick(rng);
    if (monic) c.back() = 1;
    else if (c.back() == 0) c.back() = 1;
    return P(F, c);
}

}  // namespace

TEST_CASE("normalization and degree") {
    const auto F = FieldDesc::prime(3);
    CHECK(P(F, {1, 2, 0, 0}).degree() == 1);
    CHECK(P(F, {0, 0}).is_zero());
    CHECK(Poly(F).degree() == Poly::kZeroDegree);
    CHECK(Poly::monomial(F, 3).degree() == 3);
    CHECK(P(F, {1, 0, 1})(FieldElement(F, 1)) == FieldElement(F, 2));
    CHECK(P(F, {2, 0, 2}).monic() == P(F, {1, 0, 1}));
    CHECK(P(F, {1, 1, 1}).derivative() == P(F, {1, 2}));
    CHECK_THROWS(Poly(F).leading());
}

TEST_CASE("x^2 + 1 and x^2 - 1 over F_3") {
    const auto F = FieldDesc::prime(3);
    CHECK(is_irreducible(P(F, {1, 0, 1})));
    CHECK_FALSE(is_irreducible(P(F, {2, 0, 1})));
    CHECK_THROWS_AS(is_irreducible(P(F, {1, 0, 2})), FieldError);
    CHECK_THROWS_AS(is_irreducible(P(F, {1})), FieldError);
}

TEST_CASE("find_irreducible") {
    const auto F3 = FieldDesc::prime(3);
    CHECK(find_irreducible(3, 1) == Poly::monomial(F3, 1));

    const auto q = find_irreducible(3, 2);
    CHECK(q.degree() == 2);
    CHECK(q.is_monic());
    CHECK_FALSE(oracle::has_root(q));

    const auto m = find_irreducible(5, 4);
    CHECK(m.degree() == 4);
    CHECK(oracle::irreducible_by_trial_division(m));

    for (unsigned k = 1; k <= 5; ++k) {
        for (std::uint64_t seed : {0ULL, 17ULL, 999ULL}) CHECK(is_irreducible(find_irreducible(3, k, seed)));
    }
    CHECK(find_irreducible(7, 3, 42) == find_irreducible(7, 3, 42));
}

TEST_CASE("Rabin test matches trial division") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        const auto F = trial % 2 ? FieldDesc::prime(5) : FieldDesc::prime(3);
        const int degree = 1 + trial % 4;
        const auto f = random_poly(F, degree, rng, true);
        CAPTURE(f.to_string());
        CHECK(is_irreducible(f) == oracle::irreducible_by_trial_division(f));
    }
    // all monic quartics over F_3: 18 irreducibles
    int count = 0;
    for (const auto& f : oracle::monic_polys(FieldDesc::prime(3), 4)) count += is_irreducible(f);
    CHECK(count == 18);
}

TEST_CASE("division with remainder") {
    std::mt19937_64 rng(5);
    const auto F = FieldDesc::make(3, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_poly(F, 6, rng);
        const auto b = random_poly(F, 1 + trial % 4, rng);
        const auto [quot, rem] = divmod(a, b);
        CHECK(quot * b + rem == a);
        CHECK(rem.degree() < b.degree());
    }
    CHECK_THROWS_AS(divmod(P(FieldDesc::prime(3), {1, 1}), Poly(FieldDesc::prime(3))), FieldError);
}

TEST_CASE("gcd and squarefreeness") {
    const auto F = FieldDesc::prime(5);
    const auto a = P(F, {1, 1});
    const auto b = P(F, {2, 1});
    const auto c = P(F, {2, 0, 1});
    CHECK(gcd(a * c, b * c) == c);
    CHECK(gcd(a, b).degree() == 0);
    CHECK(is_squarefree(a * b * c));
    CHECK_FALSE(is_squarefree(a * a * b));
    CHECK_FALSE(is_squarefree(P(F, {0, 0, 1})));
    // x^2 = -2 = 3 mod c, so x^5 = 9x = 4x
    CHECK(powmod(Poly::monomial(F, 1), 2, c) == P(F, {3}));
    CHECK(powmod(Poly::monomial(F, 1), 5, c) == P(F, {0, 4}));
}

TEST_CASE("serialization") {
    const auto F = FieldDesc::prime(5);
    const auto f = parse_poly(F, "1,1,0,0,1");
    CHECK(f.degree() == 4);
    CHECK(format_poly(f) == "1,1,0,0,1");
    CHECK(format_poly(parse_poly(F, " 2 , 0, 1 ")) == "2,0,1");
    CHECK_THROWS(parse_poly(F, "1,,2"));
    CHECK_THROWS(parse_poly(F, "1,a"));
    CHECK_THROWS(parse_poly(F, "1,5"));
    CHECK_THROWS(parse_poly(F, ""));

    std::mt19937_64 rng(8);
    const auto F9 = FieldDesc::make(3, 2);
    for (int i = 0; i < 20; ++i) {
        const auto g = random_poly(F9, i % 7, rng);
        CHECK(parse_poly(F9, format_poly(g)) == g);
    }
}

TEST_CASE("parse_field") {
    CHECK(parse_field("5")->order() == 5);
    CHECK(parse_field("3^2")->order() == 9);
    CHECK(parse_field("5^3")->k() == 3);
    CHECK_THROWS(parse_field("4"));
    CHECK_THROWS(parse_field("3^"));
    CHECK_THROWS(parse_field("x"));
}
