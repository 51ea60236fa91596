#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "prym/curves.hpp"

using namespace prym;

namespace {

Poly P(const FieldPtr& F, std::vector<std::uint64_t> c) { return Poly::from_indices(F, c); }

Hypothesis rejection(const Poly& f1, const Poly& f2, CoverMode mode = CoverMode::prym) {
    try {
        validate_cover(f1, f2, mode);
    } catch (const ValidationError& e) {
        return e.hypothesis();
    }
    FAIL("cover was accepted");
    return Hypothesis::field_mismatch;
}

Poly random_squarefree(const FieldPtr& F, int degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> pick(0, F->order() - 1);
    for (;;) {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(degree) + 1);
        for (auto& x : c) x = pick(rng);
        if (c.back() == 0) continue;
        auto f = P(F, c);
        if (is_squarefree(f)) return f;
    }
}

}  // namespace

TEST_CASE("genus 0 curves have q^n + 1 points") {
    const auto F = FieldDesc::prime(3);
    CHECK(count_curve_points(HyperellipticCurve(P(F, {2, 0, 1})), 1) == 4);
    for (const auto& f : {P(F, {2, 0, 1}), P(F, {1, 0, 1}), P(F, {1, 1, 2})}) {
        const HyperellipticCurve c(f);
        CHECK(c.genus() == 0);
        CHECK(count_curve_points(c, 1) == 4);
        CHECK(count_curve_points(c, 2) == 10);
        CHECK(count_curve_points(c, 3) == 28);
    }
}

TEST_CASE("curve counts agree with (x, y) enumeration") {
    const auto F5 = FieldDesc::prime(5);
    const HyperellipticCurve X(P(F5, {1, 1, 0, 0, 1}));
    CHECK(X.genus() == 1);
    for (unsigned n = 1; n <= 3; ++n) CHECK(count_curve_points(X, n) == oracle::curve_points(X.f(), counting_field(F5, n)));

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const auto F = FieldDesc::prime(trial % 3 == 0 ? 3 : trial % 3 == 1 ? 5 : 7);
        const HyperellipticCurve C(random_squarefree(F, 2 + 2 * (trial % 3), rng));
        CAPTURE(C.f().to_string());
        CHECK(count_curve_points(C, 1) == oracle::curve_points(C.f(), F));
        if (F->p() < 7) CHECK(count_curve_points(C, 2) == oracle::curve_points(C.f(), counting_field(F, 2)));
    }
}

TEST_CASE("curves over F_9 itself") {
    const auto F9 = FieldDesc::make(3, 2);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const HyperellipticCurve C(random_squarefree(F9, 4, rng));
        CHECK(count_curve_points(C, 1) == oracle::curve_points(C.f(), F9));
    }
}

TEST_CASE("cover counts agree with (x, u, v) enumeration") {
    const auto F5 = FieldDesc::prime(5);
    const auto cover = validate_cover(P(F5, {1, 1, 0, 0, 1}), P(F5, {2, 0, 1}));
    CHECK(cover.genus_x() == 2);
    CHECK(cover.genus_y() == 3);
    for (unsigned n = 1; n <= 2; ++n) {
        CHECK(count_cover_points(cover, n) == oracle::cover_points(cover.f1(), cover.f2(), counting_field(F5, n)));
    }

    std::mt19937_64 rng(9);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 60; ++trial) {
        const auto F = FieldDesc::prime(trial % 3 == 0 ? 3 : trial % 3 == 1 ? 5 : 7);
        const auto f1 = random_squarefree(F, 2 + 2 * (trial % 2), rng);
        const auto f2 = random_squarefree(F, 2, rng);
        if (gcd(f1, f2).degree() != 0) continue;
        const auto c = validate_cover(f1, f2, CoverMode::relaxed);
        const auto ny = count_cover_points(c, 1);
        CHECK(ny == oracle::cover_points(f1, f2, F));
        CHECK(ny <= 2 * count_curve_points(c.base(), 1));
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("points at infinity follow the leading coefficients") {
    // Over F_3, 2 is a nonsquare: both lc nonsquare, so X has 2 points at
    // infinity and Y none; over F_9 every element of F_3 is a square.
    const auto F = FieldDesc::prime(3);
    const auto cover = validate_cover(P(F, {1, 0, 2}), P(F, {1, 1, 2}), CoverMode::relaxed);
    const auto c1 = oracle::lift(cover.f1(), F), c2 = oracle::lift(cover.f2(), F);
    std::uint64_t affine_x = 0, affine_y = 0;
    const auto roots = oracle::square_root_counts(F);
    for (std::uint64_t i = 0; i < 3; ++i) {
        const auto x = FieldElement::from_index(F, i);
        const auto a = roots[oracle::evaluate(c1, x).index()], b = roots[oracle::evaluate(c2, x).index()];
        affine_x += roots[(oracle::evaluate(c1, x) * oracle::evaluate(c2, x)).index()];
        affine_y += a * b;
    }
    CHECK(count_curve_points(cover.base(), 1) == affine_x + 2);
    CHECK(count_cover_points(cover, 1) == affine_y);
    CHECK(count_cover_points(cover, 2) == oracle::cover_points(cover.f1(), cover.f2(), counting_field(F, 2)));
}

TEST_CASE("a cover with no rational points") {
    // Pairs over F_3 where every x has f1(x) or f2(x) nonsquare and the
    // leading coefficients are not both squares.
    const auto F = FieldDesc::prime(3);
    auto nonsquare = [](const FieldElement& c) { return is_square(c) == SquareClass::nonsquare; };
    int found = 0;
    for (std::uint64_t lc1 = 1; lc1 < 3; ++lc1) {
        for (const auto& m1 : oracle::monic_polys(F, 4)) {
            const auto f1 = FieldElement(F, static_cast<std::int64_t>(lc1)) * m1;
            if (!is_squarefree(f1)) continue;
            for (const auto& f2 : oracle::monic_polys(F, 2)) {
                if (!is_squarefree(f2) || gcd(f1, f2).degree() != 0) continue;
                bool empty = nonsquare(f1.leading()) || nonsquare(f2.leading());
                for (std::uint64_t x = 0; empty && x < 3; ++x) {
                    const FieldElement e(F, static_cast<std::int64_t>(x));
                    empty = nonsquare(f1(e)) || nonsquare(f2(e));
                }
                if (!empty) continue;
                CHECK(count_cover_points(validate_cover(f1, f2), 1) == 0);
                ++found;
            }
        }
    }
    CHECK(found > 0);
}

TEST_CASE("validation names the violated hypothesis") {
    const auto F5 = FieldDesc::prime(5);
    CHECK(rejection(P(F5, {0, 0, 1}), P(F5, {1, 0, 1})) == Hypothesis::not_squarefree);
    CHECK(rejection(P(F5, {1, 0, 0, 1}), P(F5, {1, 1})) == Hypothesis::odd_degree);
    CHECK(rejection(P(F5, {4, 0, 1}), P(F5, {4, 0, 0, 0, 1})) == Hypothesis::not_coprime);
    CHECK(rejection(P(F5, {1, 0, 1}), P(F5, {2, 0, 1})) == Hypothesis::genus_too_small);
    CHECK(rejection(P(F5, {1}), P(F5, {2, 0, 1})) == Hypothesis::degree_too_small);
    CHECK(rejection(Poly(F5), P(F5, {2, 0, 1})) == Hypothesis::zero_polynomial);
    CHECK(rejection(P(F5, {1, 0, 1}), P(FieldDesc::prime(3), {2, 0, 1})) == Hypothesis::field_mismatch);
    CHECK(rejection(P(F5, {1}), P(F5, {2, 0, 1}), CoverMode::relaxed) == Hypothesis::degree_too_small);
    CHECK_NOTHROW(validate_cover(P(F5, {1, 0, 1}), P(F5, {2, 0, 1}), CoverMode::relaxed));

    try {
        validate_cover(P(F5, {0, 0, 1}), P(F5, {1, 0, 1}));
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("not-squarefree") != std::string::npos);
    }
    CHECK_THROWS_AS(HyperellipticCurve(P(F5, {1, 1, 1, 1})), ValidationError);
    CHECK_THROWS_AS(HyperellipticCurve(P(F5, {0, 0, 1})), ValidationError);
}

TEST_CASE("series and budget") {
    const auto F3 = FieldDesc::prime(3);
    const auto cover = validate_cover(P(F3, {1, 1, 0, 0, 1}), P(F3, {1, 0, 1}));
    const auto s = count_cover_series(cover, 3);
    CHECK(s.q == 3);
    REQUIRE(s.counts.size() == 3);
    for (unsigned n = 1; n <= 3; ++n) CHECK(s.counts[n - 1] == count_cover_points(cover, n));
    CHECK_THROWS_AS(count_cover_points(cover, 5, 100), BudgetExceeded);
    CHECK(counting_field(F3, 4)->order() == 81);
    CHECK(counting_field(FieldDesc::make(3, 2), 2)->order() == 81);
}
