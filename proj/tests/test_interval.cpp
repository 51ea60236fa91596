#include "doctest.h"

#include <cmath>
#include <random>

#include "prym/interval.hpp"
#include "prym/quadratic.hpp"

using namespace prym;

namespace {

mpq_class exact(mpfr_srcptr x) {
    mpq_class r;
    mpfr_get_q(r.get_mpq_t(), x);
    return r;
}

bool encloses(const Interval& x, const mpq_class& lo, const mpq_class& hi) {
    return exact(x.lo()) <= lo && hi <= exact(x.hi());
}

bool tight(const Interval& x) {
    const long double hi = std::abs(x.hi_ld());
    return x.width() <= 1e-12L * std::max(1.0L, hi);
}

}  // namespace

TEST_CASE("rational endpoints are exact or bracketing") {
    CHECK(Interval(7).is_point());
    CHECK(Interval(mpq_class(1, 4)).is_point());
    const Interval third(mpq_class(1, 3));
    CHECK_FALSE(third.is_point());
    CHECK(encloses(third, mpq_class(1, 3), mpq_class(1, 3)));
    CHECK(tight(third));
    CHECK(Interval(mpz_class("123456789012345678901234567890")).contains(mpz_class("123456789012345678901234567890")));
}

TEST_CASE("square roots bracket by squaring") {
    for (long n : {2L, 3L, 5L, 7L, 25L, 1000003L}) {
        const auto r = sqrt(Interval(n));
        CHECK(exact(r.lo()) * exact(r.lo()) <= n);
        CHECK(exact(r.hi()) * exact(r.hi()) >= n);
        CHECK(tight(r));
    }
    CHECK(sqrt(Interval(49)).is_point());
    CHECK_THROWS(sqrt(Interval(-1)));
}

TEST_CASE("exp, log and e") {
    // e to 34 places
    const mpq_class e_approx("2718281828459045235360287471352662/1000000000000000000000000000000000");
    const mpq_class slack(1, mpz_class("1000000000000000000000000000000000"));
    CHECK(encloses(euler_e(), e_approx + slack, e_approx - slack));
    CHECK(exact(euler_e().hi()) - exact(euler_e().lo()) < slack);
    CHECK(encloses(exp(Interval(1)), e_approx + slack, e_approx - slack));
    const auto x = Interval(mpq_class(7, 3));
    CHECK(log(exp(x)).contains(x));
    CHECK(tight(log(Interval(10))));
    CHECK_THROWS(log(Interval(0)));
}

TEST_CASE("pow agrees with long double away from the rounding noise") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> base(1.01, 5.0);
    for (int i = 0; i < 50; ++i) {
        const long k = static_cast<long>(base(rng) * 1000);
        const mpq_class b(k, 1000);
        const long n = 1 + static_cast<long>(rng() % 20);
        const auto p = pow(Interval(b), n);
        const long double ref = std::pow(static_cast<long double>(k) / 1000.0L, n);
        CHECK(std::abs(p.mid_ld() - ref) <= 1e-15L * ref);
        CHECK(tight(p));
        mpq_class power = 1;
        for (long k = 0; k < n; ++k) power *= b;
        CHECK(encloses(p, power, power));
        const auto real_power = pow(Interval(b), Interval(mpq_class(n)));
        CHECK(encloses(real_power, power, power));
    }
    CHECK(pow(Interval(mpq_class(-1, 2)), 3).contains(Interval(mpq_class(-1, 8))));
    CHECK(pow(Interval(3), 0).contains(mpz_class(1)));
}

TEST_CASE("interval arithmetic encloses exact results") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const mpq_class a(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 97));
        const mpq_class b(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 89));
        CHECK(encloses(Interval(a) + Interval(b), a + b, a + b));
        CHECK(encloses(Interval(a) - Interval(b), a - b, a - b));
        CHECK(encloses(Interval(a) * Interval(b), a * b, a * b));
        CHECK(encloses(-Interval(a), -a, -a));
        if (b != 0) CHECK(encloses(Interval(a) / Interval(b), a / b, a / b));
    }
    const Interval straddle = Interval(-1) + Interval(mpq_class(1, 3)) * Interval(6);
    CHECK_THROWS_AS(Interval(1) / (straddle - Interval(1)), std::domain_error);
}

TEST_CASE("certify_le") {
    CHECK(certify_le(Interval(1), Interval(2)) == Certainty::holds);
    CHECK(certify_le(Interval(2), Interval(2)) == Certainty::holds);
    CHECK(certify_le(Interval(3), Interval(2)) == Certainty::violated);
    const Interval third(mpq_class(1, 3));
    CHECK(certify_le(third, third) == Certainty::undecided);
    CHECK(std::string(certainty_name(Certainty::undecided)) == "undecided");
    CHECK(std::string(certainty_name(Certainty::holds)) == "holds");
}

TEST_CASE("endpoint strings round outward") {
    const auto r = sqrt(Interval(2));
    CHECK(r.lo_string(6) == "1.41421");
    CHECK(r.hi_string(6) == "1.41422");
}

TEST_CASE("exact square roots") {
    CHECK(exact_sqrt(mpz_class(49)) == mpz_class(7));
    CHECK_FALSE(exact_sqrt(mpz_class(48)).has_value());
    CHECK(exact_sqrt(mpz_class(0)) == mpz_class(0));
    CHECK(make_rational(6, 4) == mpq_class(3, 2));
}

TEST_CASE("QuadraticSurd signs") {
    const mpz_class q(48);
    CHECK((QuadraticSurd(q, 7) - QuadraticSurd::sqrt_of(q)).sign() > 0);  // 49 > 48
    CHECK((QuadraticSurd(50, 7) - QuadraticSurd::sqrt_of(50)).sign() < 0);
    CHECK((QuadraticSurd(9, 3) - QuadraticSurd::sqrt_of(9)).sign() == 0);
    CHECK(QuadraticSurd::sqrt_of(9).is_integer());
    CHECK_FALSE(QuadraticSurd::sqrt_of(5).is_rational());

    std::mt19937_64 rng(6);
    for (int i = 0; i < 300; ++i) {
        const long qq = 2 + static_cast<long>(rng() % 60);
        const mpq_class r(static_cast<long>(rng() % 401) - 200, 1 + static_cast<long>(rng() % 9));
        const mpq_class s(static_cast<long>(rng() % 401) - 200, 1 + static_cast<long>(rng() % 9));
        const long double v = r.get_d() + s.get_d() * std::sqrt(static_cast<long double>(qq));
        const QuadraticSurd x(qq, r, s);
        if (std::abs(v) > 1e-9L) CHECK(x.sign() == (v > 0 ? 1 : -1));
        if (r >= 0 && s >= 0) CHECK(x.sign() >= 0);
        if (std::abs(v) > 1e-9L) CHECK(certify_le(x.enclose(), Interval(0)) == (v > 0 ? Certainty::violated : Certainty::holds));
        CHECK(tight(x.enclose()));
    }
}

TEST_CASE("QuadraticSurd arithmetic") {
    const auto r2 = QuadraticSurd::sqrt_of(2);
    const QuadraticSurd one(2, 1);
    CHECK((one + r2) * (one - r2) == QuadraticSurd(2, -1));
    CHECK((one + r2).pow(-1) == r2 - one);
    CHECK((one + r2).pow(2) == QuadraticSurd(2, 3, 2));
    CHECK((one + r2) / (one + r2) == one);
    CHECK(r2.pow(0) == one);
    CHECK_THROWS_AS(one / QuadraticSurd(2), std::domain_error);
    CHECK_THROWS(one + QuadraticSurd::sqrt_of(3));
    CHECK((one + r2).to_string() == "1 + 1*sqrt(2)");
    CHECK(QuadraticSurd(2, mpq_class(1, 2), -3).to_string() == "1/2 - 3*sqrt(2)");

    // (sqrt 3 + 1)^4 = 28 + 16 sqrt 3
    const auto s3 = QuadraticSurd::sqrt_of(3) + QuadraticSurd(3, 1);
    CHECK(s3.pow(4) == QuadraticSurd(3, 28, 16));
    const auto e = s3.pow(4).enclose();
    CHECK(e.lo_ld() <= 28 + 16 * std::sqrt(3.0L) + 1e-15L);
    CHECK(e.hi_ld() >= 28 + 16 * std::sqrt(3.0L) - 1e-15L);
}
