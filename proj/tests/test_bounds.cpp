#include "doctest.h"

#include <cmath>

#include "prym/bounds.hpp"
#include "prym/polytope.hpp"

using namespace prym;

namespace {

using LD = long double;

bool near(const BoundInterval& b, LD expected, LD rel = 1e-15L) {
    return b.enclosure().lo_ld() <= expected * (1 + rel) + rel && b.enclosure().hi_ld() >= expected * (1 - rel) - rel;
}

bool tight(const BoundInterval& b) {
    return b.enclosure().width() <= 1e-12L * std::max(1.0L, std::abs(b.enclosure().hi_ld()));
}

LD lower_closed_form(long q, int g, long D) {
    const LD rq = std::sqrt(static_cast<LD>(q));
    const LD t = D / (2 * rq);
    const int delta = std::abs(t - std::round(t)) < 1e-12L ? 0 : 1;
    return std::pow((rq + 1) / (rq - 1), t - 2 * delta) * std::pow(static_cast<LD>(q - 1), g - 1);
}

LD upper_closed_form(long q, int g, long D) { return std::pow(q + 1 + static_cast<LD>(D) / (g - 1), g - 1); }

/// All integers D with |D| <= 2(g-1) sqrt q.
std::vector<long> admissible_D(long q, int g) {
    std::vector<long> out;
    const long lim = 2L * (g - 1);
    for (long D = -lim * q; D <= lim * q; ++D) {
        if (D * D <= lim * lim * q) out.push_back(D);
    }
    return out;
}

}  // namespace

TEST_CASE("delta_flag") {
    CHECK(delta_flag(0, 7) == 0);
    CHECK(delta_flag(12, 9) == 0);
    CHECK(delta_flag(4, 5) == 1);
    CHECK(delta_flag(3, 9) == 1);
    CHECK(delta_flag(-18, 9) == 0);

    // exhaustive: for square q = s^2, delta = 0 iff 2s | D
    for (long s : {3L, 5L, 7L}) {
        const long q = s * s;
        for (int g = 1; g <= 4; ++g) {
            for (long D = -2L * g * s; D <= 2L * g * s; ++D) CHECK(delta_flag(D, q) == (D % (2 * s) == 0 ? 0 : 1));
        }
    }
    for (long q : {3L, 5L, 7L, 27L, 125L}) {
        for (long D = -30; D <= 30; ++D) CHECK(delta_flag(D, q) == (D == 0 ? 0 : 1));
    }
    CHECK(delta_flag(normalized_trace(6, 9)) == 0);
    CHECK(delta_flag(normalized_trace(4, 9)) == 1);
}

TEST_CASE("thm2_lower") {
    for (long q : {3L, 5L, 9L, 25L}) CHECK(thm2_lower(q, 2, 0).exact_integer() == mpz_class(q - 1));
    const auto b = thm2_lower(9, 2, 12);
    CHECK(b.exact_integer() == mpz_class(32));
    CHECK(near(b, 32));
    CHECK_THROWS_AS(thm2_lower(9, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(CoverStats::make(9, 2, 10, 22), std::invalid_argument);

    for (long q : {3L, 4L, 5L, 7L, 9L, 25L, 27L}) {
        for (int g = 2; g <= 5; ++g) {
            for (long D : admissible_D(q, g)) {
                const auto lo = thm2_lower(CoverStats::make(q, g, 10, 10 + D));
                CAPTURE(q);
                CAPTURE(g);
                CAPTURE(D);
                CHECK(near(lo, lower_closed_form(q, g, D), 1e-14L));
                CHECK(tight(lo));
            }
        }
    }
}

TEST_CASE("thm2_upper") {
    CHECK(thm2_upper(9, 2, 6).exact_integer() == mpz_class(16));
    CHECK(thm2_upper(9, 2, 6).exact_integer() == weil_interval(9, 1).upper.exact_integer());
    CHECK(thm2_upper(7, 2, 0).exact_integer() == mpz_class(8));
    CHECK(thm2_upper(3, 3, 2).exact_integer() == mpz_class(25));
    CHECK(thm2_upper(3, 3, 1).exact()->rational_part() == mpq_class(81, 4));
    CHECK_THROWS(thm2_upper(3, 1, 0));
    for (long q : {3L, 5L, 16L, 49L}) {
        for (int g = 2; g <= 5; ++g) {
            for (long D : admissible_D(q, g)) CHECK(near(thm2_upper(q, g, D), upper_closed_form(q, g, D), 1e-14L));
        }
    }
}

TEST_CASE("monotonicity in D") {
    for (long q : {3L, 5L, 9L, 25L}) {
        for (int g = 2; g <= 4; ++g) {
            const auto Ds = admissible_D(q, g);
            for (std::size_t i = 1; i < Ds.size(); ++i) {
                CHECK(certify_le(thm2_upper(q, g, Ds[i - 1]), thm2_upper(q, g, Ds[i])) == Certainty::holds);
                CHECK(compare(thm2_upper(q, g, Ds[i - 1]), thm2_upper(q, g, Ds[i])) == -1);
                if (delta_flag(Ds[i - 1], q) == delta_flag(Ds[i], q)) {
                    CHECK(compare(thm2_lower(q, g, Ds[i - 1]), thm2_lower(q, g, Ds[i])) == -1);
                }
            }
        }
    }
}

TEST_CASE("thm2_gonality") {
    for (long q : {3L, 5L, 9L}) {
        for (int g = 2; g <= 4; ++g) {
            const LD rq = std::sqrt(static_cast<LD>(q));
            const auto [lo, hi] = thm2_gonality(q, g, 2);
            CHECK(near(lo, std::pow((rq - 1) / (rq + 1), 2 * (q + 1) / (2 * rq) + 2) * std::pow(q - 1.0L, g - 1), 1e-14L));
            CHECK(near(hi, std::exp(2.0L) * std::pow(q + 1.0L, g - 1), 1e-14L));
            CHECK(tight(lo));
            CHECK(tight(hi));
        }
    }
    CHECK(near(thm2_gonality(5, 3, 1).upper, std::exp(1.0L) * 36, 1e-14L));
    CHECK_THROWS(thm2_gonality(5, 2, 0));
    CHECK_THROWS(thm2_gonality(CoverStats::make(5, 2, 6, 6)));
}

TEST_CASE("formal gonality-0 limit of the upper bound") {
    // e^0 (q+1)^{g-1}
    const auto lim = exp(Interval(0L)) * pow(Interval(6L), 2L);
    CHECK(lim.contains(mpz_class(36)));
}

TEST_CASE("weil_interval") {
    const auto w0 = weil_interval(7, 0);
    CHECK(w0.lower.exact_integer() == mpz_class(1));
    CHECK(w0.upper.exact_integer() == mpz_class(1));
    const auto w9 = weil_interval(9, 1);
    CHECK(w9.lower.exact_integer() == mpz_class(4));
    CHECK(w9.upper.exact_integer() == mpz_class(16));
    const auto w5 = weil_interval(5, 2);
    CHECK(w5.lower.enclosure().width() <= 1e-12L);
    CHECK(w5.upper.enclosure().width() <= 1e-12L * w5.upper.value());
    // (sqrt5 -/+ 1)^4 = 56 -/+ 24 sqrt 5
    CHECK(*w5.lower.exact() == QuadraticSurd(5, 56, -24));
    CHECK(near(w5.upper, 56 + 24 * std::sqrt(5.0L)));
    CHECK_THROWS(weil_interval(5, -1));
}

TEST_CASE("thm5_bounds") {
    for (long q : {3L, 5L, 9L}) {
        const auto b = thm5_bounds(q, 1, q + 1);
        CHECK(b.delta == 0);
        CHECK(b.lower.exact_integer() == mpz_class(q - 1));
        CHECK(b.upper.exact_integer() == mpz_class(q + 1));
    }
    CHECK(thm5_bounds(9, 1, 16).upper.exact_integer() == mpz_class(16));
    CHECK(thm5_bounds(9, 1, 16).lower.exact_integer() == mpz_class(16));
    CHECK_THROWS(thm5_bounds(9, 1, 17));
    CHECK_THROWS(thm5_bounds(9, 0, 10));
    // same closed forms as the Prym bounds with g - 1 replaced by g and D by NX - q - 1
    for (long q : {3L, 5L, 7L}) {
        for (int g = 1; g <= 4; ++g) {
            for (long dev : admissible_D(q, g + 1)) {
                if (q + 1 + dev < 0) continue;
                const auto b = thm5_bounds(q, g, q + 1 + dev);
                CHECK(near(b.lower, lower_closed_form(q, g + 1, dev), 1e-14L));
                CHECK(near(b.upper, upper_closed_form(q, g + 1, dev), 1e-14L));
            }
        }
    }
}

TEST_CASE("lmd_bounds") {
    CHECK(lmd_bounds(5, 1, 6).lower.exact_integer() == mpz_class(0));
    const auto b = lmd_bounds(4, 2, 5);
    CHECK(b.lower.exact_integer() == mpz_class(4));
    CHECK_FALSE(b.upper.has_value());
    const auto c = lmd_bounds(5, 3, 4, 2);
    REQUIRE(c.upper.has_value());
    const LD e = std::exp(1.0L);
    CHECK(near(*c.upper, e / 5 * (6 * std::sqrt(e)) * 125, 1e-14L));
    const LD rq = std::sqrt(5.0L);
    CHECK(near(c.lower, (rq - 1) * (rq - 1) * (24.0L / 3) * (8.0L / 4), 1e-14L));
    CHECK_THROWS(lmd_bounds(5, 0, 4));
}

TEST_CASE("Prym bounds are the polytope extrema rescaled") {
    // prod (q + 1 - 2 sqrt q x_k) = (2 sqrt q)^gamma prod (a - x_k), a = (q+1)/(2 sqrt q), sum x_k = -t
    for (long q : {3L, 5L, 7L, 9L, 25L}) {
        const LD rq = std::sqrt(static_cast<LD>(q));
        const LD a = (q + 1) / (2 * rq);
        for (int g = 2; g <= 4; ++g) {
            const int gamma = g - 1;
            const LD scale = std::pow(2 * rq, gamma);
            for (long D : admissible_D(q, g)) {
                const LD t = D / (2 * rq);
                if (std::abs(t) > gamma) continue;
                const auto P = PolytopeProblem<LD>::make(a, gamma, -t);
                if (P.delta() != delta_flag(D, q)) continue;  // integer test of -t in floating point
                CAPTURE(q);
                CAPTURE(g);
                CAPTURE(D);
                const LD lemma = lemma3_bound(P) * scale;
                const LD lower = thm2_lower(q, g, D).value();
                CHECK(std::abs(lemma - lower) <= 1e-10L * lower);
                const LD upper = thm2_upper(q, g, D).value();
                CHECK(std::abs(lemma4_max(P).first * scale - upper) <= 1e-10L * upper);
                CHECK(exact_min(P).value * scale >= lower * (1 - 1e-12L));
            }
        }
    }
}

TEST_CASE("Weil containment of the Prym interval") {
    // thm2_lower / weil_lower = ((sqrt q + 1)/(sqrt q - 1))^{t - 2 delta + g - 1}, so the lower side
    // holds exactly when t - 2 delta + g - 1 >= 0. The upper side is AM-GM.
    int lower_fail = 0, total = 0;
    for (long q : {3L, 4L, 5L, 7L, 9L, 25L}) {
        const LD rq = std::sqrt(static_cast<LD>(q));
        for (int g = 2; g <= 4; ++g) {
            const LD limit = 2 * (g - 1) * rq;
            for (int step = 0; step < 25; ++step) {
                const long D = std::lround(-limit + 2 * limit * step / 24);
                if (static_cast<LD>(D) * D > limit * limit) continue;
                const auto t = normalized_trace(D, q);
                const auto checks = weil_dominance(q, g, t);
                REQUIRE(checks.size() == 3);
                CHECK(checks[0].name == "weil.lower <= thm2.lower");
                const int delta = delta_flag(D, q);
                const QuadraticSurd margin = t + QuadraticSurd(q, g - 1 - 2 * delta);
                const int sign = margin.sign();
                CAPTURE(q);
                CAPTURE(g);
                CAPTURE(D);
                if (sign > 0) CHECK(checks[0].result == Certainty::holds);
                if (sign < 0) CHECK(checks[0].result == Certainty::violated);
                if (sign == 0) CHECK(checks[0].result == Certainty::holds);
                CHECK(checks[1].result == Certainty::holds);
                CHECK(checks[2].result == Certainty::holds);
                lower_fail += checks[0].result != Certainty::holds;
                ++total;
            }
        }
    }
    CHECK(total > 300);
    CHECK(lower_fail > 0);
}

TEST_CASE("maximal D meets the Weil maximum") {
    for (long s : {3L, 5L}) {
        const long q = s * s;
        for (int g = 2; g <= 4; ++g) {
            const long D = 2L * (g - 1) * s;
            CHECK(thm2_upper(q, g, D).exact_integer() == weil_interval(q, g - 1).upper.exact_integer());
        }
    }
    // D = 0: [q - 1, q + 1] sits inside [(sqrt q - 1)^2, (sqrt q + 1)^2]
    for (long q : {3L, 5L, 9L}) {
        const auto d = weil_dominance(q, 2, normalized_trace(0, q));
        for (const auto& c : d) CHECK(c.result == Certainty::holds);
    }
}

TEST_CASE("build_report") {
    const auto s = CoverStats::make(5, 2, 7, 10, 2);
    const auto r = build_report(s, 9, 34);
    CHECK(r.delta == 1);
    CHECK(r.violations() == 0);
    CHECK(r.checks.size() == 10);
    CHECK(r.dominance.size() == 2);
    CHECK(r.tightness > 1);
    const auto j = to_json(r);
    CHECK(j["prym_order"] == "9");
    CHECK(j["violations"] == 0);
    const auto row = to_csv_row(r);
    CHECK(row.rfind("5,2,7,10,3,1,9,", 0) == 0);
    const auto header = csv_header();
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));

    // a #Pr outside the bounds is reported as a violation, not thrown
    const auto bad = build_report(s, 1000, 34);
    CHECK(bad.violations() > 0);
}
