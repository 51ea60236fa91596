#pragma once

// Hyperelliptic curves y^2 = f(x) of even degree, unramified double covers
// given by coprime factorizations f = f1 * f2, and their point counts.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "prym/field.hpp"
#include "prym/poly.hpp"

namespace prym {

/// Hypotheses checked when building curves and covers.
enum class Hypothesis {
    zero_polynomial,
    odd_degree,        // ramified at infinity
    degree_too_small,
    not_squarefree,    // singular model
    not_coprime,       // ramified at a finite place
    genus_too_small,
    field_mismatch,
};

const char* hypothesis_name(Hypothesis h) noexcept;

class ValidationError : public std::invalid_argument {
public:
    ValidationError(Hypothesis h, const std::string& detail);
    Hypothesis hypothesis() const noexcept { return hypothesis_; }

private:
    Hypothesis hypothesis_;
};

/// Smooth projective model of y^2 = f(x), deg f = 2(g+1), f squarefree.
class HyperellipticCurve {
public:
    /// Validates f; genus 0 models (deg f = 2) are accepted.
    explicit HyperellipticCurve(Poly f);

    const Poly& f() const noexcept { return f_; }
    const FieldPtr& field() const noexcept { return f_.field(); }
    int genus() const noexcept { return f_.degree() / 2 - 1; }

private:
    Poly f_;
};

enum class CoverMode {
    prym,     ///< genus of the base >= 2
    relaxed,  ///< genus of the base >= 1, for cross-check curves
};

/// The cover Y: {u^2 = f1, v^2 = f2} -> X: {y^2 = f1 f2}, y = uv.
class DoubleCover {
public:
    const HyperellipticCurve& base() const noexcept { return base_; }
    const Poly& f1() const noexcept { return f1_; }
    const Poly& f2() const noexcept { return f2_; }
    const FieldPtr& field() const noexcept { return f1_.field(); }
    int genus_x() const noexcept { return base_.genus(); }
    int genus_y() const noexcept { return 2 * base_.genus() - 1; }

    /// u^2 = f1 and v^2 = f2: the two other quadratic subcovers of Y -> P^1.
    HyperellipticCurve first_quotient() const { return HyperellipticCurve(f1_); }
    HyperellipticCurve second_quotient() const { return HyperellipticCurve(f2_); }

private:
    friend DoubleCover validate_cover(const Poly& f1, const Poly& f2, CoverMode mode);
    DoubleCover(HyperellipticCurve base, Poly f1, Poly f2);

    HyperellipticCurve base_;
    Poly f1_;
    Poly f2_;
};

/// Checks every hypothesis for an unramified double cover and names the first
/// one violated.
DoubleCover validate_cover(const Poly& f1, const Poly& f2, CoverMode mode = CoverMode::prym);

/// N_1..N_B for one curve.
struct PointCountSeries {
    std::uint64_t q = 0;
    std::vector<std::uint64_t> counts;  // counts[n-1] = N_n
};

/// N_n(X) = sum_x s(f(x)) + (2 if lc(f) is a square in F_{q^n} else 0),
/// with s(0) = 1, s(square) = 2, s(nonsquare) = 0.
std::uint64_t count_curve_points(const HyperellipticCurve& curve, unsigned n,
                                 std::uint64_t budget = kDefaultBudget);

/// N_n(Y) = sum_x s(f1(x)) s(f2(x)) + (4 if lc(f1), lc(f2) are both squares).
std::uint64_t count_cover_points(const DoubleCover& cover, unsigned n, std::uint64_t budget = kDefaultBudget);

PointCountSeries count_curve_series(const HyperellipticCurve& curve, unsigned max_n,
                                    std::uint64_t budget = kDefaultBudget);
PointCountSeries count_cover_series(const DoubleCover& cover, unsigned max_n,
                                    std::uint64_t budget = kDefaultBudget);

/// The extension F_{q^n} used for counting, built directly over F_p.
FieldPtr counting_field(const FieldPtr& base, unsigned n);

}  // namespace prym
