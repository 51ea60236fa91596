#pragma once

// Upper and lower bounds for the number of rational points of Prym varieties
// and Jacobians, with sound enclosures and exact arithmetic where the value
// is algebraic of degree at most 2.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include "json.hpp"

#include "prym/interval.hpp"
#include "prym/quadratic.hpp"

namespace prym {

/// Enclosure lo <= value <= hi, carrying the exact value when it lies in Q(sqrt q).
class BoundInterval {
public:
    explicit BoundInterval(Interval enclosure) : enclosure_(std::move(enclosure)) {}
    explicit BoundInterval(const QuadraticSurd& exact) : enclosure_(exact.enclose()), exact_(exact) {}

    const Interval& enclosure() const noexcept { return enclosure_; }
    const std::optional<QuadraticSurd>& exact() const noexcept { return exact_; }
    mpfr_srcptr lo() const noexcept { return enclosure_.lo(); }
    mpfr_srcptr hi() const noexcept { return enclosure_.hi(); }
    long double value() const noexcept { return enclosure_.mid_ld(); }

    /// Exact value as an integer, if it is one.
    std::optional<mpz_class> exact_integer() const;

private:
    Interval enclosure_;
    std::optional<QuadraticSurd> exact_;
};

/// Sign of a - b when it can be decided (exactly, or because the enclosures are disjoint).
std::optional<int> compare(const BoundInterval& a, const BoundInterval& b);
std::optional<int> compare(const BoundInterval& a, const mpz_class& b);

Certainty certify_le(const BoundInterval& a, const BoundInterval& b);
Certainty certify_le(const BoundInterval& a, const mpz_class& b);
Certainty certify_le(const mpz_class& a, const BoundInterval& b);

struct BoundPair {
    BoundInterval lower;
    BoundInterval upper;
};

/// t = D / (2 sqrt q), exactly.
QuadraticSurd normalized_trace(const mpz_class& D, const mpz_class& q);

/// 0 iff the normalized trace is a rational integer.
int delta_flag(const QuadraticSurd& t);
/// 0 iff D / (2 sqrt q) is an integer: D = 0, or q = s^2 with 2s | D.
int delta_flag(const mpz_class& D, const mpz_class& q);

/// Bounds on prod_{k<=gamma} (q + 1 - 2 sqrt(q) x_k) over x in [-1,1]^gamma with
/// sum x_k = -t. Lower: ((sqrt q+1)/(sqrt q-1))^{t - 2 delta} (q-1)^gamma.
BoundInterval trace_lower_bound(const mpz_class& q, int gamma, const QuadraticSurd& t);
/// Upper: (q + 1 + 2 sqrt(q) t / gamma)^gamma.
BoundInterval trace_upper_bound(const mpz_class& q, int gamma, const QuadraticSurd& t);

/// Data of a double cover Y -> X that the bounds depend on.
struct CoverStats {
    mpz_class q;
    int g = 0;
    mpz_class nx;
    mpz_class ny;
    std::optional<int> gonality;

    mpz_class D() const { return ny - nx; }

    /// Rejects g < 2 and |NY - NX| > 2 (g - 1) sqrt q.
    static CoverStats make(const mpz_class& q, int g, const mpz_class& nx, const mpz_class& ny,
                           std::optional<int> gonality = std::nullopt);
};

/// Lower bound for #Pr(F_q) in terms of D = NY - NX. Only g >= 2 is checked.
BoundInterval thm2_lower(const mpz_class& q, int g, const mpz_class& D);
BoundInterval thm2_lower(const CoverStats& s);
/// (q + 1 + D/(g-1))^{g-1}.
BoundInterval thm2_upper(const mpz_class& q, int g, const mpz_class& D);
BoundInterval thm2_upper(const CoverStats& s);
/// ((sqrt q-1)/(sqrt q+1))^{d(q+1)/(2 sqrt q) + 2} (q-1)^{g-1} and e^d (q+1)^{g-1}.
BoundPair thm2_gonality(const mpz_class& q, int g, int d);
BoundPair thm2_gonality(const CoverStats& s);

/// (sqrt q -/+ 1)^{2 dim}.
BoundPair weil_interval(const mpz_class& q, int dim);

struct JacobianBounds {
    BoundInterval lower;
    BoundInterval upper;
    int delta;
};

/// Bounds for #J_X(F_q) in terms of NX; rejects g < 1 and |NX - q - 1| > 2 g sqrt q.
JacobianBounds thm5_bounds(const mpz_class& q, int g, const mpz_class& nx);

struct LmdBounds {
    BoundInterval lower;
    std::optional<BoundInterval> upper;
};

/// (sqrt q - 1)^2 (q^{g-1} - 1)/g (NX + q - 1)/(q - 1), and with a gonality d
/// also (e/q) (2 g sqrt e)^{d-1} q^g.
LmdBounds lmd_bounds(const mpz_class& q, int g, const mpz_class& nx, std::optional<int> gonality = std::nullopt);

struct BoundCheck {
    std::string name;
    Certainty result;
};

struct BoundsReport {
    CoverStats stats;
    int delta = 0;
    mpz_class prym_order;
    BoundInterval thm2_lower;
    BoundInterval thm2_upper;
    std::optional<BoundPair> thm2_gonality;
    BoundPair weil;  // dimension g - 1
    mpz_class jac_order;
    JacobianBounds thm5;
    BoundPair jac_weil;  // dimension g
    LmdBounds lmd;
    /// thm2_upper / thm2_lower.
    long double tightness = 0;
    /// Sandwich checks of #Pr and #J_X.
    std::vector<BoundCheck> checks;
    /// Containment of [thm2_lower, thm2_upper] in the Weil interval.
    std::vector<BoundCheck> dominance;

    /// Failed or undecided entries of `checks`.
    std::size_t violations() const;
};

/// Evaluates every bound and records the sandwich and Weil-containment checks.
BoundsReport build_report(const CoverStats& stats, const mpz_class& prym_order, const mpz_class& jac_order);

/// Containment of the [thm2_lower, thm2_upper] interval in the Weil interval of dimension g - 1 for a
/// normalized trace t with |t| <= g - 1.
std::vector<BoundCheck> weil_dominance(const mpz_class& q, int g, const QuadraticSurd& t);

/// Fixed CSV column order.
std::string csv_header();
std::string to_csv_row(const BoundsReport& r);
nlohmann::json to_json(const BoundsReport& r);

}  // namespace prym
