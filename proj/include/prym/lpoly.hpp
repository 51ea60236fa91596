#pragma once

// L-polynomials of curves and abelian varieties over F_q: reconstruction from
// point counts, the functional equation, exact division, group orders.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include "json.hpp"

#include "prym/curves.hpp"

namespace prym {

/// Counts that no L-polynomial can produce (a counting bug upstream).
class InconsistentCounts : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// L_X does not divide L_Y.
class NotSubLPolynomial : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// L(T) = sum c_i T^i of degree 2d, c_0 = 1, c_{2d-i} = q^{d-i} c_i.
class LPolynomial {
public:
    /// Validates c_0 = 1, odd length and the functional equation.
    LPolynomial(mpz_class q, std::vector<mpz_class> coeffs);
    /// The constant polynomial 1 (dimension 0).
    static LPolynomial one(mpz_class q);

    const mpz_class& q() const noexcept { return q_; }
    int dim() const noexcept { return static_cast<int>(coeffs_.size() / 2); }
    const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
    const mpz_class& operator[](std::size_t i) const { return coeffs_.at(i); }

    /// Exact product; the dimensions add.
    friend LPolynomial operator*(const LPolynomial& a, const LPolynomial& b);
    friend bool operator==(const LPolynomial& a, const LPolynomial& b) {
        return a.q_ == b.q_ && a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const;

private:
    mpz_class q_;
    std::vector<mpz_class> coeffs_;
};

/// True iff c_{2d-i} = q^{d-i} c_i for all i (used by the constructor).
bool satisfies_functional_equation(const mpz_class& q, std::span<const mpz_class> coeffs);

/// p_n = q^n + 1 - N_n.
std::vector<mpz_class> power_sums(const PointCountSeries& counts);

/// Fits L from N_1..N_d via Newton's identities and completes it with the
/// functional equation. Throws InconsistentCounts on a non-exact Newton step
/// or a coefficient outside the Weil range |c_k| <= C(2d,k) q^{k/2}.
LPolynomial l_from_counts(std::span<const std::uint64_t> counts, const mpz_class& q, int d);
LPolynomial l_from_counts(const PointCountSeries& counts, int d);

/// p_n = sum of n-th powers of the reciprocal roots, by the Newton recurrence.
mpz_class power_sum(const LPolynomial& L, unsigned n);
/// N_n = q^n + 1 - p_n.
mpz_class counts_from_l(const LPolynomial& L, unsigned n);

/// L(1); throws InvariantViolation when L(1) <= 0.
mpz_class group_order(const LPolynomial& L);
/// prod (1 - omega^n) over the reciprocal roots, exactly.
mpz_class group_order_ext(const LPolynomial& L, unsigned n);

/// L_Y / L_X; throws NotSubLPolynomial on a nonzero remainder.
LPolynomial prym_l(const LPolynomial& ly, const LPolynomial& lx);
/// L_Pr(1).
mpz_class prym_order(const LPolynomial& lpr);
/// L_Pr(1), cross-checked against L_Y(1) / L_X(1).
mpz_class prym_order(const LPolynomial& lpr, const LPolynomial& ly, const LPolynomial& lx);
/// c_1(L_Pr) = N_1(Y) - N_1(X).
mpz_class trace_difference(const LPolynomial& lpr);

/// Weil interval for L(1): (sqrt q - 1)^{2d} <= L(1) <= (sqrt q + 1)^{2d}, decided exactly.
bool within_weil_interval(const LPolynomial& L);

// Numeric diagnostics. Never used to decide correctness.

/// Reciprocal roots omega as eigenvalues of the companion matrix of T^{2d} L(1/T).
std::vector<std::complex<long double>> reciprocal_roots(const LPolynomial& L);
/// Frobenius angles theta_1..theta_d in [0, pi], from conjugate root pairs.
std::vector<long double> frobenius_angles(const LPolynomial& L);
/// max_i | |omega_i| / sqrt(q) - 1 |.
long double root_modulus_deviation(const LPolynomial& L);
/// prod_i (q^n + 1 - 2 q^{n/2} cos(n theta_i)).
long double weil_product_order(const LPolynomial& L, unsigned n);

/// {"q": q, "d": d, "coeffs": ["1", ...]}.
nlohmann::json to_json(const LPolynomial& L);
LPolynomial lpoly_from_json(const nlohmann::json& j);

}  // namespace prym
