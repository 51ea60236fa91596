#pragma once

// Dense univariate polynomials over a FieldDesc.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prym/field.hpp"

namespace prym {

class Poly {
public:
    /// Degree reported for the zero polynomial.
    static constexpr int kZeroDegree = -1;

    Poly() = default;
    /// Zero polynomial over `field`.
    explicit Poly(FieldPtr field);
    /// Ascending coefficients; trailing zeros are stripped.
    Poly(FieldPtr field, std::vector<FieldElement> coeffs);
    /// Ascending coefficients given as element indices (see FieldElement::from_index).
    static Poly from_indices(FieldPtr field, const std::vector<std::uint64_t>& coeffs);
    /// x^n.
    static Poly monomial(FieldPtr field, unsigned n);
    static Poly constant(const FieldElement& c);

    const FieldPtr& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back().is_one(); }
    const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
    /// Coefficient of x^i (zero beyond the degree).
    FieldElement coeff(std::size_t i) const;
    /// Leading coefficient; throws for the zero polynomial.
    const FieldElement& leading() const;

    FieldElement operator()(const FieldElement& x) const;

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const FieldElement& c, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b);

    Poly derivative() const;
    Poly monic() const;

    /// Coefficients as element indices, ascending ("1,0,1" style serialization).
    std::vector<std::uint64_t> indices() const;
    std::string to_string() const;

private:
    void normalize();

    FieldPtr field_;
    std::vector<FieldElement> coeffs_;
};

/// (quotient, remainder); throws FieldError when dividing by zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
/// base^e mod m.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

/// gcd(f, f') = 1.
bool is_squarefree(const Poly& f);

/// Rabin test: x^{q^k} = x mod m and gcd(x^{q^{k/r}} - x, m) = 1 for every
/// prime r | k, with q the order of the coefficient field.
/// Throws FieldError for non-monic or constant input.
bool is_irreducible(const Poly& m);

/// First monic irreducible polynomial of degree k over F_p, scanning the
/// p^k candidates (lower coefficients as a base-p counter, c_0 fastest) from
/// position `seed` mod p^k with wrap-around. Returns x for k = 1.
Poly find_irreducible(Residue p, unsigned k, std::uint64_t seed = 0);

/// Parses "1,0,0,0,1" (ascending coefficients, each an element index).
Poly parse_poly(const FieldPtr& field, std::string_view text);
/// Inverse of parse_poly.
std::string format_poly(const Poly& f);

/// Parses "p" or "p^k".
FieldPtr parse_field(std::string_view text, std::uint64_t seed = 0);

}  // namespace prym
