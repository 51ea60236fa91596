#pragma once

// Exact arithmetic in Q(sqrt q): numbers r + s sqrt(q) with r, s rational.

#include <optional>
#include <string>

#include <gmpxx.h>

#include "prym/interval.hpp"

namespace prym {

/// num / den in canonical form.
mpq_class make_rational(const mpz_class& num, const mpz_class& den);

/// Integer square root if n is a perfect square.
std::optional<mpz_class> exact_sqrt(const mpz_class& n);

class QuadraticSurd {
public:
    /// r + s sqrt(q). When q is a perfect square the value is folded into r.
    QuadraticSurd(const mpz_class& q, mpq_class r = 0, mpq_class s = 0);

    /// sqrt(q).
    static QuadraticSurd sqrt_of(const mpz_class& q) { return QuadraticSurd(q, 0, 1); }

    const mpz_class& radicand() const noexcept { return q_; }
    const mpq_class& rational_part() const noexcept { return r_; }
    const mpq_class& surd_part() const noexcept { return s_; }

    bool is_rational() const noexcept { return s_ == 0; }
    bool is_integer() const noexcept { return s_ == 0 && r_.get_den() == 1; }
    int sign() const;

    QuadraticSurd operator-() const;
    QuadraticSurd& operator+=(const QuadraticSurd& rhs);
    QuadraticSurd& operator-=(const QuadraticSurd& rhs);
    QuadraticSurd& operator*=(const QuadraticSurd& rhs);
    /// Throws std::domain_error on division by zero.
    QuadraticSurd& operator/=(const QuadraticSurd& rhs);

    friend QuadraticSurd operator+(QuadraticSurd a, const QuadraticSurd& b) { return a += b; }
    friend QuadraticSurd operator-(QuadraticSurd a, const QuadraticSurd& b) { return a -= b; }
    friend QuadraticSurd operator*(QuadraticSurd a, const QuadraticSurd& b) { return a *= b; }
    friend QuadraticSurd operator/(QuadraticSurd a, const QuadraticSurd& b) { return a /= b; }
    friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) { return (a - b).sign() == 0; }

    /// Integer power; negative exponents invert.
    QuadraticSurd pow(long n) const;

    QuadraticSurd rational(const mpq_class& x) const { return QuadraticSurd(q_, x, 0); }

    Interval enclose() const;
    std::string to_string() const;

private:
    void check_same_field(const QuadraticSurd& rhs) const;

    mpz_class q_;
    mpq_class r_;
    mpq_class s_;
};

}  // namespace prym
