#pragma once

// Closed real intervals with MPFR endpoints and outward (directed) rounding.

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace prym {

/// Working precision of every endpoint (about 57 decimal digits).
inline constexpr mpfr_prec_t kIntervalPrecision = 192;

class Interval {
public:
    Interval();  // [0, 0]
    explicit Interval(long n);
    explicit Interval(const mpz_class& n);
    explicit Interval(const mpq_class& x);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    mpfr_srcptr lo() const noexcept { return lo_; }
    mpfr_srcptr hi() const noexcept { return hi_; }

    bool is_point() const noexcept { return mpfr_equal_p(lo_, hi_) != 0; }
    bool contains(const mpz_class& n) const noexcept;
    bool contains(const Interval& other) const noexcept;
    /// hi - lo, rounded up.
    long double width() const;
    long double lo_ld() const noexcept { return mpfr_get_ld(lo_, MPFR_RNDD); }
    long double hi_ld() const noexcept { return mpfr_get_ld(hi_, MPFR_RNDU); }
    long double mid_ld() const noexcept;

    Interval operator-() const;
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Throws std::domain_error if b contains 0.
    friend Interval operator/(const Interval& a, const Interval& b);

    friend Interval sqrt(const Interval& x);
    friend Interval log(const Interval& x);
    friend Interval exp(const Interval& x);
    /// x^y = exp(y log x) for x > 0.
    friend Interval pow(const Interval& x, const Interval& y);
    /// x^n by repeated squaring (exact when every step is representable).
    friend Interval pow(const Interval& x, long n);

    /// Lower end rounded down, upper end rounded up, to `digits` significant digits.
    std::string lo_string(int digits = 17) const;
    std::string hi_string(int digits = 17) const;

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

/// Euler's number e.
const Interval& euler_e();

/// a <= b known for certain, a > b known for certain, or overlapping enclosures.
enum class Certainty { holds, violated, undecided };

const char* certainty_name(Certainty c) noexcept;

Certainty certify_le(const Interval& a, const Interval& b);

}  // namespace prym
