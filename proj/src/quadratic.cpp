#include "prym/quadratic.hpp"

#include <stdexcept>

namespace prym {

mpq_class make_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

std::optional<mpz_class> exact_sqrt(const mpz_class& n) {
    if (n < 0) return std::nullopt;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r == n) return r;
    return std::nullopt;
}

QuadraticSurd::QuadraticSurd(const mpz_class& q, mpq_class r, mpq_class s) : q_(q), r_(std::move(r)), s_(std::move(s)) {
    if (q_ <= 0) throw std::domain_error("radicand must be positive");
    if (auto root = exact_sqrt(q_)) {
        r_ += s_ * mpq_class(*root);
        s_ = 0;
    }
}

void QuadraticSurd::check_same_field(const QuadraticSurd& rhs) const {
    if (q_ != rhs.q_) throw std::domain_error("mixing Q(sqrt " + q_.get_str() + ") and Q(sqrt " + rhs.q_.get_str() + ")");
}

int QuadraticSurd::sign() const {
    const int sr = sgn(r_), ss = sgn(s_);
    if (ss == 0) return sr;
    if (sr == 0 || sr == ss) return ss;
    // r and s sqrt(q) have opposite signs: compare r^2 with s^2 q.
    const mpq_class lhs = r_ * r_, rhs = s_ * s_ * mpq_class(q_);
    const int c = cmp(lhs, rhs);
    return c > 0 ? sr : (c < 0 ? ss : 0);
}

QuadraticSurd QuadraticSurd::operator-() const {
    QuadraticSurd out = *this;
    out.r_ = -r_;
    out.s_ = -s_;
    return out;
}

QuadraticSurd& QuadraticSurd::operator+=(const QuadraticSurd& rhs) {
    check_same_field(rhs);
    r_ += rhs.r_;
    s_ += rhs.s_;
    return *this;
}

QuadraticSurd& QuadraticSurd::operator-=(const QuadraticSurd& rhs) {
    check_same_field(rhs);
    r_ -= rhs.r_;
    s_ -= rhs.s_;
    return *this;
}

QuadraticSurd& QuadraticSurd::operator*=(const QuadraticSurd& rhs) {
    check_same_field(rhs);
    const mpq_class r = r_ * rhs.r_ + s_ * rhs.s_ * mpq_class(q_);
    const mpq_class s = r_ * rhs.s_ + s_ * rhs.r_;
    r_ = r;
    s_ = s;
    return *this;
}

QuadraticSurd& QuadraticSurd::operator/=(const QuadraticSurd& rhs) {
    check_same_field(rhs);
    const mpq_class norm = rhs.r_ * rhs.r_ - rhs.s_ * rhs.s_ * mpq_class(q_);
    if (norm == 0) throw std::domain_error("division by zero in Q(sqrt q)");
    QuadraticSurd conj(q_, rhs.r_ / norm, -rhs.s_ / norm);
    return *this *= conj;
}

QuadraticSurd QuadraticSurd::pow(long n) const {
    if (n < 0) return QuadraticSurd(q_, 1) / pow(-n);
    QuadraticSurd result(q_, 1), base = *this;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

Interval QuadraticSurd::enclose() const {
    if (s_ == 0) return Interval(r_);
    return Interval(r_) + Interval(s_) * sqrt(Interval(q_));
}

std::string QuadraticSurd::to_string() const {
    if (s_ == 0) return r_.get_str();
    return r_.get_str() + (s_ > 0 ? " + " : " - ") + mpq_class(abs(s_)).get_str() + "*sqrt(" + q_.get_str() + ")";
}

}  // namespace prym
