#include "prym/interval.hpp"

#include <stdexcept>
#include <utility>

namespace prym {

namespace {

void init_pair(mpfr_t lo, mpfr_t hi) {
    mpfr_init2(lo, kIntervalPrecision);
    mpfr_init2(hi, kIntervalPrecision);
}

// Sets out to [min, max] of f(a_i, b_j) over the four endpoint combinations.
template <class Op>
Interval combine4(const Interval& a, const Interval& b, Op op) {
    Interval out;
    mpfr_t t;
    mpfr_init2(t, kIntervalPrecision);
    bool first = true;
    for (mpfr_srcptr x : {a.lo(), a.hi()}) {
        for (mpfr_srcptr y : {b.lo(), b.hi()}) {
            op(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, out.lo())) mpfr_set(const_cast<mpfr_ptr>(out.lo()), t, MPFR_RNDD);
            op(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, out.hi())) mpfr_set(const_cast<mpfr_ptr>(out.hi()), t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return out;
}

}  // namespace

Interval::Interval() {
    init_pair(lo_, hi_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(long n) {
    init_pair(lo_, hi_);
    mpfr_set_si(lo_, n, MPFR_RNDD);
    mpfr_set_si(hi_, n, MPFR_RNDU);
}

Interval::Interval(const mpz_class& n) {
    init_pair(lo_, hi_);
    mpfr_set_z(lo_, n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, n.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& x) {
    init_pair(lo_, hi_);
    mpfr_set_q(lo_, x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, x.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
    init_pair(lo_, hi_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval() {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
    if (this != &other) {
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

bool Interval::contains(const mpz_class& n) const noexcept {
    return mpfr_cmp_z(lo_, n.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_, n.get_mpz_t()) >= 0;
}

bool Interval::contains(const Interval& other) const noexcept {
    return mpfr_lessequal_p(lo_, other.lo_) && mpfr_lessequal_p(other.hi_, hi_);
}

long double Interval::width() const {
    mpfr_t w;
    mpfr_init2(w, kIntervalPrecision);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const long double r = mpfr_get_ld(w, MPFR_RNDU);
    mpfr_clear(w);
    return r;
}

long double Interval::mid_ld() const noexcept {
    mpfr_t m;
    mpfr_init2(m, kIntervalPrecision + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    const long double r = mpfr_get_ld(m, MPFR_RNDN);
    mpfr_clear(m);
    return r;
}

Interval Interval::operator-() const {
    Interval out;
    mpfr_neg(out.lo_, hi_, MPFR_RNDD);
    mpfr_neg(out.hi_, lo_, MPFR_RNDU);
    return out;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval out;
    mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval out;
    mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return out;
}

Interval operator*(const Interval& a, const Interval& b) { return combine4(a, b, mpfr_mul); }

Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw std::domain_error("interval division by zero");
    return combine4(a, b, mpfr_div);
}

Interval sqrt(const Interval& x) {
    if (mpfr_sgn(x.lo_) < 0) throw std::domain_error("sqrt of an interval reaching below zero");
    Interval out;
    mpfr_sqrt(out.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqrt(out.hi_, x.hi_, MPFR_RNDU);
    return out;
}

Interval log(const Interval& x) {
    if (mpfr_sgn(x.lo_) <= 0) throw std::domain_error("log of an interval reaching zero");
    Interval out;
    mpfr_log(out.lo_, x.lo_, MPFR_RNDD);
    mpfr_log(out.hi_, x.hi_, MPFR_RNDU);
    return out;
}

Interval exp(const Interval& x) {
    Interval out;
    mpfr_exp(out.lo_, x.lo_, MPFR_RNDD);
    mpfr_exp(out.hi_, x.hi_, MPFR_RNDU);
    return out;
}

Interval pow(const Interval& x, const Interval& y) { return exp(y * log(x)); }

Interval pow(const Interval& x, long n) {
    if (n < 0) return Interval(1L) / pow(x, -n);
    Interval result(1L), base = x;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

namespace {

std::string format(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    char* buf = nullptr;
    const std::string fmt = rnd == MPFR_RNDD ? "%.*RDg" : "%.*RUg";
    mpfr_asprintf(&buf, fmt.c_str(), digits, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

}  // namespace

std::string Interval::lo_string(int digits) const { return format(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_string(int digits) const { return format(hi_, digits, MPFR_RNDU); }

const Interval& euler_e() {
    static const Interval e = exp(Interval(1L));
    return e;
}

const char* certainty_name(Certainty c) noexcept {
    switch (c) {
        case Certainty::holds: return "holds";
        case Certainty::violated: return "violated";
        case Certainty::undecided: return "undecided";
    }
    return "unknown";
}

Certainty certify_le(const Interval& a, const Interval& b) {
    if (mpfr_lessequal_p(a.hi(), b.lo())) return Certainty::holds;
    if (mpfr_greater_p(a.lo(), b.hi())) return Certainty::violated;
    return Certainty::undecided;
}

}  // namespace prym
