#include "prym/lpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "prym/quadratic.hpp"

namespace prym {

namespace {

mpz_class ipow(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Elementary symmetric functions e_0..e_m from power sums p_1..p_m via
// k e_k = sum_{j=1..k} (-1)^{j-1} e_{k-j} p_j. Returns false on a non-exact step.
bool newton_elementary(std::span<const mpz_class> p, std::vector<mpz_class>& e) {
    e.assign(p.size() + 1, 0);
    e[0] = 1;
    for (std::size_t k = 1; k <= p.size(); ++k) {
        mpz_class acc = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            if (j % 2 == 1) acc += e[k - j] * p[j - 1];
            else acc -= e[k - j] * p[j - 1];
        }
        if (!mpz_divisible_ui_p(acc.get_mpz_t(), k)) return false;
        mpz_divexact_ui(e[k].get_mpz_t(), acc.get_mpz_t(), k);
    }
    return true;
}

// p_1..p_n of the reciprocal roots of L.
std::vector<mpz_class> power_sums_of(const LPolynomial& L, unsigned n) {
    const auto& c = L.coeffs();
    std::vector<mpz_class> p(n + 1, 0);
    for (unsigned m = 1; m <= n; ++m) {
        mpz_class acc = 0;
        for (unsigned j = 1; j < m && j < c.size(); ++j) acc += c[j] * p[m - j];
        if (m < c.size()) acc += m * c[m];
        p[m] = -acc;
    }
    p.erase(p.begin());
    return p;
}

long double to_ld(const mpz_class& z) { return std::stold(z.get_str()); }

}  // namespace

bool satisfies_functional_equation(const mpz_class& q, std::span<const mpz_class> coeffs) {
    if (coeffs.size() % 2 == 0) return false;
    const std::size_t d = coeffs.size() / 2;
    for (std::size_t i = 0; i <= d; ++i) {
        if (coeffs[2 * d - i] != ipow(q, d - i) * coeffs[i]) return false;
    }
    return true;
}

LPolynomial::LPolynomial(mpz_class q, std::vector<mpz_class> coeffs) : q_(std::move(q)), coeffs_(std::move(coeffs)) {
    if (q_ < 2) throw InvariantViolation("q must be at least 2");
    if (coeffs_.empty() || coeffs_.size() % 2 == 0) {
        throw InvariantViolation("L-polynomial must have even degree, got " + std::to_string(coeffs_.size()) + " coefficients");
    }
    if (coeffs_[0] != 1) throw InvariantViolation("L-polynomial must have constant term 1");
    if (!satisfies_functional_equation(q_, coeffs_)) {
        throw InvariantViolation("functional equation fails for " + to_string());
    }
}

LPolynomial LPolynomial::one(mpz_class q) { return LPolynomial(std::move(q), {1}); }

LPolynomial operator*(const LPolynomial& a, const LPolynomial& b) {
    if (a.q_ != b.q_) throw InvariantViolation("multiplying L-polynomials over different fields");
    std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return LPolynomial(a.q_, std::move(out));
}

std::string LPolynomial::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i == 0) {
            os << coeffs_[i];
            continue;
        }
        if (coeffs_[i] == 0) continue;
        os << (coeffs_[i] < 0 ? " - " : " + ");
        const mpz_class a = abs(coeffs_[i]);
        if (a != 1) os << a << '*';
        os << 'T';
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

std::vector<mpz_class> power_sums(const PointCountSeries& counts) {
    std::vector<mpz_class> p;
    const mpz_class q(counts.q);
    for (std::size_t n = 1; n <= counts.counts.size(); ++n) {
        p.push_back(ipow(q, n) + 1 - mpz_class(counts.counts[n - 1]));
    }
    return p;
}

LPolynomial l_from_counts(std::span<const std::uint64_t> counts, const mpz_class& q, int d) {
    if (d < 0) throw std::invalid_argument("dimension must be nonnegative");
    if (counts.size() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument("need exactly " + std::to_string(d) + " counts, got " + std::to_string(counts.size()));
    }
    std::vector<mpz_class> p;
    for (std::size_t n = 1; n <= counts.size(); ++n) p.push_back(ipow(q, n) + 1 - mpz_class(counts[n - 1]));

    std::vector<mpz_class> e;
    if (!newton_elementary(p, e)) throw InconsistentCounts("non-exact Newton step: counts fit no L-polynomial");

    const auto dd = static_cast<std::size_t>(d);
    std::vector<mpz_class> c(2 * dd + 1, 0);
    for (std::size_t k = 0; k <= dd; ++k) {
        c[k] = k % 2 == 0 ? e[k] : mpz_class(-e[k]);
        const mpz_class bound = binomial(2 * dd, k);
        if (c[k] * c[k] > bound * bound * ipow(q, k)) {
            throw InconsistentCounts("coefficient c_" + std::to_string(k) + " = " + c[k].get_str() +
                                     " violates the Weil bound");
        }
    }
    for (std::size_t i = 0; i < dd; ++i) c[2 * dd - i] = ipow(q, dd - i) * c[i];
    return LPolynomial(q, std::move(c));
}

LPolynomial l_from_counts(const PointCountSeries& counts, int d) {
    if (counts.counts.size() < static_cast<std::size_t>(d)) throw std::invalid_argument("not enough counts");
    return l_from_counts(std::span(counts.counts).first(static_cast<std::size_t>(d)), mpz_class(counts.q), d);
}

mpz_class power_sum(const LPolynomial& L, unsigned n) {
    if (n == 0) return 2 * L.dim();
    return power_sums_of(L, n).back();
}

mpz_class counts_from_l(const LPolynomial& L, unsigned n) {
    if (n == 0) throw std::invalid_argument("extension degree must be at least 1");
    return ipow(L.q(), n) + 1 - power_sum(L, n);
}

mpz_class group_order(const LPolynomial& L) {
    mpz_class s = 0;
    for (const auto& c : L.coeffs()) s += c;
    if (s <= 0) throw InvariantViolation("L(1) = " + s.get_str() + " is not a group order");
    return s;
}

mpz_class group_order_ext(const LPolynomial& L, unsigned n) {
    if (n == 0) throw std::invalid_argument("extension degree must be at least 1");
    const auto roots = static_cast<unsigned>(2 * L.dim());
    if (roots == 0) return 1;
    const auto p = power_sums_of(L, n * roots);
    std::vector<mpz_class> big;
    for (unsigned m = 1; m <= roots; ++m) big.push_back(p[n * m - 1]);
    std::vector<mpz_class> e;
    if (!newton_elementary(big, e)) throw InvariantViolation("non-exact Newton step in group_order_ext");
    mpz_class s = 0;
    for (std::size_t m = 0; m < e.size(); ++m) s += m % 2 == 0 ? e[m] : mpz_class(-e[m]);
    if (s <= 0) throw InvariantViolation("order over the extension is not positive");
    return s;
}

LPolynomial prym_l(const LPolynomial& ly, const LPolynomial& lx) {
    if (ly.q() != lx.q()) throw NotSubLPolynomial("L-polynomials over different fields");
    if (ly.dim() < lx.dim()) throw NotSubLPolynomial("divisor has larger degree");
    const auto& a = ly.coeffs();
    const auto& b = lx.coeffs();
    // Power-series division; b[0] = 1 keeps every step integral.
    std::vector<mpz_class> quo(a.size() - b.size() + 1, 0);
    for (std::size_t i = 0; i < quo.size(); ++i) {
        mpz_class acc = a[i];
        for (std::size_t j = 1; j < b.size() && j <= i; ++j) acc -= b[j] * quo[i - j];
        quo[i] = acc;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_class acc = 0;
        for (std::size_t j = 0; j < b.size() && j <= i; ++j) {
            if (i - j < quo.size()) acc += b[j] * quo[i - j];
        }
        if (acc != a[i]) {
            throw NotSubLPolynomial("L_X = " + lx.to_string() + " does not divide L_Y = " + ly.to_string());
        }
    }
    try {
        return LPolynomial(ly.q(), std::move(quo));
    } catch (const InvariantViolation& e) {
        throw NotSubLPolynomial(std::string("quotient is not an L-polynomial: ") + e.what());
    }
}

mpz_class prym_order(const LPolynomial& lpr) { return group_order(lpr); }

mpz_class prym_order(const LPolynomial& lpr, const LPolynomial& ly, const LPolynomial& lx) {
    const mpz_class pr = group_order(lpr);
    const mpz_class jy = group_order(ly), jx = group_order(lx);
    if (jx * pr != jy) {
        throw InvariantViolation("#Pr * #J_X = " + mpz_class(jx * pr).get_str() + " but #J_Y = " + jy.get_str());
    }
    return pr;
}

mpz_class trace_difference(const LPolynomial& lpr) { return lpr.dim() == 0 ? mpz_class(0) : lpr[1]; }

bool within_weil_interval(const LPolynomial& L) {
    const QuadraticSurd rq = QuadraticSurd::sqrt_of(L.q());
    const QuadraticSurd one(L.q(), 1);
    const QuadraticSurd order(L.q(), mpq_class(group_order(L)));
    const long twice = 2L * L.dim();
    return (order - (rq - one).pow(twice)).sign() >= 0 && ((rq + one).pow(twice) - order).sign() >= 0;
}

std::vector<std::complex<long double>> reciprocal_roots(const LPolynomial& L) {
    using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index n = 2 * L.dim();
    if (n == 0) return {};
    // Companion matrix of x^n + c_1 x^{n-1} + ... + c_n.
    Matrix companion = Matrix::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1;
    for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -to_ld(L[static_cast<std::size_t>(n - i)]);
    Eigen::EigenSolver<Matrix> solver(companion, false);
    std::vector<std::complex<long double>> roots;
    for (Eigen::Index i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
    return roots;
}

std::vector<long double> frobenius_angles(const LPolynomial& L) {
    std::vector<long double> args;
    for (const auto& w : reciprocal_roots(L)) args.push_back(std::abs(std::arg(w)));
    std::sort(args.begin(), args.end());
    std::vector<long double> theta;
    for (std::size_t i = 0; i + 1 < args.size(); i += 2) theta.push_back((args[i] + args[i + 1]) / 2);
    return theta;
}

long double root_modulus_deviation(const LPolynomial& L) {
    const long double rq = std::sqrt(to_ld(L.q()));
    long double worst = 0;
    for (const auto& w : reciprocal_roots(L)) worst = std::max(worst, std::abs(std::abs(w) / rq - 1));
    return worst;
}

long double weil_product_order(const LPolynomial& L, unsigned n) {
    const long double qn = std::pow(to_ld(L.q()), static_cast<long double>(n));
    long double prod = 1;
    for (long double theta : frobenius_angles(L)) prod *= qn + 1 - 2 * std::sqrt(qn) * std::cos(n * theta);
    return prod;
}

nlohmann::json to_json(const LPolynomial& L) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : L.coeffs()) coeffs.push_back(c.get_str());
    return {{"q", std::stoull(L.q().get_str())}, {"d", L.dim()}, {"coeffs", coeffs}};
}

LPolynomial lpoly_from_json(const nlohmann::json& j) {
    std::vector<mpz_class> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
    LPolynomial L(mpz_class(std::to_string(j.at("q").get<std::uint64_t>())), std::move(coeffs));
    if (L.dim() != j.at("d").get<int>()) throw InvariantViolation("declared d does not match the coefficients");
    return L;
}

}  // namespace prym
