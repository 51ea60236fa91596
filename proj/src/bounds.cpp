#include "prym/bounds.hpp"

#include <sstream>
#include <stdexcept>

namespace prym {

std::optional<mpz_class> BoundInterval::exact_integer() const {
    if (!exact_ || !exact_->is_integer()) return std::nullopt;
    return exact_->rational_part().get_num();
}

std::optional<int> compare(const BoundInterval& a, const BoundInterval& b) {
    if (a.exact() && b.exact() && a.exact()->radicand() == b.exact()->radicand()) {
        return (*a.exact() - *b.exact()).sign();
    }
    if (mpfr_less_p(a.hi(), b.lo())) return -1;
    if (mpfr_greater_p(a.lo(), b.hi())) return 1;
    if (a.enclosure().is_point() && b.enclosure().is_point()) return 0;
    return std::nullopt;
}

std::optional<int> compare(const BoundInterval& a, const mpz_class& b) {
    if (a.exact()) return (*a.exact() - a.exact()->rational(mpq_class(b))).sign();
    if (mpfr_cmp_z(a.hi(), b.get_mpz_t()) < 0) return -1;
    if (mpfr_cmp_z(a.lo(), b.get_mpz_t()) > 0) return 1;
    if (a.enclosure().is_point()) return 0;
    return std::nullopt;
}

namespace {

Certainty le_from_sign(std::optional<int> sign) {
    if (!sign) return Certainty::undecided;
    return *sign <= 0 ? Certainty::holds : Certainty::violated;
}

Certainty ge_from_sign(std::optional<int> sign) {
    if (!sign) return Certainty::undecided;
    return *sign >= 0 ? Certainty::holds : Certainty::violated;
}

void require_genus(int g, int min, const char* what) {
    if (g < min) {
        throw std::invalid_argument(std::string(what) + " needs genus >= " + std::to_string(min) + ", got " +
                                    std::to_string(g));
    }
}

// base^exponent * factor; exact when the exponent is an integer, otherwise
// evaluated in log space as exp(exponent log(base) + log(factor)).
BoundInterval power_times(const QuadraticSurd& base, const QuadraticSurd& exponent, const QuadraticSurd& factor) {
    if (exponent.is_integer()) {
        const mpz_class e = exponent.rational_part().get_num();
        if (!e.fits_slong_p()) throw std::overflow_error("exponent too large");
        return BoundInterval(base.pow(e.get_si()) * factor);
    }
    return BoundInterval(exp(exponent.enclose() * log(base.enclose()) + log(factor.enclose())));
}

// Exact test |x| <= bound * sqrt(q) for integers.
bool within_sqrt_bound(const mpz_class& x, const mpz_class& bound, const mpz_class& q) {
    return x * x <= bound * bound * q;
}

}  // namespace

Certainty certify_le(const BoundInterval& a, const BoundInterval& b) { return le_from_sign(compare(a, b)); }
Certainty certify_le(const BoundInterval& a, const mpz_class& b) { return le_from_sign(compare(a, b)); }
Certainty certify_le(const mpz_class& a, const BoundInterval& b) { return ge_from_sign(compare(b, a)); }

QuadraticSurd normalized_trace(const mpz_class& D, const mpz_class& q) {
    // D / (2 sqrt q) = (D / 2q) sqrt q
    return QuadraticSurd(q, 0, make_rational(D, 2 * q));
}

int delta_flag(const QuadraticSurd& t) { return t.is_integer() ? 0 : 1; }

int delta_flag(const mpz_class& D, const mpz_class& q) {
    if (D == 0) return 0;
    const auto s = exact_sqrt(q);
    if (!s) return 1;
    return mpz_divisible_p(D.get_mpz_t(), mpz_class(2 * *s).get_mpz_t()) ? 0 : 1;
}

BoundInterval trace_lower_bound(const mpz_class& q, int gamma, const QuadraticSurd& t) {
    const QuadraticSurd rq = QuadraticSurd::sqrt_of(q);
    const QuadraticSurd one(q, 1);
    const QuadraticSurd base = (rq + one) / (rq - one);
    const QuadraticSurd exponent = t - one.rational(2 * delta_flag(t));
    return power_times(base, exponent, one.rational(mpq_class(q - 1)).pow(gamma));
}

BoundInterval trace_upper_bound(const mpz_class& q, int gamma, const QuadraticSurd& t) {
    const QuadraticSurd one(q, 1);
    if (gamma == 0) return BoundInterval(one);
    const QuadraticSurd rq = QuadraticSurd::sqrt_of(q);
    const QuadraticSurd base = one.rational(mpq_class(q + 1)) + one.rational(2) * rq * t / one.rational(gamma);
    return BoundInterval(base.pow(gamma));
}

CoverStats CoverStats::make(const mpz_class& q, int g, const mpz_class& nx, const mpz_class& ny,
                            std::optional<int> gonality) {
    require_genus(g, 2, "a Prym bound");
    if (!within_sqrt_bound(ny - nx, 2 * (g - 1), q)) {
        throw std::invalid_argument("|NY - NX| = |" + mpz_class(ny - nx).get_str() + "| exceeds 2(g-1) sqrt q");
    }
    if (gonality && *gonality < 1) throw std::invalid_argument("gonality must be positive");
    return CoverStats{q, g, nx, ny, gonality};
}

BoundInterval thm2_lower(const mpz_class& q, int g, const mpz_class& D) {
    require_genus(g, 2, "thm2_lower");
    return trace_lower_bound(q, g - 1, normalized_trace(D, q));
}

BoundInterval thm2_lower(const CoverStats& s) { return thm2_lower(s.q, s.g, s.D()); }

BoundInterval thm2_upper(const mpz_class& q, int g, const mpz_class& D) {
    require_genus(g, 2, "thm2_upper");
    return trace_upper_bound(q, g - 1, normalized_trace(D, q));
}

BoundInterval thm2_upper(const CoverStats& s) { return thm2_upper(s.q, s.g, s.D()); }

BoundPair thm2_gonality(const mpz_class& q, int g, int d) {
    require_genus(g, 2, "thm2_gonality");
    if (d < 1) throw std::invalid_argument("gonality must be positive");
    const QuadraticSurd rq = QuadraticSurd::sqrt_of(q);
    const QuadraticSurd one(q, 1);
    const QuadraticSurd base = (rq - one) / (rq + one);
    // d (q+1) / (2 sqrt q) + 2 = d (q+1)/(2q) sqrt q + 2
    const QuadraticSurd exponent = QuadraticSurd(q, 2, make_rational(d * (q + 1), 2 * q));
    BoundInterval lower = power_times(base, exponent, one.rational(mpq_class(q - 1)).pow(g - 1));
    BoundInterval upper(exp(Interval(static_cast<long>(d))) * pow(Interval(mpz_class(q + 1)), g - 1L));
    return {std::move(lower), std::move(upper)};
}

BoundPair thm2_gonality(const CoverStats& s) {
    if (!s.gonality) throw std::invalid_argument("thm2_gonality needs a gonality");
    return thm2_gonality(s.q, s.g, *s.gonality);
}

BoundPair weil_interval(const mpz_class& q, int dim) {
    if (dim < 0) throw std::invalid_argument("dimension must be nonnegative");
    const QuadraticSurd rq = QuadraticSurd::sqrt_of(q);
    const QuadraticSurd one(q, 1);
    return {BoundInterval((rq - one).pow(2L * dim)), BoundInterval((rq + one).pow(2L * dim))};
}

JacobianBounds thm5_bounds(const mpz_class& q, int g, const mpz_class& nx) {
    require_genus(g, 1, "thm5_bounds");
    const mpz_class dev = nx - q - 1;
    if (!within_sqrt_bound(dev, 2 * g, q)) {
        throw std::invalid_argument("NX = " + nx.get_str() + " violates the Weil bound for genus " + std::to_string(g));
    }
    const QuadraticSurd t = normalized_trace(dev, q);
    return {trace_lower_bound(q, g, t), trace_upper_bound(q, g, t), delta_flag(t)};
}

LmdBounds lmd_bounds(const mpz_class& q, int g, const mpz_class& nx, std::optional<int> gonality) {
    require_genus(g, 1, "lmd_bounds");
    const QuadraticSurd rq = QuadraticSurd::sqrt_of(q);
    const QuadraticSurd one(q, 1);
    mpz_class qg1;
    mpz_pow_ui(qg1.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(g - 1));
    const QuadraticSurd lower = (rq - one).pow(2) * one.rational(make_rational(qg1 - 1, g)) *
                                one.rational(make_rational(nx + q - 1, q - 1));
    LmdBounds out{BoundInterval(lower), std::nullopt};
    if (gonality) {
        const Interval& e = euler_e();
        const Interval qi(q);
        out.upper = BoundInterval(e / qi * pow(Interval(2L * g) * sqrt(e), *gonality - 1L) * pow(qi, g));
    }
    return out;
}

std::size_t BoundsReport::violations() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.result != Certainty::holds;
    return n;
}

namespace {

long double ratio(const BoundInterval& num, const BoundInterval& den) {
    return (num.enclosure() / den.enclosure()).mid_ld();
}

}  // namespace

BoundsReport build_report(const CoverStats& s, const mpz_class& prym_order, const mpz_class& jac_order) {
    BoundsReport r{
        s,
        delta_flag(s.D(), s.q),
        prym_order,
        thm2_lower(s),
        thm2_upper(s),
        s.gonality ? std::optional<BoundPair>(thm2_gonality(s)) : std::nullopt,
        weil_interval(s.q, s.g - 1),
        jac_order,
        thm5_bounds(s.q, s.g, s.nx),
        weil_interval(s.q, s.g),
        lmd_bounds(s.q, s.g, s.nx, s.gonality),
        0,
        {},
        {
            {"weil.lower <= thm2.lower", certify_le(weil_interval(s.q, s.g - 1).lower, thm2_lower(s))},
            {"thm2.upper <= weil.upper", certify_le(thm2_upper(s), weil_interval(s.q, s.g - 1).upper)},
        },
    };
    r.tightness = ratio(r.thm2_upper, r.thm2_lower);
    auto& c = r.checks;
    c.push_back({"thm2.lower <= #Pr", certify_le(r.thm2_lower, prym_order)});
    c.push_back({"#Pr <= thm2.upper", certify_le(prym_order, r.thm2_upper)});
    if (r.thm2_gonality) {
        c.push_back({"thm2iii.lower <= #Pr", certify_le(r.thm2_gonality->lower, prym_order)});
        c.push_back({"#Pr <= thm2iii.upper", certify_le(prym_order, r.thm2_gonality->upper)});
    }
    c.push_back({"weil.lower <= #Pr", certify_le(r.weil.lower, prym_order)});
    c.push_back({"#Pr <= weil.upper", certify_le(prym_order, r.weil.upper)});
    c.push_back({"thm5.lower <= #J_X", certify_le(r.thm5.lower, jac_order)});
    c.push_back({"#J_X <= thm5.upper", certify_le(jac_order, r.thm5.upper)});
    c.push_back({"jac_weil.lower <= #J_X", certify_le(r.jac_weil.lower, jac_order)});
    c.push_back({"#J_X <= jac_weil.upper", certify_le(jac_order, r.jac_weil.upper)});
    return r;
}

std::vector<BoundCheck> weil_dominance(const mpz_class& q, int g, const QuadraticSurd& t) {
    require_genus(g, 2, "weil_dominance");
    const BoundPair weil = weil_interval(q, g - 1);
    const BoundInterval lower = trace_lower_bound(q, g - 1, t);
    const BoundInterval upper = trace_upper_bound(q, g - 1, t);
    return {
        {"weil.lower <= thm2.lower", certify_le(weil.lower, lower)},
        {"thm2.upper <= weil.upper", certify_le(upper, weil.upper)},
        {"thm2.lower <= thm2.upper", certify_le(lower, upper)},
    };
}

namespace {

constexpr int kCsvDigits = 15;

std::string opt_lo(const std::optional<BoundInterval>& b) { return b ? b->enclosure().lo_string(kCsvDigits) : ""; }
std::string opt_hi(const std::optional<BoundInterval>& b) { return b ? b->enclosure().hi_string(kCsvDigits) : ""; }

nlohmann::json bound_json(const BoundInterval& b) {
    nlohmann::json j{{"lo", b.enclosure().lo_string(20)}, {"hi", b.enclosure().hi_string(20)}};
    if (b.exact()) j["exact"] = b.exact()->to_string();
    return j;
}

}  // namespace

std::string csv_header() {
    return "q,g,NX,NY,D,delta,prym_order,thm2_lo,thm2_hi,weil_lo,weil_hi,thm2iii_lo,thm2iii_hi,"
           "jac_order,thm5_lo,thm5_hi,lmd_lo,lmd_hi";
}

std::string to_csv_row(const BoundsReport& r) {
    // Lower bounds are printed rounded down, upper bounds rounded up.
    std::ostringstream os;
    const auto& s = r.stats;
    std::optional<BoundInterval> iii_lo, iii_hi;
    if (r.thm2_gonality) {
        iii_lo = r.thm2_gonality->lower;
        iii_hi = r.thm2_gonality->upper;
    }
    os << s.q << ',' << s.g << ',' << s.nx << ',' << s.ny << ',' << s.D() << ',' << r.delta << ',' << r.prym_order
       << ',' << r.thm2_lower.enclosure().lo_string(kCsvDigits) << ',' << r.thm2_upper.enclosure().hi_string(kCsvDigits)
       << ',' << r.weil.lower.enclosure().lo_string(kCsvDigits) << ',' << r.weil.upper.enclosure().hi_string(kCsvDigits)
       << ',' << opt_lo(iii_lo) << ',' << opt_hi(iii_hi) << ',' << r.jac_order << ','
       << r.thm5.lower.enclosure().lo_string(kCsvDigits) << ',' << r.thm5.upper.enclosure().hi_string(kCsvDigits) << ','
       << r.lmd.lower.enclosure().lo_string(kCsvDigits) << ',' << opt_hi(r.lmd.upper);
    return os.str();
}

nlohmann::json to_json(const BoundsReport& r) {
    const auto& s = r.stats;
    nlohmann::json j;
    j["q"] = s.q.get_str();
    j["g"] = s.g;
    j["NX"] = s.nx.get_str();
    j["NY"] = s.ny.get_str();
    j["D"] = s.D().get_str();
    j["delta"] = r.delta;
    j["prym_order"] = r.prym_order.get_str();
    j["thm2_lower"] = bound_json(r.thm2_lower);
    j["thm2_upper"] = bound_json(r.thm2_upper);
    j["weil_lower"] = bound_json(r.weil.lower);
    j["weil_upper"] = bound_json(r.weil.upper);
    if (r.thm2_gonality) {
        j["thm2iii_lower"] = bound_json(r.thm2_gonality->lower);
        j["thm2iii_upper"] = bound_json(r.thm2_gonality->upper);
    }
    j["jac_order"] = r.jac_order.get_str();
    j["thm5_lower"] = bound_json(r.thm5.lower);
    j["thm5_upper"] = bound_json(r.thm5.upper);
    j["thm5_delta"] = r.thm5.delta;
    j["jac_weil_lower"] = bound_json(r.jac_weil.lower);
    j["jac_weil_upper"] = bound_json(r.jac_weil.upper);
    j["lmd_lower"] = bound_json(r.lmd.lower);
    if (r.lmd.upper) j["lmd_upper"] = bound_json(*r.lmd.upper);
    j["tightness"] = static_cast<double>(r.tightness);
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back({{"check", c.name}, {"result", certainty_name(c.result)}});
    j["checks"] = checks;
    j["violations"] = r.violations();
    nlohmann::json dominance = nlohmann::json::array();
    for (const auto& c : r.dominance) dominance.push_back({{"check", c.name}, {"result", certainty_name(c.result)}});
    j["weil_dominance"] = dominance;
    return j;
}

}  // namespace prym
