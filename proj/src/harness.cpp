#include "prym/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "prym/polytope.hpp"

namespace prym {

VerifyDepth parse_verify_depth(std::string_view s) {
    if (s == "standard") return VerifyDepth::standard;
    if (s == "full") return VerifyDepth::full;
    throw std::invalid_argument("verify depth must be 'standard' or 'full', got '" + std::string(s) + "'");
}

namespace {

Certainty certain(bool ok) { return ok ? Certainty::holds : Certainty::violated; }

std::size_t count_violations(const std::vector<BoundCheck>& checks) {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(),
                                                  [](const BoundCheck& c) { return c.result != Certainty::holds; }));
}

unsigned count_depth(int dim, VerifyDepth verify) {
    return static_cast<unsigned>(verify == VerifyDepth::full ? 2 * dim : dim);
}

// Compares brute-force counts beyond the fitted range with counts_from_l.
void verify_counts(const std::string& label, const LPolynomial& L, const PointCountSeries& counts,
                   std::vector<BoundCheck>& checks) {
    for (std::size_t n = static_cast<std::size_t>(L.dim()) + 1; n <= counts.counts.size(); ++n) {
        const bool ok = counts_from_l(L, static_cast<unsigned>(n)) == mpz_class(counts.counts[n - 1]);
        checks.push_back({label + ": N_" + std::to_string(n) + " brute force = from L", certain(ok)});
    }
}

struct FittedCurve {
    PointCountSeries counts;
    LPolynomial l;
};

FittedCurve fit_curve(const HyperellipticCurve& c, const AnalyzeOptions& options) {
    auto counts = count_curve_series(c, count_depth(c.genus(), options.verify), options.budget);
    auto l = l_from_counts(counts, c.genus());
    return {std::move(counts), std::move(l)};
}

void thm5_checks(const std::string& label, const mpz_class& q, int genus, const mpz_class& n1, const mpz_class& jac,
                 std::vector<BoundCheck>& checks) {
    if (genus < 1) return;
    const auto b = thm5_bounds(q, genus, n1);
    checks.push_back({label + ": thm5.lower <= #J", certify_le(b.lower, jac)});
    checks.push_back({label + ": #J <= thm5.upper", certify_le(jac, b.upper)});
}

constexpr int kHyperellipticGonality = 2;
constexpr long double kWeilProductTolerance = 1e-9L;

}  // namespace

std::size_t CurveAnalysis::violations() const { return count_violations(checks); }
std::size_t CoverAnalysis::violations() const { return count_violations(checks); }

CoverAnalysis analyze_cover(const DoubleCover& cover, const AnalyzeOptions& options) {
    const int g = cover.genus_x();
    const int gy = cover.genus_y();
    const mpz_class q(cover.field()->order());

    auto counts_x = count_curve_series(cover.base(), count_depth(g, options.verify), options.budget);
    auto counts_y = count_cover_series(cover, count_depth(gy, options.verify), options.budget);
    auto lx = l_from_counts(counts_x, g);
    auto ly = l_from_counts(counts_y, gy);
    auto lpr = prym_l(ly, lx);

    const auto first = fit_curve(cover.first_quotient(), options);
    const auto second = fit_curve(cover.second_quotient(), options);

    const mpz_class jx = group_order(lx), jy = group_order(ly);
    const mpz_class prym = prym_order(lpr, ly, lx);
    const mpz_class nx(counts_x.counts[0]), ny(counts_y.counts[0]);

    std::optional<BoundsReport> report;
    if (g >= 2) report = build_report(CoverStats::make(q, g, nx, ny, kHyperellipticGonality), prym, jx);

    std::vector<BoundCheck> checks;
    checks.push_back({"L_X divides L_Y", Certainty::holds});
    checks.push_back({"deg L_Pr = 2(g-1)", certain(lpr.dim() == g - 1)});
    checks.push_back({"L_Pr functional equation", certain(satisfies_functional_equation(q, lpr.coeffs()))});
    checks.push_back({"c1(L_Pr) = NY - NX", certain(trace_difference(lpr) == ny - nx)});
    checks.push_back({"#Pr * #J_X = #J_Y", certain(prym * jx == jy)});
    checks.push_back({"L_Pr = L(u^2=f1) * L(v^2=f2)", certain(lpr == first.l * second.l)});
    checks.push_back({"#J_X in Weil interval", certain(within_weil_interval(lx))});
    checks.push_back({"#J_Y in Weil interval", certain(within_weil_interval(ly))});
    checks.push_back({"#Pr in Weil interval", certain(within_weil_interval(lpr))});
    if (options.verify == VerifyDepth::full) {
        verify_counts("X", lx, counts_x, checks);
        verify_counts("Y", ly, counts_y, checks);
        verify_counts("u^2=f1", first.l, first.counts, checks);
        verify_counts("v^2=f2", second.l, second.counts, checks);
    }
    thm5_checks("u^2=f1", q, cover.first_quotient().genus(), mpz_class(first.counts.counts.empty() ? 0 : first.counts.counts[0]),
                group_order(first.l), checks);
    thm5_checks("v^2=f2", q, cover.second_quotient().genus(),
                mpz_class(second.counts.counts.empty() ? 0 : second.counts.counts[0]), group_order(second.l), checks);

    std::optional<ExtensionCheck> extension;
    if (options.extension > 0) {
        ExtensionCheck ext;
        ext.n = options.extension;
        ext.exact = group_order_ext(lpr, ext.n);
        ext.product = weil_product_order(lpr, ext.n);
        const long double exact_ld = std::stold(ext.exact.get_str());
        ext.relative_error = std::abs(ext.product - exact_ld) / exact_ld;
        checks.push_back({"#Pr(F_q^" + std::to_string(ext.n) + ") matches the Frobenius-angle product",
                          certain(ext.relative_error <= kWeilProductTolerance)});
        extension = ext;
    }
    if (report) {
        for (const auto& c : report->checks) checks.push_back(c);
    } else {
        checks.push_back({"degenerate cover: #Pr = 1", certain(prym == 1)});
    }

    const long double deviation = std::max(root_modulus_deviation(lx), root_modulus_deviation(ly));
    return CoverAnalysis{
        cover.field()->name(),
        cover.f1(),
        cover.f2(),
        g,
        gy,
        std::move(counts_x),
        std::move(counts_y),
        std::move(lx),
        std::move(ly),
        std::move(lpr),
        first.l,
        second.l,
        jx,
        jy,
        prym,
        std::move(report),
        std::move(checks),
        extension,
        deviation,
    };
}

CurveAnalysis analyze_curve(const HyperellipticCurve& curve, const AnalyzeOptions& options) {
    const mpz_class q(curve.field()->order());
    auto fitted = fit_curve(curve, options);
    const mpz_class jac = group_order(fitted.l);
    const int g = curve.genus();
    const mpz_class n1(fitted.counts.counts.empty() ? q + 1 : mpz_class(fitted.counts.counts[0]));

    std::vector<BoundCheck> checks;
    std::optional<JacobianBounds> thm5;
    std::optional<LmdBounds> lmd;
    if (g >= 1) {
        thm5 = thm5_bounds(q, g, n1);
        lmd = lmd_bounds(q, g, n1, kHyperellipticGonality);
        checks.push_back({"thm5.lower <= #J_X", certify_le(thm5->lower, jac)});
        checks.push_back({"#J_X <= thm5.upper", certify_le(jac, thm5->upper)});
    }
    auto weil = weil_interval(q, g);
    checks.push_back({"weil.lower <= #J_X", certify_le(weil.lower, jac)});
    checks.push_back({"#J_X <= weil.upper", certify_le(jac, weil.upper)});
    if (options.verify == VerifyDepth::full) verify_counts("X", fitted.l, fitted.counts, checks);

    return CurveAnalysis{
        curve.field()->name(), curve.f(), g, std::move(fitted.counts), std::move(fitted.l), jac, std::move(thm5),
        std::move(weil),       std::move(lmd), std::move(checks),
    };
}

namespace {

nlohmann::json counts_json(const PointCountSeries& s) { return s.counts; }

nlohmann::json checks_json(const std::vector<BoundCheck>& checks) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : checks) out.push_back({{"check", c.name}, {"result", certainty_name(c.result)}});
    return out;
}

nlohmann::json interval_json(const BoundInterval& b) {
    nlohmann::json j{{"lo", b.enclosure().lo_string(20)}, {"hi", b.enclosure().hi_string(20)}};
    if (b.exact()) j["exact"] = b.exact()->to_string();
    return j;
}

}  // namespace

nlohmann::json to_json(const CoverAnalysis& a) {
    nlohmann::json j;
    j["field"] = a.field;
    j["f1"] = format_poly(a.f1);
    j["f2"] = format_poly(a.f2);
    j["genus_x"] = a.genus_x;
    j["genus_y"] = a.genus_y;
    j["dim_prym"] = a.lpr.dim();
    j["counts_x"] = counts_json(a.counts_x);
    j["counts_y"] = counts_json(a.counts_y);
    j["L_X"] = to_json(a.lx);
    j["L_Y"] = to_json(a.ly);
    j["L_Pr"] = to_json(a.lpr);
    j["L_f1"] = to_json(a.l_first);
    j["L_f2"] = to_json(a.l_second);
    j["jac_x"] = a.jx.get_str();
    j["jac_y"] = a.jy.get_str();
    j["prym_order"] = a.prym.get_str();
    if (a.report) j["bounds"] = to_json(*a.report);
    else j["degenerate"] = true;
    j["checks"] = checks_json(a.checks);
    j["violations"] = a.violations();
    j["root_modulus_deviation"] = static_cast<double>(a.root_deviation);
    if (a.extension) {
        j["extension"] = {{"n", a.extension->n},
                          {"exact", a.extension->exact.get_str()},
                          {"angle_product", static_cast<double>(a.extension->product)},
                          {"relative_error", static_cast<double>(a.extension->relative_error)}};
    }
    return j;
}

nlohmann::json to_json(const CurveAnalysis& a) {
    nlohmann::json j;
    j["field"] = a.field;
    j["f"] = format_poly(a.f);
    j["genus"] = a.genus;
    j["counts"] = counts_json(a.counts);
    j["L"] = to_json(a.l);
    j["jac_order"] = a.jac_order.get_str();
    if (a.thm5) {
        j["thm5_lower"] = interval_json(a.thm5->lower);
        j["thm5_upper"] = interval_json(a.thm5->upper);
        j["thm5_delta"] = a.thm5->delta;
    }
    j["weil_lower"] = interval_json(a.weil.lower);
    j["weil_upper"] = interval_json(a.weil.upper);
    if (a.lmd) {
        j["lmd_lower"] = interval_json(a.lmd->lower);
        if (a.lmd->upper) j["lmd_upper"] = interval_json(*a.lmd->upper);
    }
    j["checks"] = checks_json(a.checks);
    j["violations"] = a.violations();
    return j;
}

namespace {

std::string join_counts(const PointCountSeries& s) {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.counts.size(); ++i) os << (i ? ", " : "") << s.counts[i];
    return os.str();
}

std::string range(const BoundInterval& lo, const BoundInterval& hi) {
    return "[" + lo.enclosure().lo_string(12) + ", " + hi.enclosure().hi_string(12) + "]";
}

void format_checks(std::ostringstream& os, const std::vector<BoundCheck>& checks) {
    os << "checks:\n";
    for (const auto& c : checks) os << "  [" << certainty_name(c.result) << "] " << c.name << '\n';
}

}  // namespace

std::string format_report(const CoverAnalysis& a) {
    std::ostringstream os;
    os << "field F_" << a.field << "  f1 = " << format_poly(a.f1) << "  f2 = " << format_poly(a.f2) << '\n'
       << "genus X = " << a.genus_x << ", genus Y = " << a.genus_y << ", dim Pr = " << a.lpr.dim() << '\n'
       << "N_n(X): " << join_counts(a.counts_x) << '\n'
       << "N_n(Y): " << join_counts(a.counts_y) << '\n'
       << "L_X  = " << a.lx.to_string() << '\n'
       << "L_Y  = " << a.ly.to_string() << '\n'
       << "L_Pr = " << a.lpr.to_string() << '\n'
       << "#J_X = " << a.jx << ", #J_Y = " << a.jy << ", #Pr = " << a.prym << '\n'
       << "D = NY - NX = " << a.counts_y.counts.at(0) - static_cast<long long>(a.counts_x.counts.at(0)) << '\n';
    if (a.report) {
        const auto& r = *a.report;
        os << "delta = " << r.delta << '\n'
           << "Prym bounds from D:   " << range(r.thm2_lower, r.thm2_upper) << '\n';
        if (r.thm2_gonality) {
            os << "gonality bounds, d=2: " << range(r.thm2_gonality->lower, r.thm2_gonality->upper) << '\n';
        }
        os << "Weil for Pr:          " << range(r.weil.lower, r.weil.upper) << '\n'
           << "J_X bounds from NX:   " << range(r.thm5.lower, r.thm5.upper) << '\n'
           << "Weil for J_X:         " << range(r.jac_weil.lower, r.jac_weil.upper) << '\n'
           << "LMD lower:            " << r.lmd.lower.enclosure().lo_string(12) << '\n';
        if (r.lmd.upper) os << "LMD upper:            " << r.lmd.upper->enclosure().hi_string(12) << '\n';
        os << "tightness thm2 upper/lower = " << static_cast<double>(r.tightness) << '\n';
    } else {
        os << "genus 1: the Prym variety is a point, bounds not evaluated\n";
    }
    if (a.extension) {
        os << "#Pr(F_q^" << a.extension->n << ") = " << a.extension->exact << " (angle product "
           << static_cast<double>(a.extension->product) << ", rel. error "
           << static_cast<double>(a.extension->relative_error) << ")\n";
    }
    format_checks(os, a.checks);
    os << "violations: " << a.violations() << '\n';
    if (!a.report) return os.str();
    os << "Weil containment of the Prym bounds:\n";
    for (const auto& c : a.report->dominance) os << "  [" << certainty_name(c.result) << "] " << c.name << '\n';
    return os.str();
}

std::string format_report(const CurveAnalysis& a) {
    std::ostringstream os;
    os << "field F_" << a.field << "  f = " << format_poly(a.f) << "  genus = " << a.genus << '\n'
       << "N_n: " << join_counts(a.counts) << '\n'
       << "L = " << a.l.to_string() << '\n'
       << "#J = " << a.jac_order << '\n';
    if (a.thm5) os << "bounds from NX: " << range(a.thm5->lower, a.thm5->upper) << "  (delta " << a.thm5->delta << ")\n";
    os << "Weil:           " << range(a.weil.lower, a.weil.upper) << '\n';
    if (a.lmd) {
        os << "LMD lower:      " << a.lmd->lower.enclosure().lo_string(12) << '\n';
        if (a.lmd->upper) os << "LMD upper:      " << a.lmd->upper->enclosure().hi_string(12) << '\n';
    }
    format_checks(os, a.checks);
    os << "violations: " << a.violations() << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// Monic squarefree polynomials of degree d, lexicographic in (c_0, ..., c_{d-1}).
std::vector<Poly> monic_squarefree(const FieldPtr& field, int d) {
    const std::uint64_t q = field->order();
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    std::vector<Poly> out;
    std::vector<std::uint64_t> cs(static_cast<std::size_t>(d) + 1, 0);
    cs[static_cast<std::size_t>(d)] = 1;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        for (int i = d - 1; i >= 0; --i) {
            cs[static_cast<std::size_t>(i)] = rest % q;
            rest /= q;
        }
        Poly f = Poly::from_indices(field, cs);
        if (is_squarefree(f)) out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

std::vector<CoverCandidate> enumerate_covers(const FieldPtr& field, int deg_f1, int deg_f2) {
    if (deg_f1 < 2 || deg_f2 < 2 || deg_f1 % 2 || deg_f2 % 2) {
        throw std::invalid_argument("cover degrees must be even and at least 2");
    }
    const auto first = monic_squarefree(field, deg_f1);
    const auto second = deg_f2 == deg_f1 ? first : monic_squarefree(field, deg_f2);
    std::vector<CoverCandidate> out;
    for (const auto& f1 : first) {
        for (const auto& f2 : second) {
            if (gcd(f1, f2).degree() != 0) continue;
            out.push_back({out.size(), f1, f2});
        }
    }
    return out;
}

std::vector<CoverCandidate> select_covers(std::vector<CoverCandidate> all, std::size_t max_covers, std::uint64_t seed) {
    if (all.size() <= max_covers) return all;
    std::mt19937_64 rng(seed);
    // Unbiased draw in [0, bound] by rejection; mt19937_64 output is fixed by the standard.
    auto draw = [&rng](std::uint64_t bound) {
        const std::uint64_t span = bound + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t x;
        do x = rng();
        while (x >= limit);
        return x % span;
    };
    for (std::size_t i = all.size() - 1; i > 0; --i) std::swap(all[i], all[draw(i)]);
    all.resize(max_covers);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    return all;
}

namespace {

void accumulate(SweepSummary& s, const CoverAnalysis& a) {
    ++s.covers_processed;
    s.violations += a.violations();
    if (!a.report) return;
    const auto& r = *a.report;
    const long double t = r.tightness;
    s.tightness_min = s.covers_processed == 1 ? t : std::min(s.tightness_min, t);
    s.tightness_max = s.covers_processed == 1 ? t : std::max(s.tightness_max, t);
    s.tightness_mean += (t - s.tightness_mean) / static_cast<long double>(s.covers_processed);

    const mpz_class abs_d = abs(r.stats.D());
    auto& bucket = s.tightness_by_abs_d[abs_d.get_si()];
    ++bucket.count;
    bucket.mean += (t - bucket.mean) / static_cast<long double>(bucket.count);

    if (compare(r.thm2_lower, r.weil.lower).value_or(0) > 0) ++s.thm2_beats_weil_lower;
    if (compare(r.thm2_upper, r.weil.upper).value_or(0) < 0) ++s.thm2_beats_weil_upper;
    if (r.dominance.at(0).result != Certainty::holds) ++s.weil_dominance_lower_failures;
    if (r.dominance.at(1).result != Certainty::holds) ++s.weil_dominance_upper_failures;

    const auto lower_cmp = compare(r.thm5.lower, r.lmd.lower);
    if (!lower_cmp || *lower_cmp == 0) ++s.lower_ties;
    else if (*lower_cmp > 0) ++s.thm5_lower_wins;
    else ++s.lmd_lower_wins;
    if (r.lmd.upper) {
        const auto upper_cmp = compare(r.thm5.upper, *r.lmd.upper);
        if (!upper_cmp || *upper_cmp == 0) ++s.upper_ties;
        else if (*upper_cmp < 0) ++s.thm5_upper_wins;
        else ++s.lmd_upper_wins;
    }
}

}  // namespace

SweepResult sweep(const SweepConfig& config, const SweepLog& log) {
    if (config.max_covers < 1) throw std::invalid_argument("max_covers must be at least 1");
    SweepResult result;
    const AnalyzeOptions options{config.verify, config.budget, 0};
    for (const auto& field_name : config.fields) {
        const FieldPtr field = parse_field(field_name);
        const auto chosen = select_covers(enumerate_covers(field, config.deg_f1, config.deg_f2), config.max_covers,
                                          config.seed);
        if (log) log("F_" + field->name() + ": " + std::to_string(chosen.size()) + " covers selected");

        std::vector<std::optional<CoverAnalysis>> rows(chosen.size());
        std::vector<std::optional<SweepFailure>> failures(chosen.size());
        std::vector<std::optional<std::string>> skipped(chosen.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < chosen.size(); i = next++) {
                const auto& c = chosen[i];
                try {
                    rows[i] = analyze_cover(validate_cover(c.f1, c.f2), options);
                } catch (const BudgetExceeded& e) {
                    skipped[i] = "F_" + field->name() + " f1=" + format_poly(c.f1) + " f2=" + format_poly(c.f2) +
                                 ": " + e.what();
                } catch (const std::exception& e) {
                    failures[i] = SweepFailure{field->name(), format_poly(c.f1), format_poly(c.f2), e.what()};
                }
            }
        };
        const unsigned jobs = std::max(1u, config.jobs);
        std::vector<std::thread> pool;
        for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();

        for (std::size_t i = 0; i < chosen.size(); ++i) {
            if (rows[i]) {
                accumulate(result.summary, *rows[i]);
                result.rows.push_back(std::move(*rows[i]));
            }
            if (failures[i]) {
                if (log) log("failure: " + failures[i]->message);
                result.failures.push_back(std::move(*failures[i]));
            }
            if (skipped[i]) {
                if (log) log("skipped: " + *skipped[i]);
                ++result.summary.covers_skipped;
                result.skipped.push_back(std::move(*skipped[i]));
            }
        }
    }
    result.summary.violations += result.failures.size();
    return result;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = csv_header() + "\n";
    for (const auto& row : result.rows) {
        if (row.report) out += to_csv_row(*row.report) + "\n";
    }
    return out;
}

nlohmann::json to_json(const SweepSummary& s) {
    nlohmann::json buckets = nlohmann::json::array();
    for (const auto& [d, b] : s.tightness_by_abs_d) {
        buckets.push_back({{"abs_D", d}, {"count", b.count}, {"mean_tightness", static_cast<double>(b.mean)}});
    }
    return {
        {"covers_processed", s.covers_processed},
        {"covers_skipped", s.covers_skipped},
        {"violations", s.violations},
        {"tightness_min", static_cast<double>(s.tightness_min)},
        {"tightness_mean", static_cast<double>(s.tightness_mean)},
        {"tightness_max", static_cast<double>(s.tightness_max)},
        {"thm2_beats_weil_lower", s.thm2_beats_weil_lower},
        {"thm2_beats_weil_upper", s.thm2_beats_weil_upper},
        {"weil_dominance_failures", {{"lower", s.weil_dominance_lower_failures}, {"upper", s.weil_dominance_upper_failures}}},
        {"thm5_vs_lmd_lower", {{"thm5", s.thm5_lower_wins}, {"lmd", s.lmd_lower_wins}, {"tie", s.lower_ties}}},
        {"thm5_vs_lmd_upper", {{"thm5", s.thm5_upper_wins}, {"lmd", s.lmd_upper_wins}, {"tie", s.upper_ties}}},
        {"tightness_by_abs_D", buckets},
    };
}

nlohmann::json sweep_json(const SweepResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        nlohmann::json j = row.report ? to_json(*row.report) : nlohmann::json{{"degenerate", true}};
        j["field"] = row.field;
        j["f1"] = format_poly(row.f1);
        j["f2"] = format_poly(row.f2);
        j["L_Pr"] = to_json(row.lpr);
        rows.push_back(std::move(j));
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : result.failures) {
        failures.push_back({{"field", f.field}, {"f1", f.f1}, {"f2", f.f2}, {"message", f.message}});
    }
    return {{"rows", rows}, {"failures", failures}, {"skipped", result.skipped}, {"summary", to_json(result.summary)}};
}

// ---------------------------------------------------------------------------

SweepConfig selftest_sweep_config() {
    SweepConfig c;
    c.fields = {"3"};
    c.deg_f1 = 4;
    c.deg_f2 = 2;
    c.max_covers = 10;
    c.seed = 0;
    return c;
}

std::string default_golden_path() {
#ifdef PRYM_GOLDEN_DIR
    return std::string(PRYM_GOLDEN_DIR) + "/selftest_p3.csv";
#else
    return "tests/golden/selftest_p3.csv";
#endif
}

namespace {

using Example = std::pair<const char*, std::function<bool()>>;

std::vector<Example> example_corpus() {
    const mpz_class q5(5), q9(9);
    return {
        {"F_5: 3 * 4 = 2",
         [] {
             auto f = FieldDesc::prime(5);
             return FieldElement(f, 3) * FieldElement(f, 4) == FieldElement(f, 2);
         }},
        {"F_9 = F_3[t]/(t^2+1): t * t = 2",
         [] {
             auto f = FieldDesc::with_modulus(3, {1, 0, 1});
             const FieldElement t(f, std::vector<Residue>{0, 1});
             return t * t == FieldElement(f, 2);
         }},
        {"F_5: 2^-1 = 3", [] { return FieldElement(FieldDesc::prime(5), 2).inverse() == FieldElement(FieldDesc::prime(5), 3); }},
        {"F_5: 2^4 = 1", [] { return pow(FieldElement(FieldDesc::prime(5), 2), 4).is_one(); }},
        {"F_5: 4 is a square", [] { return is_square(FieldElement(FieldDesc::prime(5), 4)) == SquareClass::square; }},
        {"F_3: 0 is zero", [] { return is_square(FieldElement(FieldDesc::prime(3), 0)) == SquareClass::zero; }},
        {"x^2 + 1 irreducible over F_3",
         [] { return is_irreducible(Poly::from_indices(FieldDesc::prime(3), {1, 0, 1})); }},
        {"x^2 - 1 reducible over F_3",
         [] { return !is_irreducible(Poly::from_indices(FieldDesc::prime(3), {2, 0, 1})); }},
        {"find_irreducible(3, 1) = x",
         [] { return find_irreducible(3, 1) == Poly::monomial(FieldDesc::prime(3), 1); }},
        {"genus-0 curve has q + 1 points",
         [] {
             auto f = FieldDesc::prime(3);
             return count_curve_points(HyperellipticCurve(Poly::from_indices(f, {2, 0, 1})), 1) == 4;
         }},
        {"cover f1 = x^4+x+1, f2 = x^2+2 over F_5 has g = 2, g_Y = 3",
         [] {
             auto f = FieldDesc::prime(5);
             auto c = validate_cover(Poly::from_indices(f, {1, 1, 0, 0, 1}), Poly::from_indices(f, {2, 0, 1}));
             return c.genus_x() == 2 && c.genus_y() == 3;
         }},
        {"L from N_1 = q + 1 in dimension 1 is 1 + qT^2",
         [q5] {
             const std::vector<std::uint64_t> n{6};
             return l_from_counts(n, q5, 1) == LPolynomial(q5, {1, 0, 5});
         }},
        {"counts_from_l(1 + qT^2, 2) = (q + 1)^2", [q5] { return counts_from_l(LPolynomial(q5, {1, 0, 5}), 2) == 36; }},
        {"group_order(1 + qT^2) = q + 1", [q5] { return group_order(LPolynomial(q5, {1, 0, 5})) == 6; }},
        {"group_order_ext(1 + qT^2, 2) = (q + 1)^2", [q5] { return group_order_ext(LPolynomial(q5, {1, 0, 5}), 2) == 36; }},
        {"prym_l(L, L) = 1", [q5] {
             const LPolynomial L(q5, {1, 2, 5});
             return prym_l(L, L) == LPolynomial::one(q5);
         }},
        {"delta_flag(0, 5) = 0", [] { return delta_flag(mpz_class(0), mpz_class(5)) == 0; }},
        {"delta_flag(12, 9) = 0", [q9] { return delta_flag(mpz_class(12), q9) == 0; }},
        {"delta_flag(4, 5) = 1", [q5] { return delta_flag(mpz_class(4), q5) == 1; }},
        {"thm2_upper(q=9, g=2, D=6) = 16", [q9] { return thm2_upper(q9, 2, mpz_class(6)).exact_integer() == mpz_class(16); }},
        {"thm2_upper(q=3, g=3, D=2) = 25", [] { return thm2_upper(mpz_class(3), 3, mpz_class(2)).exact_integer() == mpz_class(25); }},
        {"thm2_lower(D=0, g=2) = q - 1", [q5] { return thm2_lower(q5, 2, mpz_class(0)).exact_integer() == mpz_class(4); }},
        {"weil_interval(9, 1) = (4, 16)",
         [q9] {
             const auto w = weil_interval(q9, 1);
             return w.lower.exact_integer() == mpz_class(4) && w.upper.exact_integer() == mpz_class(16);
         }},
        {"lmd lower vanishes for g = 1", [q5] { return lmd_bounds(q5, 1, mpz_class(6)).lower.exact_integer() == mpz_class(0); }},
        {"lemma3_bound(a=2, gamma=2, b=0) = 3",
         [] { return std::abs(lemma3_bound(PolytopeProblem<double>::make(2, 2, 0)) - 3) < 1e-12; }},
        {"lemma4_max(a=2, gamma=3, b=0) = 8",
         [] { return std::abs(lemma4_max(PolytopeProblem<double>::make(2, 3, 0)).first - 8) < 1e-12; }},
        {"exact_min(a=2, gamma=2, b=0) = 3",
         [] { return std::abs(exact_min(PolytopeProblem<double>::make(2, 2, 0)).value - 3) < 1e-12; }},
    };
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    return lines;
}

}  // namespace

SelftestResult selftest(const std::string& golden_path) {
    SelftestResult result;
    for (const auto& [name, check] : example_corpus()) {
        bool ok = false;
        try {
            ok = check();
        } catch (const std::exception& e) {
            result.messages.push_back(std::string("example '") + name + "' threw: " + e.what());
        }
        if (!ok) {
            result.passed = false;
            result.messages.push_back(std::string("FAIL example: ") + name);
        }
    }

    const auto sweep_result = sweep(selftest_sweep_config());
    if (!sweep_result.ok()) {
        result.passed = false;
        result.messages.push_back("micro-sweep reported " + std::to_string(sweep_result.summary.violations) +
                                  " violations");
    }
    std::ifstream in(golden_path);
    if (!in) {
        result.passed = false;
        result.messages.push_back("cannot open golden file " + golden_path);
        return result;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const auto expected = split_lines(buf.str());
    const auto actual = split_lines(sweep_csv(sweep_result));
    const std::size_t rows = std::max(expected.size(), actual.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string e = i < expected.size() ? expected[i] : "<missing>";
        const std::string a = i < actual.size() ? actual[i] : "<missing>";
        if (e != a) {
            result.passed = false;
            result.messages.push_back("golden mismatch at row " + std::to_string(i) + "\n  expected: " + e +
                                      "\n  actual:   " + a);
        }
    }
    if (result.passed) {
        result.messages.push_back("selftest passed: " + std::to_string(example_corpus().size()) + " examples, " +
                                  std::to_string(actual.size() - 1) + " golden rows");
    }
    return result;
}

// ---------------------------------------------------------------------------

std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream is{std::string(text)};
    for (std::string line; std::getline(is, line);) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        for (std::string tok; tokens >> tok;) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got '" + tok + "'");
            out[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
    }
    return out;
}

CoverInput parse_cover_input(std::string_view text) {
    const auto kv = parse_key_values(text);
    for (const char* key : {"p", "f1", "f2"}) {
        if (!kv.count(key)) throw std::invalid_argument(std::string("cover input is missing '") + key + "'");
    }
    auto field = parse_field(kv.at("p"));
    auto f1 = parse_poly(field, kv.at("f1"));
    auto f2 = parse_poly(field, kv.at("f2"));
    return {std::move(field), std::move(f1), std::move(f2)};
}

}  // namespace prym
