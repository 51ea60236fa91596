#pragma once

// End-to-end pipeline: count points -> L-polynomials -> Prym -> bounds, for
// single covers, single curves and seeded sweeps over cover families.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "prym/bounds.hpp"
#include "prym/curves.hpp"
#include "prym/lpoly.hpp"

namespace prym {

enum class VerifyDepth {
    standard,  ///< fit from N_1..N_d only
    full,      ///< also brute-force N_{d+1}..N_{2d} and compare with the fitted L
};

VerifyDepth parse_verify_depth(std::string_view s);

struct AnalyzeOptions {
    VerifyDepth verify = VerifyDepth::standard;
    std::uint64_t budget = kDefaultBudget;
    /// When nonzero, also evaluate the Prym order over F_{q^n} for n = extension.
    unsigned extension = 0;
};

/// Exact order over F_{q^n} next to the product over Frobenius angles.
struct ExtensionCheck {
    unsigned n = 0;
    mpz_class exact;
    long double product = 0;
    long double relative_error = 0;
};

struct CurveAnalysis {
    std::string field;
    Poly f;
    int genus = 0;
    PointCountSeries counts;
    LPolynomial l;
    mpz_class jac_order;
    std::optional<JacobianBounds> thm5;
    BoundPair weil;
    std::optional<LmdBounds> lmd;
    std::vector<BoundCheck> checks;

    std::size_t violations() const;
};

struct CoverAnalysis {
    std::string field;
    Poly f1;
    Poly f2;
    int genus_x = 0;
    int genus_y = 0;
    PointCountSeries counts_x;
    PointCountSeries counts_y;
    LPolynomial lx;
    LPolynomial ly;
    LPolynomial lpr;
    /// L-polynomials of u^2 = f1 and v^2 = f2.
    LPolynomial l_first;
    LPolynomial l_second;
    mpz_class jx;
    mpz_class jy;
    mpz_class prym;
    /// Absent for genus-1 covers, where the Prym variety is a point.
    std::optional<BoundsReport> report;
    /// Structural identities plus every bound check of `report`.
    std::vector<BoundCheck> checks;
    std::optional<ExtensionCheck> extension;
    long double root_deviation = 0;

    std::size_t violations() const;
};

/// Runs the full pipeline on one validated cover (relaxed genus-1 covers included). Pipeline inconsistencies
/// (non-dividing L-polynomials, inconsistent counts) propagate as exceptions.
CoverAnalysis analyze_cover(const DoubleCover& cover, const AnalyzeOptions& options = {});
/// Bounds from NX, Weil and Lachaud-Martin-Deschamps for one curve.
CurveAnalysis analyze_curve(const HyperellipticCurve& curve, const AnalyzeOptions& options = {});

nlohmann::json to_json(const CoverAnalysis& a);
nlohmann::json to_json(const CurveAnalysis& a);
std::string format_report(const CoverAnalysis& a);
std::string format_report(const CurveAnalysis& a);

// ---------------------------------------------------------------------------

struct CoverCandidate {
    std::uint64_t index = 0;  ///< position in the lexicographic enumeration of all valid pairs
    Poly f1;
    Poly f2;
};

/// All monic squarefree coprime pairs (f1, f2) of the given degrees,
/// lexicographic on the coefficient vectors (c_0 most significant) of f1, then f2.
std::vector<CoverCandidate> enumerate_covers(const FieldPtr& field, int deg_f1, int deg_f2);

/// Seeded truncation: a Fisher-Yates shuffle driven by mt19937_64(seed) when
/// there are more than `max_covers` candidates, then re-sorted by index.
std::vector<CoverCandidate> select_covers(std::vector<CoverCandidate> all, std::size_t max_covers, std::uint64_t seed);

struct SweepConfig {
    std::vector<std::string> fields{"3"};
    int deg_f1 = 4;
    int deg_f2 = 2;
    std::size_t max_covers = 50;
    std::uint64_t seed = 0;
    VerifyDepth verify = VerifyDepth::standard;
    std::uint64_t budget = kDefaultBudget;
    unsigned jobs = 1;
};

struct SweepFailure {
    std::string field;
    std::string f1;
    std::string f2;
    std::string message;
};

struct TightnessBucket {
    std::size_t count = 0;
    long double mean = 0;
};

struct SweepSummary {
    std::size_t covers_processed = 0;
    std::size_t covers_skipped = 0;
    std::size_t violations = 0;
    long double tightness_min = 0;
    long double tightness_mean = 0;
    long double tightness_max = 0;
    std::size_t thm2_beats_weil_lower = 0;
    std::size_t thm2_beats_weil_upper = 0;
    /// Covers whose thm2 interval is not certified inside the Weil interval, per side.
    std::size_t weil_dominance_lower_failures = 0;
    std::size_t weil_dominance_upper_failures = 0;
    std::size_t thm5_lower_wins = 0;
    std::size_t lmd_lower_wins = 0;
    std::size_t lower_ties = 0;
    std::size_t thm5_upper_wins = 0;
    std::size_t lmd_upper_wins = 0;
    std::size_t upper_ties = 0;
    /// Mean thm2_upper / thm2_lower per |D|.
    std::map<long long, TightnessBucket> tightness_by_abs_d;
};

struct SweepResult {
    std::vector<CoverAnalysis> rows;
    std::vector<SweepFailure> failures;
    std::vector<std::string> skipped;
    SweepSummary summary;

    bool ok() const { return summary.violations == 0 && failures.empty(); }
};

using SweepLog = std::function<void(const std::string&)>;

SweepResult sweep(const SweepConfig& config, const SweepLog& log = {});

/// Header plus one row per processed cover.
std::string sweep_csv(const SweepResult& result);
nlohmann::json sweep_json(const SweepResult& result);
nlohmann::json to_json(const SweepSummary& s);

// ---------------------------------------------------------------------------

struct SelftestResult {
    bool passed = true;
    std::vector<std::string> messages;
};

/// Pinned micro-sweep used by selftest: p = 3, deg 4 + 2, 10 covers, seed 0.
SweepConfig selftest_sweep_config();
/// Runs the built-in example corpus and compares the micro-sweep CSV with
/// the golden file.
SelftestResult selftest(const std::string& golden_path);
std::string default_golden_path();

// ---------------------------------------------------------------------------

/// Flat "key=value" pairs separated by whitespace or newlines; '#' starts a comment.
std::map<std::string, std::string> parse_key_values(std::string_view text);

struct CoverInput {
    FieldPtr field;
    Poly f1;
    Poly f2;
};

/// "p=5 f1=1,1,0,0,1 f2=2,0,1"; p may also be written "p^k".
CoverInput parse_cover_input(std::string_view text);

}  // namespace prym
