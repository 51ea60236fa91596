#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "prym/harness.hpp"
#include "prym/polytope.hpp"

namespace {

struct Options {
    std::string p = "3";
    std::string config;
    std::string f, f1, f2;
    int deg1 = 4, deg2 = 2;
    std::size_t max_covers = 50;
    std::uint64_t seed = 0;
    std::string verify = "standard";
    std::uint64_t budget = prym::kDefaultBudget;
    unsigned extension = 0;
    std::string out;
    std::string format;
    unsigned jobs = 1;
    std::optional<double> a, b;
    std::optional<int> gamma;
    double resolution = 1.0 / 64;
    std::size_t count = 10;
    std::string golden;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + o.out + " for writing");
    file << text;
    if (!file) throw std::runtime_error("failed writing " + o.out);
}

std::string format_or(const Options& o, const std::string& fallback) { return o.format.empty() ? fallback : o.format; }

std::vector<std::string> field_list(const Options& o) {
    std::vector<std::string> out;
    std::istringstream is(o.p);
    for (std::string item; std::getline(is, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw std::invalid_argument("--p is empty");
    return out;
}

prym::FieldPtr single_field(const Options& o) {
    const auto fields = field_list(o);
    if (fields.size() != 1) throw std::invalid_argument("--p takes exactly one field here");
    return prym::parse_field(fields.front());
}

// Config entries become leading "--key=value" arguments, so later flags win.
std::vector<std::string> expand_config(const CLI::App& app, int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::stringstream text;
    text << in.rdbuf();
    std::vector<std::string> config;
    for (const auto& [key, value] : prym::parse_key_values(text.str())) {
        if (key == "config" || app.get_option_no_throw("--" + key) == nullptr) {
            throw std::invalid_argument("unknown config key '" + key + "' in " + path);
        }
        config.push_back("--" + key + "=" + value);
    }
    args.insert(args.begin() + 1, config.begin(), config.end());
    return args;
}

prym::AnalyzeOptions analyze_options(const Options& o) {
    return {prym::parse_verify_depth(o.verify), o.budget, o.extension};
}

int run_analyze_cover(const Options& o) {
    if (o.f1.empty() || o.f2.empty()) throw std::invalid_argument("analyze-cover needs --f1 and --f2");
    const auto field = single_field(o);
    const auto f1 = prym::parse_poly(field, o.f1);
    const auto f2 = prym::parse_poly(field, o.f2);
    const auto cover = prym::validate_cover(f1, f2, f1.degree() + f2.degree() == 4 ? prym::CoverMode::relaxed
                                                                                     : prym::CoverMode::prym);
    const auto a = prym::analyze_cover(cover, analyze_options(o));
    const auto fmt = format_or(o, "text");
    if (fmt == "json") emit(o, prym::to_json(a).dump(2) + "\n");
    else if (fmt == "csv" && a.report) emit(o, prym::csv_header() + "\n" + prym::to_csv_row(*a.report) + "\n");
    else emit(o, prym::format_report(a));
    return a.violations() == 0 ? 0 : 1;
}

int run_analyze_curve(const Options& o) {
    if (o.f.empty()) throw std::invalid_argument("analyze-curve needs --f");
    const auto field = single_field(o);
    const prym::HyperellipticCurve curve(prym::parse_poly(field, o.f));
    const auto a = prym::analyze_curve(curve, analyze_options(o));
    if (format_or(o, "text") == "json") emit(o, prym::to_json(a).dump(2) + "\n");
    else emit(o, prym::format_report(a));
    return a.violations() == 0 ? 0 : 1;
}

int run_sweep(const Options& o) {
    prym::SweepConfig config;
    config.fields = field_list(o);
    config.deg_f1 = o.deg1;
    config.deg_f2 = o.deg2;
    config.max_covers = o.max_covers;
    config.seed = o.seed;
    config.verify = prym::parse_verify_depth(o.verify);
    config.budget = o.budget;
    config.jobs = o.jobs;
    for (const auto& name : config.fields) {
        const auto field = prym::parse_field(name);
        if (field->p() == 2) throw std::invalid_argument("sweep needs odd characteristic, got " + name);
    }

    const auto start = std::chrono::steady_clock::now();
    const auto result = prym::sweep(config, [](const std::string& line) { std::cerr << line << '\n'; });
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (format_or(o, "csv") == "json") emit(o, prym::sweep_json(result).dump(2) + "\n");
    else emit(o, prym::sweep_csv(result));

    auto summary = prym::to_json(result.summary);
    summary["seconds"] = seconds;
    std::cerr << summary.dump(2) << '\n';
    return result.ok() ? 0 : 1;
}

std::string fixed(double v, int digits = 10) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

int run_lemma_check(const Options& o) {
    using Problem = prym::PolytopeProblem<double>;
    std::vector<Problem> problems;
    if (o.a || o.b || o.gamma) {
        if (!(o.a && o.b && o.gamma)) throw std::invalid_argument("lemma-check needs all of --a, --gamma, --b");
        problems.push_back(Problem::make(*o.a, *o.gamma, *o.b));
    } else {
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> ua(1.01, 4.0), unit(-1.0, 1.0);
        std::uniform_int_distribution<int> ug(1, 4);
        for (std::size_t i = 0; i < o.count; ++i) {
            const double a = ua(rng);
            const int gamma = ug(rng);
            problems.push_back(Problem::make(a, gamma, unit(rng) * gamma));
        }
    }

    std::ostringstream os;
    const char* columns[] = {"a", "gamma", "b", "delta", "lemma3_bound", "exact_min", "oracle_min", "oracle_max",
                             "lemma4_max"};
    const bool csv = format_or(o, "text") == "csv";
    for (std::size_t i = 0; i < std::size(columns); ++i) {
        if (csv) os << (i ? "," : "") << columns[i];
        else os << std::setw(i == 1 || i == 3 ? 6 : 15) << columns[i];
    }
    os << '\n';
    for (const auto& P : problems) {
        const auto oracle = prym::oracle_extrema(P, o.resolution);
        const std::vector<std::string> cells{fixed(P.a),
                                             std::to_string(P.gamma),
                                             fixed(P.b),
                                             std::to_string(P.delta()),
                                             fixed(prym::lemma3_bound(P)),
                                             fixed(prym::exact_min(P).value),
                                             fixed(oracle.min),
                                             fixed(oracle.max),
                                             fixed(prym::lemma4_max(P).first)};
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (csv) os << (i ? "," : "") << cells[i];
            else os << std::setw(i == 1 || i == 3 ? 6 : 15) << cells[i];
        }
        os << '\n';
    }
    emit(o, os.str());
    return 0;
}

int run_selftest(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const auto result = prym::selftest(o.golden.empty() ? prym::default_golden_path() : o.golden);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& m : result.messages) std::cout << m << '\n';
    std::cout << (result.passed ? "PASS" : "FAIL") << " (" << fixed(seconds, 3) << " s)\n";
    return result.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point counts of Prym varieties of double covers of hyperelliptic curves, with bounds"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Options o;
    app.add_option("--config", o.config, "flat key=value file with the same keys; flags override it");
    app.add_option("--p", o.p, "field as p or p^k; sweep accepts a comma-separated list");
    app.add_option("--f", o.f, "curve polynomial, ascending coefficients");
    app.add_option("--f1", o.f1, "first factor, ascending coefficients");
    app.add_option("--f2", o.f2, "second factor, ascending coefficients");
    app.add_option("--deg1", o.deg1, "degree of f1 in sweeps");
    app.add_option("--deg2", o.deg2, "degree of f2 in sweeps");
    app.add_option("--max-covers", o.max_covers, "covers per field in sweeps")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "seed for cover selection and random lemma problems");
    app.add_option("--verify-depth", o.verify, "standard or full")->check(CLI::IsMember({"standard", "full"}));
    app.add_option("--budget", o.budget, "maximum field elements enumerated per count");
    app.add_option("--extension", o.extension, "also report #Pr over F_{q^n}");
    app.add_option("--out", o.out, "output file (default stdout)");
    app.add_option("--format", o.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--jobs", o.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--a", o.a, "lemma-check: a > 1");
    app.add_option("--gamma", o.gamma, "lemma-check: dimension");
    app.add_option("--b", o.b, "lemma-check: slice level");
    app.add_option("--resolution", o.resolution, "lemma-check: oracle grid step");
    app.add_option("--count", o.count, "lemma-check: number of random problems");
    app.add_option("--golden", o.golden, "selftest: golden CSV path");

    auto* cover = app.add_subcommand("analyze-cover", "full report for y^2 = f1 f2");
    auto* curve = app.add_subcommand("analyze-curve", "Jacobian bounds for y^2 = f");
    auto* sweep = app.add_subcommand("sweep", "seeded sweep over cover families");
    auto* lemma = app.add_subcommand("lemma-check", "polytope extrema against their bounds and a grid oracle");
    auto* self = app.add_subcommand("selftest", "example corpus and pinned micro-sweep");
    for (auto* sub : {cover, curve, sweep, lemma, self}) sub->fallthrough();

    try {
        auto args = expand_config(app, argc, argv);
        std::vector<char*> raw;
        for (auto& a : args) raw.push_back(a.data());
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*cover) return run_analyze_cover(o);
        if (*curve) return run_analyze_curve(o);
        if (*sweep) return run_sweep(o);
        if (*lemma) return run_lemma_check(o);
        if (*self) return run_selftest(o);
    } catch (const prym::ValidationError& e) {
        std::cerr << "rejected: " << e.what() << '\n';
        return 2;
    } catch (const prym::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
