#include "prym/curves.hpp"

#include <map>
#include <mutex>

namespace prym {

const char* hypothesis_name(Hypothesis h) noexcept {
    switch (h) {
        case Hypothesis::zero_polynomial: return "zero-polynomial";
        case Hypothesis::odd_degree: return "odd-degree (ramified at infinity)";
        case Hypothesis::degree_too_small: return "degree-too-small";
        case Hypothesis::not_squarefree: return "not-squarefree (singular model)";
        case Hypothesis::not_coprime: return "not-coprime (ramified at a finite place)";
        case Hypothesis::genus_too_small: return "genus-too-small";
        case Hypothesis::field_mismatch: return "field-mismatch";
    }
    return "unknown";
}

ValidationError::ValidationError(Hypothesis h, const std::string& detail)
    : std::invalid_argument(std::string(hypothesis_name(h)) + ": " + detail), hypothesis_(h) {}

HyperellipticCurve::HyperellipticCurve(Poly f) : f_(std::move(f)) {
    if (f_.is_zero()) throw ValidationError(Hypothesis::zero_polynomial, "f = 0");
    if (f_.degree() % 2 != 0) {
        throw ValidationError(Hypothesis::odd_degree, "deg f = " + std::to_string(f_.degree()));
    }
    if (f_.degree() < 2) throw ValidationError(Hypothesis::degree_too_small, "deg f must be at least 2");
    if (!is_squarefree(f_)) throw ValidationError(Hypothesis::not_squarefree, "f = " + format_poly(f_));
}

DoubleCover::DoubleCover(HyperellipticCurve base, Poly f1, Poly f2)
    : base_(std::move(base)), f1_(std::move(f1)), f2_(std::move(f2)) {}

DoubleCover validate_cover(const Poly& f1, const Poly& f2, CoverMode mode) {
    if (!f1.field() || !f2.field() || !f1.field()->same_as(*f2.field())) {
        throw ValidationError(Hypothesis::field_mismatch, "f1 and f2 live over different fields");
    }
    for (const auto* f : {&f1, &f2}) {
        const char* name = f == &f1 ? "f1" : "f2";
        if (f->is_zero()) throw ValidationError(Hypothesis::zero_polynomial, std::string(name) + " = 0");
        if (f->degree() % 2 != 0) {
            throw ValidationError(Hypothesis::odd_degree,
                                  std::string("deg ") + name + " = " + std::to_string(f->degree()));
        }
        if (f->degree() < 2) {
            throw ValidationError(Hypothesis::degree_too_small, std::string("deg ") + name + " must be >= 2");
        }
    }
    if (!is_squarefree(f1)) throw ValidationError(Hypothesis::not_squarefree, "f1 = " + format_poly(f1));
    if (!is_squarefree(f2)) throw ValidationError(Hypothesis::not_squarefree, "f2 = " + format_poly(f2));
    if (gcd(f1, f2).degree() != 0) {
        throw ValidationError(Hypothesis::not_coprime, "gcd(f1, f2) = " + format_poly(gcd(f1, f2)));
    }
    HyperellipticCurve base(f1 * f2);
    const int min_genus = mode == CoverMode::prym ? 2 : 1;
    if (base.genus() < min_genus) {
        throw ValidationError(Hypothesis::genus_too_small, "genus of X is " + std::to_string(base.genus()) +
                                                               ", need at least " + std::to_string(min_genus));
    }
    return DoubleCover(std::move(base), f1, f2);
}

namespace {

// The extension field and its quadratic character, shared across counts.
struct CountingContext {
    FieldPtr field;
    std::vector<std::int8_t> chi;  // indexed by element index
};

std::shared_ptr<const CountingContext> counting_context(Residue p, unsigned degree, std::uint64_t budget) {
    static std::mutex mu;
    static std::map<std::pair<Residue, unsigned>, std::shared_ptr<const CountingContext>> cache;

    auto field = FieldDesc::make(p, degree);
    if (field->order() > budget) throw BudgetExceeded(field->order(), budget);
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find({p, degree}); it != cache.end()) return it->second;
    }
    auto ctx = std::make_shared<CountingContext>();
    ctx->field = field;
    ctx->chi.assign(field->order(), -1);
    ctx->chi[0] = 0;
    const unsigned k = field->k();
    std::vector<Residue> x(k, 0), sq(k);
    std::vector<std::uint64_t> scratch(field->scratch_size());
    for (std::uint64_t i = 1; i < field->order(); ++i) {
        for (unsigned j = 0; j < k; ++j) {
            if (++x[j] < p) break;
            x[j] = 0;
        }
        field->mul(x, x, sq, scratch);
        ctx->chi[field->index_of(sq)] = 1;
    }
    std::lock_guard lock(mu);
    return cache.emplace(std::pair{p, degree}, std::move(ctx)).first->second;
}

// Ascending coefficient residue vectors of a polynomial embedded into `big`.
std::vector<std::vector<Residue>> embed_coeffs(const Poly& f, const Embedding& emb) {
    std::vector<std::vector<Residue>> out;
    for (const auto& c : f.coeffs()) {
        auto e = emb(c);
        out.emplace_back(e.coeffs().begin(), e.coeffs().end());
    }
    return out;
}

int square_count(std::int8_t chi) { return 1 + chi; }

// sum over x in F_{q^n} of prod_i s(f_i(x)), plus the contribution at infinity.
std::uint64_t count_points(const std::vector<const Poly*>& polys, unsigned n, std::uint64_t budget,
                           std::uint64_t infinity_points) {
    if (n == 0) throw std::invalid_argument("extension degree must be at least 1");
    const auto& base = polys.front()->field();
    const auto ctx = counting_context(base->p(), base->k() * n, budget);
    const auto& big = ctx->field;
    const Embedding emb(base, big, budget);

    std::vector<std::vector<std::vector<Residue>>> coeffs;
    for (const auto* f : polys) coeffs.push_back(embed_coeffs(*f, emb));

    // Points at infinity: the leading coefficients' characters in F_{q^n}.
    bool all_square = true;
    for (const auto* f : polys) {
        if (ctx->chi[emb(f->leading()).index()] != 1) all_square = false;
    }

    const unsigned k = big->k();
    const Residue p = big->p();
    std::vector<Residue> x(k, 0), acc(k), tmp(k);
    std::vector<std::uint64_t> scratch(big->scratch_size());
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < big->order(); ++i) {
        if (i > 0) {
            for (unsigned j = 0; j < k; ++j) {
                if (++x[j] < p) break;
                x[j] = 0;
            }
        }
        std::uint64_t fiber = 1;
        for (const auto& cs : coeffs) {
            std::copy(cs.back().begin(), cs.back().end(), acc.begin());
            for (std::size_t d = cs.size() - 1; d-- > 0;) {
                big->mul(acc, x, tmp, scratch);
                big->add(tmp, cs[d], acc);
            }
            fiber *= static_cast<std::uint64_t>(square_count(ctx->chi[big->index_of(acc)]));
            if (fiber == 0) break;
        }
        total += fiber;
    }
    return total + (all_square ? infinity_points : 0);
}

}  // namespace

FieldPtr counting_field(const FieldPtr& base, unsigned n) { return FieldDesc::make(base->p(), base->k() * n); }

std::uint64_t count_curve_points(const HyperellipticCurve& curve, unsigned n, std::uint64_t budget) {
    return count_points({&curve.f()}, n, budget, 2);
}

std::uint64_t count_cover_points(const DoubleCover& cover, unsigned n, std::uint64_t budget) {
    return count_points({&cover.f1(), &cover.f2()}, n, budget, 4);
}

PointCountSeries count_curve_series(const HyperellipticCurve& curve, unsigned max_n, std::uint64_t budget) {
    PointCountSeries s{curve.field()->order(), {}};
    for (unsigned n = 1; n <= max_n; ++n) s.counts.push_back(count_curve_points(curve, n, budget));
    return s;
}

PointCountSeries count_cover_series(const DoubleCover& cover, unsigned max_n, std::uint64_t budget) {
    PointCountSeries s{cover.field()->order(), {}};
    for (unsigned n = 1; n <= max_n; ++n) s.counts.push_back(count_cover_points(cover, n, budget));
    return s;
}

}  // namespace prym
