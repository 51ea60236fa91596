#include "prym/poly.hpp"

#include <charconv>
#include <sstream>

namespace prym {

Poly::Poly(FieldPtr field) : field_(std::move(field)) {}

Poly::Poly(FieldPtr field, std::vector<FieldElement> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
        if (!c.field()->same_as(*field_)) throw FieldError("polynomial coefficient from a different field");
    }
    normalize();
}

Poly Poly::from_indices(FieldPtr field, const std::vector<std::uint64_t>& coeffs) {
    std::vector<FieldElement> cs;
    cs.reserve(coeffs.size());
    for (auto i : coeffs) cs.push_back(FieldElement::from_index(field, i));
    return Poly(std::move(field), std::move(cs));
}

Poly Poly::monomial(FieldPtr field, unsigned n) {
    std::vector<FieldElement> cs(n + 1, FieldElement(field));
    cs[n] = FieldElement(field, 1);
    return Poly(std::move(field), std::move(cs));
}

Poly Poly::constant(const FieldElement& c) { return Poly(c.field(), {c}); }

void Poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Poly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : FieldElement(field_); }

const FieldElement& Poly::leading() const {
    if (coeffs_.empty()) throw FieldError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

FieldElement Poly::operator()(const FieldElement& x) const {
    FieldElement acc(field_);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc *= x;
        acc += coeffs_[i];
    }
    return acc;
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), FieldElement(field_));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), FieldElement(field_));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    normalize();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    std::vector<FieldElement> out(a.coeffs_.size() + b.coeffs_.size() - 1, FieldElement(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(a.field_, std::move(out));
}

Poly operator*(const FieldElement& c, const Poly& a) {
    std::vector<FieldElement> out;
    out.reserve(a.coeffs_.size());
    for (const auto& x : a.coeffs_) out.push_back(c * x);
    return Poly(a.field_, std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.field_ && b.field_ && !a.field_->same_as(*b.field_)) return false;
    return a.coeffs_ == b.coeffs_;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly(field_);
    std::vector<FieldElement> out;
    out.reserve(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        out.push_back(FieldElement(field_, static_cast<std::int64_t>(i)) * coeffs_[i]);
    }
    return Poly(field_, std::move(out));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return leading().inverse() * *this;
}

std::vector<std::uint64_t> Poly::indices() const {
    std::vector<std::uint64_t> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.index());
    return out;
}

std::string Poly::to_string() const { return format_poly(*this); }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw FieldError("polynomial division by zero");
    const auto& field = a.field();
    if (a.degree() < b.degree()) return {Poly(field), a};
    std::vector<FieldElement> rem = a.coeffs();
    std::vector<FieldElement> quo(a.coeffs().size() - b.coeffs().size() + 1, FieldElement(field));
    const FieldElement lead_inv = b.leading().inverse();
    const std::size_t db = b.coeffs().size() - 1;
    for (std::size_t i = quo.size(); i-- > 0;) {
        const FieldElement c = rem[i + db] * lead_inv;
        quo[i] = c;
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[i + j] -= c * b.coeffs()[j];
    }
    rem.resize(db);
    return {Poly(field, std::move(quo)), Poly(field, std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
    Poly result = Poly::constant(FieldElement(m.field(), 1)) % m;
    Poly b = base % m;
    while (e > 0) {
        if (e & 1) result = (result * b) % m;
        e >>= 1;
        if (e > 0) b = (b * b) % m;
    }
    return result;
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) return false;
    return gcd(f, f.derivative()).degree() == 0;
}

bool is_irreducible(const Poly& m) {
    if (m.degree() < 1) throw FieldError("irreducibility test needs degree at least 1");
    if (!m.is_monic()) throw FieldError("irreducibility test needs a monic polynomial");
    const auto k = static_cast<unsigned>(m.degree());
    if (k == 1) return true;
    const std::uint64_t q = m.field()->order();
    const Poly x = Poly::monomial(m.field(), 1);

    // frob[j] = x^{q^j} mod m
    std::vector<Poly> frob{x % m};
    for (unsigned j = 1; j <= k; ++j) frob.push_back(powmod(frob.back(), q, m));
    if (!(frob[k] == x % m)) return false;

    unsigned rest = k;
    for (unsigned r = 2; r <= rest; ++r) {
        if (rest % r != 0) continue;
        while (rest % r == 0) rest /= r;
        if (gcd(frob[k / r] - x, m).degree() != 0) return false;
    }
    return true;
}

Poly find_irreducible(Residue p, unsigned k, std::uint64_t seed) {
    auto fp = FieldDesc::prime(p);
    if (k == 0) throw FieldError("degree must be at least 1");
    if (k == 1) return Poly::monomial(fp, 1);
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::uint64_t step = 0; step < count; ++step) {
        std::uint64_t idx = (seed + step) % count;
        std::vector<std::uint64_t> cs(k + 1);
        for (unsigned i = 0; i < k; ++i) {
            cs[i] = idx % p;
            idx /= p;
        }
        cs[k] = 1;
        if (cs[0] == 0) continue;  // divisible by x
        Poly cand = Poly::from_indices(fp, cs);
        if (is_irreducible(cand)) return cand;
    }
    throw FieldError("no irreducible polynomial found");  // unreachable
}

namespace {

std::uint64_t parse_u64(std::string_view s, const char* what) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw FieldError(std::string("cannot parse ") + what + " '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

Poly parse_poly(const FieldPtr& field, std::string_view text) {
    std::vector<std::uint64_t> cs;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        const auto v = parse_u64(text.substr(start, end - start), "polynomial coefficient");
        if (v >= field->order()) {
            throw FieldError("coefficient " + std::to_string(v) + " out of range for F_" + field->name());
        }
        cs.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return Poly::from_indices(field, cs);
}

std::string format_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto i : f.indices()) {
        if (!first) os << ',';
        os << i;
        first = false;
    }
    return os.str();
}

FieldPtr parse_field(std::string_view text, std::uint64_t seed) {
    const auto caret = text.find('^');
    const auto p = parse_u64(text.substr(0, caret), "characteristic");
    unsigned k = 1;
    if (caret != std::string_view::npos) k = static_cast<unsigned>(parse_u64(text.substr(caret + 1), "degree"));
    if (p > 0xffffffffULL) throw FieldError("characteristic too large");
    return FieldDesc::make(static_cast<Residue>(p), k, seed);
}

}  // namespace prym
