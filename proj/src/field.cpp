#include "prym/field.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "prym/poly.hpp"

namespace prym {

BudgetExceeded::BudgetExceeded(std::uint64_t needed, std::uint64_t budget)
    : std::runtime_error("enumeration budget exceeded: " + std::to_string(needed) +
                         " field elements requested, budget is " + std::to_string(budget)),
      needed_(needed),
      budget_(budget) {}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

namespace {

std::uint64_t checked_power(Residue p, unsigned k) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (r > (std::numeric_limits<std::uint64_t>::max() >> 1) / p) {
            throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(k) +
                             " does not fit in 63 bits");
        }
        r *= p;
    }
    return r;
}

void validate_prime(Residue p) {
    if (p < 3 || !is_prime(p)) {
        throw FieldError("characteristic must be an odd prime, got " + std::to_string(p));
    }
    if (p >= (Residue{1} << 31)) throw FieldError("characteristic exceeds 31 bits");
}

}  // namespace

FieldDesc::FieldDesc(Residue p, unsigned k, std::vector<Residue> modulus)
    : p_(p), k_(k), order_(checked_power(p, k)), modulus_(std::move(modulus)) {}

std::shared_ptr<const FieldDesc> FieldDesc::prime(Residue p) {
    validate_prime(p);
    return std::shared_ptr<const FieldDesc>(new FieldDesc(p, 1, {0, 1}));
}

std::shared_ptr<const FieldDesc> FieldDesc::make(Residue p, unsigned k, std::uint64_t seed) {
    validate_prime(p);
    if (k == 0) throw FieldError("extension degree must be at least 1");
    if (k == 1) return prime(p);
    checked_power(p, k);
    Poly m = find_irreducible(p, k, seed);
    std::vector<Residue> mod;
    mod.reserve(k + 1);
    for (const auto& c : m.coeffs()) mod.push_back(c.coeffs()[0]);
    return std::shared_ptr<const FieldDesc>(new FieldDesc(p, k, std::move(mod)));
}

std::shared_ptr<const FieldDesc> FieldDesc::with_modulus(Residue p, std::vector<Residue> modulus) {
    validate_prime(p);
    if (modulus.size() < 2) throw FieldError("modulus must have degree at least 1");
    if (modulus.back() != 1) throw FieldError("modulus must be monic");
    for (Residue c : modulus) {
        if (c >= p) throw FieldError("modulus coefficient out of range");
    }
    auto fp = prime(p);
    std::vector<std::uint64_t> idx(modulus.begin(), modulus.end());
    if (!is_irreducible(Poly::from_indices(fp, idx))) throw FieldError("modulus is not irreducible");
    const auto k = static_cast<unsigned>(modulus.size() - 1);
    if (k == 1) return fp;
    return std::shared_ptr<const FieldDesc>(new FieldDesc(p, k, std::move(modulus)));
}

std::string FieldDesc::name() const {
    return k_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(k_);
}

bool FieldDesc::same_as(const FieldDesc& other) const noexcept {
    return this == &other || (p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_);
}

void FieldDesc::add(std::span<const Residue> a, std::span<const Residue> b,
                    std::span<Residue> out) const noexcept {
    for (unsigned i = 0; i < k_; ++i) {
        Residue s = a[i] + b[i];
        out[i] = s >= p_ ? s - p_ : s;
    }
}

void FieldDesc::sub(std::span<const Residue> a, std::span<const Residue> b,
                    std::span<Residue> out) const noexcept {
    for (unsigned i = 0; i < k_; ++i) {
        out[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p_ - b[i];
    }
}

void FieldDesc::mul(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out,
                    std::span<std::uint64_t> scratch) const noexcept {
    const std::uint64_t p = p_;
    if (k_ == 1) {
        out[0] = static_cast<Residue>((std::uint64_t{a[0]} * b[0]) % p);
        return;
    }
    const unsigned n = 2 * k_ - 1;
    std::fill(scratch.begin(), scratch.begin() + n, 0);
    for (unsigned i = 0; i < k_; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < k_; ++j) {
            scratch[i + j] = (scratch[i + j] + std::uint64_t{a[i]} * b[j]) % p;
        }
    }
    // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
    for (unsigned d = n - 1; d >= k_; --d) {
        const std::uint64_t c = scratch[d] % p;
        if (c == 0) continue;
        scratch[d] = 0;
        for (unsigned j = 0; j < k_; ++j) {
            const std::uint64_t t = (c * modulus_[j]) % p;
            scratch[d - k_ + j] = (scratch[d - k_ + j] + p - t) % p;
        }
    }
    for (unsigned i = 0; i < k_; ++i) out[i] = static_cast<Residue>(scratch[i] % p);
}

std::uint64_t FieldDesc::index_of(std::span<const Residue> a) const noexcept {
    std::uint64_t idx = 0;
    for (unsigned i = k_; i-- > 0;) idx = idx * p_ + a[i];
    return idx;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field) : field_(std::move(field)), coeffs_(field_->k(), 0) {}

FieldElement::FieldElement(FieldPtr field, std::int64_t n) : FieldElement(std::move(field)) {
    const auto p = static_cast<std::int64_t>(field_->p());
    std::int64_t r = n % p;
    if (r < 0) r += p;
    coeffs_[0] = static_cast<Residue>(r);
}

FieldElement::FieldElement(FieldPtr field, std::vector<Residue> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != field_->k()) throw FieldError("element has wrong number of coefficients");
    for (Residue c : coeffs_) {
        if (c >= field_->p()) throw FieldError("element coefficient out of range");
    }
}

FieldElement FieldElement::from_index(FieldPtr field, std::uint64_t index) {
    if (index >= field->order()) throw FieldError("element index out of range");
    FieldElement e(std::move(field));
    const Residue p = e.field_->p();
    for (auto& c : e.coeffs_) {
        c = static_cast<Residue>(index % p);
        index /= p;
    }
    return e;
}

bool FieldElement::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Residue c) { return c == 0; });
}

bool FieldElement::is_one() const noexcept {
    if (coeffs_.empty() || coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](Residue c) { return c == 0; });
}

void FieldElement::check_compatible(const FieldElement& rhs) const {
    if (!field_ || !rhs.field_) throw FieldError("operation on an uninitialized field element");
    if (!field_->same_as(*rhs.field_)) {
        throw FieldError("field mismatch: " + field_->name() + " vs " + rhs.field_->name());
    }
}

FieldElement FieldElement::operator-() const {
    FieldElement r(field_);
    const Residue p = field_->p();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] == 0 ? 0 : p - coeffs_[i];
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
    check_compatible(rhs);
    field_->add(coeffs_, rhs.coeffs_, coeffs_);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
    check_compatible(rhs);
    field_->sub(coeffs_, rhs.coeffs_, coeffs_);
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
    check_compatible(rhs);
    std::vector<Residue> out(field_->k());
    std::vector<std::uint64_t> scratch(field_->scratch_size());
    field_->mul(coeffs_, rhs.coeffs_, out, scratch);
    coeffs_ = std::move(out);
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
    check_compatible(rhs);
    return *this *= rhs.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (!a.field_ || !b.field_) return a.field_ == b.field_;
    return a.field_->same_as(*b.field_) && a.coeffs_ == b.coeffs_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw FieldError("division by zero in F_" + field_->name());
    return pow(*this, field_->order() - 2);
}

std::string FieldElement::to_string() const { return std::to_string(index()); }

FieldElement pow(const FieldElement& a, std::uint64_t e) {
    const auto& field = a.field();
    const unsigned k = field->k();
    std::vector<Residue> result(k, 0), base(a.coeffs().begin(), a.coeffs().end()), tmp(k);
    std::vector<std::uint64_t> scratch(field->scratch_size());
    result[0] = 1;
    while (e > 0) {
        if (e & 1) {
            field->mul(result, base, tmp, scratch);
            result.swap(tmp);
        }
        e >>= 1;
        if (e > 0) {
            field->mul(base, base, tmp, scratch);
            base.swap(tmp);
        }
    }
    return FieldElement(field, std::move(result));
}

SquareClass is_square(const FieldElement& a) {
    if (a.is_zero()) return SquareClass::zero;
    return pow(a, (a.field()->order() - 1) / 2).is_one() ? SquareClass::square : SquareClass::nonsquare;
}

void enumerate_field(const FieldPtr& field, const std::function<void(const FieldElement&)>& visit,
                     std::uint64_t budget) {
    if (field->order() > budget) throw BudgetExceeded(field->order(), budget);
    for (std::uint64_t i = 0; i < field->order(); ++i) visit(FieldElement::from_index(field, i));
}

// ---------------------------------------------------------------------------

Embedding::Embedding(FieldPtr small, FieldPtr big, std::uint64_t budget)
    : small_(std::move(small)), big_(std::move(big)) {
    if (small_->p() != big_->p() || big_->k() % small_->k() != 0) {
        throw FieldError("cannot embed F_" + small_->name() + " into F_" + big_->name());
    }
    if (small_->k() == 1) {
        root_ = FieldElement(big_, 0);
        return;
    }
    std::vector<FieldElement> modulus;
    for (Residue c : small_->modulus()) modulus.emplace_back(big_, static_cast<std::int64_t>(c));
    const Poly m(big_, std::move(modulus));
    if (big_->order() > budget) throw BudgetExceeded(big_->order(), budget);
    for (std::uint64_t i = 0; i < big_->order(); ++i) {
        auto x = FieldElement::from_index(big_, i);
        if (m(x).is_zero()) {
            root_ = std::move(x);
            return;
        }
    }
    throw FieldError("modulus of F_" + small_->name() + " has no root in F_" + big_->name());
}

FieldElement Embedding::operator()(const FieldElement& x) const {
    if (!x.field()->same_as(*small_)) throw FieldError("element is not in the embedded field");
    if (small_->k() == 1) return FieldElement(big_, static_cast<std::int64_t>(x.coeffs()[0]));
    // Horner in the root.
    FieldElement acc(big_);
    for (std::size_t i = x.coeffs().size(); i-- > 0;) {
        acc *= root_;
        acc += FieldElement(big_, static_cast<std::int64_t>(x.coeffs()[i]));
    }
    return acc;
}

}  // namespace prym
