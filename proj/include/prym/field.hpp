#pragma once

// Arithmetic in F_{p^k} for odd p, with elements stored as residue vectors
// modulo a monic irreducible polynomial over F_p.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace prym {

using Residue = std::uint32_t;

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would visit more field elements than allowed.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::uint64_t needed, std::uint64_t budget);
    std::uint64_t needed() const noexcept { return needed_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t needed_;
    std::uint64_t budget_;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

bool is_prime(std::uint64_t n);

/// Description of F_{p^k}: the prime, the degree and the defining modulus.
///
/// Instances are immutable and shared through FieldPtr. The modulus is stored
/// with ascending coefficients and is monic of degree k (for k = 1 it is x).
class FieldDesc {
public:
    /// F_p.
    static std::shared_ptr<const FieldDesc> prime(Residue p);
    /// F_{p^k} with the first irreducible modulus found from `seed`
    /// (see find_irreducible_modulus).
    static std::shared_ptr<const FieldDesc> make(Residue p, unsigned k, std::uint64_t seed = 0);
    /// F_{p^k} with an explicit modulus; rejected unless monic and irreducible.
    static std::shared_ptr<const FieldDesc> with_modulus(Residue p, std::vector<Residue> modulus);

    Residue p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    /// p^k.
    std::uint64_t order() const noexcept { return order_; }
    std::span<const Residue> modulus() const noexcept { return modulus_; }
    /// "p^k".
    std::string name() const;

    bool same_as(const FieldDesc& other) const noexcept;

    // Raw kernels over length-k residue spans. `out` may alias neither input
    // for mul; add/sub/neg allow aliasing.
    void add(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out) const noexcept;
    void sub(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out) const noexcept;
    void mul(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out,
             std::span<std::uint64_t> scratch) const noexcept;
    /// Scratch length required by mul.
    std::size_t scratch_size() const noexcept { return 2 * static_cast<std::size_t>(k_); }

    /// Index of an element in the enumeration order: sum c_i p^i.
    std::uint64_t index_of(std::span<const Residue> a) const noexcept;

private:
    FieldDesc(Residue p, unsigned k, std::vector<Residue> modulus);

    Residue p_;
    unsigned k_;
    std::uint64_t order_;
    std::vector<Residue> modulus_;
};

using FieldPtr = std::shared_ptr<const FieldDesc>;

/// An element of F_{p^k}; `coeffs()` has exactly k entries in [0, p-1].
class FieldElement {
public:
    FieldElement() = default;
    /// Zero of `field`.
    explicit FieldElement(FieldPtr field);
    /// Image of the integer n (reduced mod p) in `field`.
    FieldElement(FieldPtr field, std::int64_t n);
    /// Element with the given residue-class coefficients (ascending in t).
    FieldElement(FieldPtr field, std::vector<Residue> coeffs);

    /// Element whose coefficient vector is the base-p expansion of `index`.
    static FieldElement from_index(FieldPtr field, std::uint64_t index);

    const FieldPtr& field() const noexcept { return field_; }
    std::span<const Residue> coeffs() const noexcept { return coeffs_; }
    std::uint64_t index() const noexcept { return field_->index_of(coeffs_); }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& rhs);
    FieldElement& operator-=(const FieldElement& rhs);
    FieldElement& operator*=(const FieldElement& rhs);
    /// Throws FieldError on division by zero.
    FieldElement& operator/=(const FieldElement& rhs);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend bool operator==(const FieldElement& a, const FieldElement& b);

    FieldElement inverse() const;

    std::string to_string() const;

private:
    void check_compatible(const FieldElement& rhs) const;

    FieldPtr field_;
    std::vector<Residue> coeffs_;
};

/// a^e by square-and-multiply. 0^0 = 1.
FieldElement pow(const FieldElement& a, std::uint64_t e);

enum class SquareClass { zero, square, nonsquare };

/// Euler criterion: a^((q-1)/2) = +1 or -1.
SquareClass is_square(const FieldElement& a);

/// Calls `visit` on each of the p^k elements once, in index order.
/// Throws BudgetExceeded if p^k > budget.
void enumerate_field(const FieldPtr& field, const std::function<void(const FieldElement&)>& visit,
                     std::uint64_t budget = kDefaultBudget);

/// Embedding of a field into a larger field of the same characteristic,
/// sending the generator t of `small` to a root of its modulus in `big`.
class Embedding {
public:
    /// Finds the root by exhaustive search over `big` (budget guarded).
    /// Throws FieldError if k(small) does not divide k(big).
    Embedding(FieldPtr small, FieldPtr big, std::uint64_t budget = kDefaultBudget);

    const FieldPtr& small() const noexcept { return small_; }
    const FieldPtr& big() const noexcept { return big_; }
    const FieldElement& image_of_generator() const noexcept { return root_; }

    FieldElement operator()(const FieldElement& x) const;

private:
    FieldPtr small_;
    FieldPtr big_;
    FieldElement root_;
};

}  // namespace prym
