#pragma once

// Extrema of prod_k (a - x_k) over the slice
//   P = { x in [-1, 1]^gamma : sum_k x_k = b },   a > 1, |b| <= gamma.
//
// log(a - x) is concave in x, so the minimum sits on a vertex of P: at most
// one coordinate lies strictly inside (-1, 1). The maximum on the hyperplane
// is at the uniform point x_k = b / gamma.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace prym {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct PolytopeProblem {
    Scalar a;
    int gamma;
    Scalar b;

    static PolytopeProblem make(Scalar a, int gamma, Scalar b) {
        if (!(a > Scalar(1))) throw std::invalid_argument("polytope problem needs a > 1");
        if (gamma < 0) throw std::invalid_argument("polytope problem needs gamma >= 0");
        if (!(std::abs(b) <= Scalar(gamma))) throw std::invalid_argument("polytope problem needs |b| <= gamma");
        return {a, gamma, b};
    }

    bool b_is_integer() const { return std::floor(b) == b; }
    /// 0 iff b is an integer.
    int delta() const { return b_is_integer() ? 0 : 1; }
    /// {b} in [0, 1).
    Scalar frac() const { return b - std::floor(b); }
};

/// n coordinates at +1, m at -1 and optionally one interior coordinate beta.
template <typename Scalar>
struct ExtremalPoint {
    int n = 0;
    int m = 0;
    std::optional<Scalar> beta;
    Scalar value = 0;

    int size() const { return n + m + (beta ? 1 : 0); }
    Scalar coordinate_sum() const { return Scalar(n - m) + beta.value_or(Scalar(0)); }

    VectorX<Scalar> point() const {
        VectorX<Scalar> x(size());
        for (int i = 0; i < n; ++i) x(i) = 1;
        for (int i = 0; i < m; ++i) x(n + i) = -1;
        if (beta) x(n + m) = *beta;
        return x;
    }
};

template <typename Scalar>
Scalar slice_product(Scalar a, const VectorX<Scalar>& x) {
    return (VectorX<Scalar>::Constant(x.size(), a) - x).prod();
}

/// ((a-1)/(a+1))^{(b + 2 delta)/2} (a^2 - 1)^{gamma/2}; 1 for gamma = 0.
template <typename Scalar>
Scalar lemma3_bound(const PolytopeProblem<Scalar>& P) {
    if (P.gamma == 0) return Scalar(1);
    using std::pow;
    const Scalar a = P.a;
    return pow((a - 1) / (a + 1), (P.b + 2 * P.delta()) / 2) * pow(a * a - 1, Scalar(P.gamma) / 2);
}

/// (a - b/gamma)^gamma at the uniform point.
template <typename Scalar>
std::pair<Scalar, VectorX<Scalar>> lemma4_max(const PolytopeProblem<Scalar>& P) {
    if (P.gamma == 0) return {Scalar(1), VectorX<Scalar>()};
    const Scalar xk = P.b / P.gamma;
    return {std::pow(P.a - xk, Scalar(P.gamma)), VectorX<Scalar>::Constant(P.gamma, xk)};
}

/// Minimum over all vertex-shaped candidates: pure +-1 vertices (when b is an
/// integer of the right parity) and points with one interior coordinate.
/// Ties go to the smallest n.
template <typename Scalar>
ExtremalPoint<Scalar> exact_min(const PolytopeProblem<Scalar>& P) {
    using std::pow;
    const Scalar a = P.a;
    std::optional<ExtremalPoint<Scalar>> best;
    auto offer = [&](ExtremalPoint<Scalar> c) {
        c.value = pow(a - 1, Scalar(c.n)) * pow(a + 1, Scalar(c.m)) * (c.beta ? a - *c.beta : Scalar(1));
        if (!best || c.value < best->value || (c.value == best->value && c.n < best->n)) best = c;
    };
    if (P.b_is_integer()) {
        const auto bi = static_cast<long long>(P.b);
        if ((P.gamma - bi) % 2 == 0) {
            offer({static_cast<int>((P.gamma + bi) / 2), static_cast<int>((P.gamma - bi) / 2), std::nullopt, 0});
        }
    }
    for (int n = 0; n < P.gamma; ++n) {
        const int m = P.gamma - 1 - n;
        const Scalar beta = P.b - Scalar(n - m);
        if (std::abs(beta) < Scalar(1)) offer({n, m, beta, 0});
    }
    if (!best) throw std::logic_error("no feasible extremal candidate");
    return *best;
}

template <typename Scalar>
struct OracleResult {
    Scalar min;
    Scalar max;
    std::uint64_t samples = 0;
};

/// Grid search: x_1..x_{gamma-1} on the grid of step `resolution` in [-1, 1],
/// x_gamma = b - sum, infeasible points skipped.
template <typename Scalar>
OracleResult<Scalar> oracle_extrema(const PolytopeProblem<Scalar>& P, Scalar resolution,
                                    std::uint64_t budget = 50'000'000) {
    if (P.gamma > 6) throw std::invalid_argument("oracle supports gamma <= 6");
    if (!(resolution >= Scalar(1) / 256) || resolution > Scalar(2)) {
        throw std::invalid_argument("oracle resolution must lie in [1/256, 2]");
    }
    if (P.gamma == 0) return {Scalar(1), Scalar(1), 1};
    const auto steps = static_cast<long>(std::floor(Scalar(2) / resolution + Scalar(1e-9)));
    const double grid = std::pow(static_cast<double>(steps + 1), P.gamma - 1);
    if (grid > static_cast<double>(budget)) {
        throw std::length_error("oracle grid of " + std::to_string(grid) + " points exceeds the budget");
    }

    OracleResult<Scalar> r{std::numeric_limits<Scalar>::infinity(), -std::numeric_limits<Scalar>::infinity(), 0};
    const int free = P.gamma - 1;
    // Depth-first over the free coordinates, pruning sums that cannot be completed.
    auto rec = [&](auto&& self, int depth, Scalar sum, Scalar prod) -> void {
        const Scalar remaining = P.b - sum;
        const int left = P.gamma - depth;
        if (std::abs(remaining) > Scalar(left) + Scalar(1e-12)) return;
        if (depth == free) {
            if (std::abs(remaining) > Scalar(1) + Scalar(1e-12)) return;
            const Scalar last = std::clamp(remaining, Scalar(-1), Scalar(1));
            const Scalar v = prod * (P.a - last);
            r.min = std::min(r.min, v);
            r.max = std::max(r.max, v);
            ++r.samples;
            return;
        }
        for (long i = 0; i <= steps; ++i) {
            const Scalar x = Scalar(-1) + Scalar(i) * resolution;
            self(self, depth + 1, sum + x, prod * (P.a - x));
        }
    };
    rec(rec, 0, Scalar(0), Scalar(1));
    if (r.samples == 0) throw std::logic_error("oracle found no feasible grid point");
    return r;
}

/// Lipschitz allowance gamma * resolution * (a+1)^gamma / (a-1) between the
/// grid extrema and the true extrema.
template <typename Scalar>
Scalar oracle_gap(const PolytopeProblem<Scalar>& P, Scalar resolution) {
    return Scalar(P.gamma) * resolution * std::pow(P.a + 1, Scalar(P.gamma)) / (P.a - 1);
}

}  // namespace prym
