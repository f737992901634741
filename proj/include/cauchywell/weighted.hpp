#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "cauchywell/series.hpp"

namespace cauchywell {

/// psi(x) = C sqrt(1-x^2) * sum_m alphas[m] x^e(m) with e(m) = 2m (even) or
/// 2m+1 (odd); identically zero outside [-1,1]. In pre-normalized form the
/// leading coefficient is 1 and norm_c is unset.
template <typename Real = double>
struct WeightedPolynomial {
    Parity parity = Parity::even;
    std::vector<Real> alphas;
    std::optional<Real> norm_c;

    [[nodiscard]] int degree() const
    {
        if (alphas.empty()) return -1;
        int top = static_cast<int>(alphas.size()) - 1;
        return parity == Parity::even ? 2 * top : 2 * top + 1;
    }
};

/// Pointwise value, honoring the exterior Dirichlet condition (0 for |x| > 1).
template <typename Real>
[[nodiscard]] Real evaluate(const WeightedPolynomial<Real>& psi, Real x)
{
    using std::sqrt;
    if (x > Real{1} || x < Real{-1}) return Real{0};
    Real acc{0};
    const Real x2 = x * x;
    for (std::size_t i = psi.alphas.size(); i-- > 0;) acc = acc * x2 + psi.alphas[i];
    if (psi.parity == Parity::odd) acc *= x;
    const Real c = psi.norm_c.value_or(Real{1});
    return c * sqrt(Real{1} - x2) * acc;
}

/// Exact L^2(-1,1) norm integral of the pre-normalized shape: the integrand is
/// (1-x^2) times an even polynomial, so monomial moments
/// int x^{2j}(1-x^2) dx = 2/(2j+1) - 2/(2j+3) finish it in closed form.
template <typename Real>
[[nodiscard]] Real norm_integral(Parity parity, const std::vector<Real>& alphas)
{
    const std::size_t n = alphas.size();
    std::vector<Real> sq(2 * n - 1, Real{0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sq[i + j] += alphas[i] * alphas[j];
    Real integral{0};
    for (std::size_t j = 0; j < sq.size(); ++j) {
        const int jj = parity == Parity::even ? static_cast<int>(j) : static_cast<int>(j) + 1;
        integral += sq[j] * (Real{2} / static_cast<Real>(2 * jj + 1) -
                             Real{2} / static_cast<Real>(2 * jj + 3));
    }
    return integral;
}

}  // namespace cauchywell
