#pragma once

#include <stdexcept>
#include <vector>

#include "cauchywell/polynomial.hpp"
#include "cauchywell/series.hpp"
#include "cauchywell/weighted.hpp"

namespace cauchywell {

/// Closed-form action of the Cauchy operator with exterior Dirichlet
/// conditions on a weighted polynomial, divided by its normalization C.
///
/// For each basis element x^m sqrt(1-x^2) the singular part of the regional
/// integral contributes -(2/pi) x^m sqrt(1-x^2)/(1-x^2), which cancels the
/// exterior killing term exactly; what survives is the plain polynomial
/// sum_k coupling(parity, k, m) x^{m-2k}. Images are summed with the input
/// coefficients, so parity and degree are preserved.
///
/// The returned coefficients follow the parity packing of WeightedPolynomial:
/// entry i multiplies x^{2i} (even) or x^{2i+1} (odd).
template <typename Real>
[[nodiscard]] PlainPolynomial<Real> apply_AD_closed(const WeightedPolynomial<Real>& psi)
{
    if (psi.alphas.empty())
        throw std::invalid_argument("apply_AD_closed: empty coefficient vector");
    const int n = static_cast<int>(psi.alphas.size()) - 1;
    const auto series = sqrt_series<Real>(n);
    PlainPolynomial<Real> image;
    image.coeffs.assign(psi.alphas.size(), Real{0});
    for (int i = 0; i <= n; ++i) {
        Real acc{0};
        for (int m = i; m <= n; ++m)
            acc += coupling(psi.parity, m - i, m, series) * psi.alphas[static_cast<std::size_t>(m)];
        image.coeffs[static_cast<std::size_t>(i)] = acc;
    }
    return image;
}

/// Expand the parity-packed coefficients of apply_AD_closed into a dense
/// monomial-basis polynomial (entry e multiplies x^e).
template <typename Real>
[[nodiscard]] PlainPolynomial<Real> to_dense(const PlainPolynomial<Real>& packed, Parity parity)
{
    PlainPolynomial<Real> dense;
    const std::size_t n = packed.coeffs.size();
    dense.coeffs.assign(parity == Parity::even ? 2 * n - 1 : 2 * n, Real{0});
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t e = parity == Parity::even ? 2 * i : 2 * i + 1;
        dense.coeffs[e] = packed.coeffs[i];
    }
    return dense;
}

/// The n-th image polynomial in its published normalization: w_{2n} (even
/// index) or w_{2n+1} (odd). Even images flip sign for n >= 1; the odd family
/// is used as computed. Coefficients are generated from the coupling family,
/// never hard-coded.
template <typename Real = double>
[[nodiscard]] PlainPolynomial<Real> w_polynomial(Parity parity, int n)
{
    if (n < 0) throw std::invalid_argument("w_polynomial: n must be >= 0");
    WeightedPolynomial<Real> basis;
    basis.parity = parity;
    basis.alphas.assign(static_cast<std::size_t>(n) + 1, Real{0});
    basis.alphas.back() = Real{1};
    PlainPolynomial<Real> image = to_dense(apply_AD_closed(basis), parity);
    if (parity == Parity::even && n >= 1)
        for (Real& c : image.coeffs) c = -c;
    return image;
}

}  // namespace cauchywell
