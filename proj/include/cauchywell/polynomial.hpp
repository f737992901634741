#pragma once

#include <cstddef>
#include <vector>

namespace cauchywell {

/// Dense polynomial in the monomial basis: coeffs[i] multiplies x^i.
template <typename Real = double>
struct PlainPolynomial {
    std::vector<Real> coeffs;

    /// Horner evaluation.
    [[nodiscard]] Real operator()(Real x) const
    {
        Real acc{0};
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }

    /// Degree of the highest nonzero coefficient; -1 for the zero polynomial.
    [[nodiscard]] int degree() const
    {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (coeffs[i] != Real{0}) return static_cast<int>(i);
        return -1;
    }

    /// Drop trailing zero coefficients.
    void trim()
    {
        while (!coeffs.empty() && coeffs.back() == Real{0}) coeffs.pop_back();
    }
};

/// p(1): the analytic limit of the operator image at the interval endpoints
/// (by parity |p(-1)| = |p(1)|), used as the boundary-constraint functional.
template <typename Real>
[[nodiscard]] Real boundary_value(const PlainPolynomial<Real>& p)
{
    Real s{0};
    for (const Real& c : p.coeffs) s += c;
    return s;
}

}  // namespace cauchywell
