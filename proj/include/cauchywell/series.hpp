#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "cauchywell/util.hpp"

namespace cauchywell {

enum class Parity { even, odd };

[[nodiscard]] inline const char* to_string(Parity p)
{
    return p == Parity::even ? "even" : "odd";
}

/// Taylor coefficients of sqrt(1-x^2): entry k holds c_{2k}, the coefficient
/// of x^{2k}. c_0 = 1 and all later entries are negative with strictly
/// decreasing magnitude.
template <typename Real>
struct SqrtSeries {
    std::vector<Real> coeffs;

    [[nodiscard]] std::size_t size() const noexcept { return coeffs.size(); }
    [[nodiscard]] const Real& operator[](std::size_t k) const { return coeffs[k]; }
};

namespace detail {

/// Exact rational values of c_{2k}. The ratio c_{2k}/c_{2(k-1)} =
/// (2k-1)(3-2k) / (2k(1-2k)) follows from the closed form
/// c_{2k} = (2k)! / ((1-2k) (k!)^2 4^k); using the ratio avoids factorial
/// overflow, which hits double around k = 85 while degree-500 systems need
/// k up to 250.
inline std::vector<boost::multiprecision::cpp_rational> sqrt_series_exact(int k_max)
{
    using boost::multiprecision::cpp_rational;
    std::vector<cpp_rational> c;
    c.reserve(static_cast<std::size_t>(k_max) + 1);
    c.emplace_back(1);
    for (int k = 1; k <= k_max; ++k) {
        // Built via * then / — the (num, den) rational constructor rejects
        // the negative denominators this ratio produces.
        c.push_back(c.back() * ((2 * k - 1) * (3 - 2 * k)) / (2 * k * (1 - 2 * k)));
    }
    return c;
}

/// Round an exact rational to the working precision. The direct
/// rational-to-number conversion is only reliable for builtin floats, so
/// software floats divide the exactly-converted numerator and denominator.
template <typename Real>
[[nodiscard]] Real round_rational(const boost::multiprecision::cpp_rational& q)
{
    if constexpr (std::is_floating_point_v<Real>) {
        return static_cast<Real>(q);
    } else {
        return static_cast<Real>(numerator(q)) / static_cast<Real>(denominator(q));
    }
}

}  // namespace detail

/// Coefficients c_{2k} for k = 0..k_max, each rounded exactly once from the
/// exact rational value to the working precision.
template <typename Real = double>
[[nodiscard]] SqrtSeries<Real> sqrt_series(int k_max)
{
    if (k_max < 0) throw std::invalid_argument("sqrt_series: k_max must be >= 0");
    SqrtSeries<Real> s;
    s.coeffs.reserve(static_cast<std::size_t>(k_max) + 1);
    for (const auto& q : detail::sqrt_series_exact(k_max))
        s.coeffs.push_back(detail::round_rational<Real>(q));
    return s;
}

/// Integer factor multiplying c_{2k} in the coupling matrix: 2m+1-2k for the
/// even family a_{k,m}, 2m+2-2k for the odd family b_{k,m}.
[[nodiscard]] inline int coupling_factor(Parity parity, int k, int m)
{
    if (k < 0 || k > m)
        throw std::invalid_argument("coupling: requires 0 <= k <= m, got k=" +
                                    std::to_string(k) + " m=" + std::to_string(m));
    return parity == Parity::even ? 2 * m + 1 - 2 * k : 2 * m + 2 - 2 * k;
}

/// Matrix element a_{k,m} (even) or b_{k,m} (odd), built from a precomputed
/// series that must extend at least to index k.
template <typename Real>
[[nodiscard]] Real coupling(Parity parity, int k, int m, const SqrtSeries<Real>& series)
{
    int factor = coupling_factor(parity, k, m);
    return static_cast<Real>(factor) * series[static_cast<std::size_t>(k)];
}

/// Convenience overload computing the series on demand (double precision).
[[nodiscard]] inline double coupling(Parity parity, int k, int m)
{
    return coupling(parity, k, m, sqrt_series<double>(std::max(k, 0)));
}

/// Boundary sum S_m = sum_{k<=m} coupling(k, m): the coefficient of the m-th
/// basis element in the constraint lim_{x->1} A_D psi = 0.
template <typename Real>
[[nodiscard]] Real boundary_sum(Parity parity, int m, const SqrtSeries<Real>& series)
{
    Real s{0};
    for (int k = 0; k <= m; ++k) s += coupling(parity, k, m, series);
    return s;
}

template <typename Real>
struct SeriesEigenvalue {
    Real value;           ///< truncated eigenvalue estimate
    Real last_increment;  ///< final partial-sum increment (crude convergence gauge)
};

/// Eigenvalue estimate from the Taylor coefficients of psi itself.
/// Even input (c_0, c_2, c_4, ...):  E = (2/pi) [1 - (1/c_0) sum_k c_{2k}/(2k-1)];
/// odd input (c_1, c_3, c_5, ...):   E = (4/pi) [1 - (1/c_1) sum_k c_{2k+1}/(2k-1)];
/// both sums run over the supplied truncation only (k >= 1). The estimate is
/// invariant under uniform scaling of the input.
template <typename Real>
[[nodiscard]] SeriesEigenvalue<Real> eigenvalue_from_series(const std::vector<Real>& coeffs,
                                                            Parity parity)
{
    if (coeffs.empty() || coeffs.front() == Real{0})
        throw std::invalid_argument("eigenvalue_from_series: leading coefficient must be nonzero");
    const Real pi = boost::math::constants::pi<Real>();
    Real sum{0};
    Real increment{0};
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        increment = coeffs[k] / static_cast<Real>(2 * k - 1);
        sum += increment;
    }
    const Real front = parity == Parity::even ? Real{2} : Real{4};
    const Real value = front / pi * (Real{1} - sum / coeffs.front());
    return {value, front / pi * (-increment / coeffs.front())};
}

}  // namespace cauchywell
