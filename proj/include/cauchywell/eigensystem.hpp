#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cauchywell/series.hpp"
#include "cauchywell/util.hpp"

namespace cauchywell {

/// Minimal dense row-major matrix; shared by the machine-precision and
/// extended-precision solver paths.
template <typename Real>
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Real> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Real{0}) {}

    [[nodiscard]] Real& operator()(std::size_t i, std::size_t j)
    {
        return data[i * cols + j];
    }
    [[nodiscard]] const Real& operator()(std::size_t i, std::size_t j) const
    {
        return data[i * cols + j];
    }
};

/// Matrix pencil M0 v = E M1 v for one parity sector truncated at the given
/// polynomial degree. With n + 1 free coefficients, rows 0..n-1 match Taylor
/// coefficients of the operator image against the weight expansion of E psi,
/// and row n imposes the endpoint constraint sum_m S_m alpha_m = 0 (its M1
/// row is zero, so the pencil has exactly n finite eigenvalues).
template <typename Real>
struct GeneralizedSystem {
    Parity parity = Parity::even;
    int degree = 0;
    Mat<Real> m0;
    Mat<Real> m1;

    /// Matrix dimension n + 1 (the number of free coefficients).
    [[nodiscard]] std::size_t size() const noexcept { return m0.rows; }
};

/// Index of the top basis element for a parity/degree pair: degree = 2n
/// (even) or 2n + 1 (odd). Rejects mismatched parity and systems too small
/// to carry an eigenvalue.
[[nodiscard]] inline int top_index(Parity parity, int degree)
{
    const bool degree_even = degree % 2 == 0;
    if ((parity == Parity::even) != degree_even)
        throw std::invalid_argument("degree " + std::to_string(degree) +
                                    " does not match parity " + to_string(parity));
    const int n = parity == Parity::even ? degree / 2 : (degree - 1) / 2;
    if (n < 1)
        throw std::invalid_argument("degree " + std::to_string(degree) +
                                    " leaves no eigenvalue after the endpoint constraint");
    return n;
}

template <typename Real>
[[nodiscard]] GeneralizedSystem<Real> assemble(Parity parity, int degree)
{
    const int n = top_index(parity, degree);
    const auto nn = static_cast<std::size_t>(n);
    const auto series = sqrt_series<Real>(n);

    GeneralizedSystem<Real> sys{parity, degree, Mat<Real>(nn + 1, nn + 1),
                                Mat<Real>(nn + 1, nn + 1)};
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t k = i; k <= nn; ++k)
            sys.m0(i, k) = coupling(parity, static_cast<int>(k - i),
                                    static_cast<int>(k), series);
        for (std::size_t k = 0; k <= i; ++k) sys.m1(i, k) = series[i - k];
    }
    for (std::size_t m = 0; m <= nn; ++m)
        sys.m0(nn, m) = boundary_sum(parity, static_cast<int>(m), series);

    if (sys.m0(nn, nn) == Real{0})
        throw numerical_error("assemble: endpoint constraint row is degenerate");
    return sys;
}

}  // namespace cauchywell
