#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cauchywell/eigensystem.hpp"
#include "cauchywell/precision.hpp"
#include "cauchywell/solver.hpp"
#include "cauchywell/util.hpp"

namespace cauchywell {

struct RefineSettings {
    /// Mantissa bits; 0 defers to the per-degree policy default.
    int precision_bits = 0;
    int max_iterations = 60;
    /// Imaginary-part tolerance for the machine-precision seed solve.
    double imag_tol = 1e-8;
};

namespace detail {

/// Partial-pivot LU; ipiv[k] is the row swapped into position k.
template <typename Real>
struct LUFactors {
    Mat<Real> lu;
    std::vector<std::size_t> ipiv;
};

template <typename Real>
[[nodiscard]] LUFactors<Real> lu_factor(Mat<Real> a)
{
    using std::abs;
    const std::size_t n = a.rows;
    std::vector<std::size_t> ipiv(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (abs(a(r, col)) > abs(a(pivot, col))) pivot = r;
        ipiv[col] = pivot;
        if (a(pivot, col) == Real{0})
            throw numerical_error("lu_factor: matrix is singular to working precision");
        if (pivot != col)
            for (std::size_t k = 0; k < n; ++k) std::swap(a(col, k), a(pivot, k));
        for (std::size_t r = col + 1; r < n; ++r) {
            const Real f = a(r, col) / a(col, col);
            a(r, col) = f;
            for (std::size_t k = col + 1; k < n; ++k) a(r, k) -= f * a(col, k);
        }
    }
    return {std::move(a), std::move(ipiv)};
}

template <typename Real>
[[nodiscard]] std::vector<Real> lu_solve(const LUFactors<Real>& f, std::vector<Real> b)
{
    const std::size_t n = f.lu.rows;
    for (std::size_t k = 0; k < n; ++k)
        if (f.ipiv[k] != k) std::swap(b[k], b[f.ipiv[k]]);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) b[i] -= f.lu(i, k) * b[k];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) b[i] -= f.lu(i, k) * b[k];
        b[i] /= f.lu(i, i);
    }
    return b;
}

}  // namespace detail

/// Polish a machine-precision solution in software floating point.
///
/// Newton's method drives det(M0 - E M1) to zero through the identity
/// dE = 1 / tr((M0 - E M1)^{-1} M1), which needs one LU factorization per
/// step and never forms the determinant itself. The eigenvector then comes
/// from the Taylor-matching rows alone with alpha_0 pinned to 1; the
/// endpoint-constraint row, not used in that solve, is satisfied to the
/// accuracy of the converged E.
[[nodiscard]] inline SpectralSolution refine_from(const SpectralSolution& seed,
                                                  const RefineSettings& settings = {})
{
    const int n = top_index(seed.parity, seed.degree);
    const int bits = settings.precision_bits > 0 ? settings.precision_bits
                                                 : default_precision_bits(n);
    PrecisionGuard guard(bits);

    const auto sys = assemble<BigFloat>(seed.parity, seed.degree);
    const std::size_t nn = static_cast<std::size_t>(n);

    BigFloat e{seed.E};
    const BigFloat rel_tol = ldexp(BigFloat{1}, -(bits - 8));
    bool converged = false;
    BigFloat last_step{0};
    BigFloat prev_step{0};
    for (int iter = 0; iter < settings.max_iterations && !converged; ++iter) {
        Mat<BigFloat> a(nn + 1, nn + 1);
        for (std::size_t i = 0; i <= nn; ++i)
            for (std::size_t k = 0; k <= nn; ++k)
                a(i, k) = sys.m0(i, k) - e * sys.m1(i, k);
        const auto lu = detail::lu_factor(std::move(a));

        BigFloat trace{0};
        std::vector<BigFloat> col(nn + 1);
        for (std::size_t j = 0; j <= nn; ++j) {
            bool nonzero = false;
            for (std::size_t i = 0; i <= nn; ++i) {
                col[i] = sys.m1(i, j);
                nonzero = nonzero || col[i] != 0;
            }
            if (!nonzero) continue;
            trace += detail::lu_solve(lu, col)[j];
        }
        if (trace == 0)
            throw numerical_error("refine: Newton derivative vanished");
        prev_step = last_step;
        last_step = 1 / trace;
        e += last_step;
        const BigFloat scale = std::max(BigFloat{1}, abs(e));
        converged = abs(last_step) <= rel_tol * scale;
        // Quadratic contraction halts at the rounding floor of the trace;
        // accept a stalled step once it is far below sqrt(ulp) scale.
        if (!converged && iter >= 2 && abs(last_step) <= ldexp(scale, -(bits / 2)) &&
            abs(last_step) >= abs(prev_step) / 2)
            converged = true;
    }
    if (!converged)
        throw numerical_error("refine: Newton did not converge, last step " +
                              last_step.str(6));
    if (abs(e - seed.E) > 1e-8 * std::max(BigFloat{1}, abs(e)))
        throw numerical_error("refine: converged away from the seeded eigenvalue");

    // Eigenvector from the Taylor-matching rows with alpha_0 = 1.
    Mat<BigFloat> b(nn, nn);
    std::vector<BigFloat> rhs(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t k = 1; k <= nn; ++k)
            b(i, k - 1) = sys.m0(i, k) - e * sys.m1(i, k);
        rhs[i] = -(sys.m0(i, 0) - e * sys.m1(i, 0));
    }
    const auto tail = detail::lu_solve(detail::lu_factor(std::move(b)), std::move(rhs));

    std::vector<BigFloat> alphas;
    alphas.reserve(nn + 1);
    alphas.push_back(BigFloat{1});
    alphas.insert(alphas.end(), tail.begin(), tail.end());
    const BigFloat c = 1 / sqrt(norm_integral(seed.parity, alphas));

    SpectralSolution sol;
    sol.parity = seed.parity;
    sol.degree = seed.degree;
    sol.rank = seed.rank;
    sol.E = static_cast<double>(e);
    sol.alphas.resize(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i)
        sol.alphas[i] = static_cast<double>(alphas[i]);
    sol.norm_c = static_cast<double>(c);
    sol.imag_residue = 0.0;
    sol.precision_bits = bits;
    sol.E_str = e.str(bits_to_digits10(bits));
    return sol;
}

/// Solve at machine precision, then refine the rank-th solution.
[[nodiscard]] inline SpectralSolution refine(Parity parity, int degree, int rank = 1,
                                             const RefineSettings& settings = {})
{
    return refine_from(select(solve_all(parity, degree, settings.imag_tol), rank), settings);
}

}  // namespace cauchywell
