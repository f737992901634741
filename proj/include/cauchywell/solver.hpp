#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cauchywell/eigensystem.hpp"
#include "cauchywell/series.hpp"
#include "cauchywell/util.hpp"
#include "cauchywell/weighted.hpp"

namespace cauchywell {

/// One normalized solution of the truncated eigenproblem: alphas[0] = 1 and
/// norm_c > 0, so signs are canonical. rank counts real solutions of the same
/// parity/degree in increasing E, starting at 1.
struct SpectralSolution {
    Parity parity = Parity::even;
    int degree = 0;
    int rank = 0;
    double E = 0.0;
    std::vector<double> alphas;
    double norm_c = 0.0;
    /// Largest relative imaginary part seen in the accepted eigenpair.
    double imag_residue = 0.0;
    /// Mantissa bits of the arithmetic that produced E (53 = machine).
    int precision_bits = 53;
    /// Decimal E at full working precision when refined beyond double.
    std::optional<std::string> E_str;

    [[nodiscard]] WeightedPolynomial<double> wavefunction() const
    {
        return {parity, alphas, norm_c};
    }
};

struct SolveOutcome {
    std::vector<SpectralSolution> solutions;  ///< real spectrum, ascending E
    int discarded = 0;                        ///< complex or degenerate pairs dropped
};

/// Endpoint-constraint defect |sum_m S_m alpha_m| of a solution; exact
/// eigenvectors of the pencil satisfy the constraint row identically.
[[nodiscard]] inline double boundary_residual(Parity parity, const std::vector<double>& alphas)
{
    const int n = static_cast<int>(alphas.size()) - 1;
    const auto series = sqrt_series<double>(n);
    double acc = 0.0;
    for (int m = 0; m <= n; ++m) acc += boundary_sum(parity, m, series) * alphas[m];
    return std::abs(acc);
}

/// Full real spectrum of one parity/degree truncation in machine precision.
///
/// The singular pencil (M1's constraint row is zero) is reduced to an
/// ordinary n x n eigenproblem: the constraint eliminates the top
/// coefficient, and the remaining M1 block is unit lower triangular, so one
/// outer-product update plus a forward substitution produce G with the same
/// finite spectrum. Eigenpairs whose relative imaginary part exceeds
/// imag_tol, or whose leading coefficient vanishes, are discarded.
[[nodiscard]] inline SolveOutcome solve_all(Parity parity, int degree, double imag_tol = 1e-8)
{
    const auto sys = assemble<double>(parity, degree);
    const std::size_t n = sys.size() - 1;

    std::vector<double> s(n + 1);
    for (std::size_t k = 0; k <= n; ++k) s[k] = sys.m0(n, k);

    Eigen::MatrixXd g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                sys.m0(i, k) - sys.m0(i, n) * s[k] / s[n];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k)
            g.row(static_cast<Eigen::Index>(i)) -=
                sys.m1(i, k) * g.row(static_cast<Eigen::Index>(k));

    Eigen::EigenSolver<Eigen::MatrixXd> es(g);
    if (es.info() != Eigen::Success)
        throw numerical_error("solve_all: eigensolver failed to converge");

    SolveOutcome out;
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
        const std::complex<double> lambda = es.eigenvalues()(j);
        Eigen::VectorXcd v = es.eigenvectors().col(j);
        if (std::abs(v(0)) < 1e-300) {
            ++out.discarded;
            continue;
        }
        v /= v(0);
        double max_re = 0.0;
        double max_im = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            max_re = std::max(max_re, std::abs(v(i).real()));
            max_im = std::max(max_im, std::abs(v(i).imag()));
        }
        const double residue = std::max(std::abs(lambda.imag()) / (1.0 + std::abs(lambda.real())),
                                        max_im / (1.0 + max_re));
        if (residue > imag_tol) {
            ++out.discarded;
            continue;
        }

        SpectralSolution sol;
        sol.parity = parity;
        sol.degree = degree;
        sol.E = lambda.real();
        sol.imag_residue = residue;
        sol.alphas.resize(n + 1);
        for (std::size_t i = 0; i < n; ++i)
            sol.alphas[i] = v(static_cast<Eigen::Index>(i)).real();
        double top = 0.0;
        for (std::size_t i = 0; i < n; ++i) top += s[i] * sol.alphas[i];
        sol.alphas[n] = -top / s[n];
        sol.norm_c = 1.0 / std::sqrt(norm_integral(parity, sol.alphas));
        out.solutions.push_back(std::move(sol));
    }

    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const SpectralSolution& a, const SpectralSolution& b) { return a.E < b.E; });
    for (std::size_t r = 0; r < out.solutions.size(); ++r)
        out.solutions[r].rank = static_cast<int>(r) + 1;
    return out;
}

/// The rank-th real solution (1-based, ascending E); throws rank_unavailable
/// when fewer real solutions exist.
[[nodiscard]] inline SpectralSolution select(const SolveOutcome& outcome, int rank)
{
    if (rank < 1) throw std::invalid_argument("select: rank must be >= 1");
    if (static_cast<std::size_t>(rank) > outcome.solutions.size())
        throw rank_unavailable(rank, static_cast<int>(outcome.solutions.size()));
    return outcome.solutions[static_cast<std::size_t>(rank) - 1];
}

/// Convenience: solve and select in one step.
[[nodiscard]] inline SpectralSolution solve(Parity parity, int degree, int rank = 1,
                                            double imag_tol = 1e-8)
{
    return select(solve_all(parity, degree, imag_tol), rank);
}

}  // namespace cauchywell
