#pragma once

#include <array>
#include <vector>

namespace cauchywell {

/// Ground-state reference row: normalization C, eigenvalue E, and the leading
/// expansion coefficients alpha_2 .. alpha_16 (shorter for low degrees) of the
/// degree-`degree` approximation.
struct TableIRow {
    int degree;
    double C;
    double E;
    std::vector<double> alphas;
};

/// Eigenvalues E_1..E_5 computed with even polynomials of degree 2n and odd
/// polynomials of degree 2n+1.
struct TableIIIRow {
    int n;
    std::array<double, 5> E;
};

/// Ground-state rows for degrees 2..500.
const std::vector<TableIRow>& table_I();

/// The 250 expansion coefficients alpha_2..alpha_500 of the degree-500
/// ground-state polynomial.
const std::vector<double>& table_II();

/// First five eigenvalues per truncation order n.
const std::vector<TableIIIRow>& table_III();

/// Literature comparison values for E_1..E_5 (displayed, never regressed).
const std::array<double, 5>& table_III_literature();

}  // namespace cauchywell
