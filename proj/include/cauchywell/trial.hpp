#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cauchywell/operator_closed.hpp"
#include "cauchywell/polynomial.hpp"
#include "cauchywell/series.hpp"
#include "cauchywell/util.hpp"
#include "cauchywell/weighted.hpp"

namespace cauchywell {

inline constexpr double kPi = 3.14159265358979323846;
/// Granularity of the trial parameter: theta = theta_num * pi / 4096.
inline constexpr int kThetaDenominator = 4096;
inline constexpr int kDefaultGammaTerms = 15;

enum class TrialKind { ground_cos, excited_sin_cos };

[[nodiscard]] inline const char* to_string(TrialKind k)
{
    return k == TrialKind::ground_cos ? "ground" : "excited";
}

/// Analytic trial state with parameter theta = theta_num * pi / 4096:
///   ground:  psi(x)  =  C sqrt((1-x^2) cos(theta x))          (even)
///   excited: psi2(x) = -C sin(theta x) sqrt((1-x^2) cos(theta x))  (odd)
/// The excited form keeps its published leading minus; canonical signs are a
/// solver-module concern. theta_num < 2048 keeps cos(theta x) positive on
/// the interval. gamma_terms truncates all series views of the state.
struct TrialFunction {
    TrialKind kind = TrialKind::ground_cos;
    int theta_num = 0;
    int gamma_terms = kDefaultGammaTerms;
    double norm_c = 0.0;

    [[nodiscard]] double theta() const { return theta_num * kPi / kThetaDenominator; }
    [[nodiscard]] Parity parity() const
    {
        return kind == TrialKind::ground_cos ? Parity::even : Parity::odd;
    }
    [[nodiscard]] double sign() const
    {
        return kind == TrialKind::ground_cos ? 1.0 : -1.0;
    }
};

/// Exact (non-truncated) pointwise value of the trial state; zero outside
/// [-1,1] per the exterior Dirichlet condition.
[[nodiscard]] inline double evaluate_trial(const TrialFunction& trial, double x)
{
    if (x > 1.0 || x < -1.0) return 0.0;
    const double t = trial.theta() * x;
    const double core = std::sqrt((1.0 - x * x) * std::cos(t));
    if (trial.kind == TrialKind::ground_cos) return trial.norm_c * core;
    return -trial.norm_c * std::sin(t) * core;
}

namespace detail {

/// Gauss-Legendre nodes/weights on [-1,1] by the Jacobi-matrix eigenproblem.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule gauss_legendre(int order)
{
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k - 1, k) = b;
        jacobi(k, k - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    for (int j = 0; j < order; ++j) {
        rule.nodes[static_cast<std::size_t>(j)] = es.eigenvalues()(j);
        const double v0 = es.eigenvectors()(0, j);
        rule.weights[static_cast<std::size_t>(j)] = 2.0 * v0 * v0;
    }
    return rule;
}

/// Integrate f over [-1,1] by Gauss-Legendre with order doubling until two
/// consecutive estimates agree to the tolerance.
inline double gauss_integrate(const std::function<double(double)>& f, double tolerance)
{
    double previous = 0.0;
    for (int order = 16; order <= 256; order *= 2) {
        const auto rule = gauss_legendre(order);
        double acc = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            acc += rule.weights[j] * f(rule.nodes[j]);
        if (order > 16 && std::abs(acc - previous) <= tolerance * std::max(1.0, std::abs(acc)))
            return acc;
        previous = acc;
    }
    throw numerical_error("gauss_integrate: order doubling did not reach tolerance");
}

/// Compressed coefficients (powers of x^2) of cos(theta x), length terms.
inline std::vector<double> cos_series(double theta, int terms)
{
    std::vector<double> a(static_cast<std::size_t>(terms), 0.0);
    double value = 1.0;
    for (int j = 0; j < terms; ++j) {
        a[static_cast<std::size_t>(j)] = value;
        value *= -theta * theta / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
    }
    return a;
}

/// Compressed coefficients of sin(theta x)/x (powers of x^2), length terms.
inline std::vector<double> sinc_series(double theta, int terms)
{
    std::vector<double> a(static_cast<std::size_t>(terms), 0.0);
    double value = theta;
    for (int j = 0; j < terms; ++j) {
        a[static_cast<std::size_t>(j)] = value;
        value *= -theta * theta / ((2.0 * j + 2.0) * (2.0 * j + 3.0));
    }
    return a;
}

/// Power-series square root of an even series with a(0) = 1.
inline std::vector<double> series_sqrt(const std::vector<double>& a)
{
    std::vector<double> b(a.size(), 0.0);
    b[0] = 1.0;
    for (std::size_t n = 1; n < a.size(); ++n) {
        double acc = a[n];
        for (std::size_t j = 1; j < n; ++j) acc -= b[j] * b[n - j];
        b[n] = acc / 2.0;
    }
    return b;
}

inline std::vector<double> series_multiply(const std::vector<double>& a,
                                           const std::vector<double>& b, std::size_t terms)
{
    std::vector<double> out(terms, 0.0);
    for (std::size_t i = 0; i < a.size() && i < terms; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < terms; ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace detail

/// Taylor coefficients of the trigonometric factor of the trial state:
/// sqrt(cos(theta x)) in powers of x^2 (ground) or sin(theta x)
/// sqrt(cos(theta x)) in odd powers packed as entry n <-> x^{2n+1} (excited).
/// These are plain Taylor values — the leading excited minus and the
/// normalization are not included.
[[nodiscard]] inline std::vector<double> gamma_series(const TrialFunction& trial)
{
    const auto terms = static_cast<std::size_t>(trial.gamma_terms);
    const auto root = detail::series_sqrt(detail::cos_series(trial.theta(), trial.gamma_terms));
    if (trial.kind == TrialKind::ground_cos) return root;
    return detail::series_multiply(detail::sinc_series(trial.theta(), trial.gamma_terms), root,
                                   terms);
}

/// The gamma-truncated polynomial view of the trial state, exact in the
/// sqrt(1-x^2) factor: psi ~ C sqrt(1-x^2) sum_n alphas[n] x^{e(n)} with the
/// excited minus folded into the coefficients.
[[nodiscard]] inline WeightedPolynomial<double> as_weighted(const TrialFunction& trial)
{
    auto alphas = gamma_series(trial);
    if (trial.sign() < 0)
        for (double& a : alphas) a = -a;
    return {trial.parity(), std::move(alphas), trial.norm_c};
}

/// Trial state with norm_c fixed by the exact L^2 integral, computed by
/// Gauss-Legendre after x = sin u (the substitution absorbs the endpoint
/// square roots, making the integrand entire).
[[nodiscard]] inline TrialFunction make_trial(TrialKind kind, int theta_num,
                                              int gamma_terms = kDefaultGammaTerms)
{
    if (theta_num < 0 || theta_num >= kThetaDenominator / 2)
        throw std::domain_error("make_trial: theta_num must lie in [0, 2048)");
    if (kind == TrialKind::excited_sin_cos && theta_num == 0)
        throw std::domain_error("make_trial: the excited trial vanishes at theta_num = 0");
    if (gamma_terms < 1)
        throw std::domain_error("make_trial: gamma_terms must be >= 1");

    TrialFunction trial{kind, theta_num, gamma_terms, 1.0};
    const double theta = trial.theta();
    const auto square = [&](double x) {
        const double c = std::cos(theta * x);
        const double s = std::sin(theta * x);
        const double base = (1.0 - x * x) * c;
        return kind == TrialKind::ground_cos ? base : s * s * base;
    };
    const double integral = detail::gauss_integrate(
        [&](double u) {
            const double x = std::sin(u * kPi / 2.0);
            return square(x) * std::cos(u * kPi / 2.0) * kPi / 2.0;
        },
        1e-10);
    trial.norm_c = 1.0 / std::sqrt(integral);
    return trial;
}

/// Taylor coefficients of psi about 0, including the normalization and the
/// excited minus; entry n multiplies x^{2n} (even) or x^{2n+1} (odd). Length
/// is gamma_terms.
[[nodiscard]] inline std::vector<double> expand_trial(const TrialFunction& trial)
{
    const auto weighted = as_weighted(trial);
    const auto series = sqrt_series<double>(trial.gamma_terms - 1);
    auto out = detail::series_multiply(weighted.alphas, series.coeffs,
                                       static_cast<std::size_t>(trial.gamma_terms));
    for (double& c : out) c *= trial.norm_c;
    return out;
}

/// Closed-form image C sum_n gamma_n A_D[x^{e(n)} sqrt(1-x^2)] of the
/// gamma-truncated trial state, as a dense polynomial.
[[nodiscard]] inline PlainPolynomial<double> apply_AD_trial(const TrialFunction& trial)
{
    auto image = to_dense(apply_AD_closed(as_weighted(trial)), trial.parity());
    for (double& c : image.coeffs) c *= trial.norm_c;
    return image;
}

/// Pointwise defect of a candidate eigenpair: sup over a Chebyshev-clustered
/// grid of |A_D psi - E psi|, plus the two endpoint limits where psi itself
/// vanishes and the image magnitude is the whole story.
struct ResidualReport {
    double sup = 0.0;           ///< max of grid_sup and the endpoint limits
    double sup_location = 0.0;  ///< abscissa attaining sup
    double grid_sup = 0.0;
    double boundary_upper = 0.0;  ///< |A_D psi(+1)|
    double boundary_lower = 0.0;  ///< |A_D psi(-1)|
    int grid_points = 0;
};

[[nodiscard]] inline ResidualReport residual_report(
    const std::function<double(double)>& psi, const std::function<double(double)>& ad_psi,
    double e, int grid_points)
{
    if (grid_points < 2)
        throw std::invalid_argument("residual_report: grid_points must be >= 2");
    ResidualReport report;
    report.grid_points = grid_points;
    for (int j = 1; j <= grid_points; ++j) {
        const double x = std::cos(kPi * (2 * j - 1) / (2.0 * grid_points));
        const double r = std::abs(ad_psi(x) - e * psi(x));
        if (r > report.grid_sup) {
            report.grid_sup = r;
            report.sup_location = x;
        }
    }
    report.boundary_upper = std::abs(ad_psi(1.0));
    report.boundary_lower = std::abs(ad_psi(-1.0));
    report.sup = report.grid_sup;
    if (report.boundary_upper > report.sup) {
        report.sup = report.boundary_upper;
        report.sup_location = 1.0;
    }
    if (report.boundary_lower > report.sup) {
        report.sup = report.boundary_lower;
        report.sup_location = -1.0;
    }
    return report;
}

/// residual_report for a trial state against a candidate eigenvalue: the
/// exact trigonometric psi versus its gamma-truncated operator image.
[[nodiscard]] inline ResidualReport trial_residual(const TrialFunction& trial, double e,
                                                   int grid_points)
{
    const auto image = apply_AD_trial(trial);
    return residual_report([&](double x) { return evaluate_trial(trial, x); },
                           [&](double x) { return image(x); }, e, grid_points);
}

struct SweepPoint {
    int theta_num = 0;
    double sup = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    SweepPoint best;
};

/// Residual supremum across a range of trial parameters; best holds the
/// argmin (first of equals). Points are independent and run concurrently.
[[nodiscard]] inline SweepResult sweep(TrialKind kind, int theta_from, int theta_to, double e,
                                       int grid_points, int gamma_terms = kDefaultGammaTerms)
{
    if (theta_from > theta_to)
        throw std::invalid_argument("sweep: empty theta range");
    SweepResult result;
    result.points.resize(static_cast<std::size_t>(theta_to - theta_from) + 1);
    parallel_for(result.points.size(), [&](std::size_t i) {
        const int theta_num = theta_from + static_cast<int>(i);
        const auto trial = make_trial(kind, theta_num, gamma_terms);
        result.points[i] = {theta_num, trial_residual(trial, e, grid_points).sup};
    });
    result.best = result.points.front();
    for (const auto& p : result.points)
        if (p.sup < result.best.sup) result.best = p;
    return result;
}

}  // namespace cauchywell
