#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cauchywell/util.hpp"

namespace cauchywell {

/// Controls for the principal-value quadrature oracle.
///
/// epsilon_schedule entries are fractions of the near radius m = 1-|x|; the
/// symmetric excision (x-eps, x+eps) shrinks along the schedule and the
/// limit eps -> 0 is Richardson-extrapolated with the known error exponents
/// 1, 3, 5, ... (the excised integrand is even in the offset). The default
/// schedule is geometric with ratio 2, where the extrapolation is exact.
struct PVQuadratureSettings {
    std::vector<double> epsilon_schedule = {1.0 / 128, 1.0 / 256, 1.0 / 512,
                                            1.0 / 1024, 1.0 / 2048, 1.0 / 4096};
    double panel_tolerance = 1e-12;
    int max_depth = 15;

    void validate() const
    {
        if (panel_tolerance <= 0)
            throw std::invalid_argument("PVQuadratureSettings: panel tolerance must be > 0");
        if (epsilon_schedule.empty())
            throw std::invalid_argument("PVQuadratureSettings: empty epsilon schedule");
        double prev = 1.0;
        for (double e : epsilon_schedule) {
            if (!(e > 0) || !(e < prev))
                throw std::invalid_argument(
                    "PVQuadratureSettings: epsilon schedule must be strictly decreasing in (0,1)");
            prev = e;
        }
    }
};

/// Quadrature refinement exhausted max_depth, or the extrapolation failed to
/// settle; carries the last two estimates for diagnosis.
class quadrature_error : public numerical_error {
public:
    quadrature_error(const std::string& what, double previous, double last)
        : numerical_error(what + " (last two estimates: " + std::to_string(previous) +
                          ", " + std::to_string(last) + ")"),
          previous_(previous), last_(last) {}
    [[nodiscard]] double previous_estimate() const noexcept { return previous_; }
    [[nodiscard]] double last_estimate() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss-Legendre on [-1,1].
inline constexpr double kKronrodNodes[8] = {
    0.0,
    0.2077849550078985,  0.4058451513773972,  0.5860872354676911,
    0.7415311855993944,  0.8648644233597691,  0.9491079123427585,
    0.9914553711208126};
inline constexpr double kKronrodWeights[8] = {
    0.2094821410847278,
    0.2044329400752989,  0.1903505780647854,  0.1690047266392679,
    0.1406532597155259,  0.1047900103222502,  0.0630920926299786,
    0.0229353220105292};
inline constexpr double kGaussWeights[4] = {
    0.4179591836734694,  0.3818300505051189,  0.2797053914892767,
    0.1294849661688697};

struct Segment {
    double a;
    double b;
    double value;   // Kronrod estimate
    double error;   // |Kronrod - Gauss|
    int depth;
};

template <typename F>
Segment gk15(const F& f, double a, double b, int depth)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double kron = kKronrodWeights[0] * f0;
    double gauss = kGaussWeights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double fs = f(c - h * kKronrodNodes[i]) + f(c + h * kKronrodNodes[i]);
        kron += kKronrodWeights[i] * fs;
        if (i % 2 == 0) gauss += kGaussWeights[i / 2] * fs;
    }
    return {a, b, kron * h, std::abs(kron - gauss) * std::abs(h), depth};
}

/// Globally adaptive quadrature: bisect the worst segment until the summed
/// error estimate meets the absolute tolerance. Throws quadrature_error
/// (carrying the totals before and after the final bisection) when the worst
/// segment reaches max_depth with the target still unmet.
template <typename F>
double integrate(const F& f, double a, double b, double tol, int max_depth)
{
    std::vector<Segment> segments{gk15(f, a, b, 0)};
    double total_error = segments.front().error;
    constexpr std::size_t kMaxSegments = 4096;
    while (total_error > tol) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segments.size(); ++i)
            if (segments[i].error > segments[worst].error) worst = i;
        const Segment seg = segments[worst];
        const double mid = 0.5 * (seg.a + seg.b);
        const Segment left = gk15(f, seg.a, mid, seg.depth + 1);
        const Segment right = gk15(f, mid, seg.b, seg.depth + 1);
        if (seg.depth >= max_depth || segments.size() >= kMaxSegments) {
            double before = 0.0;
            for (const auto& s : segments) before += s.value;
            throw quadrature_error("quadrature did not converge within max depth", before,
                                   before - seg.value + left.value + right.value);
        }
        segments[worst] = left;
        segments.push_back(right);
        total_error += left.error + right.error - seg.error;
    }
    double total = 0.0;
    for (const auto& s : segments) total += s.value;
    return total;
}

}  // namespace detail

/// The Cauchy operator with exterior Dirichlet conditions, evaluated by
/// quadrature, independent of the closed-form coupling machinery:
///
///   A_D psi(x) = (2/pi) psi(x)/(1-x^2) + (1/pi) PV int_{-1}^{1}
///                (psi(x) - psi(t)) / (t-x)^2 dt.
///
/// The PV integral is split at the near radius m = 1-|x|. On the symmetric
/// window |t-x| < m the two sides are paired, h(s) = (2psi(x) - psi(x+s) -
/// psi(x-s))/s^2, which cancels the 2/eps divergence of one-sided cutoffs;
/// the excised tail [eps, m] is mapped by s = m sin(phi) so the endpoint
/// square-root behavior of psi integrates smoothly. The remaining far piece
/// is regular and mapped by t = -+cos(theta) for the same reason. psi must be
/// continuous on [-1,1] and vanish at the endpoints.
inline double apply_AD_numeric(const std::function<double(double)>& psi, double x,
                               const PVQuadratureSettings& settings = {})
{
    settings.validate();
    if (!(x > -1.0 && x < 1.0))
        throw std::domain_error("apply_AD_numeric: x must satisfy |x| < 1");

    constexpr double pi = 3.14159265358979323846;
    const double fx = psi(x);
    const double m = 1.0 - std::abs(x);

    // The paired difference 2psi(x) - psi(x+s) - psi(x-s) loses ~eps*|psi|
    // absolute accuracy to rounding, so h(s) carries irreducible noise of
    // order eps*|psi|/s^2 and the near integral cannot be resolved beyond
    // ~eps*|psi|/eps_min. Demanding less of the error estimator than this
    // floor keeps the adaptive refinement from chasing rounding noise.
    const double eps_min = settings.epsilon_schedule.back() * m;
    const double psi_scale = std::max({std::abs(fx), std::abs(psi(x + eps_min)),
                                       std::abs(psi(x - eps_min))});
    const double near_tol = std::max(
        settings.panel_tolerance,
        8.0 * std::numeric_limits<double>::epsilon() * psi_scale / eps_min);

    // Far pieces: [-1, x-m] when x > 0, [x+m, 1] when x < 0 (empty at x = 0).
    double far = 0.0;
    if (x - m > -1.0) {
        const double theta_max = std::acos(-(x - m));
        far += detail::integrate(
            [&](double theta) {
                const double t = -std::cos(theta);
                const double d = t - x;
                return (fx - psi(t)) / (d * d) * std::sin(theta);
            },
            0.0, theta_max, settings.panel_tolerance, settings.max_depth);
    }
    if (x + m < 1.0) {
        const double theta_max = std::acos(x + m);
        far += detail::integrate(
            [&](double theta) {
                const double t = std::cos(theta);
                const double d = t - x;
                return (fx - psi(t)) / (d * d) * std::sin(theta);
            },
            0.0, theta_max, settings.panel_tolerance, settings.max_depth);
    }

    // Near piece: N(eps) = int_eps^m h(s) ds under s = m sin(phi).
    const auto h = [&](double s) {
        return (2.0 * fx - psi(x + s) - psi(x - s)) / (s * s);
    };
    const auto near_from = [&](double eps) {
        const double phi0 = std::asin(eps / m);
        return detail::integrate(
            [&](double phi) {
                const double s = m * std::sin(phi);
                return h(s) * m * std::cos(phi);
            },
            phi0, 0.5 * pi, near_tol, settings.max_depth);
    };

    // Richardson extrapolation of N(eps) -> N(0) with exponents 1, 3, 5, ...
    const std::size_t levels = settings.epsilon_schedule.size();
    std::vector<std::vector<double>> T(levels);
    std::vector<double> eps_abs(levels);
    for (std::size_t j = 0; j < levels; ++j) {
        eps_abs[j] = settings.epsilon_schedule[j] * m;
        T[j].assign(j + 1, 0.0);
        T[j][0] = near_from(eps_abs[j]);
        for (std::size_t k = 1; k <= j; ++k) {
            const int p = static_cast<int>(2 * k - 1);
            const double ratio = eps_abs[j - k] / eps_abs[j];
            T[j][k] = T[j][k - 1] +
                      (T[j][k - 1] - T[j - 1][k - 1]) / (std::pow(ratio, p) - 1.0);
        }
    }
    const double near_pv = T[levels - 1][levels - 1];
    if (levels >= 2) {
        const double prev = T[levels - 2][levels - 2];
        const double scale = std::max({1.0, std::abs(near_pv), std::abs(far)});
        const double settle_tol =
            std::max(1e3 * settings.panel_tolerance, 1e2 * near_tol) * scale;
        if (std::abs(near_pv - prev) > settle_tol)
            throw quadrature_error("principal-value extrapolation did not settle", prev,
                                   near_pv);
    }

    return (2.0 / pi) * fx / (1.0 - x * x) + (near_pv + far) / pi;
}

}  // namespace cauchywell
