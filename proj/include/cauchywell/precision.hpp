#pragma once

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/mpfr.hpp>

namespace cauchywell {

/// Software floating point with runtime-selectable mantissa width (MPFR).
/// Expression templates are off so BigFloat behaves like a plain scalar in
/// generic code (std::max, ternaries, comparisons against double literals).
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

[[nodiscard]] inline int bits_to_digits10(int bits)
{
    // digits10 = floor(bits * log10(2)); keep a couple of guard digits.
    return std::max(10, static_cast<int>(bits * 0.30102999566398) + 2);
}

/// Scoped default-precision switch for BigFloat. Precision is sticky on the
/// thread, so every BigFloat constructed inside the scope gets `bits`.
class PrecisionGuard {
public:
    explicit PrecisionGuard(int bits)
        : saved_(static_cast<int>(BigFloat::default_precision()))
    {
        BigFloat::default_precision(bits_to_digits10(bits));
    }
    ~PrecisionGuard() { BigFloat::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    int saved_;
};

/// Mantissa width used when refining a degree-2n solution, per the precision
/// policy: never below 64 bits, growing linearly with the truncation order.
[[nodiscard]] inline int default_precision_bits(int n)
{
    return std::max(64, 8 * n);
}

}  // namespace cauchywell
