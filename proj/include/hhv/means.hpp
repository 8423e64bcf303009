#pragma once

namespace hhv {

/// A(a,b) = (a+b)/2 for a, b >= 0.
double arithmetic_mean(double a, double b);

/// G(a,b) = sqrt(ab) for a, b >= 0; zero if either argument is zero.
double geometric_mean(double a, double b);

/// Relative gap below which L(p,q) is replaced by A(p,q).
inline constexpr double kLogMeanNearEqual = 1e-8;

/// Logarithmic mean L(p,q) = (p-q)/(ln p - ln q), L(p,p) = p, for p, q > 0.
/// When |p-q| <= 1e-8 max(p,q) returns A(p,q); the substitution error is
/// O(((p-q)/p)^2), far below double rounding.
/// Throws InvalidArgument for non-positive or non-finite arguments.
double logarithmic_mean(double p, double q);

}  // namespace hhv
