#include "hhv/means.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hhv/error.hpp"

namespace hhv {

namespace {

void require_nonnegative(double a, double b, const char* who) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument(std::string(who) + ": arguments must be finite and >= 0");
  }
}

// All means are evaluated on (min, max) so that symmetry holds bitwise.
std::pair<double, double> ordered(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

double arithmetic_mean(double a, double b) {
  require_nonnegative(a, b, "arithmetic_mean");
  const auto [lo, hi] = ordered(a, b);
  return 0.5 * lo + 0.5 * hi;
}

double geometric_mean(double a, double b) {
  require_nonnegative(a, b, "geometric_mean");
  const auto [lo, hi] = ordered(a, b);
  if (lo == 0.0) return 0.0;
  if (lo == hi) return lo;
  // sqrt(lo)*sqrt(hi) cannot overflow for finite inputs.
  return std::sqrt(lo) * std::sqrt(hi);
}

double logarithmic_mean(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw InvalidArgument("logarithmic_mean: arguments must be finite and > 0");
  }
  const auto [lo, hi] = ordered(p, q);
  if (lo == hi) return lo;
  const double gap = hi - lo;
  if (gap <= kLogMeanNearEqual * hi) return 0.5 * lo + 0.5 * hi;
  // ln(hi) - ln(lo) = log1p(gap/lo) keeps the denominator accurate for close arguments.
  const double ratio = gap / lo;
  if (std::isfinite(ratio)) return gap / std::log1p(ratio);
  return gap / (std::log(hi) - std::log(lo));
}

}  // namespace hhv
