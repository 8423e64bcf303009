#pragma once

#include <cstddef>
#include <functional>

#include "hhv/funcspec.hpp"

namespace hhv {

/// Integration interval [a, b] with 0 <= a < b, both finite.
class Interval {
 public:
  /// Throws InvalidArgument unless 0 <= a < b < inf.
  Interval(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double width() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * a_ + 0.5 * b_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;   // accumulated |S_fine - S_coarse| / 15, inflated where depth ran out
  std::size_t evals = 0;
  bool converged = true;  // false when some panel hit the depth limit
};

inline constexpr int kMaxSimpsonDepth = 60;
inline constexpr double kMinQuadTolerance = 1e-13;

using Integrand = std::function<double(double)>;

/// Adaptive Simpson on [a, b] to absolute tolerance `tol` (>= 1e-13).
///
/// A panel is accepted once |S_fine - S_coarse| <= 15 tol_local, where the
/// local tolerance is split in proportion to panel width; accepted panels
/// contribute the Richardson-extrapolated S_fine + (S_fine - S_coarse)/15.
/// Panels still failing at depth 60 are accepted with the uncorrected
/// difference added to err_est and `converged` cleared.
///
/// Exceptions from the integrand and non-finite integrand values are
/// rethrown as IntegrandError carrying the abscissa.
QuadResult integrate(const Integrand& g, const Interval& iv, double tol);

/// (1/(b-a)) * integral of g over iv; err_est scaled likewise.
QuadResult mean_value(const Integrand& g, const Interval& iv, double tol);

/// (1/(b-a)) * integral of f over iv.
QuadResult mean_integral(const FunctionExpr& f, const Interval& iv, double tol);

}  // namespace hhv
