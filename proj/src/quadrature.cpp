#include "hhv/quadrature.hpp"

#include <cmath>
#include <limits>

#include "hhv/error.hpp"

namespace hhv {

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a >= 0.0) || !(a < b)) {
    throw InvalidArgument("interval requires 0 <= a < b (got a = " + std::to_string(a) +
                          ", b = " + std::to_string(b) + ")");
  }
}

namespace {

class Simpson {
 public:
  explicit Simpson(const Integrand& g) : g_(g) {}

  double eval(double x) {
    ++result_.evals;
    double v;
    try {
      v = g_(x);
    } catch (const IntegrandError&) {
      throw;
    } catch (const Error& e) {
      throw IntegrandError(e.what(), x);
    }
    if (!std::isfinite(v)) throw IntegrandError("non-finite integrand value", x);
    return v;
  }

  void panel(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double fine = left + right;
    const double delta = fine - whole;
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));

    // Panels that can no longer be bisected or whose difference is pure
    // rounding noise are accepted as they are.
    const bool unsplittable = !(a < lm && lm < m && m < rm && rm < b);
    if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= roundoff || unsplittable) {
      result_.value += fine + delta / 15.0;
      result_.err_est += std::abs(delta) / 15.0;
      return;
    }
    if (depth >= kMaxSimpsonDepth) {
      result_.value += fine + delta / 15.0;
      result_.err_est += std::abs(delta);
      result_.converged = false;
      return;
    }
    panel(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    panel(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  QuadResult run(double a, double b, double tol) {
    const double fa = eval(a);
    const double m = 0.5 * (a + b);
    const double fm = eval(m);
    const double fb = eval(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    panel(a, b, fa, fm, fb, whole, tol, 0);
    return result_;
  }

 private:
  const Integrand& g_;
  QuadResult result_;
};

}  // namespace

QuadResult integrate(const Integrand& g, const Interval& iv, double tol) {
  if (!(tol >= kMinQuadTolerance) || !std::isfinite(tol)) {
    throw InvalidArgument("integrate: tol must be finite and >= 1e-13");
  }
  return Simpson(g).run(iv.a(), iv.b(), tol);
}

QuadResult mean_value(const Integrand& g, const Interval& iv, double tol) {
  QuadResult r = integrate(g, iv, tol);
  r.value /= iv.width();
  r.err_est /= iv.width();
  return r;
}

QuadResult mean_integral(const FunctionExpr& f, const Interval& iv, double tol) {
  return mean_value([&f](double x) { return f(x); }, iv, tol);
}

}  // namespace hhv
