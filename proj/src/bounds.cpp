#include "hhv/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "hhv/error.hpp"
#include "hhv/means.hpp"

namespace hhv {

namespace {

void require_m(double m) {
  if (!(m > 0.0 && m <= 1.0)) throw InvalidArgument("m must lie in (0, 1]");
}

double log_f(const FunctionExpr& f, double x) { return std::log(f(x)); }

// v^m, exact passthrough for m = 1.
double pow_m(double v, double m) { return m == 1.0 ? v : std::exp(m * std::log(v)); }

// L(e^u, e^v) via homogeneity, so large exponents only overflow if the mean does.
double log_mean_of_exps(double u, double v) {
  const double hi = std::max(u, v);
  const double scale = std::exp(hi);
  if (!std::isfinite(scale)) throw DomainError("logarithmic mean overflows", hi);
  return scale * logarithmic_mean(std::exp(u - hi), std::exp(v - hi));
}

double scaled(double log_weight, double factor) {
  const double v = std::exp(log_weight) * factor;
  if (!std::isfinite(v)) throw DomainError("bound overflows", log_weight);
  return v;
}

// Endpoint data shared by the closed-form right-hand sides.
struct Endpoints {
  double log_fa, log_fb, log_fam, log_fbm;
};

Endpoints endpoints(const FunctionExpr& f, const Interval& iv, double m) {
  require_m(m);
  return {log_f(f, iv.a()), log_f(f, iv.b()), log_f(f, iv.a() / m), log_f(f, iv.b() / m)};
}

QuadResult reflected_geometric_mean(const FunctionExpr& f, const Interval& iv, double tol) {
  const double sum = iv.a() + iv.b();
  return mean_value([&](double x) { return geometric_mean(f(x), f(sum - x)); }, iv, tol);
}

}  // namespace

std::string to_string(InapplicableReason reason) {
  switch (reason) {
    case InapplicableReason::RatioAboveOne: return "ratio_above_one";
    case InapplicableReason::HypothesisUnchecked: return "hypothesis_unchecked";
  }
  return "unknown";
}

std::string to_string(Variant v) { return v == Variant::Printed ? "printed" : "corrected"; }

RatioSet ratio_set(const FunctionExpr& f, const Interval& iv, double m) {
  const Endpoints e = endpoints(f, iv, m);
  const double log_phi = e.log_fa - m * e.log_fbm;
  const double log_ell = e.log_fb - m * e.log_fam;
  return {std::exp(log_phi), std::exp(log_ell), std::exp(log_phi + log_ell)};
}

BoundSide exp_mean_factor(double r, double alpha) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("exp_mean_factor: ratio must be finite and > 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("exp_mean_factor: alpha must lie in (0, 1]");
  if (std::abs(r - 1.0) <= kRatioUnitTol) return BoundSide::of(1.0);
  if (r > 1.0) return BoundSide::inapplicable(InapplicableReason::RatioAboveOne);
  const double s = alpha * std::log(r);
  return BoundSide::of(std::expm1(s) / s);
}

Eq4Bound bound_eq4(const FunctionExpr& f, const Interval& iv, double m, double tol) {
  const Endpoints e = endpoints(f, iv, m);
  const double first = log_mean_of_exps(e.log_fa, m * e.log_fbm);
  const double second = log_mean_of_exps(e.log_fb, m * e.log_fam);
  return {mean_integral(f, iv, tol), BoundSide::of(std::min(first, second))};
}

Eq11Bound bound_eq11_pair(const FunctionExpr& f, const Interval& iv, double m, double tol) {
  require_m(m);
  const double sum = iv.a() + iv.b();
  const QuadResult rhs =
      mean_value([&](double x) { return geometric_mean(f(x), pow_m(f((sum - x) / m), m)); }, iv, tol);
  return {f(iv.midpoint()), rhs};
}

Eq22Bound bound_eq22_pair(const FunctionExpr& f, const Interval& iv, double m, double tol, Variant variant) {
  const Endpoints e = endpoints(f, iv, m);
  const double inner = e.log_fa + e.log_fb;
  const double outer = m * (e.log_fam + e.log_fbm);
  const double rhs = variant == Variant::Printed ? log_mean_of_exps(inner, outer)
                                                 : log_mean_of_exps(0.5 * inner, 0.5 * outer);
  return {reflected_geometric_mean(f, iv, tol), BoundSide::of(rhs)};
}

Eq31Bound bound_eq31(const FunctionExpr& f, const Interval& iv, const ClassParams& params, double tol) {
  const double m = params.m();
  const Endpoints e = endpoints(f, iv, m);
  const double phi = std::exp(e.log_fa - m * e.log_fbm);
  const double ell = std::exp(e.log_fb - m * e.log_fam);

  Eq31Bound out{mean_integral(f, iv, tol), {}, {}, {}};
  const BoundSide mf = exp_mean_factor(phi, params.alpha());
  const BoundSide tf = exp_mean_factor(ell, params.alpha());
  out.branch_b = mf.applicable() ? BoundSide::of(scaled(m * e.log_fbm, *mf.value)) : mf;
  out.branch_a = tf.applicable() ? BoundSide::of(scaled(m * e.log_fam, *tf.value)) : tf;
  if (out.branch_b.applicable() && out.branch_a.applicable()) {
    out.rhs = BoundSide::of(std::min(*out.branch_b.value, *out.branch_a.value));
  } else if (out.branch_b.applicable()) {
    out.rhs = out.branch_b;
  } else if (out.branch_a.applicable()) {
    out.rhs = out.branch_a;
  } else {
    out.rhs = BoundSide::inapplicable(InapplicableReason::RatioAboveOne);
  }
  return out;
}

Eq22Bound bound_eq42(const FunctionExpr& f, const Interval& iv, const ClassParams& params, double tol,
                     Variant variant) {
  const double m = params.m();
  const Endpoints e = endpoints(f, iv, m);
  const double log_weight = m * (e.log_fam + e.log_fbm);
  const double log_theta = e.log_fa + e.log_fb - log_weight;
  const double shrink = variant == Variant::Printed ? 1.0 : 0.5;
  const BoundSide s = exp_mean_factor(std::exp(shrink * log_theta), params.alpha());
  BoundSide rhs = s.applicable() ? BoundSide::of(scaled(shrink * log_weight, *s.value)) : s;
  return {reflected_geometric_mean(f, iv, tol), rhs};
}

ChainValues chain_dr1(const FunctionExpr& f, const Interval& iv, double tol) {
  const QuadResult mid = reflected_geometric_mean(f, iv, tol);
  return {
      {"f(A(a,b))", f(arithmetic_mean(iv.a(), iv.b())), 0.0},
      {"mean G(f(x),f(a+b-x))", mid.value, mid.err_est},
      {"G(f(a),f(b))", geometric_mean(f(iv.a()), f(iv.b())), 0.0},
  };
}

ChainValues chain_dr2(const FunctionExpr& f, const Interval& iv, double tol) {
  const QuadResult log_mean = mean_value([&](double x) { return log_f(f, x); }, iv, tol);
  const double geo = std::exp(log_mean.value);
  const QuadResult reflected = reflected_geometric_mean(f, iv, tol);
  const QuadResult plain = mean_integral(f, iv, tol);
  const double fa = f(iv.a());
  const double fb = f(iv.b());
  return {
      {"f((a+b)/2)", f(iv.midpoint()), 0.0},
      {"exp(mean ln f)", geo, geo * log_mean.err_est},
      {"mean G(f(x),f(a+b-x))", reflected.value, reflected.err_est},
      {"mean f", plain.value, plain.err_est},
      {"L(f(a),f(b))", logarithmic_mean(fa, fb), 0.0},
      {"A(f(a),f(b))", arithmetic_mean(fa, fb), 0.0},
  };
}

}  // namespace hhv
