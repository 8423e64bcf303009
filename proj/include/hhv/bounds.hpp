#pragma once

// Left- and right-hand sides of the Hadamard-type inequalities for m- and
// (alpha,m)-logarithmically convex functions, and of the two classical
// chains for log-convex functions. Integral sides come from adaptive Simpson;
// closed-form sides carry err_est = 0.
//
// Products and powers of function values are formed from logarithms.

#include <optional>
#include <string>
#include <vector>

#include "hhv/classify.hpp"
#include "hhv/funcspec.hpp"
#include "hhv/quadrature.hpp"

namespace hhv {

/// phi = f(a)/f(b/m)^m, ell = f(b)/f(a/m)^m, theta = phi*ell.
struct RatioSet {
  double phi = 1.0;
  double ell = 1.0;
  double theta = 1.0;
};

RatioSet ratio_set(const FunctionExpr& f, const Interval& iv, double m);

enum class InapplicableReason { RatioAboveOne, HypothesisUnchecked };

std::string to_string(InapplicableReason reason);

/// A bound value, or the reason it is undefined.
struct BoundSide {
  std::optional<double> value;
  double err_est = 0.0;
  std::optional<InapplicableReason> reason;  // set iff value is absent

  bool applicable() const noexcept { return value.has_value(); }

  static BoundSide of(double v, double err = 0.0) { return {v, err, std::nullopt}; }
  static BoundSide inapplicable(InapplicableReason r) { return {std::nullopt, 0.0, r}; }
};

inline constexpr double kRatioUnitTol = 1e-14;

/// Integral of r^(alpha t) over t in [0,1]: 1 when r == 1 (to 1e-14 relative),
/// (r^alpha - 1)/(alpha ln r) for 0 < r < 1, inapplicable (RatioAboveOne) for r > 1.
/// Serves as M(alpha), T(alpha) and S(alpha).
BoundSide exp_mean_factor(double r, double alpha);

enum class Variant { Printed, Corrected };

std::string to_string(Variant v);

struct Eq4Bound {
  QuadResult lhs;  // (1/(b-a)) int_a^b f
  BoundSide rhs;   // min{ L(f(a), f(b/m)^m), L(f(b), f(a/m)^m) }
};

/// Mean of f against the logarithmic-mean bound for m-log-convex f.
Eq4Bound bound_eq4(const FunctionExpr& f, const Interval& iv, double m, double tol);

struct Eq11Bound {
  double lhs = 0.0;  // f((a+b)/2)
  QuadResult rhs;    // (1/(b-a)) int_a^b G(f(x), f((a+b-x)/m)^m) dx
};

Eq11Bound bound_eq11_pair(const FunctionExpr& f, const Interval& iv, double m, double tol);

struct Eq22Bound {
  QuadResult lhs;  // (1/(b-a)) int_a^b G(f(x), f(a+b-x)) dx
  BoundSide rhs;
};

/// Printed:   L( f(a)f(b),        [f(a/m)f(b/m)]^m ).
/// Corrected: L( sqrt(f(a)f(b)),  [f(a/m)f(b/m)]^(m/2) ).
Eq22Bound bound_eq22_pair(const FunctionExpr& f, const Interval& iv, double m, double tol, Variant variant);

struct Eq31Bound {
  QuadResult lhs;
  BoundSide rhs;       // min over applicable branches
  BoundSide branch_b;  // f(b/m)^m M(alpha), M from phi
  BoundSide branch_a;  // f(a/m)^m T(alpha), T from ell
};

Eq31Bound bound_eq31(const FunctionExpr& f, const Interval& iv, const ClassParams& params, double tol);

/// Printed:   [f(a/m)f(b/m)]^m     * S(theta).
/// Corrected: [f(a/m)f(b/m)]^(m/2) * S(sqrt(theta)).
Eq22Bound bound_eq42(const FunctionExpr& f, const Interval& iv, const ClassParams& params, double tol,
                     Variant variant);

struct ChainTerm {
  std::string label;
  double value = 0.0;
  double err_est = 0.0;
};

using ChainValues = std::vector<ChainTerm>;

/// [ f(A(a,b)), (1/(b-a)) int G(f(x), f(a+b-x)), G(f(a), f(b)) ]
ChainValues chain_dr1(const FunctionExpr& f, const Interval& iv, double tol);

/// [ f((a+b)/2), exp((1/(b-a)) int ln f), (1/(b-a)) int G(f(x), f(a+b-x)),
///   (1/(b-a)) int f, L(f(a), f(b)), (f(a)+f(b))/2 ]
ChainValues chain_dr2(const FunctionExpr& f, const Interval& iv, double tol);

}  // namespace hhv
