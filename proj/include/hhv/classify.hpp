#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "hhv/funcspec.hpp"

namespace hhv {

/// (alpha, m) in (0,1] x (0,1].
class ClassParams {
 public:
  /// Throws InvalidArgument outside (0,1] x (0,1].
  ClassParams(double alpha, double m);

  double alpha() const noexcept { return alpha_; }
  double m() const noexcept { return m_; }

  friend bool operator==(const ClassParams&, const ClassParams&) = default;
  friend auto operator<=>(const ClassParams&, const ClassParams&) = default;

 private:
  double alpha_;
  double m_;
};

inline constexpr std::size_t kDefaultGridN = 33;
inline constexpr double kDefaultClassTolRel = 1e-9;
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct ClassifyOptions {
  std::size_t grid_n = kDefaultGridN;
  double tol_rel = kDefaultClassTolRel;
  std::uint64_t seed = kDefaultSeed;
};

/// A sampled triple where f(tx + m(1-t)y) exceeded the right-hand side.
struct Violation {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;  // lhs - rhs
  friend bool operator==(const Violation&, const Violation&) = default;
};

enum class ClassVerdict { Pass, Fail };

/// Outcome of a sampled membership check. A pass is a sampled certificate
/// only: it says nothing about points off the sample.
struct ClassificationReport {
  ClassVerdict verdict = ClassVerdict::Pass;
  std::optional<Violation> worst_violation;  // largest deficit among violating triples
  std::size_t samples = 0;
  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

/// Samples f(tx + m(1-t)y) <= f(x)^t f(y)^{m(1-t)} over the uniform grid_n^3
/// grid on [0,U]^2 x [0,1] and grid_n^3 seeded random triples. A triple
/// violates when lhs > rhs (1 + tol_rel). Throws TripleError if f fails to
/// evaluate, InvalidArgument for bad arguments.
ClassificationReport check_m_log_convex(const FunctionExpr& f, double domain_upper, double m,
                                        const ClassifyOptions& opts = {});

/// Same sampling for f(tx + m(1-t)y) <= f(x)^{t^a} f(y)^{m(1-t^a)}.
/// With alpha = 1 the result is identical to check_m_log_convex.
ClassificationReport check_alpha_m_log_convex(const FunctionExpr& f, double domain_upper,
                                              const ClassParams& params, const ClassifyOptions& opts = {});

}  // namespace hhv
