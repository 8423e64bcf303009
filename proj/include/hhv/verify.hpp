#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhv/bounds.hpp"
#include "hhv/classify.hpp"
#include "hhv/funcspec.hpp"
#include "hhv/quadrature.hpp"

namespace hhv {

enum class Theorem { Dr1, Dr2, Eq4, Eq11, Eq22, Eq31, Eq42 };

std::string to_string(Theorem t);
/// Throws InvalidArgument for unknown ids.
Theorem parse_theorem(std::string_view id);
/// eq22 and eq42 come in printed/corrected variants; the rest have none.
bool has_variants(Theorem t);

enum class HypothesisStatus { Pass, Fail, Skipped, Error };
enum class Verdict { Holds, Violated, Inapplicable, Inconclusive };

std::string to_string(HypothesisStatus h);
std::string to_string(Verdict v);
HypothesisStatus parse_hypothesis(std::string_view s);
Verdict parse_verdict(std::string_view s);

struct ReportParams {
  double a = 0.0;
  double b = 1.0;
  double alpha = 1.0;
  double m = 1.0;
  std::optional<FamilySpec> family;
  friend bool operator==(const ReportParams&, const ReportParams&) = default;
};

/// One verified inequality. margin = rhs - lhs (for chains, the smallest
/// step between consecutive terms); positive means slack.
struct InequalityReport {
  Theorem theorem = Theorem::Eq4;
  std::optional<Variant> variant;  // absent for theorems without variants
  ReportParams params;
  HypothesisStatus hypothesis = HypothesisStatus::Skipped;
  std::optional<double> lhs;
  std::optional<double> rhs;
  std::optional<double> margin;
  double quad_err = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string diagnostic;  // free text for inconclusive or hypothesis errors; not serialized

  /// Equality of every serialized field (diagnostic excluded).
  friend bool operator==(const InequalityReport& x, const InequalityReport& y) {
    return x.theorem == y.theorem && x.variant == y.variant && x.params == y.params &&
           x.hypothesis == y.hypothesis && x.lhs == y.lhs && x.rhs == y.rhs && x.margin == y.margin &&
           x.quad_err == y.quad_err && x.verdict == y.verdict;
  }
};

/// 10 quad_err + 1e-9 max(1, |lhs|, |rhs|).
double margin_tolerance(double lhs, std::optional<double> rhs, double quad_err);

/// The verdict rule. Holds iff rhs applicable and margin >= -margin_tolerance.
Verdict decide_verdict(std::optional<double> lhs, std::optional<double> rhs, std::optional<double> margin,
                       double quad_err);

struct VerifyOptions {
  double tol = 1e-10;
  bool check_hypothesis = true;
  ClassifyOptions classify;
};

/// Computes both sides of `theorem` and its verdict. When
/// opts.check_hypothesis is set the matching class is sampled first on
/// [0, b/m]: m-log-convexity for eq4/eq11/eq22, (alpha,m) for eq31/eq42,
/// plain log-convexity on [0, b] for dr1/dr2. Evaluation and quadrature
/// failures produce an inconclusive report rather than an exception.
InequalityReport verify_theorem(Theorem theorem, Variant variant, const FunctionExpr& f, const Interval& iv,
                                const ClassParams& params, const VerifyOptions& opts = {});

/// Variant of verify_theorem that takes a precomputed hypothesis status.
InequalityReport verify_theorem_with(Theorem theorem, Variant variant, const FunctionExpr& f, const Interval& iv,
                                     const ClassParams& params, double tol, HypothesisStatus hypothesis);

/// The class sampled for `theorem` at the given point.
ClassificationReport check_hypothesis_for(Theorem theorem, const FunctionExpr& f, const Interval& iv,
                                          const ClassParams& params, const ClassifyOptions& opts);

struct SweepGrid {
  std::vector<FamilySpec> families;
  std::vector<Interval> intervals;
  std::vector<ClassParams> params;
  std::vector<Theorem> theorems;
  Variant variant = Variant::Corrected;
  VerifyOptions options{1e-10, false, {}};
  unsigned threads = 0;  // 0: hardware concurrency
};

struct MinMargin {
  double value = 0.0;
  ReportParams params;
  Theorem theorem = Theorem::Eq4;
};

struct SweepSummary {
  std::vector<InequalityReport> reports;
  std::optional<MinMargin> min_margin;  // over holds/violated reports
  std::map<Verdict, std::size_t> counts;
};

/// Cartesian product family x interval x params x theorem, in that
/// lexicographic order. Each (family, class, domain) hypothesis is sampled
/// once when options.check_hypothesis is set. Results do not depend on the
/// thread count.
SweepSummary sweep(const SweepGrid& grid);

SweepSummary summarize(std::vector<InequalityReport> reports);

struct SearchDim {
  std::string name;  // a family parameter, or one of a, b, alpha, m
  double lo = 0.0;
  double hi = 0.0;
};

struct SearchBox {
  std::string family;
  std::map<std::string, double> fixed;  // family parameters held constant
  std::vector<SearchDim> dims;
  double a = 0.0;
  double b = 1.0;
  double alpha = 1.0;
  double m = 1.0;
};

struct SearchResult {
  std::map<std::string, double> best_params;
  std::optional<double> best_margin;
  InequalityReport report;
  std::size_t evaluations = 0;
};

/// Smallest-margin search: ceil(budget/2) points of a seeded Kronecker
/// lattice, then cyclic coordinate-wise golden-section refinement around the
/// incumbent until the budget is spent. Points that are inapplicable or
/// inconclusive count against the budget but never become the incumbent.
SearchResult search_min_margin(const SearchBox& box, Theorem theorem, Variant variant, std::size_t budget,
                               double tol, std::uint64_t seed = kDefaultSeed);

}  // namespace hhv
