#include "hhv/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <tuple>

#include "hhv/error.hpp"

namespace hhv {

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::Dr1: return "dr1";
    case Theorem::Dr2: return "dr2";
    case Theorem::Eq4: return "eq4";
    case Theorem::Eq11: return "eq11";
    case Theorem::Eq22: return "eq22";
    case Theorem::Eq31: return "eq31";
    case Theorem::Eq42: return "eq42";
  }
  return "unknown";
}

Theorem parse_theorem(std::string_view id) {
  for (Theorem t : {Theorem::Dr1, Theorem::Dr2, Theorem::Eq4, Theorem::Eq11, Theorem::Eq22, Theorem::Eq31,
                    Theorem::Eq42}) {
    if (to_string(t) == id) return t;
  }
  throw InvalidArgument("unknown theorem '" + std::string(id) + "' (expected dr1, dr2, eq4, eq11, eq22, eq31, eq42)");
}

bool has_variants(Theorem t) { return t == Theorem::Eq22 || t == Theorem::Eq42; }

std::string to_string(HypothesisStatus h) {
  switch (h) {
    case HypothesisStatus::Pass: return "pass";
    case HypothesisStatus::Fail: return "fail";
    case HypothesisStatus::Skipped: return "skipped";
    case HypothesisStatus::Error: return "error";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Inapplicable: return "inapplicable";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

HypothesisStatus parse_hypothesis(std::string_view s) {
  for (auto h : {HypothesisStatus::Pass, HypothesisStatus::Fail, HypothesisStatus::Skipped, HypothesisStatus::Error}) {
    if (to_string(h) == s) return h;
  }
  throw InvalidArgument("unknown hypothesis status '" + std::string(s) + "'");
}

Verdict parse_verdict(std::string_view s) {
  for (auto v : {Verdict::Holds, Verdict::Violated, Verdict::Inapplicable, Verdict::Inconclusive}) {
    if (to_string(v) == s) return v;
  }
  throw InvalidArgument("unknown verdict '" + std::string(s) + "'");
}

double margin_tolerance(double lhs, std::optional<double> rhs, double quad_err) {
  const double scale = std::max({1.0, std::abs(lhs), rhs ? std::abs(*rhs) : 0.0});
  return 10.0 * quad_err + 1e-9 * scale;
}

Verdict decide_verdict(std::optional<double> lhs, std::optional<double> rhs, std::optional<double> margin,
                       double quad_err) {
  if (!lhs || !std::isfinite(*lhs) || !std::isfinite(quad_err)) return Verdict::Inconclusive;
  if (!rhs) return Verdict::Inapplicable;
  if (!margin || !std::isfinite(*margin) || !std::isfinite(*rhs)) return Verdict::Inconclusive;
  return *margin >= -margin_tolerance(*lhs, rhs, quad_err) ? Verdict::Holds : Verdict::Violated;
}

ClassificationReport check_hypothesis_for(Theorem theorem, const FunctionExpr& f, const Interval& iv,
                                          const ClassParams& params, const ClassifyOptions& opts) {
  switch (theorem) {
    case Theorem::Dr1:
    case Theorem::Dr2:
      return check_m_log_convex(f, iv.b(), 1.0, opts);
    case Theorem::Eq4:
    case Theorem::Eq11:
    case Theorem::Eq22:
      return check_m_log_convex(f, iv.b() / params.m(), params.m(), opts);
    case Theorem::Eq31:
    case Theorem::Eq42:
      return check_alpha_m_log_convex(f, iv.b() / params.m(), params, opts);
  }
  throw InvalidArgument("unknown theorem");
}

namespace {

void fill_sides(InequalityReport& r, Theorem theorem, Variant variant, const FunctionExpr& f, const Interval& iv,
                const ClassParams& params, double tol) {
  switch (theorem) {
    case Theorem::Dr1:
    case Theorem::Dr2: {
      const ChainValues chain = theorem == Theorem::Dr1 ? chain_dr1(f, iv, tol) : chain_dr2(f, iv, tol);
      double step = std::numeric_limits<double>::infinity();
      double err = 0.0;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        err += chain[i].err_est;
        if (i > 0) step = std::min(step, chain[i].value - chain[i - 1].value);
      }
      r.lhs = chain.front().value;
      r.rhs = chain.back().value;
      r.margin = step;
      r.quad_err = err;
      return;
    }
    case Theorem::Eq4: {
      const Eq4Bound b = bound_eq4(f, iv, params.m(), tol);
      r.lhs = b.lhs.value;
      r.rhs = b.rhs.value;
      r.quad_err = b.lhs.err_est;
      break;
    }
    case Theorem::Eq11: {
      const Eq11Bound b = bound_eq11_pair(f, iv, params.m(), tol);
      r.lhs = b.lhs;
      r.rhs = b.rhs.value;
      r.quad_err = b.rhs.err_est;
      break;
    }
    case Theorem::Eq22:
    case Theorem::Eq42: {
      const Eq22Bound b = theorem == Theorem::Eq22 ? bound_eq22_pair(f, iv, params.m(), tol, variant)
                                                   : bound_eq42(f, iv, params, tol, variant);
      r.lhs = b.lhs.value;
      r.rhs = b.rhs.value;
      r.quad_err = b.lhs.err_est;
      break;
    }
    case Theorem::Eq31: {
      const Eq31Bound b = bound_eq31(f, iv, params, tol);
      r.lhs = b.lhs.value;
      r.rhs = b.rhs.value;
      r.quad_err = b.lhs.err_est;
      break;
    }
  }
  if (r.rhs) r.margin = *r.rhs - *r.lhs;
}

}  // namespace

InequalityReport verify_theorem_with(Theorem theorem, Variant variant, const FunctionExpr& f, const Interval& iv,
                                     const ClassParams& params, double tol, HypothesisStatus hypothesis) {
  InequalityReport r;
  r.theorem = theorem;
  if (has_variants(theorem)) r.variant = variant;
  r.params = {iv.a(), iv.b(), params.alpha(), params.m(), std::nullopt};
  r.hypothesis = hypothesis;
  try {
    fill_sides(r, theorem, variant, f, iv, params, tol);
  } catch (const Error& e) {
    r.lhs.reset();
    r.rhs.reset();
    r.margin.reset();
    r.quad_err = 0.0;
    r.diagnostic = e.what();
  }
  r.verdict = decide_verdict(r.lhs, r.rhs, r.margin, r.quad_err);
  return r;
}

InequalityReport verify_theorem(Theorem theorem, Variant variant, const FunctionExpr& f, const Interval& iv,
                                const ClassParams& params, const VerifyOptions& opts) {
  HypothesisStatus status = HypothesisStatus::Skipped;
  std::string note;
  if (opts.check_hypothesis) {
    try {
      const auto cls = check_hypothesis_for(theorem, f, iv, params, opts.classify);
      status = cls.verdict == ClassVerdict::Pass ? HypothesisStatus::Pass : HypothesisStatus::Fail;
    } catch (const Error& e) {
      status = HypothesisStatus::Error;
      note = std::string("hypothesis check: ") + e.what();
    }
  }
  InequalityReport r = verify_theorem_with(theorem, variant, f, iv, params, opts.tol, status);
  if (!note.empty()) r.diagnostic = r.diagnostic.empty() ? note : note + "; " + r.diagnostic;
  return r;
}

namespace {

// Runs task(i) for i in [0, n) on up to `threads` workers. Each task writes
// only its own slot, so the outcome is independent of scheduling.
template <class Task>
void parallel_for(std::size_t n, unsigned threads, Task&& task) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) task(i);
    });
  }
}

struct HypothesisKey {
  std::size_t family;
  double upper;
  double alpha;
  double m;
  auto operator<=>(const HypothesisKey&) const = default;
};

HypothesisKey hypothesis_key(std::size_t family, Theorem t, const Interval& iv, const ClassParams& p) {
  switch (t) {
    case Theorem::Dr1:
    case Theorem::Dr2:
      return {family, iv.b(), 1.0, 1.0};
    case Theorem::Eq31:
    case Theorem::Eq42:
      return {family, iv.b() / p.m(), p.alpha(), p.m()};
    default:
      return {family, iv.b() / p.m(), 1.0, p.m()};
  }
}

}  // namespace

SweepSummary summarize(std::vector<InequalityReport> reports) {
  SweepSummary s;
  s.reports = std::move(reports);
  for (const auto& r : s.reports) {
    ++s.counts[r.verdict];
    if ((r.verdict == Verdict::Holds || r.verdict == Verdict::Violated) && r.margin &&
        (!s.min_margin || *r.margin < s.min_margin->value)) {
      s.min_margin = MinMargin{*r.margin, r.params, r.theorem};
    }
  }
  return s;
}

SweepSummary sweep(const SweepGrid& grid) {
  struct Point {
    std::size_t family, interval, params, theorem;
  };
  std::vector<Point> points;
  for (std::size_t fi = 0; fi < grid.families.size(); ++fi)
    for (std::size_t ii = 0; ii < grid.intervals.size(); ++ii)
      for (std::size_t pi = 0; pi < grid.params.size(); ++pi)
        for (std::size_t ti = 0; ti < grid.theorems.size(); ++ti) points.push_back({fi, ii, pi, ti});

  // Families that cannot be instantiated turn every point into an inconclusive report.
  std::vector<std::optional<FunctionExpr>> exprs;
  std::vector<std::string> family_errors(grid.families.size());
  for (std::size_t fi = 0; fi < grid.families.size(); ++fi) {
    try {
      exprs.emplace_back(family_instantiate(grid.families[fi]));
    } catch (const Error& e) {
      exprs.emplace_back(std::nullopt);
      family_errors[fi] = e.what();
    }
  }

  std::map<HypothesisKey, HypothesisStatus> hypotheses;
  if (grid.options.check_hypothesis) {
    for (const Point& p : points) {
      if (!exprs[p.family]) continue;
      hypotheses.emplace(hypothesis_key(p.family, grid.theorems[p.theorem], grid.intervals[p.interval],
                                        grid.params[p.params]),
                         HypothesisStatus::Skipped);
    }
    std::vector<HypothesisKey> keys;
    for (const auto& [k, _] : hypotheses) keys.push_back(k);
    std::vector<HypothesisStatus> status(keys.size());
    parallel_for(keys.size(), grid.threads, [&](std::size_t i) {
      const HypothesisKey& k = keys[i];
      try {
        const auto cls = check_alpha_m_log_convex(*exprs[k.family], k.upper, ClassParams(k.alpha, k.m),
                                                  grid.options.classify);
        status[i] = cls.verdict == ClassVerdict::Pass ? HypothesisStatus::Pass : HypothesisStatus::Fail;
      } catch (const Error&) {
        status[i] = HypothesisStatus::Error;
      }
    });
    for (std::size_t i = 0; i < keys.size(); ++i) hypotheses[keys[i]] = status[i];
  }

  std::vector<InequalityReport> reports(points.size());
  parallel_for(points.size(), grid.threads, [&](std::size_t i) {
    const Point& p = points[i];
    const Theorem theorem = grid.theorems[p.theorem];
    const Interval& iv = grid.intervals[p.interval];
    const ClassParams& cp = grid.params[p.params];
    InequalityReport r;
    if (!exprs[p.family]) {
      r.theorem = theorem;
      if (has_variants(theorem)) r.variant = grid.variant;
      r.params = {iv.a(), iv.b(), cp.alpha(), cp.m(), std::nullopt};
      r.hypothesis = HypothesisStatus::Error;
      r.verdict = Verdict::Inconclusive;
      r.diagnostic = family_errors[p.family];
    } else {
      const HypothesisStatus h = grid.options.check_hypothesis
                                     ? hypotheses.at(hypothesis_key(p.family, theorem, iv, cp))
                                     : HypothesisStatus::Skipped;
      r = verify_theorem_with(theorem, grid.variant, *exprs[p.family], iv, cp, grid.options.tol, h);
    }
    r.params.family = grid.families[p.family];
    reports[i] = std::move(r);
  });
  return summarize(std::move(reports));
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Generalized golden ratio: the positive root of x^(d+1) = x + 1.
double kronecker_base(std::size_t dims) {
  double g = 2.0;
  for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / static_cast<double>(dims + 1));
  return g;
}

class MarginSearch {
 public:
  MarginSearch(const SearchBox& box, Theorem theorem, Variant variant, double tol)
      : box_(box), theorem_(theorem), variant_(variant), tol_(tol) {}

  // Returns the margin used for ranking: +inf unless the point is decided.
  double evaluate(const std::vector<double>& point) {
    ++evaluations_;
    std::map<std::string, double> values = named(point);
    InequalityReport r = report_at(values);
    const bool decided = (r.verdict == Verdict::Holds || r.verdict == Verdict::Violated) && r.margin;
    const double score = decided ? *r.margin : std::numeric_limits<double>::infinity();
    if (evaluations_ == 1 || score < best_score_) {
      best_score_ = score;
      best_point_ = point;
      result_.best_params = values;
      result_.best_margin = decided ? std::optional<double>(score) : std::nullopt;
      result_.report = std::move(r);
    }
    return score;
  }

  std::map<std::string, double> named(const std::vector<double>& point) const {
    std::map<std::string, double> values = box_.fixed;
    values["a"] = box_.a;
    values["b"] = box_.b;
    values["alpha"] = box_.alpha;
    values["m"] = box_.m;
    for (std::size_t j = 0; j < point.size(); ++j) values[box_.dims[j].name] = point[j];
    return values;
  }

  const std::vector<double>& best_point() const { return best_point_; }
  std::size_t evaluations() const { return evaluations_; }
  SearchResult result() const {
    SearchResult out = result_;
    out.evaluations = evaluations_;
    return out;
  }

 private:
  InequalityReport report_at(const std::map<std::string, double>& values) const {
    FamilySpec spec{box_.family, {}};
    for (const auto& name : family_parameters(box_.family)) {
      const auto it = values.find(name);
      if (it != values.end()) spec.params[name] = it->second;
    }
    InequalityReport r;
    try {
      const FunctionExpr f = family_instantiate(spec);
      const Interval iv(values.at("a"), values.at("b"));
      const ClassParams cp(values.at("alpha"), values.at("m"));
      r = verify_theorem_with(theorem_, variant_, f, iv, cp, tol_, HypothesisStatus::Skipped);
    } catch (const Error& e) {
      r.theorem = theorem_;
      if (has_variants(theorem_)) r.variant = variant_;
      r.params = {values.at("a"), values.at("b"), values.at("alpha"), values.at("m"), std::nullopt};
      r.verdict = Verdict::Inconclusive;
      r.diagnostic = e.what();
    }
    r.params.family = spec;
    return r;
  }

  const SearchBox& box_;
  Theorem theorem_;
  Variant variant_;
  double tol_;
  std::size_t evaluations_ = 0;
  double best_score_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_point_;
  SearchResult result_;
};

}  // namespace

SearchResult search_min_margin(const SearchBox& box, Theorem theorem, Variant variant, std::size_t budget,
                               double tol, std::uint64_t seed) {
  if (budget < 1) throw InvalidArgument("search budget must be >= 1");
  family_parameters(box.family);
  for (const auto& d : box.dims) {
    if (!(d.lo <= d.hi) || !std::isfinite(d.lo) || !std::isfinite(d.hi)) {
      throw InvalidArgument("search range for " + d.name + " must satisfy lo <= hi");
    }
    const auto& fp = family_parameters(box.family);
    const bool known = d.name == "a" || d.name == "b" || d.name == "alpha" || d.name == "m" ||
                       std::find(fp.begin(), fp.end(), d.name) != fp.end();
    if (!known) throw InvalidArgument("search dimension '" + d.name + "' is not a parameter of " + box.family);
  }

  MarginSearch search(box, theorem, variant, tol);
  const std::size_t dims = box.dims.size();
  if (dims == 0) {
    search.evaluate({});
    return search.result();
  }

  // Coarse pass: seeded Kronecker lattice.
  const std::size_t coarse = (budget + 1) / 2;
  const double g = kronecker_base(dims);
  std::vector<double> step(dims), shift(dims);
  std::uint64_t state = seed;
  for (std::size_t j = 0; j < dims; ++j) {
    step[j] = std::fmod(1.0 / std::pow(g, static_cast<double>(j + 1)), 1.0);
    shift[j] = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
  }
  for (std::size_t i = 0; i < coarse; ++i) {
    std::vector<double> point(dims);
    for (std::size_t j = 0; j < dims; ++j) {
      const double u = std::fmod(shift[j] + static_cast<double>(i) * step[j], 1.0);
      point[j] = box.dims[j].lo + u * (box.dims[j].hi - box.dims[j].lo);
    }
    search.evaluate(point);
  }

  // Refinement: golden section along one coordinate at a time, halving the bracket radius per sweep.
  constexpr double inv_phi = 1.0 / std::numbers::phi;
  constexpr std::size_t per_line = 12;
  std::vector<double> radius(dims);
  const double cells = std::ceil(std::pow(static_cast<double>(coarse), 1.0 / static_cast<double>(dims)));
  for (std::size_t j = 0; j < dims; ++j) radius[j] = (box.dims[j].hi - box.dims[j].lo) / cells;

  while (search.evaluations() < budget) {
    bool moved = false;
    for (std::size_t j = 0; j < dims && search.evaluations() < budget; ++j) {
      const double width = box.dims[j].hi - box.dims[j].lo;
      if (!(radius[j] > 1e-12 * width)) continue;
      moved = true;
      std::vector<double> probe = search.best_point();
      const double centre = probe[j];
      double lo = std::max(box.dims[j].lo, centre - radius[j]);
      double hi = std::min(box.dims[j].hi, centre + radius[j]);
      const std::size_t stop = std::min(budget, search.evaluations() + per_line);
      auto at = [&](double v) {
        probe[j] = v;
        return search.evaluate(probe);
      };
      double c = hi - (hi - lo) * inv_phi;
      double d = lo + (hi - lo) * inv_phi;
      double fc = at(c);
      if (search.evaluations() >= stop) continue;
      double fd = at(d);
      while (search.evaluations() < stop) {
        if (fc < fd) {
          hi = d;
          d = c;
          fd = fc;
          c = hi - (hi - lo) * inv_phi;
          fc = at(c);
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + (hi - lo) * inv_phi;
          fd = at(d);
        }
      }
    }
    if (!moved) break;
    for (double& r : radius) r *= 0.5;
  }
  return search.result();
}

}  // namespace hhv
