// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hhv/bounds.hpp"
#include "hhv/classify.hpp"
#include "hhv/means.hpp"
#include "hhv/quadrature.hpp"
#include "hhv/report_io.hpp"
#include "hhv/verify.hpp"

using namespace hhv;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // <= 0: no runtime requirement
  std::function<bool(std::string&)> body;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. f = exp(kx) is the equality case of the m-log-convex mean bound.
bool equality_family(std::string& note) {
  double worst = 0.0;
  for (double k : {0.5, 1.0, 2.0}) {
    for (double m : {0.5, 1.0}) {
      const FunctionExpr f = family_instantiate({"exp_linear", {{"k", k}}});
      const auto r = verify_theorem(Theorem::Eq4, Variant::Corrected, f, {0, 1}, {1.0, m}, {1e-10, false, {}});
      if (!r.margin) return false;
      worst = std::max(worst, std::abs(*r.margin));
      // Independent closed form of the mean integral: (e^k - 1)/k.
      if (std::abs(*r.lhs - std::expm1(k) / k) > 1e-9) return false;
    }
  }
  note = "max |margin| = " + format_double(worst);
  return worst <= 1e-8;
}

// 2. The six-term log-convex chain for exp(x) on [0,1].
bool chain_values(std::string& note) {
  const double expected[] = {1.6487213, 1.6487213, 1.6487213, 1.7182818, 1.7182818, 1.8591409};
  const ChainValues c = chain_dr2(parse("exp(x)"), {0, 1}, 1e-10);
  if (c.size() != 6) return false;
  double worst = 0.0;
  bool ordered = true;
  for (std::size_t i = 0; i < 6; ++i) {
    worst = std::max(worst, std::abs(c[i].value - expected[i]));
    if (i > 0 && c[i].value < c[i - 1].value - 1e-9) ordered = false;
  }
  note = "max deviation " + format_double(worst) + (ordered ? ", non-decreasing" : ", NOT ordered");
  return worst <= 1e-7 && ordered;
}

// 3. w * factor(phi, 1) equals L(w phi, w).
bool corollary_identity(std::string& note) {
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> u(0.0, 1.0), lw(std::log(1e-3), std::log(1e3));
  double worst = 0.0;
  int n = 0;
  while (n < 10000) {
    const double phi = u(rng);
    if (!(phi > 0.0)) continue;
    const double w = std::exp(lw(rng));
    const double diff = std::abs(w * *exp_mean_factor(phi, 1.0).value - logarithmic_mean(w * phi, w));
    worst = std::max(worst, diff / w);
    ++n;
  }
  note = "max |diff|/w = " + format_double(worst);
  return worst <= 1e-12;
}

SweepGrid validity_corpus() {
  SweepGrid grid;
  for (double c : {0.2, 0.4, 0.6, 0.8, 1.0, 1.5}) grid.families.push_back({"const", {{"c", c}}});
  for (double k : {-1.5, -0.5, 0.25, 0.5, 1.0, 2.0}) grid.families.push_back({"exp_linear", {{"k", k}}});
  for (double c : {0.3, 0.6, 0.9, 1.2}) {
    for (double k : {-1.0, 0.5, 1.5}) grid.families.push_back({"exp_affine", {{"c", c}, {"k", k}}});
  }
  for (double a : {0.0, 0.25, 0.5, 0.75}) {
    for (double b : {1.0, 1.5, 2.0}) grid.intervals.emplace_back(a, b);
  }
  for (double alpha : {0.2, 0.35, 0.5, 0.65, 0.8, 1.0}) {
    for (double m : {0.2, 0.35, 0.5, 0.65, 0.8, 1.0}) grid.params.emplace_back(alpha, m);
  }
  grid.theorems = {Theorem::Eq4, Theorem::Eq11, Theorem::Eq31, Theorem::Eq22, Theorem::Eq42};
  grid.variant = Variant::Corrected;
  grid.options = {1e-10, true, {}};
  return grid;
}

std::string sweep_json;

// 4. No certified-pass corpus point violates any of the five bounds.
bool hypothesis_gated_validity(std::string& note) {
  const SweepGrid grid = validity_corpus();
  const std::size_t points = grid.families.size() * grid.intervals.size() * grid.params.size();
  const SweepSummary s = sweep(grid);
  sweep_json = to_json(s);
  std::size_t certified = 0, holds = 0, bad = 0, inapplicable = 0;
  for (const auto& r : s.reports) {
    if (r.hypothesis != HypothesisStatus::Pass) continue;
    ++certified;
    switch (r.verdict) {
      case Verdict::Holds: ++holds; break;
      case Verdict::Inapplicable: ++inapplicable; break;
      default:
        ++bad;
        if (bad <= 5) {
          std::fprintf(stderr, "  offending report: %s\n", to_json(r).c_str());
        }
    }
  }
  note = std::to_string(points) + " points, " + std::to_string(s.reports.size()) + " reports, " +
         std::to_string(certified) + " certified: " + std::to_string(holds) + " holds, " +
         std::to_string(inapplicable) + " inapplicable, " + std::to_string(bad) + " violated/inconclusive";
  return points >= 10000 && bad == 0 && holds > 1000;
}

// 5. Constant 1/2 refutes the printed bounds; the corrected ones are tight.
bool printed_counterexample(std::string& note) {
  const FunctionExpr f = parse("0.5");
  const VerifyOptions opts{1e-10, false, {}};
  bool ok = true;
  for (Theorem t : {Theorem::Eq22, Theorem::Eq42}) {
    const auto p = verify_theorem(t, Variant::Printed, f, {0, 1}, {1, 1}, opts);
    ok = ok && p.verdict == Verdict::Violated && std::abs(*p.lhs - 0.5) <= 1e-12 &&
         std::abs(*p.rhs - 0.25) <= 1e-12 && std::abs(*p.margin + 0.25) <= 1e-12;
    const auto c = verify_theorem(t, Variant::Corrected, f, {0, 1}, {1, 1}, opts);
    ok = ok && c.verdict == Verdict::Holds && std::abs(*c.margin) <= 1e-10;
    note += to_string(t) + ": printed margin " + format_double(*p.margin) + ", corrected margin " +
            format_double(*c.margin) + "; ";
  }
  return ok;
}

std::vector<std::string> classifier_json;

// 6. Classifier certificates and witnesses.
bool classifier_certificates(std::string& note) {
  classifier_json.clear();
  const ClassifyOptions opts;
  bool ok = true;
  const FunctionExpr ex = parse("exp(x)");
  for (int i = 1; i <= 10; ++i) {
    const double m = 0.1 * i;
    const auto r = check_m_log_convex(ex, 2.0, m, opts);
    classifier_json.push_back(to_json(r, 2.0, ClassParams(1.0, m)));
    ok = ok && r.verdict == ClassVerdict::Pass;
  }

  const auto parabola = check_m_log_convex(parse("x^2+1"), 2.0, 1.0, opts);
  classifier_json.push_back(to_json(parabola, 2.0, ClassParams(1.0, 1.0)));
  bool parabola_ok = parabola.verdict == ClassVerdict::Fail && parabola.worst_violation;
  if (parabola_ok) {
    const Violation& v = *parabola.worst_violation;
    const double lhs = std::pow(v.t * v.x + (1 - v.t) * v.y, 2) + 1;
    const double rhs = std::pow(v.x * v.x + 1, v.t) * std::pow(v.y * v.y + 1, 1 - v.t);
    parabola_ok = lhs > rhs * (1 + opts.tol_rel);
  }

  const auto alpha = check_alpha_m_log_convex(ex, 2.0, {0.5, 1.0}, opts);
  classifier_json.push_back(to_json(alpha, 2.0, ClassParams(0.5, 1.0)));
  bool alpha_ok = alpha.verdict == ClassVerdict::Fail && alpha.worst_violation;
  if (alpha_ok) {
    const Violation& v = *alpha.worst_violation;
    const double w = std::sqrt(v.t);
    alpha_ok = v.x < v.y && std::exp(v.t * v.x + (1 - v.t) * v.y) > std::exp(w * v.x + (1 - w) * v.y) * (1 + opts.tol_rel);
  }
  note = std::string("exp(x) m=0.1..1 ") + (ok ? "pass" : "FAIL") + ", x^2+1 witness " +
         (parabola_ok ? "ok" : "BAD") + ", (0.5,1) witness " + (alpha_ok ? "ok" : "BAD");
  return ok && parabola_ok && alpha_ok;
}

// 7. Kernel accuracy.
bool numeric_kernels(std::string& note) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> coef(-5, 5), lp(std::log(1e-6), std::log(1e6));
  double quad_worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
    const double a = std::abs(coef(rng)) * 0.2, b = a + 0.5 + std::abs(coef(rng)) * 0.2;
    const auto prim = [&](double x) { return x * (c0 + x * (c1 / 2 + x * (c2 / 3 + x * c3 / 4))); };
    const QuadResult r = integrate([&](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); }, {a, b}, 1e-10);
    quad_worst = std::max(quad_worst, std::abs(r.value - (prim(b) - prim(a))) / (1 + std::abs(r.value)));
  }
  bool chain_ok = true;
  for (int i = 0; i < 10000; ++i) {
    const double p = std::exp(lp(rng)), q = std::exp(lp(rng));
    const double g = geometric_mean(p, q), l = logarithmic_mean(p, q), a = arithmetic_mean(p, q);
    chain_ok = chain_ok && g <= l * (1 + 1e-12) && l <= a * (1 + 1e-12);
  }
  bool equal_ok = true;
  for (double p : {1e-300, 1e-6, 0.3, 1.0, 2.0, 7.25, 1e6, 1e300}) equal_ok = equal_ok && logarithmic_mean(p, p) == p;
  note = "cubic rel err " + format_double(quad_worst) + ", G<=L<=A " + (chain_ok ? "ok" : "BAD") + ", L(p,p)=p " +
         (equal_ok ? "exact" : "BAD");
  return quad_worst <= 1e-13 && chain_ok && equal_ok;
}

// 8. Re-running criteria 4 and 6 reproduces their JSON byte for byte.
bool determinism(std::string& note) {
  const std::string first_sweep = sweep_json;
  const std::vector<std::string> first_cls = classifier_json;
  std::string scratch;
  hypothesis_gated_validity(scratch);
  classifier_certificates(scratch);
  const bool same_sweep = !first_sweep.empty() && first_sweep == sweep_json;
  const bool same_cls = !first_cls.empty() && first_cls == classifier_json;
  note = "sweep JSON " + std::to_string(sweep_json.size()) + " bytes " + (same_sweep ? "identical" : "DIFFERS") +
         ", classifier JSON " + (same_cls ? "identical" : "DIFFERS");
  return same_sweep && same_cls;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "eq4 equality family exp(kx)", 1.0, equality_family},
      {2, "dr2 chain for exp(x) on [0,1]", 0.0, chain_values},
      {3, "corollary identity w*M(1) = L(w phi, w)", 1.0, corollary_identity},
      {4, "hypothesis-gated validity sweep", 60.0, hypothesis_gated_validity},
      {5, "printed eq22/eq42 counterexample", 0.0, printed_counterexample},
      {6, "classifier certificates", 10.0, classifier_certificates},
      {7, "numeric kernels", 0.0, numeric_kernels},
      {8, "determinism of criteria 4 and 6", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::string note;
    const auto t0 = Clock::now();
    bool ok = false;
    try {
      ok = c.body(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(t0);
    if (c.time_limit_s > 0 && elapsed >= c.time_limit_s) {
      ok = false;
      note += " [runtime limit " + format_double(c.time_limit_s) + " s exceeded]";
    }
    std::printf("[%s] criterion %d: %s (%.3f s) -- %s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), elapsed,
                note.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
