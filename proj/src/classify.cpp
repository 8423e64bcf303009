#include "hhv/classify.hpp"

#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include "hhv/error.hpp"

namespace hhv {

ClassParams::ClassParams(double alpha, double m) : alpha_(alpha), m_(m) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
  if (!(m > 0.0 && m <= 1.0)) throw InvalidArgument("m must lie in (0, 1]");
}

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Sample {
  double value;
  double log;
};

class Sampler {
 public:
  Sampler(const FunctionExpr& f, double upper, double alpha, double m, const ClassifyOptions& opts)
      : f_(f), upper_(upper), alpha_(alpha), m_(m), opts_(opts), grid_log_(opts.grid_n) {}

  ClassificationReport run() {
    const std::size_t n = opts_.grid_n;
    const double denom = static_cast<double>(n - 1);
    // Points are upper*i/(n-1): grid 2k+1 reproduces grid k+1 bitwise.
    for (std::size_t i = 0; i < n; ++i) {
      const double x = upper_ * static_cast<double>(i) / denom;
      for (std::size_t j = 0; j < n; ++j) {
        const double y = upper_ * static_cast<double>(j) / denom;
        for (std::size_t k = 0; k < n; ++k) {
          const double t = static_cast<double>(k) / denom;
          check(x, y, t, [&] { return grid_value(i, x, y, t); }, [&] { return grid_value(j, x, y, t); });
        }
      }
    }
    // Drawn sequentially, so a smaller grid_n sees a prefix of these triples.
    std::mt19937_64 rng(opts_.seed);
    const std::size_t extra = n * n * n;
    for (std::size_t s = 0; s < extra; ++s) {
      const double x = upper_ * unit_uniform(rng);
      const double y = upper_ * unit_uniform(rng);
      const double t = unit_uniform(rng);
      check(x, y, t, [&] { return sample(x, x, y, t); }, [&] { return sample(y, x, y, t); });
    }
    report_.samples = 2 * extra;
    report_.verdict = report_.worst_violation ? ClassVerdict::Fail : ClassVerdict::Pass;
    return report_;
  }

 private:
  double eval(double at, double x, double y, double t) const {
    try {
      return f_(at);
    } catch (const Error& e) {
      throw TripleError(e.what(), x, y, t);
    }
  }

  Sample sample(double at, double x, double y, double t) const {
    const double v = eval(at, x, y, t);
    return {v, std::log(v)};
  }

  Sample grid_value(std::size_t idx, double x, double y, double t) {
    auto& slot = grid_log_[idx];
    if (!slot) slot = sample(upper_ * static_cast<double>(idx) / static_cast<double>(opts_.grid_n - 1), x, y, t);
    return *slot;
  }

  // fx/fy are evaluated lazily so the random phase costs no extra calls at t = 0 or 1.
  template <class Fx, class Fy>
  void check(double x, double y, double t, Fx&& fx, Fy&& fy) {
    const double lhs = eval(t * x + m_ * (1.0 - t) * y, x, y, t);
    double rhs;
    if (t == 0.0) {
      rhs = m_ == 1.0 ? fy().value : std::pow(fy().value, m_);
    } else if (t == 1.0) {
      rhs = fx().value;
    } else {
      const double w = alpha_ == 1.0 ? t : std::pow(t, alpha_);
      rhs = std::exp(w * fx().log + m_ * (1.0 - w) * fy().log);
    }
    if (!(lhs > rhs * (1.0 + opts_.tol_rel))) return;
    const Violation v{x, y, t, lhs, rhs, lhs - rhs};
    auto& worst = report_.worst_violation;
    if (!worst || v.deficit > worst->deficit ||
        (v.deficit == worst->deficit && std::tie(v.x, v.y, v.t) < std::tie(worst->x, worst->y, worst->t))) {
      worst = v;
    }
  }

  const FunctionExpr& f_;
  double upper_;
  double alpha_;
  double m_;
  ClassifyOptions opts_;
  std::vector<std::optional<Sample>> grid_log_;
  ClassificationReport report_;
};

ClassificationReport run_check(const FunctionExpr& f, double upper, double alpha, double m,
                               const ClassifyOptions& opts) {
  if (!(upper > 0.0) || !std::isfinite(upper)) throw InvalidArgument("domain_upper must be finite and > 0");
  if (opts.grid_n < 3) throw InvalidArgument("grid_n must be >= 3");
  if (!(opts.tol_rel >= 0.0)) throw InvalidArgument("tol_rel must be >= 0");
  return Sampler(f, upper, alpha, m, opts).run();
}

}  // namespace

ClassificationReport check_m_log_convex(const FunctionExpr& f, double domain_upper, double m,
                                        const ClassifyOptions& opts) {
  const ClassParams params(1.0, m);
  return run_check(f, domain_upper, 1.0, params.m(), opts);
}

ClassificationReport check_alpha_m_log_convex(const FunctionExpr& f, double domain_upper,
                                              const ClassParams& params, const ClassifyOptions& opts) {
  return run_check(f, domain_upper, params.alpha(), params.m(), opts);
}

}  // namespace hhv
