#include "hhv/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "hhv/bounds.hpp"
#include "hhv/classify.hpp"
#include "hhv/error.hpp"
#include "hhv/funcspec.hpp"
#include "hhv/report_io.hpp"
#include "hhv/verify.hpp"

namespace hhv::cli {

namespace {

double parse_number(std::string_view s, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InvalidArgument(what + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const std::string& flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw InvalidArgument(flag + " expects name=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

Variant parse_variant(const std::string& s) {
  if (s == "printed") return Variant::Printed;
  if (s == "corrected") return Variant::Corrected;
  throw InvalidArgument("--variant must be printed or corrected, got '" + s + "'");
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("HH_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t seed = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("HH_SEED must be a decimal integer, got '" + std::string(s) + "'");
  }
  return seed;
}

int exit_for(const std::vector<Verdict>& verdicts) {
  const auto any = [&](Verdict v) { return std::find(verdicts.begin(), verdicts.end(), v) != verdicts.end(); };
  if (any(Verdict::Violated)) return kExitViolated;
  if (any(Verdict::Inconclusive)) return kExitInconclusive;
  return kExitOk;
}

void print_diagnostics(const std::vector<InequalityReport>& reports, std::ostream& err) {
  for (const auto& r : reports) {
    if (!r.diagnostic.empty()) err << to_string(r.theorem) << ": " << r.diagnostic << '\n';
  }
}

struct FunctionSource {
  std::string text;
  std::string family;

  void add_to(CLI::App& app) {
    auto* f = app.add_option("--f", text, "function of x, e.g. \"exp(2*x)\"");
    auto* fam = app.add_option("--family", family, "family instance, e.g. \"exp_affine(c=0.5,k=1)\"");
    f->excludes(fam);
  }

  std::pair<FunctionExpr, std::optional<FamilySpec>> resolve() const {
    if (!text.empty()) return {parse(text), std::nullopt};
    if (!family.empty()) {
      FamilySpec spec = parse_family(family);
      return {family_instantiate(spec), spec};
    }
    throw InvalidArgument("one of --f or --family is required");
  }
};

struct Common {
  double tol = 1e-10;
  std::size_t grid_n = kDefaultGridN;
  double tol_rel = kDefaultClassTolRel;
  std::string format;
  std::string out_path;

  void validate() const {
    if (!(tol >= kMinQuadTolerance)) throw InvalidArgument("--tol must be >= 1e-13");
    if (grid_n < 3) throw InvalidArgument("--grid-n must be >= 3");
    if (!(tol_rel >= 0.0)) throw InvalidArgument("--tol-rel must be >= 0");
  }
};

void add_common(CLI::App& app, Common& c, const std::string& default_format) {
  c.format = default_format;
  app.add_option("--tol", c.tol, "absolute quadrature tolerance")->capture_default_str();
  app.add_option("--grid-n", c.grid_n, "classifier grid points per axis")->capture_default_str();
  app.add_option("--tol-rel", c.tol_rel, "classifier relative tolerance")->capture_default_str();
  app.add_option("--format", c.format, "json, csv or table")->capture_default_str();
  app.add_option("--out", c.out_path, "output file (default: stdout)");
}

std::map<std::string, std::vector<double>> parse_param_grids(const std::vector<std::string>& items) {
  std::map<std::string, std::vector<double>> grids;
  for (const auto& item : items) {
    auto [name, grid] = split_assignment(item, "--param");
    grids[name] = parse_grid(grid);
  }
  return grids;
}

std::vector<FamilySpec> expand_families(const std::string& family, const std::map<std::string, std::vector<double>>& grids) {
  const auto& names = family_parameters(family);
  for (const auto& [name, _] : grids) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw InvalidArgument("family " + family + " has no parameter '" + name + "'");
    }
  }
  std::vector<FamilySpec> out{FamilySpec{family, {}}};
  for (const auto& name : names) {
    const auto it = grids.find(name);
    if (it == grids.end()) throw InvalidArgument("missing --param " + name + "=lo:hi:n for family " + family);
    std::vector<FamilySpec> next;
    for (const auto& spec : out) {
      for (double v : it->second) {
        FamilySpec s = spec;
        s.params[name] = v;
        next.push_back(std::move(s));
      }
    }
    out = std::move(next);
  }
  for (const auto& spec : out) family_instantiate(spec);
  return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  if (first == std::string::npos) return {parse_number(text, "grid")};
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos) throw InvalidArgument("grid must be lo:hi:n, got '" + text + "'");
  const double lo = parse_number(std::string_view(text).substr(0, first), "grid lo");
  const double hi = parse_number(std::string_view(text).substr(first + 1, second - first - 1), "grid hi");
  const std::string count = text.substr(second + 1);
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
  if (ec != std::errc() || ptr != count.data() + count.size() || n == 0) {
    throw InvalidArgument("grid point count must be a positive integer, got '" + count + "'");
  }
  if (n == 1) {
    if (lo != hi) throw InvalidArgument("grid with one point needs lo == hi, got '" + text + "'");
    return {lo};
  }
  if (!(lo <= hi)) throw InvalidArgument("grid needs lo <= hi, got '" + text + "'");
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  pts.back() = hi;
  return pts;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of Hadamard-type inequalities for m- and (alpha,m)-log-convex functions",
               "hhverify"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "verify one or more inequalities at a single point");
  FunctionSource check_fn;
  Common check_common;
  double check_a = 0.0, check_b = 1.0, check_alpha = 1.0, check_m = 1.0;
  std::vector<std::string> check_theorems;
  std::string check_variant = "corrected";
  bool check_no_hyp = false;
  check_fn.add_to(*check);
  check->add_option("--a", check_a, "left endpoint")->required();
  check->add_option("--b", check_b, "right endpoint")->required();
  check->add_option("--alpha", check_alpha, "alpha in (0,1]")->capture_default_str();
  check->add_option("--m", check_m, "m in (0,1]")->capture_default_str();
  check->add_option("--theorem", check_theorems, "dr1, dr2, eq4, eq11, eq22, eq31, eq42 (repeatable)")->required();
  check->add_option("--variant", check_variant, "printed or corrected (eq22, eq42)")->capture_default_str();
  check->add_flag("--no-hypothesis", check_no_hyp, "skip the sampled class-membership check");
  add_common(*check, check_common, "json");

  // classify
  auto* classify = app.add_subcommand("classify", "sample the m- or (alpha,m)-log-convexity inequality");
  FunctionSource cls_fn;
  Common cls_common;
  double cls_upper = 0.0, cls_alpha = 1.0, cls_m = 1.0;
  cls_fn.add_to(*classify);
  classify->add_option("--upper", cls_upper, "domain upper bound (sample on [0, upper])")->required();
  classify->add_option("--alpha", cls_alpha, "alpha in (0,1]; 1 checks m-log-convexity")->capture_default_str();
  classify->add_option("--m", cls_m, "m in (0,1]")->capture_default_str();
  add_common(*classify, cls_common, "json");

  // chain
  auto* chain = app.add_subcommand("chain", "evaluate the log-convex chains dr1 / dr2");
  FunctionSource chain_fn;
  Common chain_common;
  double chain_a = 0.0, chain_b = 1.0;
  std::string chain_which = "dr2";
  bool chain_hyp = false;
  chain_fn.add_to(*chain);
  chain->add_option("--a", chain_a, "left endpoint")->required();
  chain->add_option("--b", chain_b, "right endpoint")->required();
  chain->add_option("--which", chain_which, "dr1 or dr2")->capture_default_str();
  chain->add_flag("--hypothesis", chain_hyp, "also sample log-convexity on [0, b]");
  add_common(*chain, chain_common, "json");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate theorems over a Cartesian parameter grid");
  Common sweep_common;
  std::string sweep_family;
  std::vector<std::string> sweep_params, sweep_theorems;
  std::string sweep_a = "0", sweep_b = "1", sweep_alpha = "1", sweep_m = "1";
  std::string sweep_variant = "corrected", sweep_csv, sweep_json;
  bool sweep_hyp = false;
  unsigned sweep_threads = 0;
  sweep_cmd->add_option("--family", sweep_family, "const, exp_linear, exp_affine, poly_shift")->required();
  sweep_cmd->add_option("--param", sweep_params, "family parameter grid name=lo:hi:n (repeatable)");
  sweep_cmd->add_option("--a", sweep_a, "grid lo:hi:n")->capture_default_str();
  sweep_cmd->add_option("--b", sweep_b, "grid lo:hi:n")->capture_default_str();
  sweep_cmd->add_option("--alpha", sweep_alpha, "grid lo:hi:n")->capture_default_str();
  sweep_cmd->add_option("--m", sweep_m, "grid lo:hi:n")->capture_default_str();
  sweep_cmd->add_option("--theorem", sweep_theorems, "theorem ids (repeatable)")->required();
  sweep_cmd->add_option("--variant", sweep_variant, "printed or corrected")->capture_default_str();
  sweep_cmd->add_flag("--hypothesis", sweep_hyp, "sample class membership once per family point");
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads (0: all cores)")->capture_default_str();
  sweep_cmd->add_option("--csv", sweep_csv, "write CSV reports here");
  sweep_cmd->add_option("--json", sweep_json, "write JSON summary here");
  add_common(*sweep_cmd, sweep_common, "table");

  // search
  auto* search = app.add_subcommand("search", "look for the smallest margin inside a parameter box");
  Common search_common;
  std::string search_family, search_theorem, search_variant = "corrected";
  std::vector<std::string> search_box, search_fixed;
  double search_a = 0.0, search_b = 1.0, search_alpha = 1.0, search_m = 1.0;
  std::size_t search_budget = 200;
  search->add_option("--family", search_family, "family name")->required();
  search->add_option("--box", search_box, "searched range name=lo:hi (repeatable)");
  search->add_option("--fixed", search_fixed, "fixed family parameter name=value (repeatable)");
  search->add_option("--a", search_a, "left endpoint")->capture_default_str();
  search->add_option("--b", search_b, "right endpoint")->capture_default_str();
  search->add_option("--alpha", search_alpha, "alpha")->capture_default_str();
  search->add_option("--m", search_m, "m")->capture_default_str();
  search->add_option("--theorem", search_theorem, "theorem id")->required();
  search->add_option("--variant", search_variant, "printed or corrected")->capture_default_str();
  search->add_option("--budget", search_budget, "objective evaluations")->capture_default_str();
  add_common(*search, search_common, "json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const std::uint64_t seed = seed_from_env();

    if (check->parsed()) {
      check_common.validate();
      const OutputFormat format = parse_format(check_common.format);
      auto [f, family] = check_fn.resolve();
      const Interval iv(check_a, check_b);
      const ClassParams params(check_alpha, check_m);
      const Variant variant = parse_variant(check_variant);
      std::vector<Theorem> theorems;
      for (const auto& t : check_theorems) theorems.push_back(parse_theorem(t));

      const VerifyOptions opts{check_common.tol, !check_no_hyp, {check_common.grid_n, check_common.tol_rel, seed}};
      std::vector<InequalityReport> reports;
      for (Theorem t : theorems) {
        InequalityReport r = verify_theorem(t, variant, f, iv, params, opts);
        r.params.family = family;
        reports.push_back(std::move(r));
      }
      print_diagnostics(reports, err);
      std::vector<Verdict> verdicts;
      for (const auto& r : reports) verdicts.push_back(r.verdict);
      if (reports.size() == 1) {
        emit_report(reports.front(), format, check_common.out_path, out);
      } else {
        emit_report(summarize(reports), format, check_common.out_path, out);
      }
      return exit_for(verdicts);
    }

    if (classify->parsed()) {
      cls_common.validate();
      const OutputFormat format = parse_format(cls_common.format);
      if (format == OutputFormat::Csv) throw InvalidArgument("classify supports --format json or table");
      auto [f, family] = cls_fn.resolve();
      const ClassParams params(cls_alpha, cls_m);
      if (!(cls_upper > 0.0)) throw InvalidArgument("--upper must be > 0");
      const ClassifyOptions opts{cls_common.grid_n, cls_common.tol_rel, seed};
      ClassificationReport rep;
      try {
        rep = check_alpha_m_log_convex(f, cls_upper, params, opts);
      } catch (const Error& e) {
        err << "classification failed: " << e.what() << '\n';
        return kExitInconclusive;
      }
      if (format == OutputFormat::Json) {
        emit(to_json(rep, cls_upper, params), cls_common.out_path, out);
      } else {
        std::string text = std::string(rep.verdict == ClassVerdict::Pass ? "pass (sampled certificate)" : "fail") +
                           ", " + std::to_string(rep.samples) + " samples\n";
        if (rep.worst_violation) {
          const Violation& v = *rep.worst_violation;
          text += "worst violation: x=" + format_double(v.x) + " y=" + format_double(v.y) + " t=" +
                  format_double(v.t) + " lhs=" + format_double(v.lhs) + " rhs=" + format_double(v.rhs) +
                  " deficit=" + format_double(v.deficit) + "\n";
        }
        emit(text, cls_common.out_path, out);
      }
      return rep.verdict == ClassVerdict::Pass ? kExitOk : kExitViolated;
    }

    if (chain->parsed()) {
      chain_common.validate();
      const OutputFormat format = parse_format(chain_common.format);
      auto [f, family] = chain_fn.resolve();
      const Interval iv(chain_a, chain_b);
      const Theorem which = parse_theorem(chain_which);
      if (which != Theorem::Dr1 && which != Theorem::Dr2) throw InvalidArgument("--which must be dr1 or dr2");
      const ClassParams params(1.0, 1.0);
      const VerifyOptions opts{chain_common.tol, chain_hyp, {chain_common.grid_n, chain_common.tol_rel, seed}};
      InequalityReport r = verify_theorem(which, Variant::Corrected, f, iv, params, opts);
      r.params.family = family;
      print_diagnostics({r}, err);
      if (format == OutputFormat::Json && r.verdict != Verdict::Inconclusive) {
        const ChainValues terms =
            which == Theorem::Dr1 ? chain_dr1(f, iv, chain_common.tol) : chain_dr2(f, iv, chain_common.tol);
        emit(to_json(terms, r), chain_common.out_path, out);
      } else {
        emit_report(r, format, chain_common.out_path, out);
      }
      return exit_for({r.verdict});
    }

    if (sweep_cmd->parsed()) {
      sweep_common.validate();
      const OutputFormat format = parse_format(sweep_common.format);
      SweepGrid grid;
      grid.families = expand_families(sweep_family, parse_param_grids(sweep_params));
      for (double a : parse_grid(sweep_a)) {
        for (double b : parse_grid(sweep_b)) {
          if (a < b) grid.intervals.emplace_back(a, b);
        }
      }
      for (double alpha : parse_grid(sweep_alpha)) {
        for (double m : parse_grid(sweep_m)) grid.params.emplace_back(alpha, m);
      }
      for (const auto& t : sweep_theorems) grid.theorems.push_back(parse_theorem(t));
      grid.variant = parse_variant(sweep_variant);
      grid.options = {sweep_common.tol, sweep_hyp, {sweep_common.grid_n, sweep_common.tol_rel, seed}};
      grid.threads = sweep_threads;

      const SweepSummary summary = sweep(grid);
      if (!sweep_csv.empty()) emit(to_csv(summary), sweep_csv, out);
      if (!sweep_json.empty()) emit(to_json(summary), sweep_json, out);
      emit_report(summary, format, sweep_common.out_path, out);
      std::vector<Verdict> verdicts;
      for (const auto& r : summary.reports) verdicts.push_back(r.verdict);
      return exit_for(verdicts);
    }

    if (search->parsed()) {
      search_common.validate();
      const OutputFormat format = parse_format(search_common.format);
      SearchBox box;
      box.family = search_family;
      family_parameters(search_family);
      for (const auto& item : search_box) {
        auto [name, range] = split_assignment(item, "--box");
        const auto colon = range.find(':');
        if (colon == std::string::npos) throw InvalidArgument("--box expects name=lo:hi, got '" + item + "'");
        box.dims.push_back({name, parse_number(std::string_view(range).substr(0, colon), "--box lo"),
                            parse_number(std::string_view(range).substr(colon + 1), "--box hi")});
      }
      for (const auto& item : search_fixed) {
        auto [name, value] = split_assignment(item, "--fixed");
        box.fixed[name] = parse_number(value, "--fixed " + name);
      }
      box.a = search_a;
      box.b = search_b;
      box.alpha = search_alpha;
      box.m = search_m;
      const Theorem theorem = parse_theorem(search_theorem);
      const Variant variant = parse_variant(search_variant);
      if (search_budget < 1) throw InvalidArgument("--budget must be >= 1");

      const SearchResult result = search_min_margin(box, theorem, variant, search_budget, search_common.tol, seed);
      print_diagnostics({result.report}, err);
      if (format == OutputFormat::Json) {
        emit(to_json(result), search_common.out_path, out);
      } else {
        emit_report(result.report, format, search_common.out_path, out);
      }
      return exit_for({result.report.verdict});
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInconclusive;
  }
  return kExitUsage;
}

}  // namespace hhv::cli
