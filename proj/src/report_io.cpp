#include "hhv/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hhv/error.hpp"

namespace hhv {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string json_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "null";
  return format_double(*v);
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string variant_text(const InequalityReport& r) { return r.variant ? to_string(*r.variant) : "n/a"; }

std::string params_json(const ReportParams& p) {
  std::string out = "{\"a\":" + json_number(p.a) + ",\"b\":" + json_number(p.b) +
                    ",\"alpha\":" + json_number(p.alpha) + ",\"m\":" + json_number(p.m);
  if (p.family) out += ",\"family\":" + json_string(p.family->to_string());
  return out + "}";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "";
  return format_double(*v);
}

std::optional<double> optional_number(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number()) throw InvalidArgument(std::string("report field '") + key + "' must be a number or null");
  return v.get<double>();
}

}  // namespace

std::string to_json(const InequalityReport& r) {
  return "{\"theorem\":" + json_string(to_string(r.theorem)) + ",\"variant\":" + json_string(variant_text(r)) +
         ",\"params\":" + params_json(r.params) + ",\"hypothesis\":" + json_string(to_string(r.hypothesis)) +
         ",\"lhs\":" + json_number(r.lhs) + ",\"rhs\":" + json_number(r.rhs) +
         ",\"margin\":" + json_number(r.margin) + ",\"quad_err\":" + json_number(r.quad_err) +
         ",\"verdict\":" + json_string(to_string(r.verdict)) + "}";
}

std::string to_json(const SweepSummary& s) {
  std::string out = "{\"reports\":[";
  for (std::size_t i = 0; i < s.reports.size(); ++i) {
    if (i) out += ",\n";
    out += to_json(s.reports[i]);
  }
  out += "],\"min_margin\":";
  if (s.min_margin) {
    out += "{\"value\":" + json_number(s.min_margin->value) + ",\"params\":" + params_json(s.min_margin->params) + "}";
  } else {
    out += "null";
  }
  return out + "}";
}

std::string to_json(const SearchResult& s) {
  std::string out = "{\"best_params\":{";
  bool first = true;
  for (const auto& [k, v] : s.best_params) {
    if (!first) out += ',';
    first = false;
    out += json_string(k) + ":" + json_number(v);
  }
  out += "},\"best_margin\":" + json_number(s.best_margin) + ",\"evaluations\":" + std::to_string(s.evaluations) +
         ",\"report\":" + to_json(s.report) + "}";
  return out;
}

std::string to_json(const ClassificationReport& c, double domain_upper, const ClassParams& params) {
  std::string out = "{\"verdict\":" + json_string(c.verdict == ClassVerdict::Pass ? "pass" : "fail") +
                    ",\"certificate\":" +
                    json_string(c.verdict == ClassVerdict::Pass ? "sampled certificate" : "violation witness") +
                    ",\"domain_upper\":" + json_number(domain_upper) + ",\"alpha\":" + json_number(params.alpha()) +
                    ",\"m\":" + json_number(params.m()) + ",\"samples\":" + std::to_string(c.samples) +
                    ",\"worst_violation\":";
  if (c.worst_violation) {
    const Violation& v = *c.worst_violation;
    out += "{\"x\":" + json_number(v.x) + ",\"y\":" + json_number(v.y) + ",\"t\":" + json_number(v.t) +
           ",\"lhs\":" + json_number(v.lhs) + ",\"rhs\":" + json_number(v.rhs) +
           ",\"deficit\":" + json_number(v.deficit) + "}";
  } else {
    out += "null";
  }
  return out + "}";
}

std::string to_json(const ChainValues& chain, const InequalityReport& r) {
  std::string out = "{\"terms\":[";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += ',';
    out += "{\"label\":" + json_string(chain[i].label) + ",\"value\":" + json_number(chain[i].value) +
           ",\"err_est\":" + json_number(chain[i].err_est) + "}";
  }
  return out + "],\"report\":" + to_json(r) + "}";
}

InequalityReport report_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    InequalityReport r;
    r.theorem = parse_theorem(j.at("theorem").get<std::string>());
    const auto variant = j.at("variant").get<std::string>();
    if (variant == "printed") {
      r.variant = Variant::Printed;
    } else if (variant == "corrected") {
      r.variant = Variant::Corrected;
    } else if (variant != "n/a") {
      throw InvalidArgument("unknown variant '" + variant + "'");
    }
    const auto& p = j.at("params");
    r.params.a = p.at("a").get<double>();
    r.params.b = p.at("b").get<double>();
    r.params.alpha = p.at("alpha").get<double>();
    r.params.m = p.at("m").get<double>();
    if (p.contains("family")) r.params.family = parse_family(p.at("family").get<std::string>());
    r.hypothesis = parse_hypothesis(j.at("hypothesis").get<std::string>());
    r.lhs = optional_number(j, "lhs");
    r.rhs = optional_number(j, "rhs");
    r.margin = optional_number(j, "margin");
    r.quad_err = optional_number(j, "quad_err").value_or(0.0);
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed report JSON: ") + e.what());
  }
}

std::string csv_row(const InequalityReport& r) {
  const ReportParams& p = r.params;
  std::string out = to_string(r.theorem) + "," + variant_text(r) + "," + format_double(p.a) + "," +
                    format_double(p.b) + "," + format_double(p.alpha) + "," + format_double(p.m) + "," +
                    csv_field(p.family ? p.family->to_string() : "") + "," + csv_number(r.lhs) + "," +
                    csv_number(r.rhs) + "," + csv_number(r.margin) + "," + csv_number(r.quad_err) + "," +
                    to_string(r.hypothesis) + "," + to_string(r.verdict);
  return out;
}

std::string to_csv(const SweepSummary& s) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : s.reports) out += csv_row(r) + '\n';
  return out;
}

std::string to_table(const SweepSummary& s) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-6s %-10s %8s %8s %6s %6s %-26s %14s %14s %12s %-9s %s\n", "thm", "variant",
                "a", "b", "alpha", "m", "family", "lhs", "rhs", "margin", "hyp", "verdict");
  os << line;
  auto num = [](std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", *v);
    return std::string(buf);
  };
  for (const auto& r : s.reports) {
    const ReportParams& p = r.params;
    std::snprintf(line, sizeof line, "%-6s %-10s %8.4g %8.4g %6.3g %6.3g %-26s %14s %14s %12s %-9s %s\n",
                  to_string(r.theorem).c_str(), variant_text(r).c_str(), p.a, p.b, p.alpha, p.m,
                  p.family ? p.family->to_string().c_str() : "-", num(r.lhs).c_str(), num(r.rhs).c_str(),
                  num(r.margin).c_str(), to_string(r.hypothesis).c_str(), to_string(r.verdict).c_str());
    os << line;
    if (!r.diagnostic.empty()) os << "       note: " << r.diagnostic << '\n';
  }
  os << "reports: " << s.reports.size();
  for (const auto& [v, n] : s.counts) os << "  " << to_string(v) << ": " << n;
  os << '\n';
  if (s.min_margin) os << "min margin: " << format_double(s.min_margin->value) << '\n';
  return os.str();
}

OutputFormat parse_format(std::string_view s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "table") return OutputFormat::Table;
  throw InvalidArgument("unknown output format '" + std::string(s) + "' (expected json, csv, table)");
}

void emit(const std::string& text, const std::string& path, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    if (!text.empty() && text.back() != '\n') fallback << '\n';
    fallback.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing", path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  out.flush();
  if (!out) throw IoError("write failed", path);
}

void emit_report(const InequalityReport& r, OutputFormat format, const std::string& path, std::ostream& fallback) {
  switch (format) {
    case OutputFormat::Json: emit(to_json(r), path, fallback); return;
    case OutputFormat::Csv: emit(std::string(kCsvHeader) + "\n" + csv_row(r) + "\n", path, fallback); return;
    case OutputFormat::Table: emit(to_table(summarize({r})), path, fallback); return;
  }
}

void emit_report(const SweepSummary& s, OutputFormat format, const std::string& path, std::ostream& fallback) {
  switch (format) {
    case OutputFormat::Json: emit(to_json(s), path, fallback); return;
    case OutputFormat::Csv: emit(to_csv(s), path, fallback); return;
    case OutputFormat::Table: emit(to_table(s), path, fallback); return;
  }
}

}  // namespace hhv
