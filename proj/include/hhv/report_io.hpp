#pragma once

// Serialization of reports: JSON (one object per report, sweeps wrapped in
// {"reports": [...], "min_margin": {...}}), CSV with a fixed column order, and
// a plain-text table. Numbers are written with 17 significant digits;
// absent or non-finite values become null (JSON) or an empty field (CSV).

#include <iosfwd>
#include <string>
#include <string_view>

#include "hhv/bounds.hpp"
#include "hhv/classify.hpp"
#include "hhv/verify.hpp"

namespace hhv {

inline constexpr std::string_view kCsvHeader =
    "theorem,variant,a,b,alpha,m,family_params,lhs,rhs,margin,quad_err,hypothesis,verdict";

std::string format_double(double v);

std::string to_json(const InequalityReport& r);
std::string to_json(const SweepSummary& s);
std::string to_json(const SearchResult& s);
std::string to_json(const ClassificationReport& c, double domain_upper, const ClassParams& params);
std::string to_json(const ChainValues& chain, const InequalityReport& r);

/// Inverse of to_json(InequalityReport). Throws InvalidArgument on malformed input.
InequalityReport report_from_json(std::string_view text);

std::string csv_row(const InequalityReport& r);
std::string to_csv(const SweepSummary& s);

std::string to_table(const SweepSummary& s);

enum class OutputFormat { Json, Csv, Table };

OutputFormat parse_format(std::string_view s);

/// Writes `text` to `path`, or to `fallback` when path is empty or "-".
/// Throws IoError when the file cannot be written.
void emit(const std::string& text, const std::string& path, std::ostream& fallback);

}  // namespace hhv

namespace hhv {

void emit_report(const InequalityReport& r, OutputFormat format, const std::string& path, std::ostream& fallback);
void emit_report(const SweepSummary& s, OutputFormat format, const std::string& path, std::ostream& fallback);

}  // namespace hhv
