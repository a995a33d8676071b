#pragma once

#include <string>
#include <string_view>

#include "mlext/constants.hpp"
#include "mlext/search.hpp"

namespace mlext {

/// Version stamped into every file and cache key.
inline constexpr int kFormatVersion = 1;

enum class FileFormat { json, csv };

/// JSON: {"format_version", "m", "n", "count", "points": [["p/q", ...], ...]},
/// one point per line. CSV: a "# ..." header line, then one point per row.
std::string write_extreme_set(const ExtremeSet& set, FileFormat format);

/// Inverse of write_extreme_set. Throws ParseError on malformed input.
ExtremeSet read_extreme_set(std::string_view text, FileFormat format);

/// {"name", "m", "n", "lambda", "value", "argmax", "exact_note"} (+ "d").
std::string write_constant_report(const ConstantReport& report);

std::string write_resume_state(const ResumeState& state);
ResumeState read_resume_state(std::string_view text);

/// Largest denominator among the set's coordinates.
Rational max_denominator(const ExtremeSet& set);

}  // namespace mlext
