#include "mlext/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <sstream>

#include "mlext/errors.hpp"

namespace mlext {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void append_point(std::string& out, const FormVector& p, bool quoted) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += quoted ? ", " : ",";
    if (quoted) out += '"';
    out += to_string(p[i]);
    if (quoted) out += '"';
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
}

template <class T>
T field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"", 0);
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field \"") + key + "\": " + e.what(), 0);
  }
}

void check_version(int version) {
  if (version != kFormatVersion)
    throw ParseError("unsupported format_version " + std::to_string(version), 0);
}

Shape parse_shape(int m, int n) {
  try {
    return make_shape(m, n);
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

FormVector make_point(Shape shape, std::vector<Rational> coeffs, std::size_t offset) {
  if (coeffs.size() != shape.dimension())
    throw ParseError("point has " + std::to_string(coeffs.size()) + " coordinates, expected " +
                         std::to_string(shape.dimension()),
                     offset);
  return FormVector(shape, std::move(coeffs));
}

ExtremeSet read_json_set(std::string_view text) {
  const json doc = parse_json(text);
  check_version(field<int>(doc, "format_version"));
  const Shape shape = parse_shape(field<int>(doc, "m"), field<int>(doc, "n"));
  const auto count = field<std::size_t>(doc, "count");
  const bool complete = doc.contains("complete") ? field<bool>(doc, "complete") : true;
  const auto rows = field<std::vector<std::vector<std::string>>>(doc, "points");
  if (rows.size() != count) throw ParseError("count does not match the number of points", 0);
  std::vector<FormVector> points;
  points.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Rational> coeffs;
    coeffs.reserve(row.size());
    for (const auto& s : row) coeffs.push_back(parse_rational(s));
    points.push_back(make_point(shape, std::move(coeffs), 0));
  }
  return ExtremeSet(shape, std::move(points), complete);
}

// "key=value" tokens of the CSV header line.
std::string header_value(std::string_view header, std::string_view key) {
  std::istringstream in{std::string(header)};
  std::string token;
  while (in >> token) {
    if (token.size() > key.size() && token.compare(0, key.size(), key) == 0 && token[key.size()] == '=')
      return token.substr(key.size() + 1);
  }
  throw ParseError("CSV header lacks " + std::string(key), 0);
}

long long header_int(std::string_view header, std::string_view key) {
  const std::string value = header_value(header, key);
  long long out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ParseError("CSV header field " + std::string(key) + " is not an integer", 0);
  return out;
}

ExtremeSet read_csv_set(std::string_view text) {
  const std::size_t eol = text.find('\n');
  const std::string_view header = text.substr(0, eol);
  if (header.rfind("# mlext extreme-set", 0) != 0) throw ParseError("missing CSV header", 0);
  check_version(static_cast<int>(header_int(header, "format_version")));
  const Shape shape = parse_shape(static_cast<int>(header_int(header, "m")), static_cast<int>(header_int(header, "n")));
  const auto count = static_cast<std::size_t>(header_int(header, "count"));
  const bool complete = header_value(header, "complete") != "false";
  std::vector<FormVector> points;
  std::size_t pos = eol == std::string_view::npos ? text.size() : eol + 1;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    if (!line.empty()) {
      try {
        points.push_back(make_point(shape, parse_rational_list(line), 0));
      } catch (const ParseError& e) {
        throw ParseError(std::string("bad CSV row: ") + e.what(), pos + e.position());
      }
    }
    pos = end + 1;
  }
  if (points.size() != count) throw ParseError("count does not match the number of rows", text.size());
  return ExtremeSet(shape, std::move(points), complete);
}

ordered_json form_json(const FormVector& p) {
  ordered_json row = ordered_json::array();
  for (const auto& c : p.coeffs()) row.push_back(to_string(c));
  return row;
}

const char* mode_name(BasisMode mode) { return mode == BasisMode::all_signs ? "all_signs" : "sign_classes"; }

}  // namespace

std::string write_extreme_set(const ExtremeSet& set, FileFormat format) {
  const Shape shape = set.shape();
  std::string out;
  if (format == FileFormat::csv) {
    out += "# mlext extreme-set format_version=" + std::to_string(kFormatVersion) + " m=" + std::to_string(shape.m) +
           " n=" + std::to_string(shape.n) + " count=" + std::to_string(set.size()) +
           " complete=" + (set.complete() ? "true" : "false") + "\n";
    for (const auto& p : set.points()) {
      append_point(out, p, false);
      out += '\n';
    }
    return out;
  }
  out += "{\n";
  out += "  \"format_version\": " + std::to_string(kFormatVersion) + ",\n";
  out += "  \"m\": " + std::to_string(shape.m) + ",\n";
  out += "  \"n\": " + std::to_string(shape.n) + ",\n";
  out += "  \"count\": " + std::to_string(set.size()) + ",\n";
  out += std::string("  \"complete\": ") + (set.complete() ? "true" : "false") + ",\n";
  out += "  \"points\": [";
  for (std::size_t i = 0; i < set.size(); ++i) {
    out += i ? ",\n    [" : "\n    [";
    append_point(out, set[i], true);
    out += ']';
  }
  out += set.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

ExtremeSet read_extreme_set(std::string_view text, FileFormat format) {
  return format == FileFormat::csv ? read_csv_set(text) : read_json_set(text);
}

std::string write_constant_report(const ConstantReport& report) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["name"] = report.name;
  doc["m"] = report.m ? ordered_json(*report.m) : ordered_json(nullptr);
  doc["n"] = report.n ? ordered_json(*report.n) : ordered_json(nullptr);
  doc["lambda"] = report.lambda ? ordered_json(*report.lambda) : ordered_json(nullptr);
  doc["value"] = report.value;
  doc["argmax"] = report.argmax ? form_json(*report.argmax) : ordered_json(nullptr);
  doc["exact_note"] = report.exact_note ? ordered_json(*report.exact_note) : ordered_json(nullptr);
  if (report.d) doc["d"] = *report.d;
  return doc.dump(2) + "\n";
}

std::string write_resume_state(const ResumeState& state) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["m"] = state.shape.m;
  doc["n"] = state.shape.n;
  doc["mode"] = mode_name(state.mode);
  doc["bases_completed"] = state.bases_completed;
  doc["basis_cursor"] = state.basis_cursor;
  doc["sign_cursor"] = state.sign_cursor;
  ordered_json partial = ordered_json::array();
  for (const auto& p : state.partial) partial.push_back(form_json(p));
  doc["partial"] = std::move(partial);
  return doc.dump(2) + "\n";
}

ResumeState read_resume_state(std::string_view text) {
  const json doc = parse_json(text);
  check_version(field<int>(doc, "format_version"));
  ResumeState state;
  state.shape = parse_shape(field<int>(doc, "m"), field<int>(doc, "n"));
  const auto mode = field<std::string>(doc, "mode");
  if (mode == "all_signs") {
    state.mode = BasisMode::all_signs;
  } else if (mode == "sign_classes") {
    state.mode = BasisMode::sign_classes;
  } else {
    throw ParseError("unknown basis mode \"" + mode + "\"", 0);
  }
  state.bases_completed = field<std::uint64_t>(doc, "bases_completed");
  state.basis_cursor = field<std::vector<std::size_t>>(doc, "basis_cursor");
  state.sign_cursor = field<std::uint64_t>(doc, "sign_cursor");
  for (const auto& row : field<std::vector<std::vector<std::string>>>(doc, "partial")) {
    std::vector<Rational> coeffs;
    for (const auto& s : row) coeffs.push_back(parse_rational(s));
    state.partial.push_back(make_point(state.shape, std::move(coeffs), 0));
  }
  return state;
}

Rational max_denominator(const ExtremeSet& set) {
  mpz_class best = 1;
  for (const auto& p : set.points()) {
    for (const auto& c : p.coeffs()) {
      if (c.get_den() > best) best = c.get_den();
    }
  }
  return Rational(best);
}

}  // namespace mlext
