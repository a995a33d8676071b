#include "mlext/rational.hpp"

#include <cctype>

#include "mlext/errors.hpp"

namespace mlext {

std::string to_string(const Rational& value) {
  Rational reduced(value);
  reduced.canonicalize();
  return reduced.get_str(10);
}

namespace {

// Parses text[begin, end) and reports errors relative to `base`.
Rational parse_at(std::string_view text, std::size_t base) {
  if (text.empty()) throw ParseError("empty rational", base);
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t from) {
    std::size_t end = from;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    return end;
  };
  const std::size_t num_end = digits(pos);
  if (num_end == pos) throw ParseError("expected digits", base + pos);
  mpz_class numerator(std::string(text.substr(pos, num_end - pos)), 10);
  mpz_class denominator = 1;
  pos = num_end;
  if (pos < text.size()) {
    if (text[pos] != '/') throw ParseError(std::string("unexpected character '") + text[pos] + "'", base + pos);
    ++pos;
    const std::size_t den_end = digits(pos);
    if (den_end == pos) throw ParseError("expected denominator digits", base + pos);
    denominator = mpz_class(std::string(text.substr(pos, den_end - pos)), 10);
    if (denominator == 0) throw ParseError("zero denominator", base + pos);
    if (den_end != text.size()) throw ParseError("trailing characters", base + den_end);
  }
  Rational out(negative ? mpz_class(-numerator) : numerator, denominator);
  out.canonicalize();
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) { return parse_at(text, 0); }

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_at(text.substr(start, end - start), start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace mlext
