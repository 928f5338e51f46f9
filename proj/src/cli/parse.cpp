#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "binatoms/bigint.hpp"
#include "binatoms/cli/cli.hpp"
#include "binatoms/error.hpp"

namespace binatoms::cli {

std::int64_t parse_exact_integer(std::string_view text) {
  const std::string original(text);
  auto fail = [&original](const char* why) -> std::int64_t {
    throw UsageError("invalid integer '" + original + "': " + why);
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

  std::string digits;
  std::int64_t scale = 0;  // value = digits * 10^scale
  bool seen_digit = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    digits += text[i];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      digits += text[i];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) return fail("no digits");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    std::int64_t exponent = 0;
    bool exp_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      exponent = exponent * 10 + (text[i] - '0');
      exp_digit = true;
      if (exponent > 1000) return fail("exponent too large");
    }
    if (!exp_digit) return fail("empty exponent");
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != text.size()) return fail("trailing characters");

  // A leading zero would make GMP read the digits as octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  BigInt value(digits);
  BigInt ten = 10;
  for (; scale > 0; --scale) value *= ten;
  for (; scale < 0; ++scale) {
    if (value % ten != 0) return fail("not an integer");
    value /= ten;
  }
  if (negative) value = -value;
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min())
    return fail("out of 64-bit range");
  return value.convert_to<std::int64_t>();
}

}  // namespace binatoms::cli
