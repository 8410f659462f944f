#include "padlock/exact.hpp"

#include <algorithm>

namespace padlock {

Count ipow(const Count& base, unsigned exponent) {
  Count result = 1;
  Count b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

Count factorial(unsigned n) {
  Count r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Count binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Count r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Count double_factorial_odd(unsigned n) {
  Count r = 1;
  for (unsigned i = 1; i <= n; ++i) r *= 2 * i - 1;
  return r;
}

std::uint64_t checked_size(const Count& size, std::uint64_t budget, std::string_view what) {
  if (size > budget) {
    throw TooLarge(std::string(what) + ": " + to_string(size) + " outcomes exceed budget " +
                   std::to_string(budget));
  }
  return size.convert_to<std::uint64_t>();
}

ExactProb make_prob(const Count& num, const Count& den) {
  if (den == 0) throw std::domain_error("make_prob: zero denominator");
  return ExactProb(num, den);
}

std::string to_string(const Count& c) { return c.str(); }

std::string to_string(const ExactProb& p) {
  return to_string(Count(numerator(p))) + "/" + to_string(Count(denominator(p)));
}

double to_double(const ExactProb& p) { return p.convert_to<double>(); }

namespace {

Count parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  Count value = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    }
    value = value * 10 + (s[i] - '0');
  }
  return negative ? Count(-value) : value;
}

}  // namespace

ExactProb parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExactProb(parse_integer(text, text));
  const Count num = parse_integer(text.substr(0, slash), text);
  const Count den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return ExactProb(num, den);
}

}  // namespace padlock
