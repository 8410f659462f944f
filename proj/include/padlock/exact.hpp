#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace padlock {

/// Arbitrary-precision count of outcomes, trees, matrices, ...
using Count = boost::multiprecision::cpp_int;

/// Exact rational probability. Never converted to floating point except
/// for display.
using ExactProb = boost::multiprecision::cpp_rational;

/// Thrown when an exhaustive computation would exceed its outcome budget.
class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an operation needs an equiprobable outcome space.
class NotEquiprobable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default budget for exhaustive enumeration (2^20 outcomes).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

Count ipow(const Count& base, unsigned exponent);
Count factorial(unsigned n);
Count binomial(unsigned n, unsigned k);
/// 1*3*5*...*(2n-1); equal to 1 for n = 0.
Count double_factorial_odd(unsigned n);

/// Count converted to uint64, or TooLarge if it does not fit / exceeds `budget`.
std::uint64_t checked_size(const Count& size, std::uint64_t budget, std::string_view what);

ExactProb make_prob(const Count& num, const Count& den);

std::string to_string(const Count& c);
/// "num/den" in lowest terms ("0/1" for zero).
std::string to_string(const ExactProb& p);
double to_double(const ExactProb& p);

/// Parses "3", "-2", "3/4" into an exact rational. Throws std::invalid_argument.
ExactProb parse_rational(std::string_view text);

}  // namespace padlock
