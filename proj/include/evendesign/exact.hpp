#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace evendesign {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt pow2(unsigned exponent);

// num/den for any nonzero den. The two-argument Rational constructor rejects
// negative denominators.
Rational ratio(const BigInt& num, const BigInt& den);

bool is_integer(const Rational& value);

/// Converts an exact rational to an integer; throws InvariantViolation naming
/// `what` when the value has a nontrivial denominator.
BigInt require_integer(const Rational& value, std::string_view what);

BigInt ceil(const Rational& value);
BigInt floor(const Rational& value);

std::int64_t to_int64(const BigInt& value);

std::string to_string(const BigInt& value);
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Fixed-point rendering with `digits` decimals, rounded half away from zero.
std::string to_decimal(const Rational& value, int digits);

} // namespace evendesign
