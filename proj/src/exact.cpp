#include "evendesign/exact.hpp"

#include <limits>

#include "evendesign/errors.hpp"

namespace evendesign {

BigInt pow2(unsigned exponent)
{
    BigInt one = 1;
    return one << exponent;
}

Rational ratio(const BigInt& num, const BigInt& den)
{
    if (den == 0)
        throw DomainError("zero denominator");
    return den < 0 ? Rational(BigInt(-num), BigInt(-den)) : Rational(num, den);
}

bool is_integer(const Rational& value)
{
    return boost::multiprecision::denominator(value) == 1;
}

BigInt require_integer(const Rational& value, std::string_view what)
{
    if (!is_integer(value))
        throw InvariantViolation(std::string(what) + " is not an integer: " + to_string(value));
    return boost::multiprecision::numerator(value);
}

BigInt floor(const Rational& value)
{
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    BigInt q = num / den; // truncates toward zero
    if (q * den != num && num < 0)
        q -= 1;
    return q;
}

BigInt ceil(const Rational& value)
{
    return -floor(-value);
}

std::int64_t to_int64(const BigInt& value)
{
    if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min())
        throw InvariantViolation("integer does not fit in 64 bits: " + value.str());
    return value.convert_to<std::int64_t>();
}

std::string to_string(const BigInt& value)
{
    return value.str();
}

std::string to_string(const Rational& value)
{
    if (is_integer(value))
        return boost::multiprecision::numerator(value).str();
    return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

double to_double(const Rational& value)
{
    return value.convert_to<double>();
}

std::string to_decimal(const Rational& value, int digits)
{
    const bool negative = value < 0;
    const Rational mag = negative ? Rational(-value) : value;
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    const BigInt scaled = floor(mag * Rational(scale) + Rational(1, 2));
    std::string s = BigInt(scaled / scale).str();
    if (digits > 0) {
        std::string frac = BigInt(scaled % scale).str();
        s += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
    }
    return (negative && scaled != 0 ? "-" : "") + s;
}

} // namespace evendesign
