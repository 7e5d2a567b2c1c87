#include "specfold/rational.hpp"

#include <cctype>
#include <limits>

#include "specfold/errors.hpp"

namespace specfold {

Integer rational_floor(const Rational& q) {
  Integer num = numerator(q), den = denominator(q);  // den > 0
  Integer quot = num / den;                          // truncates toward zero
  if (num < 0 && quot * den != num) --quot;
  return quot;
}

Integer rational_ceil(const Rational& q) { return -rational_floor(-q); }

Rational rational_pow(const Rational& base, long exp) {
  if (base == 0 && exp < 0) throw ZeroFactor("rational_pow: 0 cannot be raised to a negative power");
  if (exp == 0) return Rational(1);
  bool invert = exp < 0;
  unsigned long n = invert ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
  Rational acc(1), sq = base;
  while (n) {
    if (n & 1) acc *= sq;
    sq *= sq;
    n >>= 1;
  }
  return invert ? Rational(1) / acc : acc;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

long long to_longlong_checked(const Integer& n) {
  if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
    throw NumericError("integer exceeds 64-bit range: " + n.str());
  return n.convert_to<long long>();
}

Rational parse_rational(std::string_view text) {
  size_t i = 0, n = text.size();
  auto skip_ws = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  auto read_int = [&](const char* what) {
    skip_ws();
    size_t start = i;
    if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
    size_t digits_from = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits_from)
      throw ParseError(std::string("expected ") + what + " in rational '" + std::string(text) + "'");
    return Integer(std::string(text.substr(start, i - start)));
  };

  Integer num = read_int("numerator");
  skip_ws();
  Integer den = 1;
  if (i < n && text[i] == '/') {
    ++i;
    den = read_int("denominator");
    if (den == 0) throw ParseError("zero denominator in rational '" + std::string(text) + "'");
  }
  skip_ws();
  if (i != n) throw ParseError("trailing characters in rational '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace specfold
