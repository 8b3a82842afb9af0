#include "homsym/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "homsym/errors.hpp"

namespace homsym {

Int factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative argument");
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

Int pow10(int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= 10;
  return r;
}

Rational parse_rational(const std::string& text) {
  auto fail = [&] { throw DomainError("not a rational literal: '" + text + "'"); };
  std::string s = text;
  bool neg = false;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = (s[i] == '-');
    ++i;
  }
  if (i >= s.size()) fail();
  auto digits = [&](size_t& pos) {
    std::string d;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) d += s[pos++];
    return d;
  };
  std::string whole = digits(i);
  Rational r;
  if (i < s.size() && s[i] == '.') {
    ++i;
    std::string frac = digits(i);
    if (whole.empty() && frac.empty()) fail();
    if (i != s.size()) fail();
    Int num = whole.empty() ? Int(0) : Int(whole);
    num *= pow10(static_cast<int>(frac.size()));
    if (!frac.empty()) num += Int(frac);
    r = Rational(num, pow10(static_cast<int>(frac.size())));
  } else if (i < s.size() && s[i] == '/') {
    ++i;
    std::string den = digits(i);
    if (whole.empty() || den.empty() || i != s.size()) fail();
    Int d(den);
    if (d == 0) throw DivisionByZeroError("rational literal with zero denominator");
    r = Rational(Int(whole), d);
  } else {
    if (whole.empty() || i != s.size()) fail();
    r = Rational(Int(whole));
  }
  return neg ? Rational(-r) : r;
}

std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

namespace {

// Rounds num/den (den > 0) to the nearest integer, ties to even.
Int round_half_even(const Int& num, const Int& den) {
  Int q, rem;
  divide_qr(num, den, q, rem);
  if (num < 0 && rem != 0) {
    q -= 1;
    rem += den;
  }
  Int twice = rem * 2;
  if (twice > den || (twice == den && (q & 1) != 0)) q += 1;
  return q;
}

int decimal_digits(const Int& v) {
  // Digit count of |v|; 0 has one digit.
  Int a = abs(v);
  std::string s = a.str();
  return static_cast<int>(s.size());
}

}  // namespace

std::string to_scientific(const Rational& r, int significant_digits) {
  if (significant_digits < 1) throw DomainError("significant_digits must be positive");
  const int sd = significant_digits;
  if (r == 0) {
    std::string s = "0.";
    s.append(static_cast<size_t>(sd - 1), '0');
    s += "e+00";
    return s;
  }
  Int num = abs(numerator(r));
  Int den = denominator(r);
  // e10 with 10^e10 <= |r| < 10^(e10+1)
  int e10 = decimal_digits(num) - decimal_digits(den);
  auto cmp_pow = [&](int e) {
    // sign of |r| - 10^e
    Int lhs = num, rhs = den;
    if (e >= 0) rhs *= pow10(e); else lhs *= pow10(-e);
    return lhs.compare(rhs);
  };
  while (cmp_pow(e10) < 0) --e10;
  while (cmp_pow(e10 + 1) >= 0) ++e10;

  // digits = round(|r| * 10^(sd-1-e10)) in [10^(sd-1), 10^sd]
  int shift = sd - 1 - e10;
  Int n = num, d = den;
  if (shift >= 0) n *= pow10(shift); else d *= pow10(-shift);
  Int digs = round_half_even(n, d);
  if (digs == pow10(sd)) {
    digs /= 10;
    ++e10;
  }
  std::string ds = digs.str();
  std::string out;
  if (r < 0) out += "-";
  out += ds.substr(0, 1);
  out += ".";
  out += ds.substr(1);
  out += "e";
  if (e10 < 0) {
    out += "-";
    e10 = -e10;
  } else {
    out += "+";
  }
  std::string es = std::to_string(e10);
  if (es.size() < 2) es = "0" + es;
  out += es;
  return out;
}

double to_double(const Rational& r) {
  if (r == 0) return 0.0;
  bool neg = r < 0;
  Int num = abs(numerator(r));
  Int den = denominator(r);
  // e2 with 2^e2 <= |r| < 2^(e2+1)
  long e2 = static_cast<long>(msb(num)) - static_cast<long>(msb(den));
  auto cmp_pow = [&](long e) {
    Int lhs = num, rhs = den;
    if (e >= 0) rhs <<= e; else lhs <<= -e;
    return lhs.compare(rhs);
  };
  if (cmp_pow(e2) < 0) --e2;
  else if (cmp_pow(e2 + 1) >= 0) ++e2;

  if (e2 > 1024) return neg ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity();
  if (e2 < -1075) return neg ? -0.0 : 0.0;

  // Keep 52 fractional bits; fewer when the result is subnormal.
  long frac_bits = 52;
  if (e2 < -1022) frac_bits = 52 + (e2 + 1022);
  long shift = frac_bits - e2;
  Int n = num, d = den;
  if (shift >= 0) n <<= shift; else d <<= -shift;
  Int mant = round_half_even(n, d);
  double m = mant.convert_to<double>();
  double v = std::ldexp(m, static_cast<int>(e2 - frac_bits));
  return neg ? -v : v;
}

}  // namespace homsym
