#include "pluripot/rational.hpp"

#include <cctype>
#include <cmath>

namespace pluripot {

namespace {

bool parse_integer(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  out = BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  return true;
}

}  // namespace

Rational parse_rational(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  auto slash = s.find('/');
  BigInt num, den(1);
  bool ok = slash == std::string_view::npos
                ? parse_integer(s, num)
                : parse_integer(s.substr(0, slash), num) && parse_integer(s.substr(slash + 1), den);
  if (!ok) throw PrecondError("not an exact rational: '" + std::string(s) + "'");
  if (den == 0) throw PrecondError("zero denominator in '" + std::string(s) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

GaussQ& GaussQ::operator+=(const GaussQ& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussQ& GaussQ::operator*=(const GaussQ& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussQ& GaussQ::operator/=(const GaussQ& o) {
  Rational n = o.norm2();
  if (n == 0) throw std::domain_error("division by zero Gaussian rational");
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

GaussQ pow(const GaussQ& z, int e) {
  GaussQ result(1), base = z;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string to_string(const GaussQ& z) {
  if (z.im == 0) return to_string(z.re);
  return to_string(z.re) + (z.im < 0 ? "-" : "+") + to_string(abs(z.im)) + "i";
}

bool snap_rational(double x, long max_den, double tol, Rational& out) {
  if (!std::isfinite(x)) return false;
  // continued-fraction convergents
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) {
      out = Rational(h1, k1);
      return true;
    }
    double frac = r - a;
    if (frac < 1e-300) break;
    r = 1.0 / frac;
  }
  return false;
}

}  // namespace pluripot
