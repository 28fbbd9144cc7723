#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace pluripot {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using cplx = std::complex<double>;

/// Input violates a documented precondition.
class PrecondError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not reach its guaranteed accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q"; anything else (decimals included) throws PrecondError.
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Gaussian rational re + i*im.
struct GaussQ {
  Rational re{0};
  Rational im{0};

  GaussQ() = default;
  GaussQ(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussQ(long r) : re(r) {}  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return re == 0 && im == 0; }
  GaussQ conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  cplx to_complex() const { return {to_double(re), to_double(im)}; }

  GaussQ& operator+=(const GaussQ& o);
  GaussQ& operator-=(const GaussQ& o);
  GaussQ& operator*=(const GaussQ& o);
  GaussQ& operator/=(const GaussQ& o);
  GaussQ operator-() const { return {-re, -im}; }

  friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
  friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
  friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
  friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
  friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
};

GaussQ pow(const GaussQ& z, int e);
std::string to_string(const GaussQ& z);

/// Closest fraction with denominator at most max_den, if within tol of x.
bool snap_rational(double x, long max_den, double tol, Rational& out);

}  // namespace pluripot
