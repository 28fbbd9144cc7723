#pragma once

#include <map>
#include <span>
#include <vector>

#include "pluripot/rational.hpp"

namespace pluripot {

using Exponent = std::vector<int>;

/// Exact polynomial with Gaussian-rational coefficients.
///
/// Variables may be split into consecutive groups (e.g. {3} for P2, {2,2}
/// for P1xP1); a graded polynomial is homogeneous in each group of the
/// declared degree. An empty group list means no grading is enforced.
class SparsePoly {
 public:
  SparsePoly() = default;
  /// Zero polynomial with the given grading and declared degrees.
  SparsePoly(std::vector<int> groups, std::vector<int> degrees);
  static SparsePoly ungraded(int nvars);
  /// Builds a graded polynomial, checking homogeneity; zero terms are dropped.
  static SparsePoly from_terms(std::vector<int> groups, std::vector<std::pair<Exponent, GaussQ>> terms);
  static SparsePoly monomial(std::vector<int> groups, Exponent e, GaussQ c = GaussQ(1));
  static SparsePoly variable(std::vector<int> groups, int var);

  int nvars() const { return nvars_; }
  const std::vector<int>& groups() const { return groups_; }
  const std::vector<int>& degrees() const { return degrees_; }
  bool graded() const { return !groups_.empty(); }
  const std::map<Exponent, GaussQ>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * x^e; the result is removed if it cancels.
  void add_term(const Exponent& e, const GaussQ& c);

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly operator*(const GaussQ& c) const;
  SparsePoly pow(int e) const;
  bool operator==(const SparsePoly& o) const { return terms_ == o.terms_ && groups_ == o.groups_; }

  /// Replaces variable i by images[i]. All images share one grading, and for a
  /// graded result each image must be homogeneous; the degree bookkeeping follows.
  SparsePoly substitute(const std::vector<SparsePoly>& images) const;

  GaussQ eval(std::span<const GaussQ> x) const;
  cplx eval(std::span<const cplx> x) const;

  /// Smallest total degree among the terms (-1 for the zero polynomial).
  int min_total_degree() const;
  int max_exponent(int var) const;
  int min_exponent(int var) const;
  /// Divides by x^e when every term is divisible; returns false otherwise.
  bool divide_monomial(const Exponent& e, SparsePoly& out) const;

  SparsePoly derivative(int var) const;

  /// Same terms, different grading (validated).
  SparsePoly regraded(std::vector<int> groups) const;

 private:
  int nvars_ = 0;
  std::vector<int> groups_;
  std::vector<int> degrees_;
  std::map<Exponent, GaussQ> terms_;

  std::vector<int> degrees_of(const Exponent& e) const;
};

/// Double-precision compiled form used on hot evaluation paths.
struct CompiledPoly {
  int nvars = 0;
  int max_exp = 0;
  std::vector<int> exps;  // term-major, nvars entries per term
  std::vector<cplx> coef;

  explicit CompiledPoly(const SparsePoly& p);
  CompiledPoly() = default;
  /// pw[v * (max_exp + 1) + k] must hold x_v^k.
  cplx eval_powers(const cplx* pw) const;
};

}  // namespace pluripot
