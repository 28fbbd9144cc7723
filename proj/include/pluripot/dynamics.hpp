#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pluripot/evaluable.hpp"
#include "pluripot/sparse_poly.hpp"

namespace pluripot {

/// Polynomial in (x, y) with big-integer coefficients.
class ZPoly2 {
 public:
  struct Term {
    int i = 0;  // exponent of x
    int j = 0;  // exponent of y
    BigInt c;
  };

  ZPoly2() = default;
  /// Sums repeated exponents and drops zero coefficients.
  static ZPoly2 from_terms(std::vector<Term> terms);
  static ZPoly2 constant(long c);
  static ZPoly2 x();
  static ZPoly2 y();
  /// Integer polynomial in two ungraded variables; other coefficients are rejected.
  static ZPoly2 from_sparse(const SparsePoly& p);

  /// Sorted by (j, i).
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int degree() const;  // -1 for zero
  int deg_x() const;
  int deg_y() const;
  BigInt coeff(int i, int j) const;
  /// Homogeneous part of the given total degree.
  ZPoly2 part(int d) const;

  ZPoly2 operator+(const ZPoly2& o) const;
  ZPoly2 operator-(const ZPoly2& o) const;
  ZPoly2 operator*(const ZPoly2& o) const;
  ZPoly2 pow(int e) const;
  bool operator==(const ZPoly2& o) const;

  /// Replaces x and y by the given polynomials.
  ZPoly2 compose(const ZPoly2& px, const ZPoly2& py) const;

  /// Homogenized with t to the given degree, as a form in (t, x, y).
  SparsePoly homogenize(int d) const;

 private:
  std::vector<Term> terms_;
};

/// Product by packing both factors into single integers (Kronecker substitution).
ZPoly2 kronecker_multiply(const ZPoly2& a, const ZPoly2& b);
/// Term-by-term product, kept as a reference.
ZPoly2 schoolbook_multiply(const ZPoly2& a, const ZPoly2& b);

/// Polynomial self-map h = (p, q) of C^2 and its lift [t : x : y] -> [t^d : P : Q] to P2.
struct PolyEndo {
  ZPoly2 p, q;         // affine components
  int lambda = 0;      // algebraic degree of the underlying map
  int iterate = 1;     // this is h^iterate
  long degree = 0;     // lambda^iterate, the degree of the lift
  std::vector<ProjPoint> indeterminacy;

  bool holomorphic() const { return indeterminacy.empty(); }
  /// Lift components H_0 = t^degree, H_1, H_2 as forms in (t, x, y).
  SparsePoly lift_component(int k) const;
};

/// Homogenizes h and finds its indeterminacy set on the line t = 0.
PolyEndo lift(const SparsePoly& p, const SparsePoly& q);
PolyEndo lift(const ZPoly2& p, const ZPoly2& q);

struct WeakRegularity {
  bool regular = false;
  std::optional<ProjPoint> image;  // the point the line at infinity is sent to, when there is one
  std::string reason;
};

/// True when {t = 0} minus the indeterminacy set goes to one point outside that set.
WeakRegularity weakly_regular_check(const PolyEndo& e);

/// Upper bound on the number of monomials of h^n, used to refuse huge compositions.
double estimated_monomials(const PolyEndo& e, int n);
/// Exact lift of h^n.
PolyEndo iterate_lift(const PolyEndo& e, int n);

/// (lambda^n - max(deg_y p_n, deg_y q_n)) / lambda^n, the Lelong number at [0:0:1].
Rational nu_n_exact(const PolyEndo& e, int n);

/// Double-precision evaluation of the lift and of the truncated Green sums.
class DynGreen {
 public:
  explicit DynGreen(const PolyEndo& e);

  long degree() const { return degree_; }
  /// Subtracted from psi so that psi <= 0 everywhere.
  double psi_shift() const { return shift_; }
  /// H(z) for a homogeneous (t, x, y).
  std::array<cplx, 3> apply(const std::array<cplx, 3>& z) const;
  double psi(const std::array<cplx, 3>& z) const;
  /// sum_{j<n} degree^{-j} psi(h^j z), with -infinity when the orbit meets the indeterminacy set.
  double g(int n, std::array<cplx, 3> z) const;

 private:
  struct Mono {
    int t, x, y;
    cplx c;
  };
  long degree_;
  std::vector<Mono> comp_[2];
  double shift_ = 0;
};

/// g_n(p) = sum_{j<n} lambda^{-j} psi(h^j(p)), psi = lambda^{-1} log||H|| - log|| || - shift.
double dyn_green_eval(const PolyEndo& e, int n, const ProjPoint& p);

/// g_n as an alpha_2-psh potential on P2.
class DynGreenPotential : public Evaluable {
 public:
  DynGreenPotential(const PolyEndo& e, int n);
  KClass kclass() const override { return KClass::pn(Space::P2, Rational(1)); }
  double phi(int chart, std::span<const cplx> w) const override;
  int n() const { return n_; }

 private:
  DynGreen g_;
  int n_;
};

/// Fits delta in dist(h(p), I) >= C dist(p, I)^delta from sampled points near I.
/// Diagnostic only: the fit is not a proof of the estimate.
struct IndeterminacyProbe {
  std::vector<double> radii;
  std::vector<double> min_image_dist;
  double delta = 0;
};
IndeterminacyProbe indeterminacy_probe(const PolyEndo& e, std::vector<double> radii = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3},
                                       int samples = 2048, std::uint64_t seed = 1);

/// The family (x^lambda + y^mu, x).
PolyEndo henon_family(int lambda, int mu);

}  // namespace pluripot
