#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pluripot/evaluable.hpp"
#include "pluripot/sparse_poly.hpp"

namespace pluripot {

/// weight * log|z^exponents|
struct MonomialTerm {
  Rational weight;
  Exponent exponents;
};

/// Variable groups used by polynomials on a space: {2}, {3} or {2,2}.
std::vector<int> space_groups(Space s);

/// scale * log||(P_1,...,P_m)|| + sum_k w_k log|m_k|  minus  sum_f ref_f log||z_f||.
///
/// The first two terms form the "raw" log-homogeneous function; its
/// homogeneity in each factor must equal the reference weight of that factor.
class LogNormPotential : public Evaluable {
 public:
  LogNormPotential(Space s, std::vector<SparsePoly> components, Rational scale, std::vector<Rational> ref_weights,
                   std::vector<MonomialTerm> monomials = {});

  KClass kclass() const override { return KClass{space_, ref_weights_}; }
  double phi(int chart, std::span<const cplx> w) const override;
  double local(int chart, std::span<const cplx> w) const override;

  /// phi at any homogeneous representative (flat coordinates).
  double eval_hom(std::span<const cplx> z) const;
  /// Raw log-homogeneous function at the given representative.
  double raw(std::span<const cplx> z) const;

  Space space_tag() const { return space_; }
  const std::vector<SparsePoly>& components() const { return comps_; }
  const Rational& scale() const { return scale_; }
  const std::vector<Rational>& ref_weights() const { return ref_weights_; }
  const std::vector<MonomialTerm>& monomials() const { return monos_; }

  /// c * phi; c > 0.
  LogNormPotential scaled(const Rational& c) const;

  /// Known pole / indeterminacy set, when recorded.
  std::optional<std::vector<ProjPoint>> poles;

 private:
  Space space_;
  std::vector<SparsePoly> comps_;
  Rational scale_;
  std::vector<Rational> ref_weights_;
  std::vector<MonomialTerm> monos_;

  std::vector<CompiledPoly> compiled_;
  std::vector<double> mono_w_;
  double scale_d_ = 1;
  std::vector<double> ref_d_;
  int max_exp_ = 0;
};

double eval_potential(const LogNormPotential& phi, const ProjPoint& p);

/// Lelong number at a Gaussian-rational point: scale * min_i ord_p(P_i) + sum_k w_k ord_p(m_k).
Rational lelong_exact(const LogNormPotential& phi, const ProjPoint& p);
/// Vanishing order of a polynomial (variables as in the space) at an exact point.
int vanishing_order(const SparsePoly& P, Space s, const std::vector<GaussQ>& p);

/// Homogeneous resultant of two binary forms given by coefficient lists of equal formal degree.
GaussQ binary_resultant(const std::vector<GaussQ>& f, const std::vector<GaussQ>& g);
/// True when some line z0 + c z1 + c^2 z2 = 0 (c = 1..2d^2+1) carries a nonzero resultant.
bool finiteness_certificate(const SparsePoly& P1, const SparsePoly& P2);
/// Common zeros on P2 of two forms of the same degree by elimination; exact coordinates
/// are attached to points that verify exactly after rational snapping.
std::vector<ProjPoint> common_zeros_p2(const SparsePoly& P1, const SparsePoly& P2);

/// g_f = (1/d) log||F|| - log||z|| for n forms of degree d on Pn.
LogNormPotential make_rational_green(const std::vector<SparsePoly>& F, Space s,
                                     std::optional<std::vector<ProjPoint>> poles = std::nullopt);
/// Components (y^k t^(n-k) - x^n, y^n) in variables (t,x,y), scale 1/n; pole [1:0:0].
LogNormPotential make_cusp_green(int n, int k);
/// Bihomogeneous potential on P1xP1 with local components z^nk w^mk and z^nk + w^mk + z w Q(1,z,w).
LogNormPotential make_greenp1_family(int n, int m, int k, const SparsePoly& Q);
/// (1/(n+1)) log|l_1 ... l_{n+1}| - log||z||.
LogNormPotential make_hyperplane_avg(const std::vector<SparsePoly>& lines);
/// Isotropic-pole potential of class (a,b) with Lelong number min(a,b) at p.
LogNormPotential make_rab(const Rational& a, const Rational& b, const ProjPoint& p);

/// Pullback along [t0:t1:t2] -> ([t0:t1],[t0:t2]).
LogNormPotential phi_forward(const LogNormPotential& phi);
/// Pullback along (z,w) -> [z0 w0 : z1 w0 : w1 z0] with the line currents over z0=0, w0=0
/// removed so that the result lies in class (a, c - a).
LogNormPotential phi_inverse(const LogNormPotential& phi, const Rational& a = Rational(1));

}  // namespace pluripot
