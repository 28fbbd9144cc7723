#include "pluripot/potential.hpp"

namespace pluripot {

namespace {

SparsePoly monomial_image(const std::vector<int>& groups, Exponent e) { return SparsePoly::monomial(groups, std::move(e)); }

}  // namespace

LogNormPotential phi_forward(const LogNormPotential& phi) {
  if (phi.space_tag() != Space::P1xP1) throw PrecondError("forward transfer needs a potential on P1xP1");
  const std::vector<int> g{3};
  // (z0, z1, w0, w1) -> (t0, t1, t0, t2)
  std::vector<SparsePoly> images{monomial_image(g, {1, 0, 0}), monomial_image(g, {0, 1, 0}),
                                 monomial_image(g, {1, 0, 0}), monomial_image(g, {0, 0, 1})};
  std::vector<SparsePoly> comps;
  for (const auto& c : phi.components()) comps.push_back(c.substitute(images));
  std::vector<MonomialTerm> monos;
  for (const auto& m : phi.monomials()) {
    const auto& e = m.exponents;
    monos.push_back({m.weight, {e[0] + e[2], e[1], e[3]}});
  }
  LogNormPotential out(Space::P2, comps, phi.scale(), {phi.ref_weights()[0] + phi.ref_weights()[1]}, monos);
  return out;
}

LogNormPotential phi_inverse(const LogNormPotential& phi, const Rational& a) {
  if (phi.space_tag() != Space::P2) throw PrecondError("inverse transfer needs a potential on P2");
  const Rational& c = phi.ref_weights()[0];
  if (a <= 0 || a > c) throw PrecondError("target weight a must lie in (0, c]");
  const Rational b = c - a;
  // line currents b[z0=0] + a[w0=0] are removed by dividing out z0^alpha w0^beta
  const Rational alpha = b / phi.scale(), beta = a / phi.scale();
  if (denominator(alpha) != 1 || denominator(beta) != 1)
    throw PrecondError("monomial factor does not divide all components (non-integral exponent)");
  const int ia = numerator(alpha).convert_to<int>(), ib = numerator(beta).convert_to<int>();
  const std::vector<int> g{2, 2};
  // (t0, t1, t2) -> (z0 w0, z1 w0, w1 z0)
  std::vector<SparsePoly> images{monomial_image(g, {1, 0, 1, 0}), monomial_image(g, {0, 1, 1, 0}),
                                 monomial_image(g, {1, 0, 0, 1})};
  std::vector<SparsePoly> comps;
  for (const auto& comp : phi.components()) {
    SparsePoly sub = comp.substitute(images), q;
    if (!sub.divide_monomial({ia, 0, ib, 0}, q))
      throw PrecondError("monomial factor does not divide all components: the current charges a blown-down line");
    comps.push_back(std::move(q));
  }
  std::vector<MonomialTerm> monos;
  for (const auto& m : phi.monomials()) {
    const auto& e = m.exponents;
    monos.push_back({m.weight, {e[0] + e[2], e[1], e[0] + e[1], e[2]}});
  }
  return LogNormPotential(Space::P1xP1, comps, phi.scale(), {a, b}, monos);
}

}  // namespace pluripot
