#include <algorithm>

#include "pluripot/potential.hpp"
#include "pluripot/roots.hpp"

namespace pluripot {

namespace {

std::vector<GaussQ> cross(const std::vector<GaussQ>& a, const std::vector<GaussQ>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<GaussQ> linear_coeffs(const SparsePoly& l) {
  const int n = l.nvars();
  std::vector<GaussQ> c(n);
  for (const auto& [e, v] : l.terms())
    for (int i = 0; i < n; ++i)
      if (e[i] == 1) c[i] = v;
  return c;
}

std::vector<GaussQ> exact_coords(const ProjPoint& p) {
  if (p.exact) return *p.exact;
  // doubles are dyadic rationals, so this conversion is exact
  std::vector<GaussQ> q;
  for (const auto& c : p.z) q.emplace_back(Rational(c.real()), Rational(c.imag()));
  return q;
}

// Zeros of a binary form on P1, exact where they snap to verified rationals.
std::vector<ProjPoint> binary_zeros(const SparsePoly& P) {
  const int d = P.degrees()[0];
  std::vector<cplx> c(d + 1, 0.0);  // P(1, s), low to high
  bool top = false;
  for (const auto& [e, v] : P.terms()) {
    c[e[1]] += v.to_complex();
    top = top || e[1] == d;
  }
  std::vector<ProjPoint> out;
  auto add = [&](std::vector<cplx> z) {
    ProjPoint p = ProjPoint::make(Space::P1, z);
    for (const auto& q : out)
      if (chordal_distance(p, q) < 1e-7) return;
    std::vector<GaussQ> ex(2);
    bool ok = snap_gauss(z[0], 10000, 1e-8, ex[0]) && snap_gauss(z[1], 10000, 1e-8, ex[1]);
    ok = ok && P.eval(std::span<const GaussQ>(ex)).is_zero();
    out.push_back(ok ? ProjPoint::make_exact(Space::P1, ex) : p);
  };
  for (auto s : poly_roots(c)) add({1.0, s});
  if (!top) add({0.0, 1.0});
  return out;
}

}  // namespace

LogNormPotential make_rational_green(const std::vector<SparsePoly>& F, Space s,
                                     std::optional<std::vector<ProjPoint>> poles) {
  if (s == Space::P1xP1) throw PrecondError("make_rational_green works on P1 or P2");
  const int n = affine_dim(s);
  if (static_cast<int>(F.size()) != n)
    throw PrecondError("expected " + std::to_string(n) + " components on " + to_string(s));
  for (const auto& P : F) {
    if (P.groups() != space_groups(s)) throw PrecondError("component variables do not match " + to_string(s));
    if (P.degrees() != F.front().degrees()) throw PrecondError("components have different degrees");
  }
  const int d = F.front().degrees()[0];
  if (d < 1) throw PrecondError("degree must be positive");
  for (const auto& P : F)
    if (P.is_zero()) throw PrecondError("zero component: indeterminacy set is not finite");
  if (n == 2 && !finiteness_certificate(F[0], F[1]))
    throw PrecondError("finiteness certificate failed: components share a curve of zeros");

  LogNormPotential g(s, F, Rational(1, d), {Rational(1)});
  if (poles) {
    for (const auto& p : *poles) {
      if (p.space != s) throw PrecondError("supplied pole lives on another space");
      const auto z = p.normalized().z;
      for (const auto& P : F) {
        double sc = 0;
        for (const auto& [e, v] : P.terms()) sc += std::abs(v.to_complex());
        if (std::abs(P.eval(std::span<const cplx>(z))) > 1e-8 * sc)
          throw PrecondError("supplied pole " + to_string(p) + " is not a common zero");
      }
    }
    g.poles = std::move(poles);
  } else if (n == 1) {
    g.poles = binary_zeros(F[0]);
  } else if (d == 1) {
    auto c = cross(linear_coeffs(F[0]), linear_coeffs(F[1]));
    g.poles = std::vector<ProjPoint>{ProjPoint::make_exact(Space::P2, c)};
  } else if (d == 2) {
    g.poles = common_zeros_p2(F[0], F[1]);
  }
  return g;
}

LogNormPotential make_cusp_green(int n, int k) {
  if (k < 1 || k >= n) throw PrecondError("cusp family needs 1 <= k < n");
  const std::vector<int> g{3};
  SparsePoly P1 = SparsePoly::from_terms(g, {{{n - k, 0, k}, GaussQ(1)}, {{0, n, 0}, GaussQ(-1)}});
  SparsePoly P2 = SparsePoly::monomial(g, {0, 0, n});
  LogNormPotential phi(Space::P2, {P1, P2}, Rational(1, n), {Rational(1)});
  phi.poles = std::vector<ProjPoint>{ProjPoint::make_exact(Space::P2, {GaussQ(1), GaussQ(0), GaussQ(0)})};
  return phi;
}

LogNormPotential make_greenp1_family(int n, int m, int k, const SparsePoly& Q) {
  if (n < 1 || m < n || k < 1) throw PrecondError("need 1 <= n <= m and k >= 1");
  const int nk = n * k, mk = m * k;
  if (Q.groups() != std::vector<int>{3}) throw PrecondError("Q must be a form in (t0,t1,t2)");
  if (Q.degrees()[0] != (m + n) * k - 2)
    throw PrecondError("Q must have degree (m+n)k-2 = " + std::to_string((m + n) * k - 2));
  if (Q.max_exponent(1) > nk - 1) throw PrecondError("deg_t1 Q exceeds nk-1");
  if (Q.max_exponent(2) > mk - 1) throw PrecondError("deg_t2 Q exceeds mk-1");
  const std::vector<int> g{2, 2};  // (z0, z1, w0, w1)
  SparsePoly C1 = SparsePoly::monomial(g, {0, nk, 0, mk});
  SparsePoly C2 = SparsePoly::from_terms(g, {{{0, nk, mk, 0}, GaussQ(1)}, {{nk, 0, 0, mk}, GaussQ(1)}});
  for (const auto& [e, c] : Q.terms()) {
    // t0^a t1^b t2^c -> z1^(1+b) w1^(1+c), completed with z0, w0
    C2.add_term({nk - 1 - e[1], 1 + e[1], mk - 1 - e[2], 1 + e[2]}, c);
  }
  LogNormPotential phi(Space::P1xP1, {C1, C2}, Rational(1, nk), {Rational(1), Rational(m, n)});
  phi.poles = std::vector<ProjPoint>{
      ProjPoint::make_exact(Space::P1xP1, {GaussQ(1), GaussQ(0), GaussQ(1), GaussQ(0)})};
  return phi;
}

LogNormPotential make_hyperplane_avg(const std::vector<SparsePoly>& lines) {
  if (lines.empty()) throw PrecondError("no linear forms given");
  const std::vector<int> groups = lines.front().groups();
  if (groups.size() != 1 || (groups[0] != 2 && groups[0] != 3)) throw PrecondError("linear forms on P1 or P2 expected");
  const int n = groups[0] - 1;
  const Space s = n == 1 ? Space::P1 : Space::P2;
  if (static_cast<int>(lines.size()) != n + 1) throw PrecondError("expected n+1 linear forms");
  for (const auto& l : lines)
    if (l.groups() != groups || l.degrees() != std::vector<int>{1}) throw PrecondError("forms must be linear");
  // the n+1 forms must be a basis of the dual space
  std::vector<std::vector<GaussQ>> rows;
  for (const auto& l : lines) rows.push_back(linear_coeffs(l));
  GaussQ det = n == 1 ? rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
                      : rows[0][0] * cross(rows[1], rows[2])[0] + rows[0][1] * cross(rows[1], rows[2])[1] +
                            rows[0][2] * cross(rows[1], rows[2])[2];
  if (det.is_zero()) throw PrecondError("linear forms are in degenerate position");
  SparsePoly prod = lines[0];
  for (std::size_t i = 1; i < lines.size(); ++i) prod = prod * lines[i];
  LogNormPotential phi(s, {prod}, Rational(1, n + 1), {Rational(1)});
  // points where n of the forms vanish
  std::vector<ProjPoint> pts;
  for (int skip = 0; skip <= n; ++skip) {
    if (n == 1) {
      const auto& c = rows[1 - skip];
      pts.push_back(ProjPoint::make_exact(s, {c[1], -c[0]}));
    } else {
      std::vector<int> idx;
      for (int j = 0; j < 3; ++j)
        if (j != skip) idx.push_back(j);
      pts.push_back(ProjPoint::make_exact(s, cross(rows[idx[0]], rows[idx[1]])));
    }
  }
  phi.poles = std::move(pts);
  return phi;
}

LogNormPotential make_rab(const Rational& a, const Rational& b, const ProjPoint& p) {
  if (a <= 0 || b <= 0) throw PrecondError("make_rab needs a, b > 0");
  if (p.space != Space::P1xP1) throw PrecondError("make_rab needs a point of P1xP1");
  auto x = exact_coords(p);
  const Rational m = a < b ? a : b;
  const int i = x[0].norm2() >= x[1].norm2() ? 0 : 1;      // z_i nonzero at p
  const int j = x[2].norm2() >= x[3].norm2() ? 2 : 3;      // w_j nonzero at p
  const std::vector<int> g{2, 2};
  auto lz = SparsePoly::from_terms(g, {{{0, 1, 0, 0}, x[0]}, {{1, 0, 0, 0}, -x[1]}});  // vanishes at z = x
  auto lw = SparsePoly::from_terms(g, {{{0, 0, 0, 1}, x[2]}, {{0, 0, 1, 0}, -x[3]}});
  Exponent ew(4, 0), ez(4, 0);
  ew[j] = 1;
  ez[i] = 1;
  SparsePoly wj = SparsePoly::monomial({2, 2}, ew);
  SparsePoly zi = SparsePoly::monomial({2, 2}, ez);
  std::vector<MonomialTerm> monos;
  if (a > m) monos.push_back({a - m, ez});
  if (b > m) monos.push_back({b - m, ew});
  LogNormPotential phi(Space::P1xP1, {lz * wj, lw * zi}, m, {a, b}, monos);
  phi.poles = std::vector<ProjPoint>{ProjPoint::make_exact(Space::P1xP1, x)};
  return phi;
}

}  // namespace pluripot
