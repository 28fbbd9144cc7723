#include "pluripot/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "pluripot/roots.hpp"

namespace pluripot {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double Evaluable::operator()(const ProjPoint& p) const {
  if (p.space != space()) throw PrecondError("potential and point live on different spaces");
  int chart = best_chart(p);
  auto w = to_chart(p, chart);
  return phi(chart, w);
}

double FunctionPotential::phi(int chart, std::span<const cplx> w) const { return f_(from_chart(k_.space, chart, w)); }

KClass ScaledPotential::kclass() const {
  KClass k = base_->kclass();
  for (auto& c : k.coef) c *= Rational(c_);
  return k;
}

std::vector<int> space_groups(Space s) {
  switch (s) {
    case Space::P1: return {2};
    case Space::P2: return {3};
    case Space::P1xP1: return {2, 2};
  }
  return {};
}

LogNormPotential::LogNormPotential(Space s, std::vector<SparsePoly> components, Rational scale,
                                   std::vector<Rational> ref_weights, std::vector<MonomialTerm> monomials)
    : space_(s),
      comps_(std::move(components)),
      scale_(std::move(scale)),
      ref_weights_(std::move(ref_weights)),
      monos_(std::move(monomials)) {
  const auto groups = space_groups(s);
  const int nv = hom_size(s);
  if (comps_.empty()) throw PrecondError("a log-norm potential needs at least one component");
  if (scale_ <= 0) throw PrecondError("scale must be positive");
  if (static_cast<int>(ref_weights_.size()) != factor_count(s))
    throw PrecondError("one reference weight per factor required");
  bool any_nonzero = false;
  for (const auto& c : comps_) {
    if (c.groups() != groups) throw PrecondError("component variables do not match the space " + to_string(s));
    if (c.degrees() != comps_.front().degrees()) throw PrecondError("components have different degrees");
    any_nonzero = any_nonzero || !c.is_zero();
  }
  if (!any_nonzero) throw PrecondError("all components vanish identically");
  for (const auto& m : monos_) {
    if (static_cast<int>(m.exponents.size()) != nv) throw PrecondError("monomial term has wrong exponent length");
    if (m.weight < 0) throw PrecondError("monomial weights must be >= 0");
    for (int e : m.exponents)
      if (e < 0) throw PrecondError("negative exponent in monomial term");
  }
  // log-homogeneity of the raw part must match the reference weights
  int v = 0;
  for (int f = 0; f < factor_count(s); ++f) {
    Rational h = scale_ * comps_.front().degrees()[f];
    for (const auto& m : monos_)
      for (int j = v; j < v + groups[f]; ++j) h += m.weight * m.exponents[j];
    if (h != ref_weights_[f])
      throw PrecondError("log-homogeneity " + to_string(h) + " does not match reference weight " +
                         to_string(ref_weights_[f]));
    v += groups[f];
  }

  for (const auto& c : comps_) {
    compiled_.emplace_back(c);
    max_exp_ = std::max(max_exp_, compiled_.back().max_exp);
  }
  scale_d_ = to_double(scale_);
  for (const auto& r : ref_weights_) ref_d_.push_back(to_double(r));
  for (const auto& m : monos_) mono_w_.push_back(to_double(m.weight));
}

double LogNormPotential::raw(std::span<const cplx> z) const {
  const int nv = hom_size(space_);
  const int stride = max_exp_ + 1;
  thread_local std::vector<cplx> pw;
  pw.resize(static_cast<std::size_t>(nv * stride));
  for (int v = 0; v < nv; ++v) {
    cplx* row = pw.data() + v * stride;
    row[0] = 1.0;
    for (int k = 1; k < stride; ++k) row[k] = row[k - 1] * z[v];
  }
  double mx = 0;
  std::array<double, 8> small{};
  std::vector<double> big;
  double* vals = small.data();
  if (comps_.size() > small.size()) {
    big.resize(comps_.size());
    vals = big.data();
  }
  for (std::size_t i = 0; i < compiled_.size(); ++i) {
    const auto& cp = compiled_[i];
    cplx s = 0;
    const int* e = cp.exps.data();
    for (std::size_t t = 0; t < cp.coef.size(); ++t, e += nv) {
      cplx m = cp.coef[t];
      for (int v = 0; v < nv; ++v)
        if (e[v]) m *= pw[v * stride + e[v]];
      s += m;
    }
    vals[i] = std::abs(s);
    mx = std::max(mx, vals[i]);
  }
  if (mx == 0.0) return kNegInf;
  double acc = 0;
  for (std::size_t i = 0; i < compiled_.size(); ++i) {
    double r = vals[i] / mx;
    acc += r * r;
  }
  double out = scale_d_ * (std::log(mx) + 0.5 * std::log(acc));
  for (std::size_t k = 0; k < monos_.size(); ++k) {
    if (mono_w_[k] == 0.0) continue;
    double l = 0;
    for (int v = 0; v < nv; ++v)
      if (monos_[k].exponents[v]) l += monos_[k].exponents[v] * std::log(std::abs(z[v]));
    out += mono_w_[k] * l;
  }
  return out;
}

double LogNormPotential::eval_hom(std::span<const cplx> z) const {
  const int nv = hom_size(space_);
  if (static_cast<int>(z.size()) != nv) throw PrecondError("wrong number of homogeneous coordinates");
  std::array<cplx, 4> zn{};
  double ref = 0;
  const int fs = factor_size(space_, 0);
  for (int f = 0; f < factor_count(space_); ++f) {
    double m = 0;
    for (int j = f * fs; j < (f + 1) * fs; ++j) m = std::max(m, std::abs(z[j]));
    if (m == 0.0) throw PrecondError("all coordinates of a factor vanish");
    double n2 = 0;
    for (int j = f * fs; j < (f + 1) * fs; ++j) {
      zn[j] = z[j] / m;
      n2 += std::norm(zn[j]);
    }
    ref += ref_d_[f] * 0.5 * std::log(n2);
  }
  return raw(std::span<const cplx>(zn.data(), nv)) - ref;
}

double LogNormPotential::phi(int chart, std::span<const cplx> w) const {
  std::array<cplx, 4> z{};
  chart_embed(space_, chart, w, z);
  return eval_hom(std::span<const cplx>(z.data(), hom_size(space_)));
}

double LogNormPotential::local(int chart, std::span<const cplx> w) const {
  std::array<cplx, 4> z{};
  chart_embed(space_, chart, w, z);
  return raw(std::span<const cplx>(z.data(), hom_size(space_)));
}

LogNormPotential LogNormPotential::scaled(const Rational& c) const {
  if (c <= 0) throw PrecondError("scaling factor must be positive");
  auto refs = ref_weights_;
  for (auto& r : refs) r *= c;
  auto monos = monos_;
  for (auto& m : monos) m.weight *= c;
  LogNormPotential out(space_, comps_, scale_ * c, refs, monos);
  out.poles = poles;
  return out;
}

double eval_potential(const LogNormPotential& phi, const ProjPoint& p) {
  if (p.space != phi.space_tag()) throw PrecondError("potential and point live on different spaces");
  return phi.eval_hom(p.z);
}

int vanishing_order(const SparsePoly& P, Space s, const std::vector<GaussQ>& p) {
  if (P.is_zero()) return std::numeric_limits<int>::max();
  const int fs = factor_size(s, 0);
  const int na = affine_dim(s);
  std::vector<SparsePoly> images;
  int k = 0;
  for (int f = 0; f < factor_count(s); ++f) {
    int piv = -1;
    for (int j = f * fs; j < (f + 1) * fs; ++j)
      if (!p[j].is_zero() && (piv < 0 || p[j].norm2() > p[piv].norm2())) piv = j;
    for (int j = f * fs; j < (f + 1) * fs; ++j) {
      SparsePoly im = SparsePoly::ungraded(na);
      if (j == piv) {
        im.add_term(Exponent(na, 0), GaussQ(1));
      } else {
        im.add_term(Exponent(na, 0), p[j] / p[piv]);
        Exponent e(na, 0);
        e[k++] = 1;
        im.add_term(e, GaussQ(1));
      }
      images.push_back(std::move(im));
    }
  }
  return P.substitute(images).min_total_degree();
}

Rational lelong_exact(const LogNormPotential& phi, const ProjPoint& p) {
  if (p.space != phi.space_tag()) throw PrecondError("potential and point live on different spaces");
  if (!p.exact) throw PrecondError("point " + to_string(p) + " is not exactly representable");
  const auto& q = *p.exact;
  int ord = std::numeric_limits<int>::max();
  for (const auto& c : phi.components())
    if (!c.is_zero()) ord = std::min(ord, vanishing_order(c, p.space, q));
  Rational nu = phi.scale() * ord;
  for (const auto& m : phi.monomials()) {
    int o = 0;
    for (std::size_t v = 0; v < q.size(); ++v)
      if (q[v].is_zero()) o += m.exponents[v];
    nu += m.weight * o;
  }
  return nu;
}

namespace {

GaussQ det_gauss(std::vector<std::vector<GaussQ>> a) {
  const std::size_t n = a.size();
  GaussQ det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return GaussQ(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      GaussQ f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

SparsePoly det_poly(const std::vector<std::vector<SparsePoly>>& a, const SparsePoly& zero) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  SparsePoly acc = zero;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<SparsePoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<SparsePoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    SparsePoly t = a[0][c] * det_poly(minor, zero);
    acc = (c % 2 == 0) ? acc + t : acc - t;
  }
  return acc;
}

// Coefficients of the binary form P(l(s,t)) for a linear parametrization l of a line in P2.
std::vector<GaussQ> restrict_to_line(const SparsePoly& P, const std::array<std::array<GaussQ, 2>, 3>& l) {
  std::vector<SparsePoly> images;
  for (int i = 0; i < 3; ++i) {
    SparsePoly im({2}, {1});
    im.add_term({1, 0}, l[i][0]);
    im.add_term({0, 1}, l[i][1]);
    images.push_back(std::move(im));
  }
  SparsePoly r = P.substitute(images);
  int d = P.degrees()[0];
  std::vector<GaussQ> c(d + 1);
  for (const auto& [e, v] : r.terms()) c[e[1]] = v;
  return c;
}

}  // namespace

GaussQ binary_resultant(const std::vector<GaussQ>& f, const std::vector<GaussQ>& g) {
  if (f.size() != g.size() || f.size() < 2) throw PrecondError("binary_resultant: forms of equal positive degree");
  const std::size_t d = f.size() - 1, n = 2 * d;
  std::vector<std::vector<GaussQ>> m(n, std::vector<GaussQ>(n));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k <= d; ++k) {
      m[r][r + k] = f[k];
      m[d + r][r + k] = g[k];
    }
  return det_gauss(std::move(m));
}

bool finiteness_certificate(const SparsePoly& P1, const SparsePoly& P2) {
  const int d = P1.degrees().at(0);
  for (int c = 1; c <= 2 * d * d + 1; ++c) {
    // points (-c s - c^2 t, s, t) satisfy z0 + c z1 + c^2 z2 = 0
    std::array<std::array<GaussQ, 2>, 3> l{{{GaussQ(-c), GaussQ(-c * c)}, {GaussQ(1), GaussQ(0)}, {GaussQ(0), GaussQ(1)}}};
    if (!binary_resultant(restrict_to_line(P1, l), restrict_to_line(P2, l)).is_zero()) return true;
  }
  return false;
}

namespace {

// Newton iteration on (P1, P2) = 0 in the chart where z has its largest coordinate.
std::vector<cplx> newton_polish(const SparsePoly& P1, const SparsePoly& P2, std::vector<cplx> z) {
  int piv = 0;
  for (int j = 1; j < 3; ++j)
    if (std::abs(z[j]) > std::abs(z[piv])) piv = j;
  for (auto& c : z) c /= z[piv];
  z[piv] = 1.0;
  int a = (piv + 1) % 3, b = (piv + 2) % 3;
  SparsePoly d1a = P1.derivative(a), d1b = P1.derivative(b), d2a = P2.derivative(a), d2b = P2.derivative(b);
  for (int it = 0; it < 60; ++it) {
    cplx f1 = P1.eval(std::span<const cplx>(z)), f2 = P2.eval(std::span<const cplx>(z));
    cplx j11 = d1a.eval(std::span<const cplx>(z)), j12 = d1b.eval(std::span<const cplx>(z));
    cplx j21 = d2a.eval(std::span<const cplx>(z)), j22 = d2b.eval(std::span<const cplx>(z));
    cplx det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-300) break;
    cplx da = (f1 * j22 - f2 * j12) / det, db = (j11 * f2 - j21 * f1) / det;
    z[a] -= da;
    z[b] -= db;
    if (std::abs(da) + std::abs(db) < 1e-15) break;
  }
  return z;
}

}  // namespace

std::vector<ProjPoint> common_zeros_p2(const SparsePoly& P1, const SparsePoly& P2) {
  if (P1.groups() != std::vector<int>{3} || P2.groups() != P1.groups() || P1.degrees() != P2.degrees())
    throw PrecondError("common_zeros_p2: two forms of equal degree on P2 required");
  const int d = P1.degrees()[0];
  // choose a projection center v with P1(v) != 0, then change coordinates so v = [0:0:1]
  std::array<GaussQ, 3> v{};
  bool found = false;
  for (int s = 0; s < 8 && !found; ++s)
    for (int a = 0; a <= s && !found; ++a) {
      std::array<GaussQ, 3> cand{GaussQ(a), GaussQ(s - a), GaussQ(1)};
      if (!P1.eval(std::span<const GaussQ>(cand)).is_zero()) {
        v = cand;
        found = true;
      }
    }
  if (!found) throw NumericalError("common_zeros_p2: no projection center found");
  // z = T z' with T = [e0 e1 v]
  std::vector<SparsePoly> T;
  for (int i = 0; i < 3; ++i) {
    SparsePoly im({3}, {1});
    if (i < 2) im.add_term(i == 0 ? Exponent{1, 0, 0} : Exponent{0, 1, 0}, GaussQ(1));
    im.add_term({0, 0, 1}, v[i]);
    T.push_back(std::move(im));
  }
  SparsePoly Q1 = P1.substitute(T), Q2 = P2.substitute(T);

  // coefficients of z2^i as polynomials in (z0, z1)
  auto coeffs_in_z2 = [&](const SparsePoly& P) {
    std::vector<SparsePoly> c(d + 1, SparsePoly::ungraded(2));
    for (const auto& [e, val] : P.terms()) c[e[2]].add_term({e[0], e[1]}, val);
    return c;
  };
  auto a = coeffs_in_z2(Q1), b = coeffs_in_z2(Q2);
  const int n = 2 * d;
  SparsePoly zero = SparsePoly::ungraded(2);
  std::vector<std::vector<SparsePoly>> syl(n, std::vector<SparsePoly>(n, zero));
  for (int r = 0; r < d; ++r)
    for (int k = 0; k <= d; ++k) {
      syl[r][r + k] = a[d - k];
      syl[d + r][r + k] = b[d - k];
    }
  SparsePoly R = det_poly(syl, zero);
  if (R.is_zero()) throw PrecondError("common zero set is not finite");

  int D = 0;
  for (const auto& [e, val] : R.terms()) D = std::max(D, e[0] + e[1]);
  std::vector<cplx> rs(D + 1, 0.0);  // R(1, s) low to high in s
  for (const auto& [e, val] : R.terms()) rs[e[1]] += val.to_complex();
  std::vector<std::array<cplx, 2>> proj;
  for (auto s : poly_roots(rs)) proj.push_back({1.0, s});
  bool top_zero = true;
  for (const auto& [e, val] : R.terms())
    if (e[1] == D) top_zero = false;
  if (top_zero) proj.push_back({0.0, 1.0});

  std::vector<ProjPoint> out;
  for (const auto& pr : proj) {
    std::vector<cplx> cz(d + 1);
    for (int i = 0; i <= d; ++i) {
      std::array<cplx, 2> x{pr[0], pr[1]};
      cz[i] = a[i].eval(std::span<const cplx>(x));
    }
    for (auto z2 : poly_roots(cz)) {
      std::vector<cplx> zp{pr[0], pr[1], z2};
      double sc = 0;
      for (const auto& [e, val] : Q2.terms()) sc += std::abs(val.to_complex());
      double nz = std::max({std::abs(zp[0]), std::abs(zp[1]), std::abs(zp[2])});
      if (std::abs(Q2.eval(std::span<const cplx>(zp))) > 1e-6 * sc * std::pow(nz, d)) continue;
      std::vector<cplx> z(3);
      for (int i = 0; i < 3; ++i) z[i] = T[i].eval(std::span<const cplx>(zp));
      z = newton_polish(P1, P2, z);
      ProjPoint p = ProjPoint::make(Space::P2, z);
      bool dup = false;
      for (const auto& q : out) dup = dup || chordal_distance(p, q) < 1e-7;
      if (dup) continue;
      // exact coordinates when the normalized point snaps to a verified rational zero
      std::vector<GaussQ> ex(3);
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) ok = snap_gauss(z[i], 10000, 1e-8, ex[i]);
      if (ok && !P1.eval(std::span<const GaussQ>(ex)).is_zero()) ok = false;
      if (ok && !P2.eval(std::span<const GaussQ>(ex)).is_zero()) ok = false;
      out.push_back(ok ? ProjPoint::make_exact(Space::P2, ex) : p);
    }
  }
  return out;
}

}  // namespace pluripot
