#include "pluripot/dynamics.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pluripot/lelong.hpp"
#include "pluripot/roots.hpp"

namespace pluripot {

namespace {

bool key_less(const ZPoly2::Term& a, const ZPoly2::Term& b) { return a.j != b.j ? a.j < b.j : a.i < b.i; }
bool same_key(const ZPoly2::Term& a, const ZPoly2::Term& b) { return a.i == b.i && a.j == b.j; }

std::vector<ZPoly2::Term> normalize_terms(std::vector<ZPoly2::Term> ts) {
  std::sort(ts.begin(), ts.end(), key_less);
  std::vector<ZPoly2::Term> out;
  for (auto& t : ts) {
    if (!out.empty() && same_key(out.back(), t))
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const ZPoly2::Term& t) { return t.c == 0; }), out.end());
  return out;
}

// a + sign * b for sorted term lists
std::vector<ZPoly2::Term> merge(const std::vector<ZPoly2::Term>& a, const std::vector<ZPoly2::Term>& b, int sign) {
  std::vector<ZPoly2::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, k = 0;
  while (i < a.size() || k < b.size()) {
    if (k == b.size() || (i < a.size() && key_less(a[i], b[k]))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || key_less(b[k], a[i])) {
      out.push_back(b[k]);
      if (sign < 0) out.back().c = -out.back().c;
      ++k;
    } else {
      BigInt c = sign > 0 ? BigInt(a[i].c + b[k].c) : BigInt(a[i].c - b[k].c);
      if (c != 0) out.push_back({a[i].i, a[i].j, std::move(c)});
      ++i;
      ++k;
    }
  }
  return out;
}

std::size_t bit_length(const BigInt& c) { return mpz_sizeinbase(c.backend().data(), 2); }

constexpr std::size_t kLimbBits = sizeof(mp_limb_t) * 8;

// Product of two polynomials with nonnegative coefficients through one big-integer product.
std::vector<ZPoly2::Term> kronecker_nonneg(const std::vector<const ZPoly2::Term*>& a,
                                           const std::vector<const ZPoly2::Term*>& b) {
  if (a.empty() || b.empty()) return {};
  int dxa = 0, dya = 0, dxb = 0, dyb = 0;
  std::size_t ba = 0, bb = 0;
  for (auto* t : a) dxa = std::max(dxa, t->i), dya = std::max(dya, t->j), ba = std::max(ba, bit_length(t->c));
  for (auto* t : b) dxb = std::max(dxb, t->i), dyb = std::max(dyb, t->j), bb = std::max(bb, bit_length(t->c));
  const std::size_t X = static_cast<std::size_t>(dxa + dxb) + 1;
  std::size_t lg = 0;
  while ((std::size_t{1} << lg) <= std::min(a.size(), b.size())) ++lg;
  const std::size_t limbs = (ba + bb + lg + kLimbBits - 1) / kLimbBits;
  auto pack = [&](const std::vector<const ZPoly2::Term*>& ts, int dy, mpz_t out) {
    const std::size_t slots = static_cast<std::size_t>(dy) * X + X;
    std::vector<mp_limb_t> buf(slots * limbs, 0);
    for (auto* t : ts) {
      std::size_t count = 0;
      mpz_export(buf.data() + (t->i + t->j * X) * limbs, &count, -1, sizeof(mp_limb_t), 0, 0, t->c.backend().data());
    }
    mpz_import(out, buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
  };
  mpz_t A, B;
  mpz_init(A);
  mpz_init(B);
  pack(a, dya, A);
  pack(b, dyb, B);
  mpz_mul(A, A, B);
  mpz_clear(B);
  const std::size_t slots = static_cast<std::size_t>(dya + dyb) * X + X;
  std::vector<mp_limb_t> buf(slots * limbs + 1, 0);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, -1, sizeof(mp_limb_t), 0, 0, A);
  mpz_clear(A);
  std::vector<ZPoly2::Term> out;
  for (std::size_t k = 0; k < slots; ++k) {
    const mp_limb_t* s = buf.data() + k * limbs;
    if (std::all_of(s, s + limbs, [](mp_limb_t v) { return v == 0; })) continue;
    ZPoly2::Term t;
    t.i = static_cast<int>(k % X);
    t.j = static_cast<int>(k / X);
    mpz_import(t.c.backend().data(), limbs, -1, sizeof(mp_limb_t), 0, 0, s);
    out.push_back(std::move(t));
  }
  return out;  // slot order is (j, i) order
}

// Euclid over Q; coefficients low to high, result monic.
using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_mod(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t sh = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[sh + k] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

QPoly poly_gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  return d;
}

QPoly poly_div(QPoly a, const QPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  QPoly q(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t sh = a.size() - b.size();
    q[sh] = f;
    for (std::size_t k = 0; k < b.size(); ++k) a[sh + k] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  return q;
}

GaussQ eval_q(const QPoly& p, const GaussQ& u) {
  GaussQ acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * u + GaussQ(*it);
  return acc;
}

// Common zeros on t = 0 of two binary forms of degree d, given as x^k y^(d-k) coefficients.
std::vector<ProjPoint> common_zeros_at_infinity(const ZPoly2& P, const ZPoly2& Q, int d) {
  auto form = [&](const ZPoly2& F) {
    QPoly f(d + 1, Rational(0));
    for (const auto& t : F.terms()) f[t.i] = Rational(t.c);
    trim(f);
    return f;
  };
  const QPoly f = form(P), g = form(Q);
  if (f.empty() && g.empty()) throw PrecondError("both top-degree forms vanish: the lift has a common factor t");
  std::vector<ProjPoint> out;
  // [x : y] = [1 : 0] is a root of a nonzero form exactly when its x^d coefficient vanishes
  auto vanishes_at_inf = [&](const QPoly& h) { return h.empty() || static_cast<int>(h.size()) - 1 < d; };
  if (vanishes_at_inf(f) && vanishes_at_inf(g))
    out.push_back(ProjPoint::make_exact(Space::P2, {GaussQ(0), GaussQ(1), GaussQ(0)}));
  QPoly c = poly_gcd(f, g);
  if (c.size() <= 1) return out;
  // distinct roots only
  const QPoly sq = poly_div(c, poly_gcd(c, derivative(c)));
  if (sq.size() == 2) {
    out.push_back(ProjPoint::make_exact(Space::P2, {GaussQ(0), GaussQ(-sq[0] / sq[1]), GaussQ(1)}));
    return out;
  }
  std::vector<cplx> cc;
  for (const auto& v : sq) cc.push_back(to_double(v));
  for (const auto& r : poly_roots(cc)) {
    GaussQ s;
    if (snap_gauss(r, 1000, 1e-9, s) && eval_q(sq, s).is_zero())
      out.push_back(ProjPoint::make_exact(Space::P2, {GaussQ(0), s, GaussQ(1)}));
    else
      out.push_back(ProjPoint::make(Space::P2, {0.0, r, 1.0}));
  }
  return out;
}

long checked_pow(long base, int e) {
  long r = 1;
  for (int k = 0; k < e; ++k) {
    if (r > std::numeric_limits<int>::max() / base) throw PrecondError("iterate degree overflows");
    r *= base;
  }
  return r;
}

}  // namespace

ZPoly2 ZPoly2::from_terms(std::vector<Term> terms) {
  for (const auto& t : terms)
    if (t.i < 0 || t.j < 0) throw PrecondError("negative exponent");
  ZPoly2 p;
  p.terms_ = normalize_terms(std::move(terms));
  return p;
}

ZPoly2 ZPoly2::constant(long c) { return from_terms({{0, 0, BigInt(c)}}); }
ZPoly2 ZPoly2::x() { return from_terms({{1, 0, BigInt(1)}}); }
ZPoly2 ZPoly2::y() { return from_terms({{0, 1, BigInt(1)}}); }

ZPoly2 ZPoly2::from_sparse(const SparsePoly& p) {
  if (p.nvars() != 2 || p.graded()) throw PrecondError("map components must be ungraded polynomials in (x, y)");
  std::vector<Term> ts;
  for (const auto& [e, c] : p.terms()) {
    if (c.im != 0 || denominator(c.re) != 1) throw PrecondError("map coefficients must be integers");
    ts.push_back({e[0], e[1], numerator(c.re)});
  }
  return from_terms(std::move(ts));
}

int ZPoly2::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.i + t.j);
  return d;
}

int ZPoly2::deg_x() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.i);
  return d;
}

int ZPoly2::deg_y() const { return terms_.empty() ? -1 : terms_.back().j; }

BigInt ZPoly2::coeff(int i, int j) const {
  Term key{i, j, BigInt(0)};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key, key_less);
  return it != terms_.end() && same_key(*it, key) ? it->c : BigInt(0);
}

ZPoly2 ZPoly2::part(int d) const {
  ZPoly2 p;
  for (const auto& t : terms_)
    if (t.i + t.j == d) p.terms_.push_back(t);
  return p;
}

ZPoly2 ZPoly2::operator+(const ZPoly2& o) const {
  ZPoly2 p;
  p.terms_ = merge(terms_, o.terms_, 1);
  return p;
}

ZPoly2 ZPoly2::operator-(const ZPoly2& o) const {
  ZPoly2 p;
  p.terms_ = merge(terms_, o.terms_, -1);
  return p;
}

ZPoly2 ZPoly2::operator*(const ZPoly2& o) const {
  if (size() * o.size() <= 4096) return schoolbook_multiply(*this, o);
  return kronecker_multiply(*this, o);
}

ZPoly2 ZPoly2::pow(int e) const {
  if (e < 0) throw PrecondError("negative power");
  ZPoly2 result = constant(1), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool ZPoly2::operator==(const ZPoly2& o) const {
  if (size() != o.size()) return false;
  for (std::size_t k = 0; k < size(); ++k)
    if (!same_key(terms_[k], o.terms_[k]) || terms_[k].c != o.terms_[k].c) return false;
  return true;
}

ZPoly2 ZPoly2::compose(const ZPoly2& px, const ZPoly2& py) const {
  if (is_zero()) return {};
  std::vector<ZPoly2> xp{constant(1)}, yp{constant(1)};
  for (int k = 1; k <= deg_x(); ++k) xp.push_back(xp.back() * px);
  for (int k = 1; k <= deg_y(); ++k) yp.push_back(yp.back() * py);
  ZPoly2 out;
  for (const auto& t : terms_) {
    ZPoly2 m = xp[t.i] * yp[t.j];
    for (auto& s : m.terms_) s.c *= t.c;
    out = out + m;
  }
  return out;
}

SparsePoly ZPoly2::homogenize(int d) const {
  if (degree() > d) throw PrecondError("cannot homogenize below the degree");
  SparsePoly out({3}, {d});
  for (const auto& t : terms_) out.add_term({d - t.i - t.j, t.i, t.j}, GaussQ(Rational(t.c)));
  return out;
}

ZPoly2 schoolbook_multiply(const ZPoly2& a, const ZPoly2& b) {
  std::vector<ZPoly2::Term> ts;
  ts.reserve(a.size() * b.size());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) ts.push_back({s.i + t.i, s.j + t.j, BigInt(s.c * t.c)});
  return ZPoly2::from_terms(std::move(ts));
}

ZPoly2 kronecker_multiply(const ZPoly2& a, const ZPoly2& b) {
  std::vector<const ZPoly2::Term*> ap, an, bp, bn;
  for (const auto& t : a.terms()) (t.c > 0 ? ap : an).push_back(&t);
  for (const auto& t : b.terms()) (t.c > 0 ? bp : bn).push_back(&t);
  // negative parts are packed by absolute value
  auto out = kronecker_nonneg(ap, bp);
  out = merge(out, kronecker_nonneg(an, bn), 1);
  out = merge(out, kronecker_nonneg(ap, bn), -1);
  out = merge(out, kronecker_nonneg(an, bp), -1);
  return ZPoly2::from_terms(std::move(out));
}

SparsePoly PolyEndo::lift_component(int k) const {
  if (k == 0) return SparsePoly::monomial({3}, {static_cast<int>(degree), 0, 0});
  if (k == 1) return p.homogenize(static_cast<int>(degree));
  if (k == 2) return q.homogenize(static_cast<int>(degree));
  throw PrecondError("lift components are numbered 0, 1, 2");
}

PolyEndo lift(const SparsePoly& p, const SparsePoly& q) { return lift(ZPoly2::from_sparse(p), ZPoly2::from_sparse(q)); }

PolyEndo lift(const ZPoly2& p, const ZPoly2& q) {
  const int d = std::max(p.degree(), q.degree());
  if (d <= 1) throw PrecondError("algebraic degree must exceed 1");
  PolyEndo e;
  e.p = p;
  e.q = q;
  e.lambda = d;
  e.degree = d;
  e.indeterminacy = common_zeros_at_infinity(p.part(d), q.part(d), d);
  return e;
}

WeakRegularity weakly_regular_check(const PolyEndo& e) {
  WeakRegularity w;
  if (e.holomorphic()) {
    w.reason = "empty indeterminacy set: the map is holomorphic on P2";
    return w;
  }
  const int d = static_cast<int>(e.degree);
  const ZPoly2 P = e.p.part(d), Q = e.q.part(d);
  // H(0, x, y) = (0, P, Q) is one point iff P and Q are proportional
  GaussQ a, b;
  if (P.is_zero()) {
    a = 0, b = 1;
  } else {
    const auto& t = P.terms().front();
    a = GaussQ(Rational(t.c));
    b = GaussQ(Rational(Q.coeff(t.i, t.j)));
    for (int i = 0; i <= d; ++i)
      if (Rational(Q.coeff(i, d - i)) * a.re != Rational(P.coeff(i, d - i)) * b.re) {
        w.reason = "the line at infinity is not mapped to a single point";
        return w;
      }
  }
  auto Z = ProjPoint::make_exact(Space::P2, {GaussQ(0), a, b});
  for (const auto& i : e.indeterminacy)
    if (Z.approx_equal(i, 1e-12)) {
      w.image = Z;
      w.reason = "the line at infinity is mapped into the indeterminacy set";
      return w;
    }
  w.regular = true;
  w.image = Z;
  return w;
}

double estimated_monomials(const PolyEndo& e, int n) {
  const double D = std::pow(static_cast<double>(e.degree), n);
  return (D + 1) * (D + 2) / 2;
}

PolyEndo iterate_lift(const PolyEndo& e, int n) {
  if (n < 1) throw PrecondError("iterate count must be at least 1");
  if (n == 1) return e;
  if (estimated_monomials(e, n) >= 1e7) throw PrecondError("iterate too large: estimated monomial count exceeds 1e7");
  const long D = checked_pow(e.degree, n);
  ZPoly2 p = e.p, q = e.q;
  for (int k = 1; k < n; ++k) {
    ZPoly2 np = e.p.compose(p, q);
    ZPoly2 nq = e.q.compose(p, q);
    p = std::move(np);
    q = std::move(nq);
  }
  PolyEndo out;
  out.p = std::move(p);
  out.q = std::move(q);
  out.lambda = e.lambda;
  out.iterate = e.iterate * n;
  out.degree = D;
  out.indeterminacy = common_zeros_at_infinity(out.p.part(static_cast<int>(D)), out.q.part(static_cast<int>(D)),
                                               static_cast<int>(D));
  return out;
}

Rational nu_n_exact(const PolyEndo& e, int n) {
  const auto origin = ProjPoint::make_exact(Space::P2, {GaussQ(0), GaussQ(0), GaussQ(1)});
  if (e.indeterminacy.size() != 1 || !e.indeterminacy[0].approx_equal(origin, 0))
    throw PrecondError("the indeterminacy set must be exactly {[0:0:1]}");
  const auto wr = weakly_regular_check(e);
  if (!wr.regular) throw PrecondError("map is not weakly regular: " + wr.reason);
  const PolyEndo it = iterate_lift(e, n);
  const long dy = std::max(it.p.deg_y(), it.q.deg_y());
  return Rational(it.degree - dy, it.degree);
}

DynGreen::DynGreen(const PolyEndo& e) : degree_(e.degree) {
  double sums[3] = {1, 0, 0};
  const ZPoly2* comps[2] = {&e.p, &e.q};
  for (int k = 0; k < 2; ++k)
    for (const auto& t : comps[k]->terms()) {
      const double c = t.c.convert_to<double>();
      if (!std::isfinite(c)) throw PrecondError("map coefficient too large for double evaluation");
      comp_[k].push_back({static_cast<int>(degree_) - t.i - t.j, t.i, t.j, c});
      sums[k + 1] += std::abs(c);
    }
  // |H_k(z)| <= sum of |coefficients| when |z| = 1
  shift_ = 0.5 * std::log(sums[0] * sums[0] + sums[1] * sums[1] + sums[2] * sums[2]) / static_cast<double>(degree_);
}

std::array<cplx, 3> DynGreen::apply(const std::array<cplx, 3>& z) const {
  const int D = static_cast<int>(degree_);
  std::vector<cplx> pw(3 * (D + 1));
  for (int v = 0; v < 3; ++v) {
    pw[v * (D + 1)] = 1;
    for (int k = 1; k <= D; ++k) pw[v * (D + 1) + k] = pw[v * (D + 1) + k - 1] * z[v];
  }
  std::array<cplx, 3> out{pw[D], 0.0, 0.0};
  for (int k = 0; k < 2; ++k)
    for (const auto& m : comp_[k]) out[k + 1] += m.c * pw[m.t] * pw[(D + 1) + m.x] * pw[2 * (D + 1) + m.y];
  return out;
}

double DynGreen::psi(const std::array<cplx, 3>& z) const {
  double n = 0;
  for (const auto& v : z) n += std::norm(v);
  n = std::sqrt(n);
  std::array<cplx, 3> u{z[0] / n, z[1] / n, z[2] / n};
  const auto v = apply(u);
  const double nv = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
  return std::log(nv) / static_cast<double>(degree_) - shift_;
}

double DynGreen::g(int n, std::array<cplx, 3> z) const {
  double norm = std::sqrt(std::norm(z[0]) + std::norm(z[1]) + std::norm(z[2]));
  if (!(norm > 0) || !std::isfinite(norm)) return std::numeric_limits<double>::quiet_NaN();
  for (auto& v : z) v /= norm;
  double acc = 0, weight = 1;
  for (int j = 0; j < n; ++j) {
    const auto v = apply(z);
    const double nv = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
    if (!(nv > 0)) return -std::numeric_limits<double>::infinity();
    acc += weight * (std::log(nv) / static_cast<double>(degree_) - shift_);
    weight /= static_cast<double>(degree_);
    for (int k = 0; k < 3; ++k) z[k] = v[k] / nv;
  }
  return acc;
}

double dyn_green_eval(const PolyEndo& e, int n, const ProjPoint& p) {
  if (n < 1) throw PrecondError("n must be at least 1");
  if (p.space != Space::P2) throw PrecondError("dynamical Green functions live on P2");
  for (const auto& i : e.indeterminacy)
    if (p.approx_equal(i, 0)) throw PrecondError("point lies in the indeterminacy set");
  DynGreen g(e);
  const auto zn = p.normalized().z;
  const double v = g.g(n, {zn[0], zn[1], zn[2]});
  if (std::isinf(v)) throw PrecondError("orbit meets the indeterminacy set");
  return v;
}

DynGreenPotential::DynGreenPotential(const PolyEndo& e, int n) : g_(e), n_(n) {
  if (n < 1) throw PrecondError("n must be at least 1");
}

double DynGreenPotential::phi(int chart, std::span<const cplx> w) const {
  std::array<cplx, 3> z;
  chart_embed(Space::P2, chart, w, z);
  return g_.g(n_, z);
}

IndeterminacyProbe indeterminacy_probe(const PolyEndo& e, std::vector<double> radii, int samples, std::uint64_t seed) {
  if (e.holomorphic()) throw PrecondError("no indeterminacy set to probe");
  if (radii.size() < 2) throw PrecondError("probe needs at least two radii");
  const DynGreen g(e);
  const auto dirs = sphere_directions(2, samples, seed);
  IndeterminacyProbe out;
  out.radii = radii;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0, 1);
  // best direction per indeterminacy point, carried over to the next radius
  std::vector<std::optional<std::array<cplx, 2>>> carried(e.indeterminacy.size());
  for (double r : radii) {
    if (!(r > 0)) throw PrecondError("probe radii must be positive");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t ii = 0; ii < e.indeterminacy.size(); ++ii) {
      const auto& I = e.indeterminacy[ii];
      const int chart = best_chart(I);
      const auto c = to_chart(I, chart);
      auto image_dist = [&](const std::array<cplx, 2>& d) {
        const cplx w[2] = {c[0] + r * d[0], c[1] + r * d[1]};
        std::array<cplx, 3> z;
        chart_embed(Space::P2, chart, w, z);
        const auto v = g.apply(z);
        if (std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]) == 0) return 0.0;
        const auto img = ProjPoint::make(Space::P2, {v[0], v[1], v[2]});
        double m = std::numeric_limits<double>::infinity();
        for (const auto& J : e.indeterminacy) m = std::min(m, chordal_distance(img, J));
        return m;
      };
      std::vector<std::pair<double, std::array<cplx, 2>>> scored;
      for (const auto& d : dirs) {
        std::array<cplx, 2> u{d[0], d[1]};
        scored.emplace_back(image_dist(u), u);
      }
      // random-walk descent on the sphere from the closest samples
      std::partial_sort(scored.begin(), scored.begin() + std::min<std::size_t>(8, scored.size()), scored.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; });
      scored.resize(std::min<std::size_t>(8, scored.size()));
      if (carried[ii]) scored.emplace_back(image_dist(*carried[ii]), *carried[ii]);
      double best_here = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < scored.size(); ++k) {
        auto [dist, u] = scored[k];
        double step = 0.5;
        for (int it = 0; it < 3000 && step > 1e-12; ++it) {
          std::array<cplx, 2> v{u[0] + step * cplx(N(rng), N(rng)), u[1] + step * cplx(N(rng), N(rng))};
          const double nv = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
          v[0] /= nv;
          v[1] /= nv;
          const double dv = image_dist(v);
          // one-fifth success rule
          if (dv < dist) {
            dist = dv;
            u = v;
            step *= 1.5;
          } else {
            step *= 0.9;
          }
        }
        if (dist < best_here) {
          best_here = dist;
          carried[ii] = u;
        }
      }
      best = std::min(best, best_here);
    }
    out.min_image_dist.push_back(best);
  }
  // least-squares slope of log distance against log radius
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double x = std::log(radii[k]), y = std::log(std::max(out.min_image_dist[k], 1e-300));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  out.delta = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

PolyEndo henon_family(int lambda, int mu) {
  if (!(lambda > mu && mu >= 1)) throw PrecondError("family needs lambda > mu >= 1");
  std::vector<ZPoly2::Term> t{{lambda, 0, BigInt(1)}, {0, mu, BigInt(1)}};
  return lift(ZPoly2::from_terms(t), ZPoly2::x());
}

}  // namespace pluripot
