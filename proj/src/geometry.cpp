#include "pluripot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pluripot {

std::string to_string(Space s) {
  switch (s) {
    case Space::P1: return "P1";
    case Space::P2: return "P2";
    case Space::P1xP1: return "P1xP1";
  }
  return "?";
}

Space parse_space(std::string_view s) {
  if (s == "P1") return Space::P1;
  if (s == "P2") return Space::P2;
  if (s == "P1xP1") return Space::P1xP1;
  throw PrecondError("unknown space '" + std::string(s) + "'");
}

int factor_count(Space s) { return s == Space::P1xP1 ? 2 : 1; }
int factor_size(Space s, int) { return s == Space::P2 ? 3 : 2; }
int hom_size(Space s) { return s == Space::P1 ? 2 : (s == Space::P2 ? 3 : 4); }
int affine_dim(Space s) { return s == Space::P1 ? 1 : 2; }
int chart_count(Space s) { return s == Space::P1 ? 2 : (s == Space::P2 ? 3 : 4); }

namespace {

int factor_offset(Space s, int f) { return f * factor_size(s, 0); }

void check_chart(Space s, int chart) {
  if (chart < 0 || chart >= chart_count(s))
    throw PrecondError("chart index " + std::to_string(chart) + " invalid for " + to_string(s));
}

}  // namespace

ProjPoint ProjPoint::make(Space s, std::vector<cplx> coords) {
  if (static_cast<int>(coords.size()) != hom_size(s))
    throw PrecondError("wrong number of homogeneous coordinates for " + to_string(s));
  for (const auto& c : coords)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw PrecondError("non-finite coordinate");
  for (int f = 0; f < factor_count(s); ++f) {
    bool nz = false;
    for (int j = 0; j < factor_size(s, f); ++j) nz = nz || coords[factor_offset(s, f) + j] != 0.0;
    if (!nz) throw PrecondError("all coordinates of a factor vanish");
  }
  return ProjPoint{s, std::move(coords), std::nullopt};
}

ProjPoint ProjPoint::make_exact(Space s, std::vector<GaussQ> coords) {
  std::vector<cplx> z;
  for (const auto& c : coords) z.push_back(c.to_complex());
  if (static_cast<int>(coords.size()) != hom_size(s))
    throw PrecondError("wrong number of homogeneous coordinates for " + to_string(s));
  for (int f = 0; f < factor_count(s); ++f) {
    bool nz = false;
    for (int j = 0; j < factor_size(s, f); ++j) nz = nz || !coords[factor_offset(s, f) + j].is_zero();
    if (!nz) throw PrecondError("all coordinates of a factor vanish");
  }
  ProjPoint p{s, std::move(z), std::move(coords)};
  return p;
}

ProjPoint ProjPoint::normalized() const {
  ProjPoint out = *this;
  out.exact.reset();
  for (int f = 0; f < factor_count(space); ++f) {
    int off = factor_offset(space, f), m = factor_size(space, f);
    int best = off;
    for (int j = off; j < off + m; ++j)
      if (std::abs(z[j]) > std::abs(z[best])) best = j;
    cplx piv = z[best];
    for (int j = off; j < off + m; ++j) out.z[j] = z[j] / piv;
    out.z[best] = 1.0;
  }
  return out;
}

bool ProjPoint::approx_equal(const ProjPoint& o, double tol) const {
  if (space != o.space) return false;
  for (int f = 0; f < factor_count(space); ++f) {
    int off = factor_offset(space, f), m = factor_size(space, f);
    int piv = off;
    for (int j = off; j < off + m; ++j)
      if (std::abs(z[j]) > std::abs(z[piv])) piv = j;
    if (o.z[piv] == 0.0) return false;
    for (int j = off; j < off + m; ++j)
      if (std::abs(z[j] / z[piv] - o.z[j] / o.z[piv]) > tol) return false;
  }
  return true;
}

std::string to_string(const ProjPoint& p) {
  std::ostringstream os;
  os.precision(17);
  for (int f = 0; f < factor_count(p.space); ++f) {
    if (f) os << "x";
    os << "[";
    for (int j = 0; j < factor_size(p.space, f); ++j) {
      if (j) os << ":";
      const cplx& c = p.z[factor_offset(p.space, f) + j];
      if (p.exact) {
        os << to_string((*p.exact)[factor_offset(p.space, f) + j]);
      } else if (c.imag() == 0.0) {
        os << c.real();
      } else {
        os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
      }
    }
    os << "]";
  }
  return os.str();
}

std::vector<int> chart_indices(Space s, int chart) {
  check_chart(s, chart);
  if (s == Space::P1xP1) return {chart % 2, 2 + chart / 2};
  return {chart};
}

std::vector<cplx> to_chart(const ProjPoint& p, int chart) {
  auto idx = chart_indices(p.space, chart);
  std::vector<cplx> w;
  for (int f = 0; f < factor_count(p.space); ++f) {
    int off = factor_offset(p.space, f);
    cplx piv = p.z[idx[f]];
    if (piv == 0.0) throw PrecondError("point " + to_string(p) + " not in chart " + std::to_string(chart));
    for (int j = off; j < off + factor_size(p.space, f); ++j)
      if (j != idx[f]) w.push_back(p.z[j] / piv);
  }
  return w;
}

void chart_embed(Space s, int chart, std::span<const cplx> w, std::span<cplx> z_out) {
  int k = 0;
  if (s == Space::P1xP1) {
    int iz = chart % 2, iw = chart / 2;
    z_out[iz] = 1.0;
    z_out[1 - iz] = w[0];
    z_out[2 + iw] = 1.0;
    z_out[2 + 1 - iw] = w[1];
    return;
  }
  int m = hom_size(s);
  for (int j = 0; j < m; ++j) z_out[j] = (j == chart) ? cplx(1.0) : w[k++];
}

ProjPoint from_chart(Space s, int chart, std::span<const cplx> w) {
  check_chart(s, chart);
  if (static_cast<int>(w.size()) != affine_dim(s)) throw PrecondError("wrong affine dimension");
  std::vector<cplx> z(hom_size(s));
  chart_embed(s, chart, w, z);
  return ProjPoint::make(s, std::move(z));
}

int best_chart(const ProjPoint& p) {
  auto argmax = [&](int off, int m) {
    int b = off;
    for (int j = off; j < off + m; ++j)
      if (std::abs(p.z[j]) > std::abs(p.z[b])) b = j;
    return b;
  };
  if (p.space == Space::P1xP1) return argmax(0, 2) + 2 * (argmax(2, 2) - 2);
  return argmax(0, hom_size(p.space));
}

KClass KClass::pn(Space s, Rational c) {
  if (s == Space::P1xP1) throw PrecondError("use p1p1 for product classes");
  if (c < 0) throw PrecondError("class coefficient must be >= 0");
  return KClass{s, {std::move(c)}};
}

KClass KClass::p1p1(Rational a, Rational b) {
  if (a < 0 || b < 0) throw PrecondError("class coefficients must be >= 0");
  return KClass{Space::P1xP1, {std::move(a), std::move(b)}};
}

bool KClass::kahler() const {
  return std::all_of(coef.begin(), coef.end(), [](const Rational& c) { return c > 0; });
}

std::vector<double> KClass::weights() const {
  std::vector<double> w;
  for (const auto& c : coef) w.push_back(to_double(c));
  return w;
}

double fs_potential(const KClass& k, int chart, std::span<const cplx> w) {
  check_chart(k.space, chart);
  if (static_cast<int>(w.size()) != affine_dim(k.space)) throw PrecondError("wrong affine dimension");
  for (const auto& c : w)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw PrecondError("non-finite coordinate");
  if (k.space == Space::P1xP1) {
    return 0.5 * to_double(k.coef[0]) * std::log1p(std::norm(w[0])) +
           0.5 * to_double(k.coef[1]) * std::log1p(std::norm(w[1]));
  }
  double s = 0;
  for (const auto& c : w) s += std::norm(c);
  return 0.5 * to_double(k.coef[0]) * std::log1p(s);
}

double fs_potential(Space s, std::span<const double> weights, std::span<const cplx> w) {
  if (s == Space::P1xP1) return 0.5 * weights[0] * std::log1p(std::norm(w[0])) + 0.5 * weights[1] * std::log1p(std::norm(w[1]));
  double t = 0;
  for (const auto& c : w) t += std::norm(c);
  return 0.5 * weights[0] * std::log1p(t);
}

double chordal_distance(const ProjPoint& p, const ProjPoint& q) {
  if (p.space != q.space) throw PrecondError("chordal_distance: mismatched spaces");
  double total = 0;
  for (int f = 0; f < factor_count(p.space); ++f) {
    int off = factor_offset(p.space, f), m = factor_size(p.space, f);
    // scale first so that huge or tiny representatives stay finite
    double sp = 0, sq = 0;
    for (int j = 0; j < m; ++j) {
      sp = std::max(sp, std::abs(p.z[off + j]));
      sq = std::max(sq, std::abs(q.z[off + j]));
    }
    std::vector<cplx> a(m), b(m);
    double na = 0, nb = 0;
    for (int j = 0; j < m; ++j) {
      a[j] = p.z[off + j] / sp;
      b[j] = q.z[off + j] / sq;
      na += std::norm(a[j]);
      nb += std::norm(b[j]);
    }
    double wedge = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) wedge += std::norm(a[i] * b[j] - a[j] * b[i]);
    double d2 = wedge / (na * nb);
    total += std::min(1.0, std::max(0.0, d2));
  }
  return std::sqrt(total);
}

Rational volume(const KClass& k) {
  switch (k.space) {
    case Space::P1: return k.coef[0];
    case Space::P2: return k.coef[0] * k.coef[0];
    case Space::P1xP1: return 2 * k.coef[0] * k.coef[1];
  }
  return 0;
}

Indicators indicators(const KClass& k, const ProjPoint& p) {
  if (p.space != k.space) throw PrecondError("indicators: point and class live on different spaces");
  if (!k.kahler()) throw PrecondError("indicators: class is not Kahler");
  if (k.space == Space::P1xP1) {
    const auto& a = k.coef[0];
    const auto& b = k.coef[1];
    return {a + b, a < b ? a : b};
  }
  return {k.coef[0], k.coef[0]};
}

bool seshadri_chain_holds(const KClass& k, const Indicators& ind) {
  Rational v = volume(k);
  int n = affine_dim(k.space);
  Rational en = 1, nn = 1;
  for (int i = 0; i < n; ++i) {
    en *= ind.eps;
    nn *= ind.nu;
  }
  return en <= v && v <= nn;
}

}  // namespace pluripot
