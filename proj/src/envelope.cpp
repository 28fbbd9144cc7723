#include "pluripot/envelope.hpp"

#include <algorithm>
#include <limits>

namespace pluripot {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// (1/2) log(1 + e^{2x}) without overflow
double half_log1p_exp2(double x) { return x > 0 ? x + 0.5 * std::log1p(std::exp(-2 * x)) : 0.5 * std::log1p(std::exp(2 * x)); }

void check_grid(double lo, double hi, int n) {
  if (n < 2) throw PrecondError("grid needs at least two points");
  if (!(hi > lo)) throw PrecondError("grid bounds must satisfy min < max");
}

// Lower convex hull of the samples, resampled onto the same grid.
std::vector<double> convexify(const RadialProfile& f) {
  const int n = f.size();
  std::vector<int> hull;
  for (int i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      int a = hull[hull.size() - 2], b = hull.back();
      // drop b when it lies on or above the chord from a to i
      if ((f.w[b] - f.w[a]) * (i - a) >= (f.w[i] - f.w[a]) * (b - a)) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  std::vector<double> out(n);
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    int a = hull[k], b = hull[k + 1];
    for (int i = a; i <= b; ++i) out[i] = f.w[a] + (f.w[b] - f.w[a]) * (i - a) / double(b - a);
  }
  if (hull.size() == 1) out[0] = f.w[0];
  return out;
}

}  // namespace

RadialProfile fs_radial_obstacle(double x_min, double x_max, int n, double c) {
  check_grid(x_min, x_max, n);
  RadialProfile p;
  p.x_min = x_min;
  p.x_max = x_max;
  p.w.resize(n);
  for (int i = 0; i < n; ++i) p.w[i] = c * half_log1p_exp2(p.x(i));
  return p;
}

double RadialGreen::V(double r) const {
  if (r <= 0) return kNegInf;
  return r <= R ? gamma * std::log(r) + C : 0.5 * std::log1p(r * r);
}

RadialProfile RadialGreen::profile(double x_min, double x_max, int n) const {
  check_grid(x_min, x_max, n);
  RadialProfile p;
  p.x_min = x_min;
  p.x_max = x_max;
  p.slope_at_minus_inf = gamma;
  p.w.resize(n);
  for (int i = 0; i < n; ++i) p.w[i] = w(p.x(i));
  return p;
}

RadialGreen radial_partial_green(double gamma, int n) {
  if (n < 1) throw PrecondError("dimension must be positive");
  if (!(gamma > 0 && gamma < 1)) throw PrecondError("gamma must lie in (0, 1)");
  RadialGreen g;
  g.gamma = gamma;
  g.R = std::sqrt(gamma / (1 - gamma));
  g.C = 0.5 * std::log1p(g.R * g.R) - gamma * std::log(g.R);
  return g;
}

double radial_green_limit(double r) {
  if (r <= 0) return kNegInf;
  return std::log(r) - 0.5 * std::log1p(r * r);
}

RadialProfile radial_envelope(const RadialProfile& obstacle, double gamma) {
  const int n = obstacle.size();
  check_grid(obstacle.x_min, obstacle.x_max, n);
  if (n < 3) throw PrecondError("radial_envelope needs at least three grid points");
  for (double v : obstacle.w)
    if (!std::isfinite(v)) throw PrecondError("obstacle must be finite on its grid");
  if (!(gamma > 0)) throw PrecondError("gamma must be positive");
  const double dx = obstacle.dx();
  RadialProfile out = obstacle;
  out.w = convexify(obstacle);
  out.slope_at_minus_inf = gamma;
  auto slope = [&](int i) { return (out.w[i + 1] - out.w[i]) / dx; };  // at x_i + dx/2
  if (slope(0) >= gamma - 1e-12) return out;  // the constraint already holds
  if (slope(n - 2) < gamma) throw NumericalError("obstacle slope never reaches gamma on the grid: no tangency");
  // first midpoint with slope >= gamma; slopes of a convex profile are nondecreasing
  int lo = 0, hi = n - 2;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (slope(mid) >= gamma ? hi : lo) = mid;
  }
  const double s0 = slope(lo), s1 = slope(hi);
  const double xs = out.x(lo) + dx / 2 + (s1 > s0 ? (gamma - s0) / (s1 - s0) : 0.5) * dx;
  // quadratic interpolation of the obstacle at the tangency point
  int c = std::clamp(static_cast<int>(std::lround((xs - out.x_min) / dx)), 1, n - 2);
  double u = (xs - out.x(c)) / dx;
  double fs = out.w[c] + 0.5 * u * (out.w[c + 1] - out.w[c - 1]) + 0.5 * u * u * (out.w[c + 1] - 2 * out.w[c] + out.w[c - 1]);
  for (int i = 0; i < n && out.x(i) <= xs; ++i) out.w[i] = std::min(out.w[i], fs + gamma * (out.x(i) - xs));
  return out;
}

DualProfile legendre(const RadialProfile& f, double s_min, double s_max, int ns) {
  if (f.w.empty()) throw PrecondError("legendre of an empty grid");
  check_grid(s_min, s_max, ns);
  for (double v : f.w)
    if (!std::isfinite(v)) throw PrecondError("legendre input must be finite");
  DualProfile g;
  g.s_min = s_min;
  g.s_max = s_max;
  g.v.assign(ns, kNegInf);
  for (int j = 0; j < ns; ++j) {
    const double s = g.s(j);
    double best = kNegInf;
    for (int i = 0; i < f.size(); ++i) best = std::max(best, s * f.x(i) - f.w[i]);
    g.v[j] = best;
  }
  return g;
}

RadialProfile legendre_inverse(const DualProfile& g, double x_min, double x_max, int nx) {
  if (g.v.empty()) throw PrecondError("legendre of an empty grid");
  check_grid(x_min, x_max, nx);
  RadialProfile f;
  f.x_min = x_min;
  f.x_max = x_max;
  f.slope_at_minus_inf = g.s_min;
  f.w.resize(nx);
  const int ns = static_cast<int>(g.v.size());
  for (int i = 0; i < nx; ++i) {
    const double x = f.x(i);
    double best = kNegInf;
    for (int j = 0; j < ns; ++j) best = std::max(best, g.s(j) * x - g.v[j]);
    f.w[i] = best;
  }
  return f;
}

ToricGrid toric_fs_obstacle(double a, double b, double L, int n) {
  if (!(a > 0 && b > 0)) throw PrecondError("class (a, b) must be positive");
  if (!(L > 0)) throw PrecondError("half-width L must be positive");
  if (n < 3) throw PrecondError("toric grid needs at least three points per side");
  ToricGrid g;
  g.L = L;
  g.n = n;
  g.a = a;
  g.b = b;
  g.w.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.w[static_cast<std::size_t>(i) * n + j] = a * half_log1p_exp2(g.x(i)) + b * half_log1p_exp2(g.x(j));
  g.h = g.w;
  return g;
}

namespace {

// G[i][k] = max_j (t_k y_j - f(x_i, y_j)) with the maximizing j.
void inner_pass(const ToricGrid& f, const std::vector<double>& t, std::vector<double>& G, std::vector<int>* arg) {
  const int n = f.n, nt = static_cast<int>(t.size());
  G.assign(static_cast<std::size_t>(n) * nt, kNegInf);
  if (arg) arg->assign(G.size(), 0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < nt; ++k) {
      double best = kNegInf;
      int bj = 0;
      for (int j = 0; j < n; ++j) {
        double v = t[k] * f.x(j) - f.at(i, j);
        if (v > best) {
          best = v;
          bj = j;
        }
      }
      G[static_cast<std::size_t>(i) * nt + k] = best;
      if (arg) (*arg)[static_cast<std::size_t>(i) * nt + k] = bj;
    }
}

void check_toric(const ToricGrid& f) {
  if (f.n < 3 || f.w.size() != static_cast<std::size_t>(f.n) * f.n) throw PrecondError("toric grid has the wrong size");
  if (!(f.a > 0 && f.b > 0)) throw PrecondError("class (a, b) must be positive");
  for (double v : f.w)
    if (!std::isfinite(v)) throw PrecondError("toric grid values must be finite");
}

}  // namespace

DualGrid legendre(const ToricGrid& f, int nd) {
  check_toric(f);
  if (nd < 2) throw PrecondError("dual grid needs at least two nodes per side");
  DualGrid d;
  d.a = f.a;
  d.b = f.b;
  d.n = nd;
  std::vector<double> s(nd), t(nd);
  for (int k = 0; k < nd; ++k) {
    s[k] = k * d.ds();
    t[k] = k * d.dt();
  }
  std::vector<double> G;
  inner_pass(f, t, G, nullptr);
  d.v.assign(static_cast<std::size_t>(nd) * nd, kNegInf);
#pragma omp parallel for schedule(static)
  for (int p = 0; p < nd; ++p)
    for (int k = 0; k < nd; ++k) {
      double best = kNegInf;
      for (int i = 0; i < f.n; ++i) best = std::max(best, s[p] * f.x(i) + G[static_cast<std::size_t>(i) * nd + k]);
      d.v[static_cast<std::size_t>(p) * nd + k] = best;
    }
  return d;
}

ToricGrid toric_envelope(const ToricGrid& obstacle, double gamma, int nd) {
  check_toric(obstacle);
  if (!(gamma > 0)) throw PrecondError("gamma must be positive");
  if (gamma > obstacle.a + obstacle.b) throw PrecondError("dual constraint polygon is empty: gamma exceeds a + b");
  if (gamma > std::min(obstacle.a, obstacle.b) + 1e-12)
    throw PrecondError("gamma exceeds the Seshadri bound min(a, b)");
  const DualGrid hs = legendre(obstacle, nd);
  const int n = obstacle.n;
  const double eps = 1e-12;
  // M[i][k] = max over s >= gamma - t_k of (s x_i - h*(s, t_k))
  std::vector<double> M(static_cast<std::size_t>(n) * nd, kNegInf);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double x = obstacle.x(i);
    for (int k = 0; k < nd; ++k) {
      const double t = k * hs.dt();
      double best = kNegInf;
      for (int p = nd - 1; p >= 0; --p) {
        const double s = p * hs.ds();
        if (s + t < gamma - eps) break;
        best = std::max(best, s * x - hs.at(p, k));
      }
      M[static_cast<std::size_t>(i) * nd + k] = best;
    }
  }
  ToricGrid out = obstacle;
  out.gamma = gamma;
  out.h = obstacle.w;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double y = obstacle.x(j);
      double best = kNegInf;
      for (int k = 0; k < nd; ++k) best = std::max(best, k * hs.dt() * y + M[static_cast<std::size_t>(i) * nd + k]);
      out.w[static_cast<std::size_t>(i) * n + j] = best;
    }
  return out;
}

ToricMasses toric_ma_masses(const ToricGrid& g, int nd, double tol) {
  check_toric(g);
  if (g.h.size() != g.w.size()) throw PrecondError("toric grid carries no obstacle");
  if (nd < 2) throw PrecondError("dual grid needs at least two cells per side");
  if (!(tol > 0)) throw PrecondError("tolerance must be positive");
  const int n = g.n;
  std::vector<double> s(nd), t(nd);
  for (int k = 0; k < nd; ++k) {
    s[k] = (k + 0.5) * g.a / nd;
    t[k] = (k + 0.5) * g.b / nd;
  }
  ToricGrid hg = g;
  hg.w = g.h;
  std::vector<double> Gw, Gh;
  std::vector<int> argy;
  inner_pass(g, t, Gw, &argy);
  inner_pass(hg, t, Gh, nullptr);
  const double cell = g.a * g.b / (double(nd) * nd);
  ToricMasses m;
  long ambiguous = 0;
  for (int p = 0; p < nd; ++p)
    for (int k = 0; k < nd; ++k) {
      double bw = kNegInf, bh = kNegInf;
      int bi = 0;
      for (int i = 0; i < n; ++i) {
        double x = g.x(i);
        double vw = s[p] * x + Gw[static_cast<std::size_t>(i) * nd + k];
        if (vw > bw) {
          bw = vw;
          bi = i;
        }
        bh = std::max(bh, s[p] * x + Gh[static_cast<std::size_t>(i) * nd + k]);
      }
      const int bj = argy[static_cast<std::size_t>(bi) * nd + k];
      const double gap = bw - bh;  // >= 0 since w <= h
      if (gap > tol / 4 && gap < 4 * tol) ++ambiguous;
      if (gap <= tol) m.boundary += cell;
      else if (bi == 0 || bj == 0) m.dirac += cell;  // supporting plane escapes to the -inf corner
      else m.interior += cell;
    }
  m.dirac *= 2;
  m.boundary *= 2;
  m.interior *= 2;
  m.total = m.dirac + m.boundary + m.interior;
  m.ambiguous_fraction = double(ambiguous) / (double(nd) * nd);
  if (m.ambiguous_fraction > 0.02)
    throw NumericalError("mass classification is ambiguous for more than 2% of dual cells: grid too coarse");
  return m;
}

double toric_green_closed_form(double x, double y) {
  if (x + y <= 0) {
    double hi = std::max(x, y), lo = std::min(x, y);
    return hi + std::log1p(std::exp(lo - hi));
  }
  return half_log1p_exp2(x) + half_log1p_exp2(y);
}

}  // namespace pluripot
