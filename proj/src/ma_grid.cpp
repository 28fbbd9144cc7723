#include "pluripot/ma_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "pluripot/lelong.hpp"

namespace pluripot {

namespace {

constexpr int kOff[4] = {-2, -1, 1, 2};
constexpr double kD1[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
constexpr double kRefineTol = 1e-3;

struct Hess {
  double a11 = 0, a22 = 0;
  cplx a12;  // u_{1 2bar}
  double det() const { return a11 * a22 - std::norm(a12); }
};

// U(d0, d1, d2, d3) returns u at the offset (in steps) along (Re w1, Im w1, Re w2, Im w2).
template <class U>
Hess hessian(const U& u, double h) {
  const double u0 = u(0, 0, 0, 0);
  auto second = [&](int ax) {
    int o[4] = {0, 0, 0, 0};
    auto at = [&](int k) {
      o[ax] = k;
      return u(o[0], o[1], o[2], o[3]);
    };
    return (-at(-2) + 16 * at(-1) - 30 * u0 + 16 * at(1) - at(2)) / (12 * h * h);
  };
  auto mixed = [&](int ax, int bx) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int o[4] = {0, 0, 0, 0};
        o[ax] = kOff[i];
        o[bx] = kOff[j];
        s += kD1[i] * kD1[j] * u(o[0], o[1], o[2], o[3]);
      }
    return s / (h * h);
  };
  Hess H;
  H.a11 = 0.25 * (second(0) + second(1));
  H.a22 = 0.25 * (second(2) + second(3));
  H.a12 = 0.25 * cplx(mixed(0, 2) + mixed(1, 3), mixed(0, 3) - mixed(1, 2));
  return H;
}

// Second-order counterpart of hessian(); the gap between the two flags unresolved stencils.
template <class U>
Hess hessian2(const U& u, double h) {
  const double u0 = u(0, 0, 0, 0);
  auto second = [&](int ax) {
    int lo[4] = {0, 0, 0, 0}, hi[4] = {0, 0, 0, 0};
    lo[ax] = -1;
    hi[ax] = 1;
    return (u(lo[0], lo[1], lo[2], lo[3]) - 2 * u0 + u(hi[0], hi[1], hi[2], hi[3])) / (h * h);
  };
  auto mixed = [&](int ax, int bx) {
    double s = 0;
    for (int i : {-1, 1})
      for (int j : {-1, 1}) {
        int o[4] = {0, 0, 0, 0};
        o[ax] = i;
        o[bx] = j;
        s += i * j * u(o[0], o[1], o[2], o[3]);
      }
    return s / (4 * h * h);
  };
  Hess H;
  H.a11 = 0.25 * (second(0) + second(1));
  H.a22 = 0.25 * (second(2) + second(3));
  H.a12 = 0.25 * cplx(mixed(0, 2) + mixed(1, 3), mixed(0, 3) - mixed(1, 2));
  return H;
}

// Density with steps h, h/2, ... until two successive values agree.
double refined_density(const Evaluable& phi, int chart, const cplx* w, double h, double first) {
  double prev = first;
  for (int level = 1; level <= 8; ++level) {
    const double step = h / (1 << level);
    auto u = [&](int da, int db, int dc, int dd) {
      cplx v[2] = {w[0] + cplx(da * step, db * step), w[1] + cplx(dc * step, dd * step)};
      return phi.local(chart, std::span<const cplx>(v, 2));
    };
    const double d = kDetConstant * hessian(u, step).det();
    if (!std::isfinite(d)) return d;
    if (std::abs(d - prev) <= kRefineTol * (1 + std::abs(d))) return d;
    prev = d;
  }
  return prev;
}

// (u_{z1}, u_{z2})
template <class U>
std::array<cplx, 2> gradient(const U& u, double h) {
  double d[4] = {0, 0, 0, 0};
  for (int ax = 0; ax < 4; ++ax)
    for (int i = 0; i < 4; ++i) {
      int o[4] = {0, 0, 0, 0};
      o[ax] = kOff[i];
      d[ax] += kD1[i] * u(o[0], o[1], o[2], o[3]);
    }
  return {0.5 * cplx(d[0], -d[1]) / h, 0.5 * cplx(d[2], -d[3]) / h};
}

// Affine coordinates in chart c of the homogeneous point z; false when z is off the chart.
bool affine_in_chart(Space s, int c, const cplx* z, cplx* out) {
  if (s == Space::P1xP1) {
    const int iz = c % 2, iw = c / 2;
    if (z[iz] == 0.0 || z[2 + iw] == 0.0) return false;
    out[0] = z[1 - iz] / z[iz];
    out[1] = z[2 + 1 - iw] / z[2 + iw];
    return true;
  }
  if (z[c] == 0.0) return false;
  int k = 0;
  for (int j = 0; j < hom_size(s); ++j)
    if (j != c) out[k++] = z[j] / z[c];
  return true;
}

void require_surface(Space s) {
  if (affine_dim(s) != 2) throw PrecondError("Monge-Ampere grids need a complex surface (P2 or P1xP1)");
}

// 2x2 complex Jacobian of the chart transition by central differences.
std::array<cplx, 4> transition_jacobian(Space s, int from, int to, std::span<const cplx> w) {
  std::array<cplx, 4> J{};
  const double eps = 1e-5 * (1 + std::abs(w[0]) + std::abs(w[1]));
  for (int i = 0; i < 2; ++i) {
    cplx wp[2] = {w[0], w[1]}, wm[2] = {w[0], w[1]};
    wp[i] += eps;
    wm[i] -= eps;
    std::array<cplx, 4> zp{}, zm{};
    chart_embed(s, from, std::span<const cplx>(wp, 2), zp);
    chart_embed(s, from, std::span<const cplx>(wm, 2), zm);
    cplx fp[2], fm[2];
    if (!affine_in_chart(s, to, zp.data(), fp) || !affine_in_chart(s, to, zm.data(), fm))
      throw PrecondError("point is not in the target chart");
    for (int r = 0; r < 2; ++r) J[r * 2 + i] = (fp[r] - fm[r]) / (2 * eps);
  }
  return J;
}

// A pole's coordinates in every chart that contains it; each chart excludes its own Euclidean ball.
struct PreparedBall {
  double radius = 0;
  int best = 0;
  std::vector<bool> present;
  std::vector<std::array<cplx, 2>> center_k;
};

PreparedBall prepare(const ProjPoint& p, double radius) {
  const Space s = p.space;
  PreparedBall pb;
  pb.radius = radius;
  pb.best = best_chart(p);
  const int nc = chart_count(s);
  pb.present.assign(nc, false);
  pb.center_k.assign(nc, {});
  const auto zc = p.normalized().z;
  for (int k = 0; k < nc; ++k) {
    cplx out[2];
    if (!affine_in_chart(s, k, zc.data(), out)) continue;
    pb.present[k] = true;
    pb.center_k[k] = {out[0], out[1]};
  }
  return pb;
}

bool in_prepared(const PreparedBall& pb, int chart, const cplx* w) {
  if (!pb.present[chart]) return false;
  const auto& ck = pb.center_k[chart];
  return std::norm(w[0] - ck[0]) + std::norm(w[1] - ck[1]) < pb.radius * pb.radius;
}

int grid_points(double box, double h) {
  if (!(h > 0) || !(box > 0)) throw PrecondError("grid spacing and box must be positive");
  const double cells = 2 * box / h;
  if (std::abs(cells - std::round(cells)) > 1e-6) throw PrecondError("2 * box must be a multiple of the grid spacing");
  if (cells > 4000) throw PrecondError("grid too fine");
  return static_cast<int>(std::round(cells)) + 1;
}

struct ChartSums {
  double integral = 0;
  double min_density = std::numeric_limits<double>::infinity();
  std::vector<double> marginal;
  long points = 0;
  long refined = 0;
  std::vector<double> shell;  // unweighted density over radius <= |w - pole| < 2 radius, per ball
};

// Streams the chart grid in slabs of Re w1, integrating weight * density outside the balls.
ChartSums integrate_chart(const Evaluable& phi, int chart, const GridParams& gp, const std::vector<PreparedBall>& balls) {
  const Space s = phi.space();
  const double h = gp.h, box = gp.box;
  const int n = grid_points(box, h);
  const int S = n + 4;
  const std::size_t slab_size = static_cast<std::size_t>(S) * S * S;
  std::vector<double> ring(5 * slab_size);
  auto slab = [&](int a) { return ring.data() + static_cast<std::size_t>(((a % 5) + 5) % 5) * slab_size; };
  auto coord = [&](int i) { return -box + i * h; };
  const double reach = kWeightSupport + 3 * h;  // stencils of weighted points stay inside
  auto load = [&](int a) {
    double* dst = slab(a);
    const double x1 = coord(a);
#pragma omp parallel for schedule(static)
    for (int b = -2; b < n + 2; ++b)
      for (int c = -2; c < n + 2; ++c)
        for (int d = -2; d < n + 2; ++d) {
          cplx w[2] = {cplx(x1, coord(b)), cplx(coord(c), coord(d))};
          const bool needed = s == Space::P1xP1 ? std::max(std::abs(w[0]), std::abs(w[1])) <= reach
                                                : std::norm(w[0]) + std::norm(w[1]) <= reach * reach;
          dst[(static_cast<std::size_t>(b + 2) * S + (c + 2)) * S + (d + 2)] =
              needed ? phi.local(chart, std::span<const cplx>(w, 2)) : std::numeric_limits<double>::quiet_NaN();
        }
  };
  ChartSums out;
  out.marginal.assign(n, 0.0);
  out.shell.assign(balls.size(), 0.0);
  std::vector<int> own;  // balls whose pole has this chart as its best chart
  for (std::size_t i = 0; i < balls.size(); ++i)
    if (balls[i].best == chart) own.push_back(static_cast<int>(i));
  std::vector<std::vector<double>> row_shell(n, std::vector<double>(balls.size(), 0.0));
  std::vector<double> row_sum(n), row_min(n);
  std::vector<long> row_pts(n), row_ref(n);
  std::vector<int> row_bad(n);
  for (int a = -2; a < 2; ++a) load(a);
  const double h4 = h * h * h * h;
  for (int a = 0; a < n; ++a) {
    load(a + 2);
    const double* sl[5] = {slab(a - 2), slab(a - 1), slab(a), slab(a + 1), slab(a + 2)};
#pragma omp parallel for schedule(static)
    for (int b = 0; b < n; ++b) {
      double acc = 0, mn = std::numeric_limits<double>::infinity();
      long pts = 0, ref = 0;
      int bad = 0;
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          cplx w[2] = {cplx(coord(a), coord(b)), cplx(coord(c), coord(d))};
          const double wt = chart_weight(s, std::span<const cplx>(w, 2));
          if (wt == 0) continue;
          bool skip = false;
          for (const auto& pb : balls)
            if (in_prepared(pb, chart, w)) {
              skip = true;
              break;
            }
          if (skip) continue;
          auto u = [&](int da, int db, int dc, int dd) {
            return sl[da + 2][(static_cast<std::size_t>(b + db + 2) * S + (c + dc + 2)) * S + (d + dd + 2)];
          };
          double dens = kDetConstant * hessian(u, h).det();
          const double coarse = kDetConstant * hessian2(u, h).det();
          if (std::isfinite(dens) && std::abs(dens - coarse) > kRefineTol * (1 + std::abs(dens))) {
            dens = refined_density(phi, chart, w, h, dens);
            ++ref;
          }
          if (!std::isfinite(dens)) {
            bad = 1;
            continue;
          }
          acc += wt * dens;
          for (int i : own) {
            const auto& ck = balls[i].center_k[chart];
            const double r2 = std::norm(w[0] - ck[0]) + std::norm(w[1] - ck[1]), R = balls[i].radius;
            if (r2 < 4 * R * R) row_shell[b][i] += dens;
          }
          mn = std::min(mn, dens);
          ++pts;
        }
      row_sum[b] = acc;
      row_min[b] = mn;
      row_pts[b] = pts;
      row_ref[b] = ref;
      row_bad[b] = bad;
    }
    double slab_acc = 0;
    for (int b = 0; b < n; ++b) {
      if (row_bad[b]) throw NumericalError("non-finite potential values inside the stencil support: unlisted pole?");
      slab_acc += row_sum[b];
      out.min_density = std::min(out.min_density, row_min[b]);
      out.points += row_pts[b];
      out.refined += row_ref[b];
      for (std::size_t i = 0; i < balls.size(); ++i) {
        out.shell[i] += row_shell[b][i] * h4;
        row_shell[b][i] = 0;
      }
    }
    out.marginal[a] = slab_acc * h * h * h;
    out.integral += slab_acc * h4;
  }
  return out;
}

}  // namespace

bool in_ball(const Ball& b, Space s, int chart, std::span<const cplx> w) {
  if (static_cast<int>(w.size()) != affine_dim(s) || b.center.space != s) throw PrecondError("ball and point do not match");
  if (affine_dim(s) != 2) throw PrecondError("balls are defined on complex surfaces");
  return in_prepared(prepare(b.center, b.radius), chart, w.data());
}

double ChartGrid::at(int a, int b, int c, int d) const {
  const std::size_t S = stride();
  return u[((static_cast<std::size_t>(a + 2) * S + (b + 2)) * S + (c + 2)) * S + (d + 2)];
}

ChartGrid sample_chart_grid(const Evaluable& phi, int chart, double box, double h, std::vector<Ball> excluded) {
  require_surface(phi.space());
  if (chart < 0 || chart >= chart_count(phi.space())) throw PrecondError("chart index out of range");
  ChartGrid g;
  g.space = phi.space();
  g.chart = chart;
  g.box = box;
  g.h = h;
  g.n = grid_points(box, h);
  if (g.n > 101) throw PrecondError("stored chart grids are limited to 101 points per axis; use ma_report");
  g.excluded = std::move(excluded);
  const int S = g.stride();
  g.u.resize(static_cast<std::size_t>(S) * S * S * S);
#pragma omp parallel for schedule(static)
  for (int a = -2; a < g.n + 2; ++a)
    for (int b = -2; b < g.n + 2; ++b)
      for (int c = -2; c < g.n + 2; ++c)
        for (int d = -2; d < g.n + 2; ++d) {
          cplx w[2] = {cplx(g.coord(a), g.coord(b)), cplx(g.coord(c), g.coord(d))};
          g.u[((static_cast<std::size_t>(a + 2) * S + (b + 2)) * S + (c + 2)) * S + (d + 2)] =
              phi.local(chart, std::span<const cplx>(w, 2));
        }
  return g;
}

std::vector<double> ma_density(const ChartGrid& g) {
  require_surface(g.space);
  const int n = g.n;
  if (n < 1 || g.u.size() != static_cast<std::size_t>(g.stride()) * g.stride() * g.stride() * g.stride())
    throw PrecondError("chart grid is not sampled");
  std::vector<double> out(static_cast<std::size_t>(n) * n * n * n, std::numeric_limits<double>::quiet_NaN());
  std::vector<PreparedBall> prepared;
  for (const auto& b : g.excluded) prepared.push_back(prepare(b.center, b.radius));
  bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          cplx w[2] = {cplx(g.coord(a), g.coord(b)), cplx(g.coord(c), g.coord(d))};
          bool skip = false;
          for (const auto& pb : prepared) skip = skip || in_prepared(pb, g.chart, w);
          if (skip) continue;
          auto u = [&](int da, int db, int dc, int dd) { return g.at(a + da, b + db, c + dc, d + dd); };
          double dens = kDetConstant * hessian(u, g.h).det();
          if (!std::isfinite(dens)) bad = true;
          out[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d] = dens;
        }
  if (bad) throw NumericalError("non-finite potential values inside the stencil support");
  return out;
}

double density_at(const Evaluable& phi, int chart, std::span<const cplx> w, double h) {
  require_surface(phi.space());
  if (w.size() != 2) throw PrecondError("density_at needs two affine coordinates");
  auto u = [&](int da, int db, int dc, int dd) {
    cplx v[2] = {w[0] + cplx(da * h, db * h), w[1] + cplx(dc * h, dd * h)};
    return phi.local(chart, std::span<const cplx>(v, 2));
  };
  double dens = kDetConstant * hessian(u, h).det();
  if (!std::isfinite(dens)) throw NumericalError("non-finite potential values inside the stencil support");
  return dens;
}

double chart_jacobian2(Space s, int from, int to, std::span<const cplx> w) {
  require_surface(s);
  auto J = transition_jacobian(s, from, to, w);
  return std::norm(J[0] * J[3] - J[1] * J[2]);
}

double chart_weight(Space s, std::span<const cplx> w) {
  // bump of |z_j|^2 / |z|^2, vanishing below 1 / (1 + R^2) with R the support radius
  const double t0 = 1 / (1 + kWeightSupport * kWeightSupport);
  auto g = [&](double t) { return t > t0 ? std::exp(-1 / (t - t0)) : 0.0; };
  if (s == Space::P1xP1) {
    double out = 1;
    for (const auto& v : w) {
      const double q = std::norm(v), own = g(1 / (1 + q));
      out *= own == 0 ? 0.0 : own / (own + g(q / (1 + q)));
    }
    return out;
  }
  double norm2 = 1;
  for (const auto& v : w) norm2 += std::norm(v);
  const double own = g(1 / norm2);
  if (own == 0) return 0.0;
  double sum = own;
  for (const auto& v : w) sum += g(std::norm(v) / norm2);
  return own / sum;
}

double ball_flux(const Evaluable& phi, const Ball& b, int samples, std::uint64_t seed) {
  require_surface(phi.space());
  if (b.center.space != phi.space()) throw PrecondError("ball and potential live on different spaces");
  if (!(b.radius > 0) || b.radius > 0.5) throw PrecondError("flux radius must lie in (0, 0.5]");
  if (samples < 64) throw PrecondError("flux needs at least 64 samples");
  const int chart = best_chart(b.center);
  const auto c = to_chart(b.center, chart);
  const double r = b.radius, step = r / 64;
  const auto dirs = sphere_directions(2, samples, seed);
  std::vector<double> vals(samples);
  int bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad)
  for (int i = 0; i < samples; ++i) {
    const cplx z1 = r * dirs[i][0], z2 = r * dirs[i][1];
    const cplx p1 = c[0] + z1, p2 = c[1] + z2;
    auto u = [&](int da, int db, int dc, int dd) {
      cplx v[2] = {p1 + cplx(da * step, db * step), p2 + cplx(dc * step, dd * step)};
      return phi.local(chart, std::span<const cplx>(v, 2));
    };
    const Hess H = hessian(u, step);
    const auto g = gradient(u, step);
    const cplx a21 = std::conj(H.a12);
    // Re[z1 B2 - z2 B1] with B1 = u_1 u_{2 1bar} - u_2 u_{1 1bar}, B2 = u_1 u_{2 2bar} - u_2 u_{1 2bar}
    const cplx B1 = g[0] * a21 - g[1] * H.a11;
    const cplx B2 = g[0] * H.a22 - g[1] * H.a12;
    vals[i] = std::real(z1 * B2 - z2 * B1);
    if (!std::isfinite(vals[i])) ++bad;
  }
  if (bad) throw NumericalError("potential is not finite on the flux sphere");
  double sum = 0;
  for (double v : vals) sum += v;
  return 4 * r * r * sum / samples;
}

MAReport ma_report(const Evaluable& phi, const std::vector<ProjPoint>& poles, const GridParams& gp) {
  const Space s = phi.space();
  require_surface(s);
  if (!(gp.ball_radius > 0)) throw PrecondError("ball radius must be positive");
  grid_points(gp.box, gp.h);
  for (const auto& p : poles)
    if (p.space != s) throw PrecondError("pole lives on another space");
  MAReport rep;
  rep.space = s;
  rep.volume = to_double(volume(phi.kclass()));
  rep.params = gp;

  // stencils reach 2 sqrt(2) h, so retained points stay clear of the poles
  const double radius = std::max(gp.ball_radius, 4 * gp.h);
  if (!poles.empty() && radius > 0.5)
    throw PrecondError("excluded ball radius must not exceed 0.5 (grid spacing at most 0.125 with poles)");
  std::vector<PreparedBall> prepared;
  for (const auto& p : poles) prepared.push_back(prepare(p, radius));
  for (int k = 0; k < chart_count(s); ++k)
    for (std::size_t i = 0; i < poles.size(); ++i)
      for (std::size_t j = i + 1; j < poles.size(); ++j) {
        if (!prepared[i].present[k] || !prepared[j].present[k]) continue;
        const auto &ci = prepared[i].center_k[k], &cj = prepared[j].center_k[k];
        if (std::hypot(std::abs(ci[0] - cj[0]), std::abs(ci[1] - cj[1])) < 4 * radius)
          throw PrecondError("poles " + to_string(poles[i]) + " and " + to_string(poles[j]) +
                             " are closer than four ball radii");
      }

  rep.min_density = std::numeric_limits<double>::infinity();
  std::vector<double> shell(poles.size(), 0.0);
  for (int k = 0; k < chart_count(s); ++k) {
    auto cs = integrate_chart(phi, k, gp, prepared);
    rep.smooth_per_chart.push_back(cs.integral);
    rep.marginals.push_back(std::move(cs.marginal));
    rep.smooth += cs.integral;
    rep.min_density = std::min(rep.min_density, cs.min_density);
    rep.points += cs.points;
    rep.refined += cs.refined;
    for (std::size_t i = 0; i < poles.size(); ++i) shell[i] += cs.shell[i];
  }
  for (std::size_t i = 0; i < poles.size(); ++i) {
    PoleMass pm;
    pm.pole = poles[i];
    pm.radius = radius;
    pm.ball_mass = ball_flux(phi, Ball{poles[i], radius}, gp.flux_samples, gp.seed);
    pm.shell_mass = shell[i];
    // the shell has 15 times the volume of the ball
    pm.mass = (pm.ball_mass - pm.shell_mass / 15) / rep.volume;
    rep.atoms += pm.mass * rep.volume;
    rep.poles.push_back(pm);
  }
  rep.defect = rep.volume - rep.smooth - rep.atoms;
  if (rep.smooth > rep.volume * 1.02)
    throw NumericalError("smooth Monge-Ampere integral exceeds the class volume: input is not quasi-psh for its class?");
  return rep;
}

GreenCheck check_green(const Evaluable& phi, const MAReport& report, const std::vector<double>& weights) {
  if (weights.size() != report.poles.size()) throw PrecondError("one weight per pole expected");
  double total = 0;
  for (double w : weights) total += w;
  if (std::abs(total - 1) > 1e-9) throw PrecondError("pole weights must sum to 1");
  GreenCheck gc;
  gc.report = report;
  const double V = report.volume;
  if (report.smooth > 0.02 * V)
    gc.failures.push_back("smooth density integral " + std::to_string(report.smooth) + " exceeds 0.02 * volume");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto& pm = report.poles[i];
    if (std::abs(pm.mass - weights[i]) > 0.02)
      gc.failures.push_back("pole " + std::to_string(i + 1) + " " + to_string(pm.pole) + ": mass " +
                            std::to_string(pm.mass) + " differs from claimed " + std::to_string(weights[i]));
  }
  // boundedness away from the poles
  std::mt19937_64 rng(report.params.seed);
  std::normal_distribution<double> N(0, 1);
  const Space s = phi.space();
  gc.phi_min = std::numeric_limits<double>::infinity();
  gc.phi_max = -std::numeric_limits<double>::infinity();
  int bad = 0;
  for (int i = 0; i < 4000; ++i) {
    std::vector<cplx> z(hom_size(s));
    for (auto& v : z) v = {N(rng), N(rng)};
    auto p = ProjPoint::make(s, z);
    const int c = best_chart(p);
    auto w = to_chart(p, c);
    bool near = false;
    for (const auto& pm : report.poles) near = near || in_ball(Ball{pm.pole, pm.radius}, s, c, w);
    if (near) continue;
    double v = phi.phi(c, w);
    if (!std::isfinite(v)) {
      ++bad;
      continue;
    }
    gc.phi_min = std::min(gc.phi_min, v);
    gc.phi_max = std::max(gc.phi_max, v);
  }
  if (bad) gc.failures.push_back("potential is unbounded at " + std::to_string(bad) + " sampled points away from the poles");
  gc.pass = gc.failures.empty();
  return gc;
}

GreenCheck check_green(const Evaluable& phi, const std::vector<ProjPoint>& poles, const std::vector<double>& weights,
                       const GridParams& gp) {
  if (weights.size() != poles.size()) throw PrecondError("one weight per pole expected");
  double total = 0;
  for (double w : weights) total += w;
  if (std::abs(total - 1) > 1e-9) throw PrecondError("pole weights must sum to 1");
  return check_green(phi, ma_report(phi, poles, gp), weights);
}

}  // namespace pluripot
