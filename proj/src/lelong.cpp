#include "pluripot/lelong.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <boost/random/sobol.hpp>

namespace pluripot {

std::vector<std::vector<cplx>> sphere_directions(int m, int samples, std::uint64_t seed) {
  if (m != 1 && m != 2) throw PrecondError("sphere_directions: dimension 1 or 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<std::vector<cplx>> dirs;
  dirs.reserve(samples);
  if (m == 1) {
    // equispaced circle with a random rotation is optimal for periodic integrands
    double shift = U(rng);
    for (int i = 0; i < samples; ++i) dirs.push_back({std::polar(1.0, 2 * M_PI * (i + shift) / samples)});
    return dirs;
  }
  double shift[3] = {U(rng), U(rng), U(rng)};
  boost::random::sobol gen(3);
  const double scale = 1.0 / (static_cast<double>(gen.max()) + 1.0);
  for (int i = 0; i < samples; ++i) {
    double u[3];
    for (double& x : u) x = static_cast<double>(gen()) * scale;
    for (int k = 0; k < 3; ++k) u[k] = std::fmod(u[k] + shift[k], 1.0);
    // |z1|^2 is uniform on [0,1] for the uniform measure on S^3
    double s = u[0];
    dirs.push_back({std::polar(std::sqrt(s), 2 * M_PI * u[1]), std::polar(std::sqrt(1 - s), 2 * M_PI * u[2])});
  }
  return dirs;
}

SphereMean sphere_stats(const Evaluable& phi, const ProjPoint& center, double r, int samples, std::uint64_t seed) {
  if (samples < 64) throw PrecondError("sphere_mean needs at least 64 samples");
  if (!(r > 0) || r > 0.5) throw PrecondError("sphere radius must lie in (0, 0.5]");
  if (center.space != phi.space()) throw PrecondError("center and potential live on different spaces");
  const int chart = best_chart(center);
  const auto c = to_chart(center, chart);
  const int m = affine_dim(center.space);
  const auto dirs = sphere_directions(m, samples, seed);
  std::vector<double> vals(samples);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < samples; ++i) {
    cplx w[2];
    for (int k = 0; k < m; ++k) w[k] = c[k] + r * dirs[i][k];
    vals[i] = phi.phi(chart, std::span<const cplx>(w, m));
  }
  SphereMean out;
  out.max = -std::numeric_limits<double>::infinity();
  double sum = 0;
  int finite = 0;
  for (double v : vals) {
    if (std::isinf(v) && v < 0) {
      ++out.neg_inf;
      continue;
    }
    if (!std::isfinite(v)) throw NumericalError("potential returned a non-finite value on the sphere");
    sum += v;
    out.max = std::max(out.max, v);
    ++finite;
  }
  if (finite == 0) throw NumericalError("all sphere samples are -inf: the pole set meets the sphere");
  if (out.neg_inf > samples / 100)
    throw NumericalError("more than 1% of sphere samples are -inf: the pole set meets the sphere");
  out.mean = sum / finite;
  return out;
}

double sphere_mean(const Evaluable& phi, const ProjPoint& center, double r, int samples, std::uint64_t seed) {
  return sphere_stats(phi, center, r, samples, seed).mean;
}

LelongEstimate lelong_estimate(const Evaluable& phi, const ProjPoint& center, const LelongOptions& opt) {
  if (opt.levels < 4) throw PrecondError("lelong_estimate needs at least 4 levels");
  if (!(opt.r0 > 0) || opt.r0 > 0.5) throw PrecondError("r0 must lie in (0, 0.5]");
  LelongEstimate est;
  est.max_variant = opt.use_max;
  for (int j = 0; j < opt.levels; ++j) {
    double r = opt.r0 * std::ldexp(1.0, -j);
    // the same directions at every level keep the quadrature error correlated across radii
    auto s = sphere_stats(phi, center, r, opt.samples, opt.seed);
    est.radii.push_back(r);
    est.means.push_back(opt.use_max ? s.max : s.mean);
    est.neg_inf.push_back(s.neg_inf);
  }
  for (int j = 0; j + 1 < opt.levels; ++j)
    est.secants.push_back((est.means[j + 1] - est.means[j]) / (std::log(est.radii[j + 1]) - std::log(est.radii[j])));
  // least squares over the deepest half
  const int first = opt.levels / 2;
  const int n = opt.levels - first;
  double mx = 0, my = 0;
  for (int j = first; j < opt.levels; ++j) {
    mx += std::log(est.radii[j]);
    my += est.means[j];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int j = first; j < opt.levels; ++j) {
    double dx = std::log(est.radii[j]) - mx;
    sxx += dx * dx;
    sxy += dx * (est.means[j] - my);
  }
  est.slope = sxy / sxx;
  double ssr = 0;
  for (int j = first; j < opt.levels; ++j) {
    double res = est.means[j] - my - est.slope * (std::log(est.radii[j]) - mx);
    ssr += res * res;
  }
  est.std_error = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  if (!std::isfinite(est.slope)) throw NumericalError("Lelong slope is not finite");
  return est;
}

}  // namespace pluripot
