#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pluripot/rational.hpp"

namespace pluripot {

/// Samples of a convex function of x = log r on a uniform grid.
struct RadialProfile {
  double x_min = 0;
  double x_max = 0;
  std::vector<double> w;
  double slope_at_minus_inf = 0;

  int size() const { return static_cast<int>(w.size()); }
  double dx() const { return (x_max - x_min) / (size() - 1); }
  double x(int i) const { return x_min + i * dx(); }
};

/// (1/2) c log(1 + e^{2x}) sampled on [x_min, x_max].
RadialProfile fs_radial_obstacle(double x_min, double x_max, int n, double c = 1.0);

/// Closed-form radial partial Green function with Lelong number gamma at the origin.
struct RadialGreen {
  double gamma = 0;
  double R = 0;  // tangency radius
  double C = 0;  // gamma log R + C = log sqrt(1 + R^2)

  /// Envelope as a function of r = ||z||.
  double V(double r) const;
  double psi(double r) const { return r >= R ? 0.0 : V(r) - 0.5 * std::log1p(r * r); }
  double w(double x) const { return V(std::exp(x)); }
  RadialProfile profile(double x_min, double x_max, int n) const;
};

RadialGreen radial_partial_green(double gamma, int n = 2);
/// The gamma = 1 limit: log(r / sqrt(1 + r^2)).
double radial_green_limit(double r);

/// Largest convex minorant of the obstacle with slope >= gamma at -inf.
RadialProfile radial_envelope(const RadialProfile& obstacle, double gamma);

struct DualProfile {
  double s_min = 0;
  double s_max = 0;
  std::vector<double> v;
  double ds() const { return (s_max - s_min) / (static_cast<int>(v.size()) - 1); }
  double s(int i) const { return s_min + i * ds(); }
};

/// f*(s) = max_x (s x - f(x)) over the grid, on a uniform dual grid.
DualProfile legendre(const RadialProfile& f, double s_min, double s_max, int ns);
/// Inverse transform back onto a primal grid.
RadialProfile legendre_inverse(const DualProfile& g, double x_min, double x_max, int nx);

/// Convex function of (x, y) = (log|z|, log|w|) on [-L, L]^2, with its moment polytope
/// [0,a] x [0,b] and the dual constraint s + t >= gamma (gamma = 0 means none).
struct ToricGrid {
  double L = 4;
  int n = 257;
  double a = 1;
  double b = 1;
  double gamma = 0;
  std::vector<double> w;  // row-major: w[i * n + j] at (x_i, y_j)
  std::vector<double> h;  // obstacle on the same grid

  double dx() const { return 2 * L / (n - 1); }
  double x(int i) const { return -L + i * dx(); }
  double at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
};

/// a/2 log(1+e^{2x}) + b/2 log(1+e^{2y}); w = h.
ToricGrid toric_fs_obstacle(double a, double b, double L = 4, int n = 257);

struct DualGrid {
  double a = 1;
  double b = 1;
  int n = 129;  // nodes per side, spanning [0,a] and [0,b]
  std::vector<double> v;
  double ds() const { return a / (n - 1); }
  double dt() const { return b / (n - 1); }
  double at(int i, int j) const { return v[static_cast<std::size_t>(i) * n + j]; }
};

/// Conjugate of the grid's w over the moment polytope.
DualGrid legendre(const ToricGrid& f, int nd = 129);

/// w = max over dual nodes (s,t) with s + t >= gamma of s x + t y - h*(s,t).
ToricGrid toric_envelope(const ToricGrid& obstacle, double gamma, int nd = 129);

struct ToricMasses {
  double dirac = 0;
  double boundary = 0;
  double interior = 0;
  double total = 0;
  double ambiguous_fraction = 0;
};

/// Monge-Ampere masses of w from the gradient image, classified against the obstacle.
ToricMasses toric_ma_masses(const ToricGrid& w, int nd = 128, double tol = 1e-2);

/// Closed form of the gamma = 1, a = b = 1 envelope: log(e^x + e^y) on x + y <= 0, the obstacle beyond.
double toric_green_closed_form(double x, double y);

}  // namespace pluripot
