#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pluripot/evaluable.hpp"

namespace pluripot {

/// (dd^c u)^2 = kDetConstant * det(u_{j kbar}) dV for d^c = (1/2 pi i)(d - dbar).
inline constexpr double kDetConstant = 8.0 / (M_PI * M_PI);

/// Ball of the given radius around a point, taken in the Euclidean coordinates of each chart.
struct Ball {
  ProjPoint center;
  double radius = 0;
};

/// True when the point with affine coordinates w in the chart lies in the ball.
bool in_ball(const Ball& b, Space s, int chart, std::span<const cplx> w);

/// Samples of the local potential u = rho + phi on the cube [-box, box]^4 of one chart,
/// with two extra cells on every side for the stencils.
struct ChartGrid {
  Space space = Space::P2;
  int chart = 0;
  double box = 3;
  double h = 0.1;
  int n = 0;  // integration points per axis
  std::vector<double> u;  // (n + 4)^4 samples, axis order (Re w1, Im w1, Re w2, Im w2)
  std::vector<Ball> excluded;

  int stride() const { return n + 4; }
  double coord(int i) const { return -box + i * h; }  // i in [-2, n + 1]
  double at(int a, int b, int c, int d) const;
};

ChartGrid sample_chart_grid(const Evaluable& phi, int chart, double box, double h, std::vector<Ball> excluded = {});

/// Density c det(u_{j kbar}) at the n^4 integration points; NaN inside excluded balls.
std::vector<double> ma_density(const ChartGrid& g);

/// Density at one point from fourth-order differences of step h.
double density_at(const Evaluable& phi, int chart, std::span<const cplx> w, double h);

/// |det d(w_to)/d(w_from)|^2 for the chart transition at w (given in chart `from`).
double chart_jacobian2(Space s, int from, int to, std::span<const cplx> w);

/// Charts carry weights supported in |w| <= kWeightSupport (per factor on P1xP1).
inline constexpr double kWeightSupport = 3.0;
/// Smooth partition-of-unity weight of a chart at affine coordinates w.
double chart_weight(Space s, std::span<const cplx> w);

/// Mass of (theta + dd^c phi)^2 inside the ball, from the boundary flux of d^c u ^ dd^c u.
double ball_flux(const Evaluable& phi, const Ball& b, int samples = 16384, std::uint64_t seed = 1);

struct GridParams {
  double h = 0.05;
  double box = 3.0;
  double ball_radius = 0.5;
  int flux_samples = 65536;
  std::uint64_t seed = 1;
};

struct PoleMass {
  ProjPoint pole;
  double radius = 0;     // excluded ball radius actually used
  double ball_mass = 0;  // flux at the ball radius
  double shell_mass = 0;  // grid mass between the radius and twice the radius, in the pole's own chart
  double mass = 0;        // atom divided by the volume: ball_mass minus the smooth part, extrapolated from the shell
};

struct MAReport {
  Space space = Space::P2;
  double volume = 1;
  GridParams params;
  std::vector<double> smooth_per_chart;
  std::vector<std::vector<double>> marginals;  // per chart: density integrated over all but Re w1
  double smooth = 0;  // grid integral outside the excluded balls
  std::vector<PoleMass> poles;
  double atoms = 0;   // sum of atoms
  double defect = 0;  // volume - smooth - atoms
  double min_density = 0;
  long points = 0;
  long refined = 0;  // points whose stencil was refined because the h-step differences disagreed
};

/// Smooth Monge-Ampere mass over all charts minus balls around the poles, plus pole fluxes.
MAReport ma_report(const Evaluable& phi, const std::vector<ProjPoint>& poles, const GridParams& gp = {});

struct GreenCheck {
  bool pass = false;
  std::vector<std::string> failures;
  MAReport report;
  double phi_min = 0;
  double phi_max = 0;
};

/// Checks that the Monge-Ampere measure is volume * sum_j m_j delta_{p_j}.
GreenCheck check_green(const Evaluable& phi, const std::vector<ProjPoint>& poles, const std::vector<double>& weights,
                       const GridParams& gp = {});
/// Same, reusing a report computed for the same potential and poles.
GreenCheck check_green(const Evaluable& phi, const MAReport& report, const std::vector<double>& weights);

}  // namespace pluripot
