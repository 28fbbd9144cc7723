#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pluripot/rational.hpp"

namespace pluripot {

enum class Space { P1, P2, P1xP1 };

std::string to_string(Space s);
Space parse_space(std::string_view s);

int factor_count(Space s);
/// Number of homogeneous coordinates of factor f.
int factor_size(Space s, int f);
/// Total homogeneous coordinates (2, 3 or 4).
int hom_size(Space s);
/// Complex dimension; also the number of affine chart coordinates.
int affine_dim(Space s);
int chart_count(Space s);

/// Point of P1, P2 or P1xP1. Coordinates are stored flat, factor after factor.
struct ProjPoint {
  Space space = Space::P2;
  std::vector<cplx> z;
  std::optional<std::vector<GaussQ>> exact;

  static ProjPoint make(Space s, std::vector<cplx> coords);
  static ProjPoint make_exact(Space s, std::vector<GaussQ> coords);

  /// Each factor rescaled so its largest-modulus coordinate equals 1.
  ProjPoint normalized() const;
  bool approx_equal(const ProjPoint& o, double tol = 1e-12) const;
  bool operator==(const ProjPoint& o) const { return approx_equal(o); }
};

std::string to_string(const ProjPoint& p);

/// Affine coordinates of p in the given chart. Throws if p is outside the chart.
std::vector<cplx> to_chart(const ProjPoint& p, int chart);
ProjPoint from_chart(Space s, int chart, std::span<const cplx> w);
/// Homogeneous representative with value 1 at the chart coordinates; no allocation.
void chart_embed(Space s, int chart, std::span<const cplx> w, std::span<cplx> z_out);
/// Chart in which p has the largest coordinates equal to 1 (per factor).
int best_chart(const ProjPoint& p);
/// Indices of the coordinates set to 1 by the chart, one per factor.
std::vector<int> chart_indices(Space s, int chart);

/// Multiple of alpha_n on Pn, or (a, b) on P1xP1.
struct KClass {
  Space space = Space::P2;
  std::vector<Rational> coef;

  static KClass pn(Space s, Rational c);
  static KClass p1p1(Rational a, Rational b);
  bool kahler() const;
  std::vector<double> weights() const;
};

/// Local potential of the reference form; 0 at the chart origin.
double fs_potential(const KClass& k, int chart, std::span<const cplx> w);
/// Unchecked variant with the class weights already converted (one per factor).
double fs_potential(Space s, std::span<const double> weights, std::span<const cplx> w);
double chordal_distance(const ProjPoint& p, const ProjPoint& q);
Rational volume(const KClass& k);

struct Indicators {
  Rational nu;
  Rational eps;
};
Indicators indicators(const KClass& k, const ProjPoint& p);

/// eps <= vol^{1/n} <= nu, compared exactly via eps^n <= vol <= nu^n.
bool seshadri_chain_holds(const KClass& k, const Indicators& ind);

}  // namespace pluripot
