#pragma once

#include <cstdint>
#include <vector>

#include "pluripot/evaluable.hpp"

namespace pluripot {

/// Unit vectors on S^(2m-1) in C^m (m = 1 or 2) from a shifted Sobol sequence.
std::vector<std::vector<cplx>> sphere_directions(int m, int samples, std::uint64_t seed);

struct SphereMean {
  double mean = 0;
  double max = 0;
  int neg_inf = 0;  // excluded samples
};

/// Mean of phi over the sphere of radius r around the center, in the center's chart.
SphereMean sphere_stats(const Evaluable& phi, const ProjPoint& center, double r, int samples, std::uint64_t seed = 1);
double sphere_mean(const Evaluable& phi, const ProjPoint& center, double r, int samples, std::uint64_t seed = 1);

struct LelongEstimate {
  double slope = 0;
  double std_error = 0;
  std::vector<double> radii;
  std::vector<double> means;
  std::vector<double> secants;  // between consecutive levels
  std::vector<int> neg_inf;
  bool max_variant = false;
};

struct LelongOptions {
  double r0 = 0.1;
  int levels = 8;
  int samples = 4096;
  std::uint64_t seed = 1;
  /// Regress sphere maxima instead of means.
  bool use_max = false;
};

LelongEstimate lelong_estimate(const Evaluable& phi, const ProjPoint& center, const LelongOptions& opt = {});

}  // namespace pluripot
