#include "pluripot/roots.hpp"

#include <Eigen/Eigenvalues>

namespace pluripot {

std::vector<cplx> poly_roots(std::vector<cplx> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  for (auto& r : roots) {
    for (int it = 0; it < 20; ++it) {
      cplx p = c[n], dp = 0;
      for (int k = n - 1; k >= 0; --k) {
        dp = dp * r + p;
        p = p * r + c[k];
      }
      if (dp == 0.0) break;
      cplx step = p / dp;
      r -= step;
      if (std::abs(step) <= 1e-15 * (1 + std::abs(r))) break;
    }
  }
  return roots;
}

bool snap_gauss(cplx z, long max_den, double tol, GaussQ& out) {
  Rational re, im;
  if (!snap_rational(z.real(), max_den, tol, re)) return false;
  if (!snap_rational(z.imag(), max_den, tol, im)) return false;
  out = GaussQ(re, im);
  return true;
}

}  // namespace pluripot
