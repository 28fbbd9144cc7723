#pragma once

#include <vector>

#include "pluripot/rational.hpp"

namespace pluripot {

/// Roots of sum_k c[k] x^k (coefficients low to high), Newton-polished.
/// Trailing zero coefficients are trimmed; a constant has no roots.
std::vector<cplx> poly_roots(std::vector<cplx> c);

/// Snaps both parts to small-denominator fractions when within tol.
bool snap_gauss(cplx z, long max_den, double tol, GaussQ& out);

}  // namespace pluripot
