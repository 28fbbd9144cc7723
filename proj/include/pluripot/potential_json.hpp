#pragma once

#include <json.hpp>

#include "pluripot/potential.hpp"

namespace pluripot {

using json = nlohmann::json;

/// Terms as [{"exponents": [...], "re": "p/q", "im": "p/q"}, ...].
json poly_to_json(const SparsePoly& p);
SparsePoly poly_from_json(const json& j, const std::vector<int>& groups);

/// {"space", "scale_den", "ref_weights", "components": [[term, ...], ...], "monomial_terms": [...]}
json potential_to_json(const LogNormPotential& phi);
LogNormPotential potential_from_json(const json& j);

/// A point as a list of coordinates; each coordinate is a rational string,
/// a number, or {"re": ..., "im": ...}. Exact when every entry is a string.
ProjPoint point_from_json(const json& j, Space s);
json point_to_json(const ProjPoint& p);

}  // namespace pluripot
