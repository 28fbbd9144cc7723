#include "pluripot/potential_json.hpp"

namespace pluripot {

namespace {

Rational rational_field(const json& j, const char* key, const char* fallback = "0") {
  if (!j.contains(key)) return parse_rational(fallback);
  if (!j.at(key).is_string()) throw PrecondError(std::string("field '") + key + "' must be an exact rational string");
  return parse_rational(j.at(key).get<std::string>());
}

std::vector<int> exponents_field(const json& j) {
  if (!j.contains("exponents") || !j.at("exponents").is_array()) throw PrecondError("term without 'exponents'");
  std::vector<int> e;
  for (const auto& x : j.at("exponents")) {
    if (!x.is_number_integer() || x.get<long>() < 0) throw PrecondError("exponents must be nonnegative integers");
    e.push_back(x.get<int>());
  }
  return e;
}

}  // namespace

json poly_to_json(const SparsePoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exponents", e}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  return terms;
}

SparsePoly poly_from_json(const json& j, const std::vector<int>& groups) {
  if (!j.is_array() || j.empty()) throw PrecondError("a polynomial is a nonempty list of terms");
  std::vector<std::pair<Exponent, GaussQ>> terms;
  for (const auto& t : j) {
    if (!t.is_object()) throw PrecondError("polynomial term must be an object");
    terms.emplace_back(exponents_field(t), GaussQ(rational_field(t, "re"), rational_field(t, "im")));
  }
  return SparsePoly::from_terms(groups, std::move(terms));
}

json potential_to_json(const LogNormPotential& phi) {
  json comps = json::array();
  for (const auto& c : phi.components()) comps.push_back(poly_to_json(c));
  json refs = json::array();
  for (const auto& r : phi.ref_weights()) refs.push_back(to_string(r));
  json monos = json::array();
  for (const auto& m : phi.monomials()) monos.push_back({{"weight", to_string(m.weight)}, {"exponents", m.exponents}});
  return {{"space", to_string(phi.space_tag())},
          {"scale_den", to_string(Rational(1) / phi.scale())},
          {"ref_weights", refs},
          {"components", comps},
          {"monomial_terms", monos}};
}

LogNormPotential potential_from_json(const json& j) {
  if (!j.is_object()) throw PrecondError("potential must be a JSON object");
  for (const char* k : {"space", "scale_den", "ref_weights", "components"})
    if (!j.contains(k)) throw PrecondError(std::string("potential is missing '") + k + "'");
  Space s = parse_space(j.at("space").get<std::string>());
  auto groups = space_groups(s);
  Rational den = rational_field(j, "scale_den");
  if (den <= 0) throw PrecondError("scale_den must be positive");
  std::vector<Rational> refs;
  for (const auto& r : j.at("ref_weights")) {
    if (!r.is_string()) throw PrecondError("ref_weights must be rational strings");
    refs.push_back(parse_rational(r.get<std::string>()));
  }
  const json& cj = j.at("components");
  if (!cj.is_array() || cj.empty()) throw PrecondError("components must be a nonempty list");
  std::vector<SparsePoly> comps;
  if (cj.front().is_object()) {
    comps.push_back(poly_from_json(cj, groups));  // a single component given as a flat term list
  } else {
    for (const auto& c : cj) comps.push_back(poly_from_json(c, groups));
  }
  std::vector<MonomialTerm> monos;
  if (j.contains("monomial_terms"))
    for (const auto& m : j.at("monomial_terms")) monos.push_back({rational_field(m, "weight"), exponents_field(m)});
  LogNormPotential phi(s, comps, Rational(1) / den, refs, monos);
  if (j.contains("poles")) {
    std::vector<ProjPoint> poles;
    for (const auto& p : j.at("poles")) poles.push_back(point_from_json(p, s));
    phi.poles = std::move(poles);
  }
  return phi;
}

ProjPoint point_from_json(const json& j, Space s) {
  if (!j.is_array()) throw PrecondError("a point is a list of coordinates");
  bool exact = true;
  std::vector<GaussQ> q;
  std::vector<cplx> z;
  for (const auto& c : j) {
    if (c.is_string()) {
      Rational r = parse_rational(c.get<std::string>());
      q.emplace_back(r);
      z.emplace_back(to_double(r), 0.0);
    } else if (c.is_number()) {
      exact = false;
      z.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_object()) {
      const json& re = c.value("re", json("0"));
      const json& im = c.value("im", json("0"));
      if (re.is_string() && im.is_string()) {
        GaussQ g(parse_rational(re.get<std::string>()), parse_rational(im.get<std::string>()));
        q.push_back(g);
        z.push_back(g.to_complex());
      } else {
        exact = false;
        z.emplace_back(re.is_string() ? to_double(parse_rational(re.get<std::string>())) : re.get<double>(),
                       im.is_string() ? to_double(parse_rational(im.get<std::string>())) : im.get<double>());
      }
    } else {
      throw PrecondError("invalid coordinate in point");
    }
  }
  return exact ? ProjPoint::make_exact(s, q) : ProjPoint::make(s, z);
}

json point_to_json(const ProjPoint& p) {
  json out = json::array();
  for (std::size_t i = 0; i < p.z.size(); ++i) {
    if (p.exact) {
      const auto& g = (*p.exact)[i];
      out.push_back(g.im == 0 ? json(to_string(g.re)) : json{{"re", to_string(g.re)}, {"im", to_string(g.im)}});
    } else {
      out.push_back(json{{"re", p.z[i].real()}, {"im", p.z[i].imag()}});
    }
  }
  return out;
}

}  // namespace pluripot
