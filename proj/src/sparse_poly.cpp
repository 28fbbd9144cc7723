#include "pluripot/sparse_poly.hpp"

#include <algorithm>
#include <numeric>

namespace pluripot {

SparsePoly::SparsePoly(std::vector<int> groups, std::vector<int> degrees)
    : nvars_(std::accumulate(groups.begin(), groups.end(), 0)),
      groups_(std::move(groups)),
      degrees_(std::move(degrees)) {
  if (degrees_.size() != groups_.size()) throw PrecondError("one declared degree per variable group required");
  for (int g : groups_)
    if (g <= 0) throw PrecondError("variable groups must be nonempty");
}

SparsePoly SparsePoly::ungraded(int nvars) {
  SparsePoly p;
  p.nvars_ = nvars;
  return p;
}

std::vector<int> SparsePoly::degrees_of(const Exponent& e) const {
  std::vector<int> d(groups_.size(), 0);
  int v = 0;
  for (std::size_t g = 0; g < groups_.size(); ++g)
    for (int k = 0; k < groups_[g]; ++k) d[g] += e[v++];
  return d;
}

SparsePoly SparsePoly::from_terms(std::vector<int> groups, std::vector<std::pair<Exponent, GaussQ>> terms) {
  SparsePoly p;
  p.nvars_ = std::accumulate(groups.begin(), groups.end(), 0);
  p.groups_ = std::move(groups);
  for (auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != p.nvars_) throw PrecondError("exponent vector has wrong length");
    for (int k : e)
      if (k < 0) throw PrecondError("negative exponent");
    if (p.graded()) {
      auto d = p.degrees_of(e);
      if (p.degrees_.empty()) p.degrees_ = d;
      if (d != p.degrees_) throw PrecondError("polynomial is not homogeneous in its variable groups");
    }
    p.add_term(e, c);
  }
  if (p.graded() && p.degrees_.empty()) throw PrecondError("cannot infer the degree of an empty polynomial");
  return p;
}

SparsePoly SparsePoly::monomial(std::vector<int> groups, Exponent e, GaussQ c) {
  return from_terms(std::move(groups), {{std::move(e), std::move(c)}});
}

SparsePoly SparsePoly::variable(std::vector<int> groups, int var) {
  int n = std::accumulate(groups.begin(), groups.end(), 0);
  Exponent e(n, 0);
  e.at(var) = 1;
  return monomial(std::move(groups), std::move(e));
}

void SparsePoly::add_term(const Exponent& e, const GaussQ& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  if (groups_ != o.groups_ || nvars_ != o.nvars_) throw PrecondError("adding polynomials in different variables");
  if (graded() && degrees_ != o.degrees_) throw PrecondError("adding polynomials of different degrees");
  SparsePoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + o * GaussQ(-1); }

SparsePoly SparsePoly::operator*(const GaussQ& c) const {
  SparsePoly r = *this;
  r.terms_.clear();
  if (c.is_zero()) return r;
  for (const auto& [e, a] : terms_) r.terms_.emplace(e, a * c);
  return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  if (groups_ != o.groups_ || nvars_ != o.nvars_) throw PrecondError("multiplying polynomials in different variables");
  SparsePoly r = *this;
  r.terms_.clear();
  for (std::size_t g = 0; g < degrees_.size(); ++g) r.degrees_[g] += o.degrees_[g];
  Exponent e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (int v = 0; v < nvars_; ++v) e[v] = ea[v] + eb[v];
      r.add_term(e, ca * cb);
    }
  return r;
}

SparsePoly SparsePoly::pow(int k) const {
  if (k < 0) throw PrecondError("negative power");
  SparsePoly r = graded() ? SparsePoly(groups_, std::vector<int>(groups_.size(), 0)) : ungraded(nvars_);
  r.add_term(Exponent(nvars_, 0), GaussQ(1));
  SparsePoly b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

SparsePoly SparsePoly::substitute(const std::vector<SparsePoly>& images) const {
  if (static_cast<int>(images.size()) != nvars_) throw PrecondError("substitute: one image per variable required");
  const auto& og = images.front().groups();
  int on = images.front().nvars();
  for (const auto& im : images)
    if (im.groups() != og || im.nvars() != on) throw PrecondError("substitute: images use different variables");
  SparsePoly unit = og.empty() ? ungraded(on) : SparsePoly(og, std::vector<int>(og.size(), 0));
  unit.add_term(Exponent(on, 0), GaussQ(1));

  std::vector<std::vector<SparsePoly>> powers(nvars_);
  auto power = [&](int v, int k) -> const SparsePoly& {
    auto& pv = powers[v];
    if (pv.empty()) pv.push_back(unit);
    while (static_cast<int>(pv.size()) <= k) pv.push_back(pv.back() * images[v]);
    return pv[k];
  };

  SparsePoly r = unit * GaussQ(0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    SparsePoly t = unit * c;
    for (int v = 0; v < nvars_; ++v)
      if (e[v]) t = t * power(v, e[v]);
    if (first) {
      r = t * GaussQ(0);
      first = false;
    }
    r = r + t;
  }
  if (first && !og.empty()) {
    int v = 0;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      for (std::size_t h = 0; h < og.size(); ++h) r.degrees_[h] += degrees_[g] * images[v].degrees()[h];
      v += groups_[g];
    }
  }
  return r;
}

GaussQ SparsePoly::eval(std::span<const GaussQ> x) const {
  if (static_cast<int>(x.size()) != nvars_) throw PrecondError("eval: wrong number of coordinates");
  GaussQ s(0);
  for (const auto& [e, c] : terms_) {
    GaussQ t = c;
    for (int v = 0; v < nvars_; ++v)
      if (e[v]) t *= pluripot::pow(x[v], e[v]);
    s += t;
  }
  return s;
}

cplx SparsePoly::eval(std::span<const cplx> x) const {
  if (static_cast<int>(x.size()) != nvars_) throw PrecondError("eval: wrong number of coordinates");
  cplx s = 0;
  for (const auto& [e, c] : terms_) {
    cplx t = c.to_complex();
    for (int v = 0; v < nvars_; ++v)
      for (int k = 0; k < e[v]; ++k) t *= x[v];
    s += t;
  }
  return s;
}

int SparsePoly::min_total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = std::accumulate(e.begin(), e.end(), 0);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

int SparsePoly::max_exponent(int var) const {
  int m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, e.at(var));
  return m;
}

int SparsePoly::min_exponent(int var) const {
  int m = -1;
  for (const auto& [e, c] : terms_)
    if (m < 0 || e.at(var) < m) m = e[var];
  return std::max(m, 0);
}

bool SparsePoly::divide_monomial(const Exponent& d, SparsePoly& out) const {
  if (static_cast<int>(d.size()) != nvars_) throw PrecondError("divide_monomial: wrong exponent length");
  SparsePoly r = *this;
  r.terms_.clear();
  if (graded()) {
    auto dd = degrees_of(d);
    for (std::size_t g = 0; g < dd.size(); ++g) r.degrees_[g] -= dd[g];
  }
  for (const auto& [e, c] : terms_) {
    Exponent q(nvars_);
    for (int v = 0; v < nvars_; ++v) {
      q[v] = e[v] - d[v];
      if (q[v] < 0) return false;
    }
    r.terms_.emplace(std::move(q), c);
  }
  out = std::move(r);
  return true;
}

SparsePoly SparsePoly::derivative(int var) const {
  SparsePoly r = *this;
  r.terms_.clear();
  if (graded()) {
    int v = 0;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (var >= v && var < v + groups_[g]) r.degrees_[g] -= 1;
      v += groups_[g];
    }
  }
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, c * GaussQ(Rational(e[var])));
  }
  return r;
}

SparsePoly SparsePoly::regraded(std::vector<int> groups) const {
  std::vector<std::pair<Exponent, GaussQ>> t(terms_.begin(), terms_.end());
  return from_terms(std::move(groups), std::move(t));
}

CompiledPoly::CompiledPoly(const SparsePoly& p) : nvars(p.nvars()) {
  for (const auto& [e, c] : p.terms()) {
    for (int v = 0; v < nvars; ++v) {
      exps.push_back(e[v]);
      max_exp = std::max(max_exp, e[v]);
    }
    coef.push_back(c.to_complex());
  }
}

cplx CompiledPoly::eval_powers(const cplx* pw) const {
  cplx s = 0;
  const int stride = max_exp + 1;
  const int* e = exps.data();
  for (std::size_t t = 0; t < coef.size(); ++t, e += nvars) {
    cplx m = coef[t];
    for (int v = 0; v < nvars; ++v)
      if (e[v]) m *= pw[v * stride + e[v]];
    s += m;
  }
  return s;
}

}  // namespace pluripot
