#include <doctest.h>

#include <cmath>
#include <map>

#include "pluripot/envelope.hpp"

using namespace pluripot;

namespace {

// Conjugate of (1/2) log(1 + e^{2x}) on [0, 1], solved by hand.
double fs_conjugate(double s) {
  auto xlogx = [](double u) { return u > 0 ? u * std::log(u) : 0.0; };
  return 0.5 * (xlogx(s) + xlogx(1 - s));
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool convex_nondecreasing(const RadialProfile& p, double slope_max) {
  for (int i = 1; i + 1 < p.size(); ++i)
    if (p.w[i + 1] - 2 * p.w[i] + p.w[i - 1] < -1e-9) return false;
  for (int i = 0; i + 1 < p.size(); ++i) {
    double s = (p.w[i + 1] - p.w[i]) / p.dx();
    if (s < -1e-9 || s > slope_max + 1e-9) return false;
  }
  return true;
}

const ToricGrid& fs11() {
  static const ToricGrid g = toric_fs_obstacle(1, 1);
  return g;
}

const ToricGrid& env11(double gamma) {
  static std::map<double, ToricGrid> cache;
  auto it = cache.find(gamma);
  if (it == cache.end()) it = cache.emplace(gamma, toric_envelope(fs11(), gamma)).first;
  return it->second;
}

}  // namespace

TEST_CASE("radial partial Green closed form") {
  auto g = radial_partial_green(0.5);
  CHECK(g.R == doctest::Approx(1.0));
  CHECK(g.C == doctest::Approx(0.5 * std::log(2.0)));
  // the two defining equations at the tangency radius
  for (double gamma : {0.1, 0.3, 0.5, 0.8, 0.95}) {
    auto h = radial_partial_green(gamma, 2);
    CHECK(gamma * std::log(h.R) + h.C == doctest::Approx(0.5 * std::log1p(h.R * h.R)));
    CHECK(h.R * h.R / (1 + h.R * h.R) == doctest::Approx(gamma));
    for (double r : {h.R, 1.5 * h.R, 10 * h.R, 1e3}) CHECK(h.psi(r) == 0.0);
    for (double r : {1e-3, 0.1 * h.R, 0.9 * h.R}) CHECK(h.psi(r) < 0);
    CHECK(h.profile(-6, 6, 200).slope_at_minus_inf == gamma);
  }
  auto near1 = radial_partial_green(1 - 1e-9);
  for (double r : {1e-3, 0.5, 1.0, 2.0, 50.0})
    CHECK(near1.psi(r) == doctest::Approx(radial_green_limit(r)).epsilon(1e-6).scale(1));
  CHECK(radial_green_limit(1.0) == doctest::Approx(-0.5 * std::log(2.0)));
  CHECK_THROWS_AS(radial_partial_green(0.0), PrecondError);
  CHECK_THROWS_AS(radial_partial_green(1.0), PrecondError);
  CHECK_THROWS_AS(radial_partial_green(-0.5), PrecondError);
}

TEST_CASE("radial envelope of the Fubini-Study obstacle") {
  auto obs = fs_radial_obstacle(-8, 8, 4096);
  auto env = radial_envelope(obs, 0.5);
  auto closed = radial_partial_green(0.5).profile(-8, 8, 4096);
  CHECK(sup_diff(env.w, closed.w) <= 1e-6);
  CHECK(sup_diff(env.w, closed.w) <= obs.dx() * obs.dx());
  CHECK(convex_nondecreasing(env, 1.0));
  CHECK(env.slope_at_minus_inf == 0.5);
  for (double gamma : {0.05, 0.2, 0.7, 0.9}) {
    auto e = radial_envelope(obs, gamma);
    auto c = radial_partial_green(gamma).profile(-8, 8, 4096);
    CHECK(sup_diff(e.w, c.w) <= obs.dx() * obs.dx());
    for (int i = 0; i < obs.size(); ++i) CHECK(e.w[i] <= obs.w[i] + 1e-15);
  }
  // the constraint becomes vacuous as gamma goes to 0
  double prev = 1;
  for (double gamma : {1e-2, 1e-3, 1e-4, 1e-5}) {
    double d = sup_diff(radial_envelope(obs, gamma).w, obs.w);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("radial envelope edge cases") {
  RadialProfile line{-3, 3, std::vector<double>(101), 0};
  for (int i = 0; i < 101; ++i) line.w[i] = 0.5 * line.x(i) + 2;
  auto e = radial_envelope(line, 0.5);
  CHECK(sup_diff(e.w, line.w) <= 1e-12);
  // slope stays below gamma
  CHECK_THROWS_AS(radial_envelope(fs_radial_obstacle(-8, -4, 100), 0.5), NumericalError);
  CHECK_THROWS_AS(radial_envelope(fs_radial_obstacle(-8, 8, 100, 0.5), 0.7), NumericalError);
  CHECK_THROWS_AS(radial_envelope(fs_radial_obstacle(-8, 8, 100), 0.0), PrecondError);
  // a nonconvex obstacle is replaced by its convex minorant first
  RadialProfile bump = fs_radial_obstacle(-6, 6, 601);
  for (int i = 0; i < bump.size(); ++i) bump.w[i] += 0.3 * std::exp(-bump.x(i) * bump.x(i) * 4);
  auto eb = radial_envelope(bump, 0.3);
  CHECK(convex_nondecreasing(eb, 1.0));
  for (int i = 0; i < bump.size(); ++i) CHECK(eb.w[i] <= bump.w[i] + 1e-12);
}

TEST_CASE("one-dimensional Legendre transform") {
  auto f = fs_radial_obstacle(-12, 12, 4001);
  auto g = legendre(f, 0, 1, 101);
  CHECK(std::abs(g.v[50] + 0.5 * std::log(2.0)) < 1e-4);
  CHECK(std::abs(g.v[0]) < 1e-9);
  for (int j = 0; j < 101; ++j) CHECK(std::abs(g.v[j] - fs_conjugate(g.s(j))) < 1e-4);
  // Fenchel-Moreau on the grid
  auto ff = legendre_inverse(legendre(f, 0, 1, 2001), -12, 12, 4001);
  for (int i = 0; i < f.size(); ++i) {
    CHECK(ff.w[i] <= f.w[i] + 1e-12);
    CHECK(f.w[i] - ff.w[i] <= 2 * f.dx());
  }
  // order reversing
  auto bumped = f;
  for (int i = 0; i < f.size(); ++i) bumped.w[i] += 0.1 / (1 + f.x(i) * f.x(i));
  auto gb = legendre(bumped, 0, 1, 101);
  for (int j = 0; j < 101; ++j) CHECK(gb.v[j] <= g.v[j] + 1e-15);
  CHECK_THROWS_AS(legendre(RadialProfile{}, 0, 1, 10), PrecondError);
}

TEST_CASE("toric Legendre transform of the Fubini-Study obstacle") {
  auto h = toric_fs_obstacle(1, 2, 4, 257);
  auto d = legendre(h, 65);
  for (int p = 1; p < 65; ++p)
    for (int k = 1; k < 65; ++k) {
      double s = p * d.ds(), t = k * d.dt();
      double want = fs_conjugate(s) + 2 * fs_conjugate(t / 2);
      CHECK(std::abs(d.at(p, k) - want) < 2e-3);
    }
  CHECK(std::abs(d.at(0, 0)) < 1e-3);
}

TEST_CASE("toric envelope matches the closed form at gamma = a = b = 1") {
  const auto& w = env11(1.0);
  double err = 0;
  for (int i = 0; i < w.n; ++i)
    for (int j = 0; j < w.n; ++j) err = std::max(err, std::abs(w.at(i, j) - toric_green_closed_form(w.x(i), w.x(j))));
  CHECK(err <= 2e-2);
  CHECK(w.gamma == 1.0);
}

TEST_CASE("toric envelope invariants") {
  const auto& h = fs11();
  const double dx = h.dx();
  // grid tolerance: a slope error of one dual cell across the half-width
  const double grid_tol = h.L / 128;
  CHECK(sup_diff(env11(1e-9).w, h.w) <= grid_tol);
  for (double gamma : {0.25, 0.5, 1.0}) {
    CAPTURE(gamma);
    const auto& w = env11(gamma);
    int contact = 0;
    for (std::size_t q = 0; q < w.w.size(); ++q) {
      CHECK(w.w[q] <= h.w[q] + 1e-12);
      contact += h.w[q] - w.w[q] <= 1e-9;
    }
    CHECK(contact > 0);
    // Lelong constraint along the diagonal at the corner
    CHECK((w.at(1, 1) - w.at(0, 0)) / dx >= gamma - grid_tol);
    // convexity
    for (int i = 1; i + 1 < w.n; ++i)
      for (int j = 1; j + 1 < w.n; ++j) {
        double wxx = w.at(i + 1, j) - 2 * w.at(i, j) + w.at(i - 1, j);
        double wyy = w.at(i, j + 1) - 2 * w.at(i, j) + w.at(i, j - 1);
        double dpp = w.at(i + 1, j + 1) - 2 * w.at(i, j) + w.at(i - 1, j - 1);
        double dpm = w.at(i + 1, j - 1) - 2 * w.at(i, j) + w.at(i - 1, j + 1);
        CHECK(std::min({wxx, wyy, dpp, dpm}) >= -1e-7);
      }
    // gradients stay in the moment polytope
    for (int i = 0; i + 1 < w.n; ++i) {
      double sx = (w.at(i + 1, w.n / 2) - w.at(i, w.n / 2)) / dx;
      CHECK(sx >= -1e-9);
      CHECK(sx <= w.a + 1e-9);
    }
    // radial consistency on the diagonal
    RadialProfile diag{-h.L, h.L, {}, 0};
    for (int i = 0; i < h.n; ++i) diag.w.push_back(h.at(i, i));
    auto e1 = radial_envelope(diag, gamma);
    for (int i = 0; i < h.n; ++i) CHECK(std::abs(w.at(i, i) - e1.w[i]) <= 2 * grid_tol);
    // idempotence
    auto again = toric_envelope(w, gamma);
    CHECK(sup_diff(again.w, w.w) <= 1e-9);
  }
  // monotone in gamma
  for (std::size_t q = 0; q < h.w.size(); ++q) {
    CHECK(env11(0.25).w[q] >= env11(0.5).w[q] - 1e-12);
    CHECK(env11(0.5).w[q] >= env11(1.0).w[q] - 1e-12);
  }
}

TEST_CASE("toric envelope rejects infeasible constraints") {
  auto h = toric_fs_obstacle(1, 2, 4, 33);
  CHECK_THROWS_AS(toric_envelope(h, 3.5), PrecondError);
  CHECK_THROWS_AS(toric_envelope(h, 1.5), PrecondError);
  CHECK_THROWS_AS(toric_envelope(h, 0.0), PrecondError);
  CHECK_NOTHROW(toric_envelope(h, 1.0, 17));
  ToricGrid bad = h;
  bad.w.pop_back();
  CHECK_THROWS_AS(toric_envelope(bad, 0.5), PrecondError);
}

TEST_CASE("toric Monge-Ampere masses") {
  auto m1 = toric_ma_masses(env11(1.0));
  CHECK(std::abs(m1.dirac - 1) <= 0.05);
  CHECK(std::abs(m1.boundary - 1) <= 0.05);
  CHECK(std::abs(m1.total - 2) <= 0.02);
  auto mh = toric_ma_masses(env11(0.5));
  CHECK(std::abs(mh.dirac - 0.25) <= 0.05);
  CHECK(std::abs(mh.total - 2) <= 0.02);
  // the obstacle itself carries the full volume on its contact set
  auto m0 = toric_ma_masses(fs11());
  CHECK(m0.dirac == 0);
  CHECK(m0.boundary == doctest::Approx(2.0));
  CHECK(toric_ma_masses(env11(1e-9)).dirac <= 0.01);
  // closed form sampled on the grid
  ToricGrid cf = fs11();
  for (int i = 0; i < cf.n; ++i)
    for (int j = 0; j < cf.n; ++j) cf.w[static_cast<std::size_t>(i) * cf.n + j] = toric_green_closed_form(cf.x(i), cf.x(j));
  auto mc = toric_ma_masses(cf);
  CHECK(std::abs(mc.dirac - 1) <= 0.05);
  CHECK(std::abs(mc.boundary - 1) <= 0.05);
  // an unequal class: the corner triangle s + t < gamma has area gamma^2 / 2
  auto h12 = toric_fs_obstacle(1, 2);
  auto m12 = toric_ma_masses(toric_envelope(h12, 0.5));
  CHECK(std::abs(m12.dirac - 0.25) <= 0.05);
  CHECK(std::abs(m12.total - 4) <= 0.02);
  for (const auto& m : {m1, mh, m12}) CHECK(m.ambiguous_fraction <= 0.02);
}
