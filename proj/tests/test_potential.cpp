#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pluripot/potential.hpp"
#include "pluripot/potential_json.hpp"

using namespace pluripot;

namespace {

const std::vector<int> G3{3};
const std::vector<int> G22{2, 2};

SparsePoly form(std::vector<int> groups, std::vector<std::pair<Exponent, long>> terms) {
  std::vector<std::pair<Exponent, GaussQ>> t;
  for (auto& [e, c] : terms) t.emplace_back(e, GaussQ(c));
  return SparsePoly::from_terms(std::move(groups), std::move(t));
}

ProjPoint exact_pt(Space s, std::vector<long> c) {
  std::vector<GaussQ> q;
  for (long v : c) q.emplace_back(v);
  return ProjPoint::make_exact(s, q);
}

LogNormPotential two_conic() {
  return make_rational_green({form(G3, {{{0, 2, 0}, 1}, {{2, 0, 0}, -1}}), form(G3, {{{0, 0, 2}, 1}, {{2, 0, 0}, -1}})},
                             Space::P2);
}

// Q = c0 t0^4 + c1 t0^3 t1 + c2 t0^3 t2 (degree 4 for n=m=1, k=3)
SparsePoly q_family(long c0, long c1, long c2) {
  SparsePoly q(G3, {4});
  q.add_term({4, 0, 0}, GaussQ(c0));
  q.add_term({3, 1, 0}, GaussQ(c1));
  q.add_term({3, 0, 1}, GaussQ(c2));
  return q;
}

// Numeric order of vanishing along random complex lines through p: slope of log|P| in log t.
int numeric_order(const SparsePoly& P, const ProjPoint& p, std::mt19937_64& g) {
  std::normal_distribution<double> n(0, 1);
  int chart = best_chart(p);
  auto w0 = to_chart(p, chart);
  double best = 1e9;
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<cplx> v(w0.size());
    for (auto& c : v) c = {n(g), n(g)};
    auto at = [&](double t) {
      std::vector<cplx> w(w0);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += t * v[i];
      auto q = from_chart(p.space, chart, w);
      return std::log(std::abs(P.eval(std::span<const cplx>(q.z))));
    };
    double slope = (at(1e-2) - at(5e-3)) / std::log(2.0);
    best = std::min(best, slope);
  }
  return static_cast<int>(std::lround(best));
}

}  // namespace

TEST_CASE("eval_potential hand values") {
  auto g = make_rational_green({form(G3, {{{0, 1, 0}, 1}}), form(G3, {{{0, 0, 1}, 1}})}, Space::P2);
  CHECK(eval_potential(g, ProjPoint::make(Space::P2, {1.0, 1.0, 0.0})) == doctest::Approx(-0.5 * std::log(2.0)));
  CHECK(eval_potential(g, ProjPoint::make(Space::P2, {1.0, 0.0, 0.0})) == -std::numeric_limits<double>::infinity());
  auto id = make_rational_green({form({2}, {{{0, 1}, 1}})}, Space::P1);
  CHECK(eval_potential(id, ProjPoint::make(Space::P1, {0.0, 1.0})) == doctest::Approx(0.0));
  // huge coordinates are handled through normalization
  auto c = two_conic();
  auto p = ProjPoint::make(Space::P2, {1.0, 0.3, -2.0});
  ProjPoint big = p, tiny = p;
  for (auto& z : big.z) z *= 1e300;
  for (auto& z : tiny.z) z *= 1e-300;
  double v = eval_potential(c, p);
  CHECK(std::isfinite(v));
  CHECK(eval_potential(c, big) == doctest::Approx(v).epsilon(1e-13));
  CHECK(eval_potential(c, tiny) == doctest::Approx(v).epsilon(1e-13));
}

TEST_CASE("make_rational_green indeterminacy sets") {
  auto c = two_conic();
  REQUIRE(c.poles);
  CHECK(c.poles->size() == 4);
  for (long a : {1, -1})
    for (long b : {1, -1}) {
      auto q = exact_pt(Space::P2, {1, a, b});
      int hits = 0;
      for (const auto& p : *c.poles) {
        hits += p == q;
        CHECK(p.exact.has_value());
        CHECK(eval_potential(c, p) == -std::numeric_limits<double>::infinity());
      }
      CHECK(hits == 1);
    }
  auto lin = make_rational_green({form(G3, {{{0, 1, 0}, 1}}), form(G3, {{{0, 0, 1}, 1}})}, Space::P2);
  REQUIRE(lin.poles);
  CHECK(lin.poles->size() == 1);
  CHECK(lin.poles->front() == exact_pt(Space::P2, {1, 0, 0}));
  CHECK_THROWS_AS(make_rational_green({form(G3, {{{0, 1, 1}, 1}}), form(G3, {{{1, 1, 0}, 1}})}, Space::P2),
                  PrecondError);
  CHECK_THROWS_AS(make_rational_green({form(G3, {{{0, 1, 1}, 1}}), form(G3, {{{1, 0, 0}, 1}})}, Space::P2),
                  PrecondError);
  // tangent conics: a double intersection point is still found
  auto t = make_rational_green({form(G3, {{{0, 0, 2}, 1}, {{1, 1, 0}, -1}}), form(G3, {{{0, 0, 2}, 1}, {{1, 1, 0}, -1}, {{0, 2, 0}, 1}})},
                               Space::P2);
  REQUIRE(t.poles);
  for (const auto& p : *t.poles) CHECK(eval_potential(t, p) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("exact Lelong numbers of the named families") {
  auto p0 = exact_pt(Space::P2, {1, 0, 0});
  CHECK(lelong_exact(make_cusp_green(2, 1), p0) == Rational(1, 2));
  CHECK(lelong_exact(make_cusp_green(3, 2), p0) == Rational(2, 3));
  CHECK(lelong_exact(make_cusp_green(5, 3), p0) == Rational(3, 5));
  CHECK_THROWS_AS(make_cusp_green(2, 2), PrecondError);
  CHECK_THROWS_AS(make_cusp_green(3, 0), PrecondError);

  CHECK(lelong_exact(two_conic(), exact_pt(Space::P2, {1, 1, 1})) == Rational(1, 2));

  auto pz = exact_pt(Space::P1xP1, {1, 0, 1, 0});
  CHECK(lelong_exact(make_greenp1_family(1, 1, 3, q_family(1, 0, 0)), pz) == Rational(2, 3));
  CHECK(lelong_exact(make_greenp1_family(1, 1, 3, q_family(0, 2, -3)), pz) == Rational(1));
  SparsePoly qc(G3, {0});
  qc.add_term({0, 0, 0}, GaussQ(5));
  CHECK(lelong_exact(make_greenp1_family(1, 1, 1, qc), pz) == Rational(1));
  CHECK_THROWS_AS(make_greenp1_family(1, 1, 3, qc), PrecondError);
  SparsePoly qbad(G3, {4});
  qbad.add_term({0, 1, 3}, GaussQ(1));  // deg_t2 = 3 > mk - 1
  CHECK_THROWS_AS(make_greenp1_family(1, 1, 3, qbad), PrecondError);

  auto h = make_hyperplane_avg({form(G3, {{{1, 0, 0}, 1}}), form(G3, {{{0, 1, 0}, 1}}), form(G3, {{{0, 0, 1}, 1}})});
  for (auto pt : {exact_pt(Space::P2, {1, 0, 0}), exact_pt(Space::P2, {0, 1, 0}), exact_pt(Space::P2, {0, 0, 1})})
    CHECK(lelong_exact(h, pt) == Rational(2, 3));
  CHECK(lelong_exact(h, exact_pt(Space::P2, {1, 2, 3})) == 0);
  CHECK_THROWS_AS(
      make_hyperplane_avg({form(G3, {{{1, 0, 0}, 1}}), form(G3, {{{0, 1, 0}, 1}}), form(G3, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}})}),
      PrecondError);
  auto h1 = make_hyperplane_avg({form({2}, {{{1, 0}, 1}, {{0, 1}, -1}}), form({2}, {{{1, 0}, 1}, {{0, 1}, 1}})});
  REQUIRE(h1.poles);
  for (const auto& p : *h1.poles) CHECK(lelong_exact(h1, p) == Rational(1, 2));

  auto r11 = make_rab(1, 1, pz);
  CHECK(lelong_exact(r11, pz) == 1);
  CHECK(eval_potential(r11, pz) == -std::numeric_limits<double>::infinity());
  auto r23 = make_rab(2, 3, pz);
  CHECK(lelong_exact(r23, pz) == 2);
  auto moved = exact_pt(Space::P1xP1, {2, 1, 1, -3});
  CHECK(lelong_exact(make_rab(Rational(3, 2), Rational(5, 2), moved), moved) == Rational(3, 2));

  CHECK_THROWS_AS(lelong_exact(r11, ProjPoint::make(Space::P1xP1, {1.0, 0.0, 1.0, 0.0})), PrecondError);
}

TEST_CASE("vanishing orders agree with a numeric slope oracle") {
  std::mt19937_64 g(17);
  auto p0 = exact_pt(Space::P2, {1, 0, 0});
  for (auto [n, k] : {std::pair{2, 1}, {3, 2}, {5, 3}, {4, 1}}) {
    auto c = make_cusp_green(n, k);
    for (const auto& P : c.components()) CHECK(vanishing_order(P, Space::P2, *p0.exact) == numeric_order(P, p0, g));
  }
  auto conic = two_conic();
  auto p1 = exact_pt(Space::P2, {1, -1, 1});
  for (const auto& P : conic.components()) CHECK(vanishing_order(P, Space::P2, *p1.exact) == numeric_order(P, p1, g));
  auto pz = exact_pt(Space::P1xP1, {1, 0, 1, 0});
  for (auto q : {q_family(1, 0, 0), q_family(0, 2, -3), q_family(0, 0, 0)}) {
    auto u = make_greenp1_family(1, 1, 3, q);
    for (const auto& P : u.components()) CHECK(vanishing_order(P, Space::P1xP1, *pz.exact) == numeric_order(P, pz, g));
  }
}

TEST_CASE("lelong_exact invariance under units and linear changes fixing the point") {
  std::mt19937_64 g(23);
  std::uniform_int_distribution<int> d(-3, 3);
  auto check_family = [&](const LogNormPotential& phi, const ProjPoint& p) {
    Rational base = lelong_exact(phi, p);
    // unit multipliers
    std::vector<SparsePoly> comps;
    const GaussQ units[] = {GaussQ(0, 1), GaussQ(-1), GaussQ(Rational(3, 5), Rational(4, 5))};
    int u = 0;
    for (const auto& c : phi.components()) comps.push_back(c * units[u++ % 3]);
    CHECK(lelong_exact(LogNormPotential(phi.space_tag(), comps, phi.scale(), phi.ref_weights(), phi.monomials()), p) == base);
    // random invertible integer changes per factor
    const Space s = phi.space_tag();
    const int fsz = factor_size(s, 0);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::vector<GaussQ>> A(hom_size(s), std::vector<GaussQ>(hom_size(s)));
      GaussQ det(0);
      do {
        for (auto& row : A)
          for (auto& x : row) x = GaussQ(0);
        for (int f = 0; f < factor_count(s); ++f)
          for (int i = 0; i < fsz; ++i)
            for (int j = 0; j < fsz; ++j) A[f * fsz + i][f * fsz + j] = GaussQ(d(g));
        // determinant of each diagonal block must be nonzero
        det = GaussQ(1);
        for (int f = 0; f < factor_count(s); ++f) {
          auto a = [&](int i, int j) { return A[f * fsz + i][f * fsz + j]; };
          GaussQ bd = fsz == 2 ? a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)
                               : a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
          det *= bd;
        }
      } while (det.is_zero());
      // q = A^{-1} p by Gaussian elimination
      const int n = hom_size(s);
      auto M = A;
      std::vector<GaussQ> q = *p.exact;
      for (int c = 0; c < n; ++c) {
        int piv = c;
        while (M[piv][c].is_zero()) ++piv;
        std::swap(M[piv], M[c]);
        std::swap(q[piv], q[c]);
        for (int r = 0; r < n; ++r) {
          if (r == c || M[r][c].is_zero()) continue;
          GaussQ f = M[r][c] / M[c][c];
          for (int k = 0; k < n; ++k) M[r][k] -= f * M[c][k];
          q[r] -= f * q[c];
        }
      }
      for (int c = 0; c < n; ++c) q[c] /= M[c][c];
      std::vector<SparsePoly> images;
      for (int i = 0; i < n; ++i) {
        std::vector<int> dg(factor_count(s), 0);
        dg[i / fsz] = 1;
        SparsePoly l(space_groups(s), dg);
        for (int j = 0; j < n; ++j) {
          Exponent e(n, 0);
          e[j] = 1;
          l.add_term(e, A[i][j]);
        }
        images.push_back(l);
      }
      std::vector<SparsePoly> tc;
      for (const auto& c : phi.components()) tc.push_back(c.substitute(images));
      LogNormPotential moved(s, tc, phi.scale(), phi.ref_weights());
      CHECK(lelong_exact(moved, ProjPoint::make_exact(s, q)) == base);
    }
  };
  check_family(make_cusp_green(3, 2), exact_pt(Space::P2, {1, 0, 0}));
  check_family(two_conic(), exact_pt(Space::P2, {1, 1, -1}));
  check_family(make_greenp1_family(1, 1, 3, q_family(1, 1, 0)), exact_pt(Space::P1xP1, {1, 0, 1, 0}));
}

TEST_CASE("degree-one projections have Lelong number one at the center only") {
  std::mt19937_64 g(9);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int t = 0; t < 10; ++t) {
    SparsePoly l1(G3, {1}), l2(G3, {1});
    for (int j = 0; j < 3; ++j) {
      Exponent e(3, 0);
      e[j] = 1;
      l1.add_term(e, GaussQ(d(g)));
      l2.add_term(e, GaussQ(d(g)));
    }
    if (l1.is_zero() || l2.is_zero()) continue;
    try {
      auto gf = make_rational_green({l1, l2}, Space::P2);
      REQUIRE(gf.poles);
      CHECK(lelong_exact(gf, gf.poles->front()) == 1);
      CHECK(lelong_exact(gf, exact_pt(Space::P2, {7, -5, 11})) == 0);
    } catch (const PrecondError&) {
      // proportional forms: no finite indeterminacy set
    }
  }
}

TEST_CASE("log-homogeneity under coordinate scaling") {
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> u(-5, 5), a(0, 2 * M_PI);
  std::normal_distribution<double> n(0, 1);
  std::vector<LogNormPotential> fams{two_conic(), make_cusp_green(3, 2), make_greenp1_family(1, 1, 3, q_family(1, 2, 0)),
                                     make_rab(2, 3, exact_pt(Space::P1xP1, {1, 2, 3, 1})),
                                     make_hyperplane_avg({form(G3, {{{1, 0, 0}, 1}}), form(G3, {{{0, 1, 0}, 1}}),
                                                          form(G3, {{{0, 0, 1}, 1}, {{1, 0, 0}, 1}})})};
  for (const auto& phi : fams) {
    const Space s = phi.space_tag();
    const int fsz = factor_size(s, 0);
    for (int t = 0; t < 50; ++t) {
      std::vector<cplx> z(hom_size(s));
      for (auto& c : z) c = {n(g), n(g)};
      std::vector<cplx> zs = z;
      double shift = 0;
      for (int f = 0; f < factor_count(s); ++f) {
        double lm = u(g);
        cplx lam = std::polar(std::exp(lm), a(g));
        for (int j = f * fsz; j < (f + 1) * fsz; ++j) zs[j] *= lam;
        shift += to_double(phi.ref_weights()[f]) * lm;
      }
      CHECK(phi.raw(zs) - phi.raw(z) == doctest::Approx(shift).epsilon(1e-10));
      CHECK(phi.eval_hom(zs) == doctest::Approx(phi.eval_hom(z)).epsilon(1e-10));
    }
  }
  SparsePoly p1 = form(G3, {{{1, 0, 0}, 1}});
  CHECK_THROWS_AS(LogNormPotential(Space::P2, {p1}, Rational(1, 2), {Rational(1)}), PrecondError);
}

TEST_CASE("normalized Green potentials stay below their sampled maximum") {
  std::mt19937_64 g(2);
  std::normal_distribution<double> n(0, 1);
  auto c = two_conic();
  std::vector<double> vals;
  for (int t = 0; t < 20000; ++t) {
    auto p = ProjPoint::make(Space::P2, {{n(g), n(g)}, {n(g), n(g)}, {n(g), n(g)}});
    vals.push_back(eval_potential(c, p));
  }
  double mx = *std::max_element(vals.begin(), vals.end());
  for (double v : vals) CHECK(v - mx <= 1e-12);
  // for this map ||F|| <= 2 ||z||^2, so g_f <= log(2)/2
  CHECK(mx <= 0.5 * std::log(2.0) + 1e-12);
}

TEST_CASE("transfer between P1xP1 and P2") {
  auto u = make_greenp1_family(1, 1, 3, q_family(2, -1, 3));
  auto fwd = phi_forward(u);
  CHECK(fwd.space_tag() == Space::P2);
  CHECK(fwd.ref_weights()[0] == 2);
  auto back = phi_inverse(fwd, 1);
  CHECK(back.ref_weights() == u.ref_weights());
  for (std::size_t i = 0; i < u.components().size(); ++i) CHECK(back.components()[i] == u.components()[i]);

  std::mt19937_64 g(41);
  std::normal_distribution<double> n(0, 1.5);
  // R_f potential: (1+b) g_f with g_f the Green function of the forward components
  auto gf = make_rational_green(fwd.components(), Space::P2,
                                std::vector<ProjPoint>{exact_pt(Space::P2, {1, 0, 0}), exact_pt(Space::P2, {0, 1, 0}),
                                                       exact_pt(Space::P2, {0, 0, 1})});
  for (int t = 0; t < 100; ++t) {
    std::vector<cplx> w{{n(g), n(g)}, {n(g), n(g)}};
    double a = u.local(0, w), b = fwd.local(0, w), c = back.local(0, w);
    CHECK(std::abs(a - b) <= 1e-10 * (1 + std::abs(a)));
    CHECK(std::abs(a - c) <= 1e-10 * (1 + std::abs(a)));
    auto p = ProjPoint::make(Space::P2, {1.0, w[0], w[1]});
    CHECK(std::abs(eval_potential(fwd, p) - 2.0 * eval_potential(gf, p)) <= 1e-10);
  }
  // unequal weights m/n = 2
  auto u2 = make_greenp1_family(1, 2, 1, [] {
    SparsePoly q(G3, {1});
    q.add_term({1, 0, 0}, GaussQ(1));
    return q;
  }());
  auto f2 = phi_forward(u2);
  CHECK(f2.ref_weights()[0] == 3);
  auto b2 = phi_inverse(f2, 1);
  for (std::size_t i = 0; i < u2.components().size(); ++i) CHECK(b2.components()[i] == u2.components()[i]);

  // a potential whose components do not carry the monomial factor
  auto bad = LogNormPotential(Space::P2, {form(G3, {{{2, 0, 0}, 1}}), form(G3, {{{0, 0, 2}, 1}})}, Rational(1, 2), {Rational(1)});
  CHECK_THROWS_AS(phi_inverse(bad, 1), PrecondError);
  CHECK_THROWS_AS(phi_forward(bad), PrecondError);
}

TEST_CASE("JSON round trip") {
  for (const auto& phi : {two_conic(), make_rab(2, 3, exact_pt(Space::P1xP1, {1, 2, 3, 1})),
                          make_greenp1_family(1, 1, 3, q_family(1, 2, 0))}) {
    auto j = potential_to_json(phi);
    auto back = potential_from_json(json::parse(j.dump()));
    CHECK(back.scale() == phi.scale());
    CHECK(back.ref_weights() == phi.ref_weights());
    REQUIRE(back.components().size() == phi.components().size());
    for (std::size_t i = 0; i < phi.components().size(); ++i) CHECK(back.components()[i] == phi.components()[i]);
    CHECK(back.monomials().size() == phi.monomials().size());
  }
  auto j = potential_to_json(two_conic());
  j["scale_den"] = 2.0;
  CHECK_THROWS_AS(potential_from_json(j), PrecondError);
}
