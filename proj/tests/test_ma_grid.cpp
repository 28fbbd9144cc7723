#include <doctest.h>

#include <cmath>
#include <functional>

#include "pluripot/ma_grid.hpp"
#include "pluripot/potential.hpp"

using namespace pluripot;

namespace {

const std::vector<int> G3{3};

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

// Potential on P2 given by its local potential in every chart.
class LocalFunction : public Evaluable {
 public:
  explicit LocalFunction(std::function<double(std::span<const cplx>)> f) : f_(std::move(f)) {}
  KClass kclass() const override { return KClass::pn(Space::P2, Rational(1)); }
  double phi(int chart, std::span<const cplx> w) const override { return f_(w) - fs_potential(kclass(), chart, w); }
  double local(int, std::span<const cplx> w) const override { return f_(w); }

 private:
  std::function<double(std::span<const cplx>)> f_;
};

LogNormPotential two_conics() {
  return make_rational_green({form(G3, {{{0, 2, 0}, 1}, {{2, 0, 0}, -1}}), form(G3, {{{0, 0, 2}, 1}, {{2, 0, 0}, -1}})},
                             Space::P2);
}

GridParams coarse() {
  GridParams gp;
  gp.h = 0.1;
  return gp;
}

// Mass of the Fubini-Study measure in the Euclidean ball of radius r about the chart origin.
double fs_ball_mass(double r) {
  const double t = r * r;
  return std::pow(t / (1 + t), 2);
}

}  // namespace

TEST_CASE("Fubini-Study density in closed form") {
  ZeroPotential fs(KClass::pn(Space::P2, Rational(1)));
  const std::vector<cplx> origin{0.0, 0.0};
  CHECK(density_at(fs, 0, origin, 1e-2) == doctest::Approx(2 / (M_PI * M_PI)).epsilon(1e-8));
  for (const auto& w : std::vector<std::vector<cplx>>{{{0.3, -0.2}, {1.1, 0.4}}, {{-2.0, 0.5}, {0.0, 0.0}}}) {
    const double n2 = std::norm(w[0]) + std::norm(w[1]);
    CHECK(density_at(fs, 0, w, 1e-2) == doctest::Approx(2 / (M_PI * M_PI) / std::pow(1 + n2, 3)).epsilon(1e-6));
  }
  // the P1 x P1 class (a, b) has density (2/pi^2) a b (1+|z|^2)^-2 (1+|w|^2)^-2
  ZeroPotential q(KClass::p1p1(Rational(1), Rational(2)));
  const std::vector<cplx> w{{0.5, 0.5}, {-1.0, 0.2}};
  const double expect = 2 / (M_PI * M_PI) * 2 / std::pow(1 + std::norm(w[0]), 2) / std::pow(1 + std::norm(w[1]), 2);
  CHECK(density_at(q, 0, w, 1e-2) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("stored chart grid reproduces the pointwise density") {
  ZeroPotential fs(KClass::pn(Space::P2, Rational(1)));
  auto g = sample_chart_grid(fs, 0, 0.2, 0.1, {Ball{exact_pt(Space::P2, {1, 0, 0}), 0.05}});
  REQUIRE(g.n == 5);
  CHECK(g.u.size() == 9u * 9 * 9 * 9);
  auto d = ma_density(g);
  REQUIRE(d.size() == 625u);
  // the centre lies in the excluded ball
  CHECK(std::isnan(d[((2 * 5 + 2) * 5 + 2) * 5 + 2]));
  const std::vector<cplx> w{{g.coord(1), g.coord(3)}, {g.coord(0), g.coord(4)}};
  CHECK(d[((1 * 5 + 3) * 5 + 0) * 5 + 4] == doctest::Approx(density_at(fs, 0, w, 0.1)).epsilon(1e-12));
}

TEST_CASE("pluriharmonic local potentials have zero density") {
  LocalFunction f([](std::span<const cplx> w) {
    return std::real(w[0] * w[1]) + std::log(std::abs(w[0] + 3.0 * w[1] - 5.0)) + std::imag(w[1] * w[1] * w[1]);
  });
  for (const auto& w : std::vector<std::vector<cplx>>{{{0.1, 0.2}, {0.3, -0.4}}, {{1.0, 0.0}, {-0.5, 0.5}}})
    CHECK(std::abs(density_at(f, 0, w, 1e-2)) < 1e-8);
}

TEST_CASE("chart weights form a partition of unity") {
  for (Space s : {Space::P2, Space::P1xP1}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<cplx> z(hom_size(s));
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = cplx(std::sin(1.7 * trial + i), std::cos(0.9 * trial * i + 0.3));
      auto p = ProjPoint::make(s, z);
      double total = 0;
      for (int k = 0; k < chart_count(s); ++k) {
        try {
          total += chart_weight(s, to_chart(p, k));
        } catch (const PrecondError&) {
        }
      }
      CHECK(total == doctest::Approx(1).epsilon(1e-12));
    }
  }
  CHECK(chart_weight(Space::P2, std::vector<cplx>{3.5, 0.0}) == 0);
}

TEST_CASE("density transforms by the squared chart Jacobian") {
  FunctionPotential phi(KClass::pn(Space::P2, Rational(1)), [](const ProjPoint& p) {
    const double n2 = std::norm(p.z[0]) + std::norm(p.z[1]) + std::norm(p.z[2]);
    return 0.2 * std::norm(p.z[0]) / n2 + 0.1 * std::real(p.z[1] * std::conj(p.z[2])) / n2;
  });
  const std::vector<cplx> w0{{0.6, -0.3}, {0.8, 0.7}};
  const auto p = from_chart(Space::P2, 0, w0);
  for (int to : {1, 2}) {
    const auto wt = to_chart(p, to);
    const double lhs = density_at(phi, 0, w0, 1e-2);
    const double rhs = density_at(phi, to, wt, 1e-2) * chart_jacobian2(Space::P2, 0, to, w0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("Fubini-Study total mass converges to the volume") {
  ZeroPotential fs(KClass::pn(Space::P2, Rational(1)));
  GridParams gp;
  gp.h = 0.2;
  const auto r1 = ma_report(fs, {}, gp);
  gp.h = 0.1;
  const auto r2 = ma_report(fs, {}, gp);
  CHECK(r1.volume == 1);
  CHECK(std::abs(r1.smooth - 1) < 1e-3);
  CHECK(std::abs(r2.smooth - 1) < 1e-4);
  CHECK(std::abs(r2.smooth - 1) < std::abs(r1.smooth - 1));
  CHECK(r2.min_density > 0);
  CHECK(r2.smooth_per_chart.size() == 3);
  // marginals integrate to the chart totals
  for (int k = 0; k < 3; ++k) {
    double m = 0;
    for (double v : r2.marginals[k]) m += v * gp.h;
    CHECK(m == doctest::Approx(r2.smooth_per_chart[k]).epsilon(1e-9));
  }

  ZeroPotential q(KClass::p1p1(Rational(1), Rational(2)));
  gp.h = 0.2;
  const auto rq = ma_report(q, {}, gp);
  CHECK(rq.volume == 4);
  CHECK(std::abs(rq.smooth - 4) < 4e-3);
}

TEST_CASE("ball flux oracles") {
  ZeroPotential fs(KClass::pn(Space::P2, Rational(1)));
  const auto o = exact_pt(Space::P2, {1, 0, 0});
  for (double r : {0.5, 0.25, 0.1}) CHECK(ball_flux(fs, Ball{o, r}, 4096) == doctest::Approx(fs_ball_mass(r)).epsilon(1e-4));
  // the same ball about another point, seen from its own chart
  const auto p = exact_pt(Space::P2, {2, 1, 0});
  CHECK(ball_flux(fs, Ball{p, 0.3}, 4096) > 0);

  LocalFunction lognorm([](std::span<const cplx> w) { return 0.5 * std::log(std::norm(w[0]) + std::norm(w[1])); });
  for (double r : {0.5, 0.2, 0.01}) CHECK(ball_flux(lognorm, Ball{o, r}, 4096) == doctest::Approx(1).epsilon(1e-6));
  LocalFunction half([](std::span<const cplx> w) { return 0.5 * std::log(std::norm(w[0]) + std::norm(w[1] * w[1])); });
  // log max(|z1|, |z2|^2) has Lelong number 1 and mass 2 at the origin
  CHECK(ball_flux(half, Ball{o, 0.3}, 65536) == doctest::Approx(2).epsilon(2e-3));

  CHECK_THROWS_AS(ball_flux(fs, Ball{o, 0.6}), PrecondError);
  CHECK_THROWS_AS(ball_flux(fs, Ball{o, 0.1}, 10), PrecondError);
  CHECK_THROWS_AS(ball_flux(fs, Ball{exact_pt(Space::P1xP1, {1, 0, 1, 0}), 0.1}), PrecondError);
}

TEST_CASE("two conics: four atoms of one quarter") {
  auto g = two_conics();
  REQUIRE(g.poles);
  const auto gc = check_green(g, *g.poles, {0.25, 0.25, 0.25, 0.25}, coarse());
  CHECK(gc.pass);
  const auto& rep = gc.report;
  REQUIRE(rep.poles.size() == 4);
  for (const auto& pm : rep.poles) CHECK(pm.mass == doctest::Approx(0.25).epsilon(0.02));
  CHECK(std::abs(rep.smooth) < 0.02);
  CHECK(std::abs(rep.defect) < 0.02);
  CHECK(rep.atoms + rep.smooth + rep.defect == doctest::Approx(rep.volume));

  const auto wrong = check_green(g, rep, {0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6});
  CHECK_FALSE(wrong.pass);
  CHECK(wrong.failures.size() == 4);
  CHECK_THROWS_AS(check_green(g, rep, {0.5, 0.5}), PrecondError);
  CHECK_THROWS_AS(check_green(g, rep, {0.5, 0.5, 0.5, 0.5}), PrecondError);
}

TEST_CASE("cusp Green function carries its whole mass at the pole") {
  auto g = make_cusp_green(2, 1);
  const auto gc = check_green(g, *g.poles, {1.0}, coarse());
  CHECK(gc.pass);
  CHECK(gc.report.poles[0].mass == doctest::Approx(1).epsilon(0.02));
  CHECK(std::abs(gc.report.smooth) < 0.02);
  CHECK(gc.report.refined > 0);
  CHECK(std::isfinite(gc.phi_min));
  CHECK(gc.phi_max >= gc.phi_min);
}

TEST_CASE("product space: two poles of weight one half") {
  auto rab = make_rab(Rational(1), Rational(1), exact_pt(Space::P1xP1, {1, 0, 1, 0}));
  std::vector<ProjPoint> poles = *rab.poles;
  poles.push_back(exact_pt(Space::P1xP1, {0, 1, 0, 1}));
  const auto gc = check_green(rab, poles, {0.5, 0.5}, coarse());
  CHECK(gc.pass);
  CHECK(gc.report.volume == 2);
  for (const auto& pm : gc.report.poles) CHECK(pm.mass == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("ma_report rejects bad input") {
  ZeroPotential fs(KClass::pn(Space::P2, Rational(1)));
  GridParams gp = coarse();
  const auto a = exact_pt(Space::P2, {1, 0, 0});
  const auto b = from_chart(Space::P2, 0, std::vector<cplx>{0.5, 0.5});
  CHECK_THROWS_AS(ma_report(fs, {a, b}, gp), PrecondError);
  CHECK_THROWS_AS(ma_report(fs, {exact_pt(Space::P1xP1, {1, 0, 1, 0})}, gp), PrecondError);
  GridParams odd = gp;
  odd.h = 0.07;
  CHECK_THROWS_AS(ma_report(fs, {}, odd), PrecondError);
  GridParams wide = gp;
  wide.h = 0.2;
  CHECK_THROWS_AS(ma_report(fs, {a}, wide), PrecondError);
  ZeroPotential p1(KClass::pn(Space::P1, Rational(1)));
  CHECK_THROWS_AS(ma_report(p1, {}, gp), PrecondError);

  // an unlisted pole is caught by the stencils
  auto g = make_cusp_green(2, 1);
  CHECK_THROWS_AS(ma_report(g, {}, gp), NumericalError);
  // too much smooth mass for the class
  LocalFunction twice([](std::span<const cplx> w) { return std::log1p(std::norm(w[0]) + std::norm(w[1])); });
  GridParams quick = gp;
  quick.h = 0.2;
  CHECK_THROWS_AS(ma_report(twice, {}, quick), NumericalError);
}
