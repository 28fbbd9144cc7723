#include "pluripot/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "pluripot/dynamics.hpp"
#include "pluripot/envelope.hpp"
#include "pluripot/lelong.hpp"
#include "pluripot/ma_grid.hpp"
#include "pluripot/potential.hpp"

namespace pluripot {

namespace {

const std::vector<int> G3{3};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

SparsePoly form3(std::vector<std::pair<Exponent, long>> terms) {
  std::vector<std::pair<Exponent, GaussQ>> t;
  for (auto& [e, c] : terms) t.emplace_back(e, GaussQ(c));
  return SparsePoly::from_terms(G3, std::move(t));
}

ProjPoint exact_pt(Space s, std::vector<long> c) {
  std::vector<GaussQ> q;
  for (long v : c) q.emplace_back(v);
  return ProjPoint::make_exact(s, q);
}

// Q = c0 t0^4 + c1 t0^3 t1 + c2 t0^3 t2, for the (n, m, k) = (1, 1, 3) family
SparsePoly q_family(long c0, long c1, long c2) {
  SparsePoly q(G3, {4});
  q.add_term({4, 0, 0}, GaussQ(c0));
  q.add_term({3, 1, 0}, GaussQ(c1));
  q.add_term({3, 0, 1}, GaussQ(c2));
  return q;
}

LogNormPotential two_conics() {
  return make_rational_green({form3({{{0, 2, 0}, 1}, {{2, 0, 0}, -1}}), form3({{{0, 0, 2}, 1}, {{2, 0, 0}, -1}})},
                             Space::P2);
}

std::vector<KClass> random_classes(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_int_distribution<int> num(1, 20), den(1, 9);
  std::vector<KClass> out;
  for (int i = 0; i < 20; ++i)
    out.push_back(KClass::p1p1(Rational(num(g), den(g)), Rational(num(g), den(g))));
  return out;
}

struct ExactCase {
  std::string name;
  std::shared_ptr<LogNormPotential> phi;
  ProjPoint point;
  Rational expected;
};

std::vector<ExactCase> exact_cases() {
  std::vector<ExactCase> out;
  const auto p0 = exact_pt(Space::P2, {1, 0, 0});
  for (auto [k, n] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 5}})
    out.push_back({"cusp(" + std::to_string(n) + "," + std::to_string(k) + ")",
                   std::make_shared<LogNormPotential>(make_cusp_green(n, k)), p0, Rational(k, n)});
  auto h = std::make_shared<LogNormPotential>(
      make_hyperplane_avg({form3({{{1, 0, 0}, 1}}), form3({{{0, 1, 0}, 1}}), form3({{{0, 0, 1}, 1}})}));
  for (auto pt : {exact_pt(Space::P2, {1, 0, 0}), exact_pt(Space::P2, {0, 1, 0}), exact_pt(Space::P2, {0, 0, 1})})
    out.push_back({"hyperplanes at " + to_string(pt), h, pt, Rational(2, 3)});
  const auto pz = exact_pt(Space::P1xP1, {1, 0, 1, 0});
  out.push_back({"P1xP1 family j=2", std::make_shared<LogNormPotential>(make_greenp1_family(1, 1, 3, q_family(1, 0, 0))),
                 pz, Rational(2, 3)});
  out.push_back({"P1xP1 family j=3",
                 std::make_shared<LogNormPotential>(make_greenp1_family(1, 1, 3, q_family(0, 2, -3))), pz, Rational(1)});
  return out;
}

GridParams grid(const AcceptanceOptions& o, double h) {
  GridParams gp;
  gp.h = h;
  gp.seed = o.seed;
  return gp;
}

CriterionResult start(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

CriterionResult c1(const AcceptanceOptions& o) {
  auto r = start(1, "indicator formulas");
  r.target = "(1,1) on P2, (a+b, min(a,b)) on P1xP1, 20 classes";
  r.tolerance = "exact, < 1 s";
  int bad = 0;
  const auto i2 = indicators(KClass::pn(Space::P2, Rational(1)), exact_pt(Space::P2, {3, -1, 2}));
  if (i2.nu != 1 || i2.eps != 1) ++bad;
  const auto p = exact_pt(Space::P1xP1, {2, 1, 1, 5});
  for (const auto& k : random_classes(o.seed)) {
    const auto ind = indicators(k, p);
    const Rational &a = k.coef[0], &b = k.coef[1];
    if (ind.nu != a + b || ind.eps != (a < b ? a : b)) ++bad;
  }
  r.measured = std::to_string(21 - bad) + "/21 exact";
  r.pass = bad == 0;
  return r;
}

CriterionResult c2(const AcceptanceOptions& o) {
  auto r = start(2, "inequality chain eps <= vol^(1/n) <= nu");
  r.target = "holds for 20 P1xP1 classes and P2";
  r.tolerance = "exact";
  int bad = 0;
  const auto p = exact_pt(Space::P1xP1, {2, 1, 1, 5});
  for (const auto& k : random_classes(o.seed))
    if (!seshadri_chain_holds(k, indicators(k, p))) ++bad;
  const KClass k2 = KClass::pn(Space::P2, Rational(1));
  if (!seshadri_chain_holds(k2, indicators(k2, exact_pt(Space::P2, {1, 0, 0})))) ++bad;
  r.measured = std::to_string(21 - bad) + "/21 hold";
  r.pass = bad == 0;
  return r;
}

CriterionResult c3(const AcceptanceOptions&) {
  auto r = start(3, "exact Lelong numbers");
  r.target = "cusp k/n, hyperplanes 2/3, P1xP1 family j/3";
  r.tolerance = "exact, < 1 s";
  int ok = 0, total = 0;
  std::ostringstream vals;
  for (const auto& c : exact_cases()) {
    const Rational nu = lelong_exact(*c.phi, c.point);
    ++total;
    if (nu == c.expected) ++ok;
    else r.detail += c.name + ": got " + to_string(nu) + "; ";
    vals << (total > 1 ? " " : "") << to_string(nu);
  }
  r.measured = vals.str();
  r.pass = ok == total;
  return r;
}

CriterionResult c4(const AcceptanceOptions& o) {
  auto r = start(4, "numeric Lelong estimator");
  r.target = "exact values of criterion 3";
  r.tolerance = "0.02, < 10 s per case";
  LelongOptions lo;
  lo.seed = o.seed;
  double worst = 0, slowest = 0;
  r.pass = true;
  for (const auto& c : exact_cases()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto est = lelong_estimate(*c.phi, c.point, lo);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double err = std::abs(est.slope - to_double(c.expected));
    worst = std::max(worst, err);
    slowest = std::max(slowest, dt);
    if (err > 0.02 || dt > 10) {
      r.pass = false;
      r.detail += c.name + ": slope " + num(est.slope) + " in " + num(dt) + " s; ";
    }
  }
  r.measured = "max error " + num(worst) + ", slowest case " + num(slowest) + " s";
  return r;
}

CriterionResult c5(const AcceptanceOptions&) {
  auto r = start(5, "radial envelope gamma = 1/2");
  r.target = "closed form with R = 1, C = log(2)/2";
  r.tolerance = "sup error 1e-6 on 4096 points, < 1 s";
  const auto closed = radial_partial_green(0.5);
  const auto obs = fs_radial_obstacle(-8, 8, 4096);
  const auto env = radial_envelope(obs, 0.5);
  const auto ref = closed.profile(-8, 8, 4096);
  double err = 0;
  for (int i = 0; i < env.size(); ++i) err = std::max(err, std::abs(env.w[i] - ref.w[i]));
  const bool constants = std::abs(closed.R - 1) < 1e-12 && std::abs(closed.C - 0.5 * std::log(2.0)) < 1e-12;
  r.measured = "sup error " + num(err) + ", R = " + num(closed.R) + ", C = " + num(closed.C);
  r.pass = err <= 1e-6 && constants;
  return r;
}

CriterionResult c6(const AcceptanceOptions&) {
  auto r = start(6, "toric envelope a = b = gamma = 1");
  r.target = "closed form on 257^2 grid over [-4,4]^2";
  r.tolerance = "sup error 2e-2, < 30 s";
  const auto env = toric_envelope(toric_fs_obstacle(1, 1, 4, 257), 1.0);
  double err = 0;
  for (int i = 0; i < env.n; ++i)
    for (int j = 0; j < env.n; ++j)
      err = std::max(err, std::abs(env.at(i, j) - toric_green_closed_form(env.x(i), env.x(j))));
  r.measured = "sup error " + num(err);
  r.pass = err <= 2e-2;
  return r;
}

CriterionResult c7(const AcceptanceOptions&) {
  auto r = start(7, "toric Monge-Ampere masses");
  r.target = "gamma=1: dirac 1, boundary 1; gamma=1/2: dirac 1/4";
  r.tolerance = "0.05";
  const auto obs = toric_fs_obstacle(1, 1, 4, 257);
  const auto m1 = toric_ma_masses(toric_envelope(obs, 1.0));
  const auto mh = toric_ma_masses(toric_envelope(obs, 0.5));
  r.measured = "gamma=1: dirac " + num(m1.dirac) + ", boundary " + num(m1.boundary) + "; gamma=1/2: dirac " + num(mh.dirac);
  r.pass = std::abs(m1.dirac - 1) <= 0.05 && std::abs(m1.boundary - 1) <= 0.05 && std::abs(mh.dirac - 0.25) <= 0.05;
  return r;
}

CriterionResult c8(const AcceptanceOptions& o) {
  auto r = start(8, "grid Monge-Ampere calibration");
  const double h = o.preset == Preset::Full ? 0.05 : 0.1;
  r.target = "Fubini-Study mass 1 at h = " + num(h) + ", smaller error than at h = " + num(2 * h);
  r.tolerance = "1e-3";
  ZeroPotential fs(KClass::pn(Space::P2, Rational(1)));
  const double e1 = std::abs(ma_report(fs, {}, grid(o, h)).smooth - 1);
  const double e2 = std::abs(ma_report(fs, {}, grid(o, 2 * h)).smooth - 1);
  r.measured = "error " + num(e1) + " at h, " + num(e2) + " at 2h";
  r.pass = e1 <= 1e-3 && e1 < e2;
  return r;
}

CriterionResult c9(const AcceptanceOptions& o) {
  auto r = start(9, "Green-function verification");
  const double h = o.preset == Preset::Full ? 0.05 : 0.1;
  r.target = "cusp(2,1) m = 1; two conics 4 x 1/4, off-pole mass <= 0.02 (h = " + num(h) + ")";
  r.tolerance = "0.02";
  const auto cusp = make_cusp_green(2, 1);
  const auto gc = check_green(cusp, *cusp.poles, {1.0}, grid(o, h));
  const auto conics = two_conics();
  std::vector<double> w(4, 0.25);
  if (o.perturb_weights) w = {0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6};
  const auto gq = check_green(conics, *conics.poles, w, grid(o, h));
  std::ostringstream m;
  m << "cusp m " << num(gc.report.poles[0].mass) << " smooth " << num(gc.report.smooth) << "; conics m";
  for (const auto& p : gq.report.poles) m << " " << num(p.mass);
  m << " smooth " << num(gq.report.smooth);
  r.measured = m.str();
  for (const auto& f : gc.failures) r.detail += "cusp: " + f + "; ";
  for (const auto& f : gq.failures) r.detail += "conics: " + f + "; ";
  r.pass = gc.pass && gq.pass;
  return r;
}

CriterionResult c10(const AcceptanceOptions& o) {
  auto r = start(10, "dynamical Lelong numbers");
  r.target = "nu_n = (lambda-mu)/lambda for n <= 5, nondecreasing; Henon 2/3; g_8 estimate";
  r.tolerance = "exact; 0.03 numeric; < 60 s";
  const auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  for (auto [l, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 3}}) {
    const auto e = henon_family(l, m);
    Rational prev(0);
    for (int n = 1; n <= 5; ++n) {
      const Rational nu = nu_n_exact(e, n);
      if (nu != Rational(l - m, l) || nu < prev) {
        ++bad;
        r.detail += "(" + std::to_string(l) + "," + std::to_string(m) + ") n=" + std::to_string(n) + ": " + to_string(nu) + "; ";
      }
      prev = nu;
    }
  }
  const auto henon = henon_family(3, 1);
  const Rational hn = nu_n_exact(henon, 4);
  if (hn != Rational(2, 3)) ++bad;
  LelongOptions lo;
  lo.seed = o.seed;
  const auto I = exact_pt(Space::P2, {0, 0, 1});
  const auto est = lelong_estimate(DynGreenPotential(henon_family(2, 1), 8), I, lo);
  const double err = std::abs(est.slope - 0.5);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.measured = std::to_string(21 - bad) + "/21 exact, Henon " + to_string(hn) + ", g_8 slope " + num(est.slope);
  r.pass = bad == 0 && err <= 0.03 && dt < 60;
  return r;
}

CriterionResult c11(const AcceptanceOptions& o) {
  auto r = start(11, "transfer between P1xP1 and P2");
  r.target = "round trip and forward image equal pointwise";
  r.tolerance = "1e-10 on 100 points";
  const auto u = make_greenp1_family(1, 1, 3, q_family(1, 0, 0));
  const auto fwd = phi_forward(u);
  const auto back = phi_inverse(fwd, Rational(1));
  const auto gf = make_rational_green(fwd.components(), Space::P2,
                                      std::vector<ProjPoint>{exact_pt(Space::P2, {1, 0, 0}), exact_pt(Space::P2, {0, 1, 0}),
                                                             exact_pt(Space::P2, {0, 0, 1})});
  // R_f potential: (1 + b) g_f on P2, here b = 1
  const double factor = to_double(fwd.ref_weights()[0]);
  std::mt19937_64 g(o.seed);
  std::normal_distribution<double> N(0, 1.5);
  double round = 0, image = 0;
  for (int t = 0; t < 100; ++t) {
    const std::vector<cplx> w{{N(g), N(g)}, {N(g), N(g)}};
    const double a = u.local(0, w);
    round = std::max(round, std::abs(back.local(0, w) - a) / (1 + std::abs(a)));
    image = std::max(image, std::abs(fwd.local(0, w) - a) / (1 + std::abs(a)));
    const auto p = ProjPoint::make(Space::P2, {1.0, w[0], w[1]});
    image = std::max(image, std::abs(eval_potential(fwd, p) - factor * eval_potential(gf, p)));
  }
  r.measured = "round trip " + num(round) + ", forward " + num(image);
  r.pass = round <= 1e-10 && image <= 1e-10;
  return r;
}

CriterionResult c12(const AcceptanceOptions& o) {
  auto r = start(12, "negative controls");
  r.target = "wrong weights fail; holomorphic map flagged; gamma > a+b rejected";
  r.tolerance = "all three detected";
  const auto conics = two_conics();
  const auto rep = ma_report(conics, *conics.poles, grid(o, 0.1));
  const bool weights = !check_green(conics, rep, {0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}).pass;
  SparsePoly x2 = SparsePoly::ungraded(2), y2 = SparsePoly::ungraded(2);
  x2.add_term({2, 0}, GaussQ(1));
  y2.add_term({0, 2}, GaussQ(1));
  const auto hol = lift(x2, y2);
  const bool flagged = hol.holomorphic() && !weakly_regular_check(hol).regular;
  bool rejected = false;
  try {
    toric_envelope(toric_fs_obstacle(1, 1, 4, 65), 2.5, 33);
  } catch (const PrecondError&) {
    rejected = true;
  }
  r.measured = std::string("wrong weights ") + (weights ? "fail" : "pass") + ", holomorphic " +
               (flagged ? "flagged" : "missed") + ", gamma=2.5 " + (rejected ? "rejected" : "accepted");
  r.pass = weights && flagged && rejected;
  return r;
}

// explicit time limits, in seconds, for the criteria that state one
double time_limit(int id) {
  switch (id) {
    case 1: case 3: case 5: return 1;
    case 6: return 30;
    case 10: return 60;
    default: return 0;
  }
}

}  // namespace

Preset parse_preset(const std::string& s) {
  if (s == "fast") return Preset::Fast;
  if (s == "full") return Preset::Full;
  throw PrecondError("preset must be fast or full");
}

std::string to_string(Preset p) { return p == Preset::Fast ? "fast" : "full"; }

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  static const Fn table[kCriterionCount] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  if (id < 1 || id > kCriterionCount) throw PrecondError("criteria are numbered 1 to 12");
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](opt);
  } catch (const std::exception& e) {
    r.id = id;
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (const double lim = time_limit(id); lim > 0 && r.seconds > lim) {
    r.pass = false;
    r.detail += "took " + num(r.seconds) + " s, limit " + num(lim) + " s; ";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<int> ids = opt.only;
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(run_criterion(id, opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_row(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.title << " | measured: " << r.measured
    << " | target: " << r.target << " | tol: " << r.tolerance << " | " << num(r.seconds) << " s";
  if (!r.detail.empty()) s << " | " << r.detail;
  return s.str();
}

}  // namespace pluripot
