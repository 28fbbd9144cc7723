// Command-line front end: scenarios in, CSV out.
//
// Exit codes: 0 success, 1 I/O failure, 2 validation failure, 3 numerical tolerance failure.

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "pluripot/acceptance.hpp"
#include "pluripot/dynamics.hpp"
#include "pluripot/envelope.hpp"
#include "pluripot/lelong.hpp"
#include "pluripot/ma_grid.hpp"
#include "pluripot/potential.hpp"
#include "pluripot/potential_json.hpp"
#include "pluripot/version.hpp"

using namespace pluripot;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exit status for a numerical check that ran but did not meet its tolerance.
class ToleranceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// Parameters of one scenario; every key must be consumed before the computation starts.
class Params {
 public:
  explicit Params(json j) : j_(std::move(j)) {
    if (!j_.is_object()) throw PrecondError("scenario must be a JSON object");
  }

  bool has(const std::string& k) const { return j_.contains(k); }
  const json& raw(const std::string& k) {
    if (!has(k)) throw PrecondError("missing parameter '" + k + "'");
    used_.insert(k);
    return j_.at(k);
  }
  std::string str(const std::string& k, const std::string& dflt) {
    if (!has(k)) return dflt;
    const json& v = raw(k);
    if (!v.is_string()) throw PrecondError("parameter '" + k + "' must be a string");
    return v.get<std::string>();
  }
  std::string str(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_string()) throw PrecondError("parameter '" + k + "' must be a string");
    return v.get<std::string>();
  }
  long integer(const std::string& k, std::optional<long> dflt = std::nullopt) {
    if (!has(k)) {
      if (!dflt) throw PrecondError("missing parameter '" + k + "'");
      return *dflt;
    }
    const json& v = raw(k);
    if (!v.is_number_integer()) throw PrecondError("parameter '" + k + "' must be an integer");
    return v.get<long>();
  }
  double real(const std::string& k, std::optional<double> dflt = std::nullopt) {
    if (!has(k)) {
      if (!dflt) throw PrecondError("missing parameter '" + k + "'");
      return *dflt;
    }
    const json& v = raw(k);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    throw PrecondError("parameter '" + k + "' must be a number");
  }
  Rational rational(const std::string& k, std::optional<Rational> dflt = std::nullopt) {
    if (!has(k)) {
      if (!dflt) throw PrecondError("missing parameter '" + k + "'");
      return *dflt;
    }
    const json& v = raw(k);
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw PrecondError("parameter '" + k + "' must be an integer or a string \"p/q\"");
  }
  bool flag(const std::string& k, bool dflt) {
    if (!has(k)) return dflt;
    const json& v = raw(k);
    if (!v.is_boolean()) throw PrecondError("parameter '" + k + "' must be true or false");
    return v.get<bool>();
  }
  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) throw PrecondError("unknown parameter '" + k + "'");
  }
  const json& all() const { return j_; }

 private:
  json j_;
  std::set<std::string> used_;
};

struct Context {
  std::uint64_t seed = 1;
  Preset preset = Preset::Fast;
  // Set by a command whose check failed; the CSV is still written before exiting with status 3.
  mutable std::string failure;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void add(std::vector<std::string> r) { rows.push_back(std::move(r)); }
};

std::string render(const std::string& command, const Params& p, const Context& ctx, const Table& t) {
  std::ostringstream os;
  os << "# pluripot " << kVersion << " command=" << command << " seed=" << ctx.seed
     << " preset=" << to_string(ctx.preset) << " params=" << p.all().dump() << "\n";
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << quote(r[i]);
    os << "\n";
  }
  return os.str();
}

const std::vector<int> G3{3};

// Affine map component: [[i, j, c], ...] or [{"exponents": [i, j], "re": c}, ...].
SparsePoly affine_poly(const json& j) {
  if (!j.is_array() || j.empty()) throw PrecondError("a map component is a nonempty list of terms");
  SparsePoly p = SparsePoly::ungraded(2);
  for (const auto& t : j) {
    Exponent e;
    json c;
    if (t.is_array() && t.size() == 3) {
      e = {t[0].get<int>(), t[1].get<int>()};
      c = t[2];
    } else if (t.is_object() && t.contains("exponents")) {
      e = t.at("exponents").get<Exponent>();
      c = t.contains("re") ? t.at("re") : json(0);
    } else {
      throw PrecondError("map term must be [i, j, c] or {\"exponents\": [i, j], \"re\": c}");
    }
    if (e.size() != 2) throw PrecondError("map terms have two exponents");
    Rational r;
    if (c.is_number_integer()) r = Rational(c.get<long>());
    else if (c.is_string()) r = parse_rational(c.get<std::string>());
    else throw PrecondError("map coefficients must be integers");
    p.add_term(e, GaussQ(r));
  }
  return p;
}

PolyEndo map_from(Params& p) {
  if (p.has("map")) {
    const json& m = p.raw("map");
    if (!m.is_object() || !m.contains("p") || !m.contains("q")) throw PrecondError("map needs components 'p' and 'q'");
    return lift(affine_poly(m.at("p")), affine_poly(m.at("q")));
  }
  return henon_family(static_cast<int>(p.integer("lambda")), static_cast<int>(p.integer("mu")));
}

struct Subject {
  std::shared_ptr<Evaluable> phi;
  std::shared_ptr<LogNormPotential> lognorm;  // when the potential is a log-norm one
  std::vector<ProjPoint> poles;
  std::vector<double> weights;  // claimed pole weights, when the family knows them
};

Subject lognorm_subject(LogNormPotential phi) {
  Subject s;
  s.lognorm = std::make_shared<LogNormPotential>(std::move(phi));
  s.phi = s.lognorm;
  if (s.lognorm->poles) s.poles = *s.lognorm->poles;
  return s;
}

Subject potential_from(Params& p) {
  const std::string fam = p.str("family");
  if (fam == "cusp") {
    auto s = lognorm_subject(make_cusp_green(static_cast<int>(p.integer("n")), static_cast<int>(p.integer("k"))));
    s.weights = {1.0};
    return s;
  }
  if (fam == "conics") {
    std::vector<std::pair<Exponent, GaussQ>> a{{{0, 2, 0}, GaussQ(1)}, {{2, 0, 0}, GaussQ(-1)}};
    std::vector<std::pair<Exponent, GaussQ>> b{{{0, 0, 2}, GaussQ(1)}, {{2, 0, 0}, GaussQ(-1)}};
    auto s = lognorm_subject(
        make_rational_green({SparsePoly::from_terms(G3, a), SparsePoly::from_terms(G3, b)}, Space::P2));
    s.weights.assign(s.poles.size(), 1.0 / static_cast<double>(s.poles.size()));
    return s;
  }
  if (fam == "rational_green") {
    std::vector<SparsePoly> forms;
    for (const auto& f : p.raw("forms")) forms.push_back(poly_from_json(f, G3));
    return lognorm_subject(make_rational_green(forms, Space::P2));
  }
  if (fam == "hyperplanes") {
    std::vector<SparsePoly> lines;
    if (p.has("lines")) {
      for (const auto& f : p.raw("lines")) lines.push_back(poly_from_json(f, G3));
    } else {
      for (int i = 0; i < 3; ++i) lines.push_back(SparsePoly::variable(G3, i));
    }
    return lognorm_subject(make_hyperplane_avg(lines));
  }
  if (fam == "greenp1") {
    const int n = static_cast<int>(p.integer("n")), m = static_cast<int>(p.integer("m")), k = static_cast<int>(p.integer("k"));
    return lognorm_subject(make_greenp1_family(n, m, k, poly_from_json(p.raw("Q"), G3)));
  }
  if (fam == "rab") {
    const auto pt = p.has("point") ? point_from_json(p.raw("point"), Space::P1xP1)
                                   : ProjPoint::make_exact(Space::P1xP1, {GaussQ(1), GaussQ(0), GaussQ(1), GaussQ(0)});
    auto s = lognorm_subject(make_rab(p.rational("a"), p.rational("b"), pt));
    s.weights = {1.0};
    return s;
  }
  if (fam == "fs") {
    const Space sp = parse_space(p.str("space", "P2"));
    KClass k = sp == Space::P1xP1 ? KClass::p1p1(p.rational("a", Rational(1)), p.rational("b", Rational(1)))
                                  : KClass::pn(sp, p.rational("c", Rational(1)));
    Subject s;
    s.phi = std::make_shared<ZeroPotential>(k);
    return s;
  }
  if (fam == "json") return lognorm_subject(potential_from_json(p.raw("potential")));
  if (fam == "dyn") {
    const PolyEndo e = map_from(p);
    Subject s;
    s.phi = std::make_shared<DynGreenPotential>(e, static_cast<int>(p.integer("n", 8)));
    s.poles = e.indeterminacy;
    return s;
  }
  throw PrecondError("unknown family '" + fam + "'");
}

// ---- commands -------------------------------------------------------------

Table cmd_eval(Params& p, const Context&) {
  auto s = potential_from(p);
  const Space sp = s.phi->space();
  std::vector<ProjPoint> pts;
  for (const auto& j : p.raw("points")) pts.push_back(point_from_json(j, sp));
  p.finish();
  Table t{{"index", "point", "phi"}, {}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = s.lognorm ? eval_potential(*s.lognorm, pts[i]) : (*s.phi)(pts[i]);
    t.add({std::to_string(i), to_string(pts[i]), fmt(v)});
  }
  return t;
}

Table cmd_lelong(Params& p, const Context& ctx) {
  auto s = potential_from(p);
  ProjPoint pt;
  if (p.has("point")) {
    pt = point_from_json(p.raw("point"), s.phi->space());
  } else {
    if (s.poles.empty()) throw PrecondError("no 'point' given and the family has no known pole");
    pt = s.poles.front();
  }
  LelongOptions lo;
  lo.r0 = p.real("r0", lo.r0);
  lo.levels = static_cast<int>(p.integer("levels", lo.levels));
  lo.samples = static_cast<int>(p.integer("samples", lo.samples));
  lo.use_max = p.flag("use_max", false);
  lo.seed = ctx.seed;
  p.finish();
  const auto est = lelong_estimate(*s.phi, pt, lo);
  Table t{{"quantity", "radius", "value"}, {}};
  for (std::size_t i = 0; i < est.radii.size(); ++i) t.add({"mean", fmt(est.radii[i]), fmt(est.means[i])});
  for (std::size_t i = 0; i < est.secants.size(); ++i) t.add({"secant", fmt(est.radii[i + 1]), fmt(est.secants[i])});
  if (s.lognorm && pt.exact) t.add({"exact", "", to_string(lelong_exact(*s.lognorm, pt))});
  t.add({"std_error", "", fmt(est.std_error)});
  t.add({"estimate", "", fmt(est.slope)});
  return t;
}

Table cmd_envelope(Params& p, const Context&) {
  const std::string kind = p.str("kind", "radial");
  if (kind == "radial") {
    const double gamma = p.real("gamma"), x0 = p.real("x_min", -8.0), x1 = p.real("x_max", 8.0), c = p.real("c", 1.0);
    const int n = static_cast<int>(p.integer("n", 4096));
    p.finish();
    const auto obs = fs_radial_obstacle(x0, x1, n, c);
    const auto env = radial_envelope(obs, gamma);
    const bool closed = c == 1.0 && gamma > 0 && gamma < 1;
    std::optional<RadialProfile> ref;
    if (closed) ref = radial_partial_green(gamma).profile(x0, x1, n);
    Table t{{"x", "obstacle", "envelope", "closed_form"}, {}};
    for (int i = 0; i < env.size(); ++i) t.add({fmt(env.x(i)), fmt(obs.w[i]), fmt(env.w[i]), ref ? fmt(ref->w[i]) : ""});
    return t;
  }
  if (kind == "toric" || kind == "toric_masses") {
    const double a = p.real("a", 1.0), b = p.real("b", 1.0), gamma = p.real("gamma"), L = p.real("L", 4.0);
    const int n = static_cast<int>(p.integer("n", 257)), nd = static_cast<int>(p.integer("nd", 129));
    const double tol = kind == "toric_masses" ? p.real("tol", 1e-2) : 0;
    p.finish();
    const auto env = toric_envelope(toric_fs_obstacle(a, b, L, n), gamma, nd);
    if (kind == "toric_masses") {
      const auto m = toric_ma_masses(env, nd - 1, tol);
      Table t{{"quantity", "value"}, {}};
      t.add({"dirac", fmt(m.dirac)});
      t.add({"boundary", fmt(m.boundary)});
      t.add({"interior", fmt(m.interior)});
      t.add({"total", fmt(m.total)});
      t.add({"ambiguous_fraction", fmt(m.ambiguous_fraction)});
      return t;
    }
    const bool closed = a == 1 && b == 1 && gamma == 1;
    Table t{{"x", "y", "obstacle", "envelope", "closed_form"}, {}};
    for (int i = 0; i < env.n; ++i)
      for (int j = 0; j < env.n; ++j)
        t.add({fmt(env.x(i)), fmt(env.x(j)), fmt(env.h[static_cast<std::size_t>(i) * env.n + j]), fmt(env.at(i, j)),
               closed ? fmt(toric_green_closed_form(env.x(i), env.x(j))) : ""});
    return t;
  }
  throw PrecondError("envelope kind must be radial, toric or toric_masses");
}

Table cmd_ma(Params& p, const Context& ctx) {
  auto s = potential_from(p);
  GridParams gp;
  gp.h = p.real("h", ctx.preset == Preset::Full ? 0.05 : 0.1);
  gp.box = p.real("box", gp.box);
  gp.ball_radius = p.real("ball_radius", gp.ball_radius);
  gp.flux_samples = static_cast<int>(p.integer("flux_samples", gp.flux_samples));
  gp.seed = ctx.seed;
  if (p.has("poles")) {
    s.poles.clear();
    for (const auto& j : p.raw("poles")) s.poles.push_back(point_from_json(j, s.phi->space()));
  }
  std::vector<double> weights;
  bool check = p.flag("check", !s.weights.empty() || p.has("weights"));
  if (p.has("weights")) {
    for (const auto& w : p.raw("weights"))
      weights.push_back(w.is_string() ? to_double(parse_rational(w.get<std::string>())) : w.get<double>());
  } else {
    weights = s.weights;
  }
  if (check && weights.size() != s.poles.size()) throw PrecondError("one weight per pole expected");
  p.finish();
  const auto rep = ma_report(*s.phi, s.poles, gp);
  Table t{{"quantity", "pole", "value"}, {}};
  t.add({"volume", "", fmt(rep.volume)});
  t.add({"smooth", "", fmt(rep.smooth)});
  t.add({"atoms", "", fmt(rep.atoms)});
  t.add({"defect", "", fmt(rep.defect)});
  t.add({"min_density", "", fmt(rep.min_density)});
  t.add({"points", "", std::to_string(rep.points)});
  t.add({"refined", "", std::to_string(rep.refined)});
  for (std::size_t k = 0; k < rep.smooth_per_chart.size(); ++k)
    t.add({"smooth_chart_" + std::to_string(k), "", fmt(rep.smooth_per_chart[k])});
  for (const auto& pm : rep.poles) {
    t.add({"ball_mass", to_string(pm.pole), fmt(pm.ball_mass)});
    t.add({"shell_mass", to_string(pm.pole), fmt(pm.shell_mass)});
    t.add({"mass", to_string(pm.pole), fmt(pm.mass)});
  }
  if (check) {
    const auto gc = check_green(*s.phi, rep, weights);
    for (std::size_t i = 0; i < weights.size(); ++i) t.add({"claimed", to_string(s.poles[i]), fmt(weights[i])});
    t.add({"check_green", "", gc.pass ? "PASS" : "FAIL"});
    if (!gc.pass) {
      for (const auto& f : gc.failures) ctx.failure += f + "; ";
    }
  }
  return t;
}

Table cmd_dyn(Params& p, const Context& ctx) {
  const PolyEndo e = map_from(p);
  const int n_max = static_cast<int>(p.integer("n_max", 5));
  const bool numeric = p.flag("numeric", false);
  p.finish();
  if (n_max < 1) throw PrecondError("n_max must be at least 1");
  Table t{{"n", "nu_exact", "nu_value"}, {}};
  if (numeric) t.header.push_back("lelong_estimate");
  LelongOptions lo;
  lo.seed = ctx.seed;
  for (int n = 1; n <= n_max; ++n) {
    const Rational nu = nu_n_exact(e, n);
    std::vector<std::string> row{std::to_string(n), to_string(nu), fmt(to_double(nu))};
    if (numeric) row.push_back(fmt(lelong_estimate(DynGreenPotential(e, n), e.indeterminacy.front(), lo).slope));
    t.add(std::move(row));
  }
  return t;
}

Table cmd_indicators(Params& p, const Context&) {
  const Space sp = parse_space(p.str("space", "P2"));
  KClass k = sp == Space::P1xP1 ? KClass::p1p1(p.rational("a"), p.rational("b")) : KClass::pn(sp, p.rational("c", Rational(1)));
  ProjPoint pt = p.has("point") ? point_from_json(p.raw("point"), sp)
                                : from_chart(sp, 0, std::vector<cplx>(static_cast<std::size_t>(affine_dim(sp)), 0.0));
  p.finish();
  const auto ind = indicators(k, pt);
  Table t{{"nu", "eps"}, {}};
  t.add({to_string(ind.nu), to_string(ind.eps)});
  return t;
}

Table cmd_transfer(Params& p, const Context& ctx) {
  const int n = static_cast<int>(p.integer("n", 1)), m = static_cast<int>(p.integer("m", 1)),
            k = static_cast<int>(p.integer("k", 3));
  const SparsePoly Q = poly_from_json(p.raw("Q"), G3);
  const int count = static_cast<int>(p.integer("points", 100));
  p.finish();
  const auto u = make_greenp1_family(n, m, k, Q);
  const auto fwd = phi_forward(u);
  const auto back = phi_inverse(fwd, fwd.ref_weights()[0] - u.ref_weights()[1]);
  std::mt19937_64 g(ctx.seed);
  std::normal_distribution<double> N(0, 1.5);
  Table t{{"index", "w1", "w2", "u", "forward", "inverse"}, {}};
  auto c = [](cplx z) { return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i"; };
  for (int i = 0; i < count; ++i) {
    const std::vector<cplx> w{{N(g), N(g)}, {N(g), N(g)}};
    t.add({std::to_string(i), c(w[0]), c(w[1]), fmt(u.local(0, w)), fmt(fwd.local(0, w)), fmt(back.local(0, w))});
  }
  return t;
}

using Handler = Table (*)(Params&, const Context&);

Handler handler_for(const std::string& cmd) {
  static const std::map<std::string, Handler> table{{"eval", cmd_eval},         {"lelong", cmd_lelong},
                                                    {"envelope", cmd_envelope}, {"ma", cmd_ma},
                                                    {"dyn", cmd_dyn},           {"indicators", cmd_indicators},
                                                    {"transfer", cmd_transfer}};
  auto it = table.find(cmd);
  if (it == table.end()) throw PrecondError("unknown command '" + cmd + "'");
  return it->second;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("cannot write '" + path + "'");
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw PrecondError("malformed JSON in '" + path + "': " + e.what());
  }
}

// Runs one scenario; nothing is written unless the computation completed.
void run_scenario(const std::string& cmd, json params, const Context& ctx, const std::string& out) {
  Params p(std::move(params));
  Table t;
  try {
    t = handler_for(cmd)(p, ctx);
  } catch (const json::exception& e) {
    throw PrecondError(std::string("bad parameter value: ") + e.what());
  }
  write_output(out, render(cmd, p, ctx, t));
  if (!ctx.failure.empty()) throw ToleranceFailure(ctx.failure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical and exact tools for quasi-plurisubharmonic Green functions"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string preset = "fast";
  app.add_option("--out", out, "CSV output path (default: standard output)");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--threads", threads, "Worker threads (PLURIPOT_THREADS overrides)");
  app.add_option("--preset", preset, "Grid preset: fast or full");

  struct Direct {
    std::string scenario;
    std::vector<std::string> sets;
    std::string inline_json;
  };
  std::map<std::string, Direct> direct;
  for (const char* name : {"eval", "lelong", "envelope", "ma", "dyn", "indicators", "transfer"}) {
    auto* sc = app.add_subcommand(name, std::string("Run the ") + name + " computation");
    auto& d = direct[name];
    sc->add_option("--scenario", d.scenario, "JSON file with the parameters");
    sc->add_option("--json", d.inline_json, "Parameters as an inline JSON object");
    sc->add_option("--set", d.sets, "key=value; the value is read as JSON when it parses, else as a string");
  }
  std::string scenario_file;
  auto* run = app.add_subcommand("run", "Run a scenario file naming its command");
  run->add_option("scenario", scenario_file, "Scenario JSON file")->required();
  std::vector<int> only;
  bool perturb = false;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--only", only, "Criteria to run (default: all)")->delimiter(',');
  verify->add_flag("--perturb", perturb, "Claim wrong pole weights in the Green-function check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (const char* env = std::getenv("PLURIPOT_THREADS")) {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        throw PrecondError("PLURIPOT_THREADS must be an integer");
      }
    }
    if (threads < 0) throw PrecondError("thread count must be positive");
    if (threads > 0) omp_set_num_threads(threads);
    Context ctx;
    ctx.seed = seed;
    ctx.preset = parse_preset(preset);

    if (*verify) {
      AcceptanceOptions opt;
      opt.preset = ctx.preset;
      opt.seed = seed;
      opt.perturb_weights = perturb;
      opt.only = only;
      for (int id : only)
        if (id < 1 || id > kCriterionCount) throw PrecondError("criteria are numbered 1 to 12");
      std::vector<std::string> failed;
      std::ostringstream csv;
      csv << "# pluripot " << kVersion << " command=verify seed=" << seed << " preset=" << preset
          << " perturb=" << (perturb ? "true" : "false") << "\n";
      csv << "id,title,result,measured,target,tolerance\n";
      run_acceptance(opt, [&](const CriterionResult& r) {
        std::cout << format_row(r) << std::endl;
        if (!r.pass) failed.push_back(std::to_string(r.id));
        csv << r.id << "," << quote(r.title) << "," << (r.pass ? "PASS" : "FAIL") << "," << quote(r.measured) << ","
            << quote(r.target) << "," << quote(r.tolerance) << "\n";
      });
      if (!out.empty()) write_output(out, csv.str());
      if (!failed.empty()) {
        std::string list;
        for (const auto& f : failed) list += (list.empty() ? "" : ",") + f;
        std::cerr << "failed criteria: " << list << "\n";
        return 3;
      }
      return 0;
    }
    if (*run) {
      json j = read_json_file(scenario_file);
      if (!j.is_object() || !j.contains("command") || !j.at("command").is_string())
        throw PrecondError("scenario needs a string 'command'");
      const std::string cmd = j.at("command").get<std::string>();
      j.erase("command");
      if (j.contains("out")) {
        if (!j.at("out").is_string()) throw PrecondError("'out' must be a path string");
        if (out.empty()) out = j.at("out").get<std::string>();
        j.erase("out");
      }
      if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw PrecondError("'seed' must be a nonnegative integer");
        ctx.seed = j.at("seed").get<std::uint64_t>();
        j.erase("seed");
      }
      run_scenario(cmd, std::move(j), ctx, out);
      return 0;
    }
    for (auto& [name, d] : direct) {
      if (!app.got_subcommand(name)) continue;
      json params = json::object();
      if (!d.scenario.empty()) params = read_json_file(d.scenario);
      if (!d.inline_json.empty()) {
        try {
          params.update(json::parse(d.inline_json));
        } catch (const json::parse_error& e) {
          throw PrecondError(std::string("malformed --json: ") + e.what());
        }
      }
      for (const auto& s : d.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw PrecondError("--set expects key=value");
        const std::string key = s.substr(0, eq), val = s.substr(eq + 1);
        json v = json::parse(val, nullptr, false);
        params[key] = v.is_discarded() ? json(val) : v;
      }
      run_scenario(name, std::move(params), ctx, out);
      return 0;
    }
    return 2;
  } catch (const ToleranceFailure& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const PrecondError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "I/O failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
