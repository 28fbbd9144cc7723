#include <doctest.h>

#include <random>

#include "pluripot/roots.hpp"
#include "pluripot/sparse_poly.hpp"

using namespace pluripot;

namespace {

GaussQ rnd_q(std::mt19937_64& g) {
  std::uniform_int_distribution<int> n(-9, 9), d(1, 7);
  return GaussQ(Rational(n(g), d(g)), Rational(n(g), d(g)));
}

SparsePoly random_form(std::mt19937_64& g, int deg, int terms) {
  std::uniform_int_distribution<int> e(0, deg);
  SparsePoly p({3}, {deg});
  for (int t = 0; t < terms; ++t) {
    int a = e(g), b = std::uniform_int_distribution<int>(0, deg - a)(g);
    p.add_term({a, b, deg - a - b}, rnd_q(g));
  }
  return p;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("7") == 7);
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK_THROWS_AS(parse_rational("0.5"), PrecondError);
  CHECK_THROWS_AS(parse_rational("1/0"), PrecondError);
  CHECK_THROWS_AS(parse_rational("x"), PrecondError);
  Rational q;
  CHECK(snap_rational(0.6666666666667, 100, 1e-9, q));
  CHECK(q == Rational(2, 3));
  CHECK_FALSE(snap_rational(3.14159265358979, 100, 1e-9, q));
}

TEST_CASE("homogeneity is enforced and zeros are not stored") {
  CHECK_THROWS_AS(SparsePoly::from_terms({3}, {{{1, 0, 0}, GaussQ(1)}, {{1, 1, 0}, GaussQ(1)}}), PrecondError);
  CHECK_THROWS_AS(SparsePoly::from_terms({2, 2}, {{{1, 0, 1, 0}, GaussQ(1)}, {{2, 0, 1, 0}, GaussQ(1)}}), PrecondError);
  auto p = SparsePoly::from_terms({3}, {{{1, 0, 0}, GaussQ(1)}, {{1, 0, 0}, GaussQ(-1)}, {{0, 1, 0}, GaussQ(2)}});
  CHECK(p.size() == 1);
  auto z = p - p;
  CHECK(z.is_zero());
}

TEST_CASE("ring operations agree with exact evaluation") {
  std::mt19937_64 g(1);
  for (int t = 0; t < 20; ++t) {
    auto a = random_form(g, 3, 5), b = random_form(g, 3, 4), c = random_form(g, 2, 3);
    std::vector<GaussQ> x{rnd_q(g), rnd_q(g), rnd_q(g)};
    std::span<const GaussQ> xs(x);
    CHECK((a + b).eval(xs) == a.eval(xs) + b.eval(xs));
    CHECK((a * c).eval(xs) == a.eval(xs) * c.eval(xs));
    CHECK(c.pow(3).eval(xs) == pow(c.eval(xs), 3));
    CHECK((a * c).degrees() == std::vector<int>{5});
    // substitution by linear forms equals evaluation at the image point
    std::vector<SparsePoly> im;
    std::vector<GaussQ> y(3);
    for (int i = 0; i < 3; ++i) {
      SparsePoly l({3}, {1});
      for (int j = 0; j < 3; ++j) {
        GaussQ coef = rnd_q(g);
        Exponent e(3, 0);
        e[j] = 1;
        l.add_term(e, coef);
      }
      y[i] = l.eval(xs);
      im.push_back(l);
    }
    CHECK(a.substitute(im).eval(xs) == a.eval(std::span<const GaussQ>(y)));
  }
}

TEST_CASE("derivative and monomial division") {
  auto p = SparsePoly::from_terms({3}, {{{2, 1, 0}, GaussQ(3)}, {{0, 1, 2}, GaussQ(5)}});
  auto d = p.derivative(0);
  CHECK(d.terms().size() == 1);
  CHECK(d.terms().at({1, 1, 0}) == GaussQ(6));
  SparsePoly q;
  CHECK(p.divide_monomial({0, 1, 0}, q));
  CHECK(q.degrees() == std::vector<int>{2});
  CHECK_FALSE(p.divide_monomial({1, 0, 0}, q));
  CHECK(p.min_total_degree() == 3);
  CHECK(p.max_exponent(2) == 2);
}

TEST_CASE("numeric roots") {
  // (x-1)(x+2)(x-i) expanded
  std::vector<cplx> c{cplx(0, 2), cplx(-2, -1), cplx(1, -1), 1.0};
  auto r = poly_roots(c);
  REQUIRE(r.size() == 3);
  int hits = 0;
  for (auto z : r)
    for (cplx e : {cplx(1, 0), cplx(-2, 0), cplx(0, 1)}) hits += std::abs(z - e) < 1e-12;
  CHECK(hits == 3);
  CHECK(poly_roots({1.0}).empty());
  CHECK(poly_roots({2.0, 1.0, 0.0}).size() == 1);
}
