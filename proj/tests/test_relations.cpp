#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld/relations.hpp"
#include "drinfeld/tate.hpp"

using namespace drinfeld;

namespace {

Poly make_poly(const Field& F, std::vector<fq> c) { return Poly(&F, std::move(c)); }

std::vector<fq> coeff_vec(const Poly& c) {
  std::vector<fq> v;
  for (int i = 0; i <= c.deg(); ++i) v.push_back(c.coeff(i));
  return v;
}

}  // namespace

TEST_CASE("square root of theta satisfies X^2 - theta, minimally") {
  Ctx C({3, 1, 1, 2}, 80);
  Series xi = Series::theta_pow(C, 1);  // theta^(1/2), exact
  auto cert = detect_relation({xi, 3, 2, 40});
  REQUIRE(cert.has_value());
  CHECK(cert->deg_x == 2);  // nothing at degree 1
  REQUIRE(cert->coeffs.size() == 3);
  const Field& F = C.field();
  CHECK(coeff_vec(cert->coeffs[2]) == std::vector<fq>{1});
  CHECK(cert->coeffs[1].is_zero());
  CHECK(coeff_vec(cert->coeffs[0]) == std::vector<fq>{0, F.minus_one()});
  CHECK(cert->achieved_val >= cert->vt_num);
  // no linear relation
  CHECK(!detect_relation({xi, 1, 3, 30}).has_value());
}

TEST_CASE("rational function gives a height-one linear relation") {
  Ctx C({3, 1, 1, 1}, 80);
  Series th = Series::theta(C);
  Series xi = div(th + Series::one(C), th);  // 1 + 1/theta
  auto cert = detect_relation({xi, 2, 2, 40});
  REQUIRE(cert.has_value());
  CHECK(cert->deg_x == 1);
  CHECK(cert->deg_theta == 1);
  const Field& F = C.field();
  // theta*X - (theta + 1), top coefficient monic
  CHECK(coeff_vec(cert->coeffs[1]) == std::vector<fq>{0, 1});
  CHECK(coeff_vec(cert->coeffs[0]) ==
        std::vector<fq>{F.minus_one(), F.minus_one()});
}

TEST_CASE("no low relation for the exponential period") {
  Ctx C({3, 1, 2, 2}, 160);
  Series pi = carlitz_period(C, 100);
  CHECK(!detect_relation({pi, 3, 10, 60}).has_value());
  // its reciprocal (up to sign the special value at theta) is just as free
  Series omega_at_theta = inv(pi).scaled(C.field().minus_one());
  CHECK(!detect_relation({omega_at_theta, 2, 6, 40}).has_value());
}

TEST_CASE("ratio one certifies as X - 1") {
  Ctx C({3, 1, 2, 2}, 120);
  Series pi = carlitz_period(C, 80);
  auto res = cm_value_certify({{"same", pi}, {"twice", pi.scaled(2)},
                               {"off", pi + Series::one(C)}},
                              pi, 2, 2, 30);
  REQUIRE(res.size() == 3);
  CHECK(res[0].label == "same");
  REQUIRE(res[0].cert.has_value());
  CHECK(res[0].cert->deg_x == 1);
  CHECK(coeff_vec(res[0].cert->coeffs[0]) ==
        std::vector<fq>{C.field().minus_one()});
  REQUIRE(res[1].cert.has_value());  // X - 2
  CHECK(coeff_vec(res[1].cert->coeffs[0]) == std::vector<fq>{1});
  CHECK(!res[2].cert.has_value());   // 1 + 1/pi is not algebraic here
}

TEST_CASE("certificates are stable under precision changes") {
  Ctx C({3, 1, 1, 2}, 160);
  Series th = Series::theta(C);
  Series xi_full = root(th + Series::one(C), 2);
  auto lo = detect_relation({xi_full.with_prec(60 * C.m()), 2, 2, 25});
  auto hi = detect_relation({xi_full.with_prec(80 * C.m()), 2, 2, 25});
  REQUIRE(lo.has_value());
  REQUIRE(hi.has_value());
  CHECK(lo->coeffs.size() == hi->coeffs.size());
  for (size_t i = 0; i < lo->coeffs.size(); ++i)
    CHECK(lo->coeffs[i].coeffs_in_base_field() == hi->coeffs[i].coeffs_in_base_field());
  // monotonicity: a wider search window finds the same minimal relation
  auto wide = detect_relation({xi_full.with_prec(80 * C.m()), 4, 4, 25});
  REQUIRE(wide.has_value());
  CHECK(wide->deg_x == 2);
  CHECK(coeff_vec(wide->coeffs[0]) ==
        coeff_vec(hi->coeffs[0]));
}

TEST_CASE("insufficient slack between target and precision is refused") {
  Ctx C({3, 1, 2, 2}, 160);
  Series pi = carlitz_period(C, 80);
  CHECK_THROWS_AS(detect_relation({pi.with_prec(50), 1, 0, 60}), DomainError);
  CHECK_THROWS_AS(detect_relation({pi, 0, 0, 30}), DomainError);
  // exact input, so only the system size can refuse
  Series xs = Series::theta_pow(C, 1);
  CHECK_THROWS_AS(detect_relation({xs, 2, 80000, 100}), BudgetError);
}

TEST_CASE("determinant of the rank-one period lattice is minus the period") {
  Ctx C({3, 1, 2, 2}, 160);
  Series pi = carlitz_period(C, 100);
  DrinfeldModule carlitz(C, {Series::one(C)});
  PeriodMatrix P = period_matrix(carlitz, {pi});
  auto cert = legendre_check(P, pi, 2, 2, 40);
  REQUIRE(cert.has_value());
  // det/pi = -1, so the minimal relation is X + 1
  CHECK(cert->deg_x == 1);
  CHECK(coeff_vec(cert->coeffs[1]) == std::vector<fq>{1});
  CHECK(coeff_vec(cert->coeffs[0]) == std::vector<fq>{1});
}

TEST_CASE("transcendence degree predictions and refusals") {
  CHECK(trdeg_predict({2, 2, 2}, true, true).degree == 4);
  CHECK(trdeg_predict({2, 3}, true, true).degree == 4);
  CHECK(trdeg_predict({2}, false, false, 2).degree == 2);
  CHECK(trdeg_predict({3}, false, false, 3).degree == 3);
  CHECK_THROWS_AS(trdeg_predict({2, 2}, false, true), DomainError);
  CHECK_THROWS_AS(trdeg_predict({2, 2}, true, false), DomainError);
  CHECK_THROWS_AS(trdeg_predict({1, 2}, true, true), DomainError);
  CHECK_THROWS_AS(trdeg_predict({3}, false, false, 2), DomainError);
  CHECK_THROWS_AS(trdeg_predict({2}, false, false), DomainError);
  CHECK_THROWS_AS(trdeg_predict({}, true, true), DomainError);
}

TEST_CASE("probe flags a cross relation between a value and its square") {
  Ctx C({3, 1, 2, 2}, 160);
  Series pi = carlitz_period(C, 80);
  auto rep = independence_probe({pi, pi * pi}, 2, 6, 40);
  CHECK(!rep.univariate[0].has_value());
  CHECK(!rep.univariate[1].has_value());
  CHECK(rep.cross_found);
  bool found_xx_y = false;
  for (const auto& rel : rep.relations) {
    if (rel.terms.size() != 2) continue;
    if (rel.terms[0].first == std::vector<int>{0, 1} &&
        rel.terms[1].first == std::vector<int>{2, 0})
      found_xx_y = true;
  }
  CHECK(found_xx_y);
}

TEST_CASE("probe sees only univariate structure for radicals of theta") {
  Ctx C({3, 1, 1, 6}, 80);
  Series sq = Series::theta_pow(C, 3);  // theta^(1/2)
  Series cb = Series::theta_pow(C, 2);  // theta^(1/3)
  auto rep = independence_probe({sq, cb}, 3, 1, 30);
  REQUIRE(rep.univariate[0].has_value());
  CHECK(rep.univariate[0]->deg_x == 2);
  REQUIRE(rep.univariate[1].has_value());
  CHECK(rep.univariate[1]->deg_x == 3);
  CHECK(!rep.relations.empty());
  for (const auto& rel : rep.relations) CHECK(rel.implied);
  CHECK(!rep.cross_found);
}

TEST_CASE("relation rendering is readable") {
  Ctx C({3, 1, 1, 2}, 80);
  Series xi = Series::theta_pow(C, 1);
  auto cert = detect_relation({xi, 2, 1, 30});
  REQUIRE(cert.has_value());
  CHECK(cert->poly_str() == "X^2 + 2*th");
  Poly c = make_poly(C.field(), {1});
  MultiRelation r;
  r.terms.emplace_back(std::vector<int>{2, 0}, make_poly(C.field(), {0, 2}));
  r.terms.emplace_back(std::vector<int>{0, 1}, c);
  CHECK(r.str({"a", "b"}) == "(2*th)*a^2 + (1)*b");
}
