#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld/tate.hpp"

using namespace drinfeld;

TEST_CASE("twist moves coefficients, keeps t-degree") {
  Ctx C({3, 1, 2, 2}, 60);
  Series th = Series::theta(C);
  TSeries f(C, {Series::zero(C), th});  // theta * t
  TSeries g = frobenius_twist(f, 1);
  CHECK(g.deg() == 1);
  CHECK(g.coeff(1).identical(qpow(th, 1)));
  // f^(0) = f
  TSeries h = frobenius_twist(f, 0);
  CHECK(h.coeff(1).identical(th));
}

TEST_CASE("twist is a ring homomorphism up to truncation") {
  Ctx C({2, 1, 2, 1}, 60);
  Rng rng(2024);
  auto rand_ts = [&](int len) {
    std::vector<Series> c;
    for (int i = 0; i < len; ++i) {
      Series s = Series::zero(C);
      for (int j = 0; j < 4; ++j) {
        fq cf = static_cast<fq>(rng.below(C.field().card()));
        s = s + Series::monomial(C, cf, static_cast<std::int64_t>(rng.below(20)) - 10);
      }
      c.push_back(s);
    }
    return TSeries(C, std::move(c), 8);
  };
  for (int it = 0; it < 30; ++it) {
    TSeries f = rand_ts(5), g = rand_ts(6);
    TSeries lhs = frobenius_twist(f * g, 1);
    TSeries rhs = frobenius_twist(f, 1) * frobenius_twist(g, 1);
    CHECK(lhs.tprec() == rhs.tprec());
    for (int k = 0; k < 8; ++k)
      CHECK(Series::diff_val(lhs.coeff(k), rhs.coeff(k)) >=
            std::min(lhs.coeff(k).prec(), rhs.coeff(k).prec()));
  }
}

TEST_CASE("period for q=2 starts at theta^2") {
  Ctx C({2, 1, 1, 1}, 80);
  Series pi = carlitz_period(C, 60);
  CHECK(pi.val() == -2);  // |pi| = q^(q/(q-1)) = 4
  CHECK(pi.lead() == 1);
  CHECK(pi.prec() == 60);
  // oracle: truncate the product at i = 20 by hand
  Series prod = Series::one(C);
  for (int i = 1; i <= 20; ++i) {
    std::int64_t e = (std::int64_t{1} << i) - 1;  // q^i - 1
    if (e > 200) break;
    prod = prod * (Series::one(C) - Series::monomial(C, 1, e));
  }
  Series oracle = inv(prod).shifted(-2);  // -(-theta)^2 = theta^2 in char 2
  CHECK(Series::diff_val(pi, oracle) >= 60);
}

TEST_CASE("period valuation for q=3 is -3/2") {
  Ctx C({3, 1, 2, 2}, 60);  // m=2 so theta^(1/2) exists; F_9 holds zeta
  Series pi = carlitz_period(C, 40);
  CHECK(pi.val() == -3);  // u-units: q/(q-1) * m = 3/2 * 2
  // leading coefficient: -zeta^q
  const Field& F = C.field();
  CHECK(pi.lead() == F.neg(F.pow(F.zeta(), 3)));
}

TEST_CASE("period product cutoff stability") {
  Ctx C({2, 1, 1, 1}, 100);
  for (int imax = 4; imax < 7; ++imax) {
    Series a = carlitz_period(C, 90, 1, imax);
    Series b = carlitz_period(C, 90, 1, imax + 1);
    std::int64_t qimax = std::int64_t{1} << imax;
    CHECK(Series::diff_val(a, b) >= qimax - 1 - 2);  // val(pi) = -2
  }
}

TEST_CASE("period of the index-2 subring") {
  // x = theta^(1/2): the period of F_q[x] read in u-units of theta
  Ctx C({3, 1, 2, 4}, 60);  // m=4, q=3: 2*(q-1)=4 | m
  Series pi2 = carlitz_period(C, 40, 2);
  CHECK(pi2.val() == -3);  // (m/2)*q/(q-1) = 2*3/2 = 3
  // same series as the period computed in a context whose theta is x:
  // both u-grids are x^(-1/2), so digits agree one-for-one
  Ctx C2({3, 1, 2, 2}, 60);
  Series pi_base = carlitz_period(C2, 40);
  CHECK(pi_base.val() == -3);
  CHECK(pi2.with_prec(pi_base.prec()).digits() == pi_base.digits());
}

TEST_CASE("period rejects unsupported contexts") {
  Ctx C({3, 1, 2, 1}, 60);  // m=1, q=3: q-1 does not divide m
  CHECK_THROWS_AS(carlitz_period(C, 40), DomainError);
  Ctx D({3, 1, 1, 2}, 60);  // F_3 has no square root of -1
  CHECK_THROWS_AS(carlitz_period(D, 40), FieldError);
}

TEST_CASE("omega: leading behavior and functional equation") {
  Ctx C({3, 1, 2, 2}, 90);
  int t_order = 12, prec = 60;
  TSeries om = omega_series(C, t_order, prec);
  // |Omega(0)| = q^(-q/(q-1)): u-val = 3/2 * 2 = 3
  CHECK(om.coeff(0).val() == 3);
  // Omega^(-1) = (t - theta) * Omega, checked coefficient-wise
  TSeries lhs = frobenius_twist(om, -1);
  TSeries rhs = (TSeries::t(C) - TSeries::constant(Series::theta(C))) * om;
  rhs = rhs.truncated(t_order);
  for (int k = 0; k < t_order; ++k) {
    std::int64_t want = std::min(lhs.coeff(k).prec(), rhs.coeff(k).prec());
    CHECK(want >= prec * 2 / 3);  // root_q divides precision by q
    CHECK(Series::diff_val(lhs.coeff(k), rhs.coeff(k)) >= want);
  }
}

TEST_CASE("omega at t=theta multiplies with the period to -1") {
  for (FieldParams par : {FieldParams{2, 1, 1, 1}, FieldParams{3, 1, 2, 2},
                          FieldParams{2, 2, 1, 3}}) {
    Ctx C(par, 120);
    TSeries om = omega_series(C, 14, 100);
    Series pi = carlitz_period(C, 100);
    Series prod = om.eval(Series::theta(C)) * pi;
    Series minus1 = Series::scalar(C, C.field().minus_one());
    CHECK(Series::diff_val(prod, minus1) >= 60 * C.m());
  }
}

TEST_CASE("t-series ring axioms on random samples") {
  Ctx C({5, 1, 1, 1}, 40);
  Rng rng(555);
  auto rand_ts = [&](int len) {
    std::vector<Series> c;
    for (int i = 0; i < len; ++i)
      c.push_back(Series::monomial(C, static_cast<fq>(rng.below(5)),
                                   static_cast<std::int64_t>(rng.below(12)) - 6));
    return TSeries(C, std::move(c), 10);
  };
  for (int it = 0; it < 40; ++it) {
    TSeries a = rand_ts(4), b = rand_ts(5), c = rand_ts(3);
    TSeries l = (a + b) * c;
    TSeries r = a * c + b * c;
    for (int k = 0; k < 10; ++k)
      CHECK(Series::diff_val(l.coeff(k), r.coeff(k)) >=
            std::min(l.coeff(k).prec(), r.coeff(k).prec()));
    TSeries ab = a * b, ba = b * a;
    for (int k = 0; k < 10; ++k)
      CHECK(ab.coeff(k).identical(ba.coeff(k)));
  }
}

TEST_CASE("twist with negative n rejects non-q-th-powers") {
  Ctx C({3, 1, 1, 1}, 40);
  TSeries f(C, {Series::one(C) + Series::monomial(C, 1, 1)});
  CHECK_THROWS_AS(frobenius_twist(f, -1), DomainError);
}
