#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld/ore.hpp"
#include "drinfeld/tate.hpp"

using namespace drinfeld;

static DrinfeldModule carlitz(const Ctx& C) {
  return DrinfeldModule(C, {Series::one(C)});
}

TEST_CASE("defining relation tau theta = theta^q tau") {
  Ctx C({3, 1, 1, 1}, 60);
  TwistedPoly tau = TwistedPoly::tau(C);
  TwistedPoly th(C, {Series::theta(C)});
  TwistedPoly prod = tau * th;
  CHECK(prod.deg() == 1);
  CHECK(prod.coeff(0).exact_zero());
  CHECK(prod.coeff(1).identical(qpow(Series::theta(C), 1)));
}

TEST_CASE("(theta + tau)^2 expands to theta^2 + (theta^q+theta) tau + tau^2") {
  Ctx C({3, 1, 1, 1}, 60);
  TwistedPoly f(C, {Series::theta(C), Series::one(C)});
  TwistedPoly sq = f * f;
  Series th = Series::theta(C);
  CHECK(sq.coeff(0).identical(th * th));
  CHECK(sq.coeff(1).identical(qpow(th, 1) + th));
  CHECK(sq.coeff(2).identical(Series::one(C)));
  CHECK(sq.deg() == 2);
  // f * 1 = f
  TwistedPoly one(C, {Series::one(C)});
  CHECK((f * one).same_up_to_prec(f));
  CHECK((one * f).same_up_to_prec(f));
}

TEST_CASE("module map is a ring homomorphism: phi_ab = phi_a phi_b") {
  Ctx C({2, 1, 1, 1}, 800);
  Rng rng(808);
  const Field& F = C.field();
  auto rand_poly = [&](int maxdeg) {
    Poly a(&F);
    int d = 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(maxdeg)));
    for (int i = 0; i <= d; ++i) a.set_coeff(i, static_cast<fq>(rng.below(2)));
    a.set_coeff(d, 1);
    return a;
  };
  for (int it = 0; it < 50; ++it) {
    int r = 1 + static_cast<int>(rng.below(3));
    std::vector<Series> g;
    for (int i = 0; i < r; ++i)
      g.push_back(Series::scalar(C, 1));  // keep coefficients scalar: spans stay bounded
    if (rng.below(2)) g[0] = g[0] + Series::theta(C);
    DrinfeldModule phi(C, g);
    Poly a = rand_poly(3), b = rand_poly(3);
    TwistedPoly lhs = phi_of_a(phi, a * b);
    TwistedPoly rhs = phi_of_a(phi, a) * phi_of_a(phi, b);
    CHECK(lhs.same_up_to_prec(rhs));
    CHECK(lhs.deg() == r * (a.deg() + b.deg()));
  }
  // Carlitz with a = t^2 against the hand expansion
  DrinfeldModule Cz = carlitz(C);
  Poly t2(&F);
  t2.set_coeff(2, 1);
  TwistedPoly img = phi_of_a(Cz, t2);
  Series th = Series::theta(C);
  CHECK(img.coeff(0).identical(th * th));
  CHECK(img.coeff(1).identical(qpow(th, 1) + th));
  CHECK(img.coeff(2).identical(Series::one(C)));
  // a = 1 maps to 1
  Poly onep = Poly::constant(&F, 1);
  CHECK(phi_of_a(Cz, onep).same_up_to_prec(TwistedPoly(C, {Series::one(C)})));
}

TEST_CASE("rank 2, a = t^2: tau coefficient is g_1 (theta^q + theta)") {
  Ctx C({3, 1, 1, 1}, 400);
  Series th = Series::theta(C);
  Series g1 = th + Series::one(C);
  DrinfeldModule phi(C, {g1, Series::one(C)});
  Poly t2(&C.field());
  t2.set_coeff(2, 1);
  TwistedPoly img = phi_of_a(phi, t2);
  CHECK(Series::diff_val(img.coeff(1), g1 * (qpow(th, 1) + th)) >=
        img.coeff(1).prec());
}

TEST_CASE("exponential coefficients: first values for Carlitz") {
  Ctx C({3, 1, 1, 1}, 80);
  DrinfeldModule Cz = carlitz(C);
  EntireSeries ex = exp_coeffs(Cz, 8);
  CHECK(ex.coeff(0).identical(Series::one(C)));
  Series th = Series::theta(C);
  Series thq = qpow(th, 1), thq2 = qpow(th, 2);
  CHECK(Series::diff_val(ex.coeff(1), inv(thq - th)) >= ex.coeff(1).prec());
  Series a2 = inv((thq2 - th) * (thq2 - thq));
  CHECK(Series::diff_val(ex.coeff(2), a2) >= std::min(ex.coeff(2).prec(), a2.prec()));
}

TEST_CASE("functional equation phi_t(exp(X)) = exp(theta X) coefficient-wise") {
  Rng rng(1912);
  for (FieldParams par : {FieldParams{2, 1, 1, 1}, FieldParams{3, 1, 2, 2}}) {
    Ctx C(par, 100);
    for (int r = 1; r <= 3; ++r) {
      std::vector<Series> g;
      for (int i = 0; i < r; ++i)
        g.push_back(Series::monomial(C, 1, static_cast<std::int64_t>(rng.below(5))) +
                    Series::scalar(C, static_cast<fq>(rng.below(C.field().card()))));
      DrinfeldModule phi(C, g);
      EntireSeries ex = exp_coeffs(phi, 10);
      Series th = Series::theta(C);
      for (int k = 1; k <= 10; ++k) {
        Series lhs = th * ex.coeff(k);
        for (int j = 1; j <= std::min(k, r); ++j)
          lhs = lhs + phi.g(j) * qpow(ex.coeff(k - j), j);
        Series rhs = ex.coeff(k) * qpow(th, k);
        CHECK(Series::diff_val(lhs, rhs) >= std::min(lhs.prec(), rhs.prec()));
      }
    }
  }
}

TEST_CASE("logarithm inverts the exponential") {
  Ctx C({3, 1, 1, 1}, 100);
  DrinfeldModule Cz = carlitz(C);
  EntireSeries ex = exp_coeffs(Cz, 10);
  EntireSeries lg = log_coeffs(Cz, 10);
  CHECK(lg.coeff(0).identical(Series::one(C)));
  CHECK(Series::diff_val(lg.coeff(1), -ex.coeff(1)) >= lg.coeff(1).prec());
  // formal composition: sum_{i+j=k} beta_i alpha_j^(q^i) = [k=0]
  for (int k = 1; k <= 10; ++k) {
    Series s = Series::zero(C);
    for (int i = 0; i <= k; ++i) s = s + lg.coeff(i) * qpow(ex.coeff(k - i), i);
    CHECK(s.zero_to_prec());
  }
  // numeric roundtrip inside the convergence region
  Series x = Series::monomial(C, 2, 3) + Series::monomial(C, 1, 7);
  Series back = entire_eval(lg, entire_eval(ex, x));
  CHECK(Series::diff_val(back, x) >= back.prec());
}

TEST_CASE("quasi-period coefficients") {
  Ctx C({3, 1, 1, 1}, 100);
  Series th = Series::theta(C);
  DrinfeldModule phi(C, {th, Series::one(C)});  // rank 2
  EntireSeries ex = exp_coeffs(phi, 10);
  EntireSeries f1 = quasi_period_coeffs(phi, 1, 10);
  CHECK(f1.coeff(0).exact_zero());
  CHECK(Series::diff_val(f1.coeff(1), inv(qpow(th, 1) - th)) >= f1.coeff(1).prec());
  // recursion c_k (theta^(q^k) - theta) = alpha_{k-1}^q
  for (int k = 1; k <= 10; ++k) {
    Series lhs = f1.coeff(k) * (qpow(th, k) - th);
    Series rhs = qpow(ex.coeff(k - 1), 1);
    CHECK(Series::diff_val(lhs, rhs) >= std::min(lhs.prec(), rhs.prec()));
  }
  // functional equation F(theta X) - theta F(X) = exp(X)^q at a sample point
  Series x = Series::monomial(C, 1, 2);
  Series lhs = entire_eval(f1, th * x) - th * entire_eval(f1, x);
  Series rhs = qpow(entire_eval(ex, x), 1);
  CHECK(Series::diff_val(lhs, rhs) >= std::min(lhs.prec(), rhs.prec()) - 2);
  // i = 0 is exp - X
  EntireSeries f0 = quasi_period_coeffs(phi, 0, 10);
  CHECK(f0.coeff(0).exact_zero());
  for (int k = 1; k <= 10; ++k)
    CHECK(f0.coeff(k).identical(ex.coeff(k)));
  CHECK_THROWS_AS(quasi_period_coeffs(phi, 2, 10), DomainError);
  // rank 3: k < i coefficients vanish
  DrinfeldModule psi(C, {th, th, Series::one(C)});
  EntireSeries f2 = quasi_period_coeffs(psi, 2, 8);
  CHECK(f2.coeff(0).exact_zero());
  CHECK(f2.coeff(1).exact_zero());
  CHECK(!f2.coeff(2).zero_to_prec());
}

TEST_CASE("entire evaluation tail bound is sound against a longer truncation") {
  Ctx C({3, 1, 1, 1}, 120);
  DrinfeldModule Cz = carlitz(C);
  for (int kmax : {8, 12, 16}) {
    EntireSeries a = exp_coeffs(Cz, kmax);
    EntireSeries b = exp_coeffs(Cz, kmax + 3);
    for (std::int64_t v : {-1, 0, 2, 5}) {
      Series x = Series::monomial(C, 1, v) + Series::monomial(C, 2, v + 3);
      Series ya = entire_eval(a, x);
      Series yb = entire_eval(b, x);
      CHECK(Series::diff_val(ya, yb) >= ya.prec());
    }
  }
}

TEST_CASE("exp at the period lattice vanishes") {
  Ctx C({2, 1, 1, 1}, 160);
  DrinfeldModule Cz = carlitz(C);
  EntireSeries ex = exp_coeffs(Cz, 24);
  Series pi = carlitz_period(C, 140);
  Series at_pi = entire_eval(ex, pi);
  CHECK(at_pi.val() >= 100);
  // theta * period is also a period
  Series at_tp = entire_eval(ex, Series::theta(C) * pi);
  CHECK(at_tp.val() >= 100);
  // exp(0) = 0
  CHECK(entire_eval(ex, Series::zero(C)).exact_zero());
}

TEST_CASE("theta-torsion point from the period") {
  Ctx C({3, 1, 2, 2}, 120);
  DrinfeldModule Cz = carlitz(C);
  EntireSeries ex = exp_coeffs(Cz, 20);
  Series pi = carlitz_period(C, 100);
  Series lam = entire_eval(ex, div(pi, Series::theta(C)));
  CHECK(!lam.zero_to_prec());
  Series img = Cz.phi_t().act(lam);
  CHECK(img.val() >= 60 * C.m());
}

TEST_CASE("log diverges outside its radius and the tail check reports it") {
  Ctx C({2, 1, 1, 1}, 100);
  DrinfeldModule Cz = carlitz(C);
  EntireSeries lg = log_coeffs(Cz, 16);
  Series big = Series::theta_pow(C, 3);  // |x| = q^3 > q^(q/(q-1))
  CHECK_THROWS_AS(entire_eval(lg, big), PrecisionError);
}

TEST_CASE("period matrix for rank 1 is (-period)") {
  Ctx C({2, 1, 1, 1}, 160);
  DrinfeldModule Cz = carlitz(C);
  Series pi = carlitz_period(C, 140);
  PeriodMatrix P = period_matrix(Cz, {pi});
  CHECK(P.dim() == 1);
  CHECK(Series::diff_val(P.det(), -pi) >= P.det().prec());
  // a non-period basis element is rejected
  CHECK_THROWS_AS(period_matrix(Cz, {Series::one(C)}), DomainError);
}
