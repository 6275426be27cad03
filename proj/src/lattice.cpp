#include "drinfeld/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace drinfeld {

namespace {

// polynomials of degree < D over the base field, indexed by code in base q
struct PolyTable {
  std::vector<Poly> polys;
  std::vector<int> deg;  // -1 for the zero polynomial
};

PolyTable polys_below(const Field& F, int D) {
  int q = F.q();
  std::int64_t count = 1;
  for (int i = 0; i < D; ++i) {
    count *= q;
    if (count > 2'000'000) throw BudgetError("poly table too large");
  }
  const std::vector<fq>& elems = F.base_field_elems();
  PolyTable t;
  t.polys.reserve(static_cast<size_t>(count));
  t.deg.reserve(static_cast<size_t>(count));
  for (std::int64_t n = 0; n < count; ++n) {
    Poly p(&F);
    std::int64_t rest = n;
    for (int k = 0; k < D && rest; ++k) {
      p.set_coeff(k, elems[static_cast<size_t>(rest % q)]);
      rest /= q;
    }
    t.polys.push_back(p);
    t.deg.push_back(p.is_zero() ? -1 : p.deg());
  }
  return t;
}

std::int64_t min_basis_val(const std::vector<Series>& w) {
  std::int64_t v = kExactPrec;
  for (const auto& x : w) v = std::min(v, x.val());
  return v;
}

// separation of a basis: max over tested nonzero b of
// val(sum b_i w_i) + m*maxdeg(b) - min val(w_i); throws when a combination
// vanishes at working precision
std::int64_t separation_check(const Ctx& C, const std::vector<Series>& w,
                              int test_degree) {
  const Field& F = C.field();
  int r = static_cast<int>(w.size());
  int m = C.m();
  if (r < 1) throw DomainError("empty basis");
  if (test_degree < 1) throw DomainError("test degree must be positive");
  double combos = 1;
  for (int i = 0; i < r; ++i) combos *= std::pow(double(F.q()), test_degree);
  if (combos > 2'000'000) throw BudgetError("independence test too large");
  PolyTable tab = polys_below(F, test_degree);
  size_t n = tab.polys.size();
  // per coordinate, the products b * w_i
  std::vector<std::vector<Series>> prod(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) {
    prod[static_cast<size_t>(i)].reserve(n);
    for (size_t k = 0; k < n; ++k)
      prod[static_cast<size_t>(i)].push_back(
          Series::from_theta_poly(C, tab.polys[k]) * w[static_cast<size_t>(i)]);
  }
  std::int64_t wmin = min_basis_val(w);
  std::int64_t iota = std::numeric_limits<std::int64_t>::min();
  // depth-first over coordinate codes with running partial sums
  auto rec = [&](auto&& self, size_t depth, const Series& partial,
                 int maxdeg) -> void {
    if (depth == static_cast<size_t>(r)) {
      if (maxdeg < 0) return;  // the all-zero tuple
      if (partial.zero_to_prec())
        throw DomainError("a polynomial combination of the basis vanishes at "
                          "working precision; not certifiably independent");
      iota = std::max(iota, sat_add(partial.val(),
                                    static_cast<std::int64_t>(m) * maxdeg - wmin));
      return;
    }
    for (size_t c = 0; c < n; ++c) {
      if (!c) {
        self(self, depth + 1, partial, maxdeg);
        continue;
      }
      Series nxt = partial + prod[depth][c];
      self(self, depth + 1, nxt, std::max(maxdeg, tab.deg[c]));
    }
  };
  rec(rec, 0, Series::zero(C), -1);
  return iota;
}

}  // namespace

std::int64_t imag_val(const Series& x) {
  if (!x.ctx()) throw DomainError("null series");
  int m = x.ctx()->m();
  const Field& F = x.ctx()->field();
  if (x.zero_to_prec()) return x.prec();
  const std::vector<fq>& d = x.digits();
  std::int64_t v = x.val();
  for (size_t i = 0; i < d.size(); ++i) {
    if (!d[i]) continue;
    std::int64_t pos = v + static_cast<std::int64_t>(i);
    bool integral = ((pos % m) + m) % m == 0;
    if (integral && F.in_base_field(d[i])) continue;
    return pos;
  }
  return x.prec();
}

std::int64_t UpperHalfPoint::wmin() const { return min_basis_val(w); }

std::int64_t omega_r_check(const UpperHalfPoint& pt, int test_degree) {
  if (pt.w.empty() || !pt.w[0].ctx()) throw DomainError("empty point");
  return separation_check(*pt.w[0].ctx(), pt.w, test_degree);
}

UpperHalfPoint make_upper_half_point(const Ctx& C, std::vector<Series> w,
                                     int test_degree) {
  if (w.empty()) throw DomainError("empty point");
  if (!w.back().identical(Series::one(C)))
    throw DomainError("last coordinate must be exactly 1");
  UpperHalfPoint pt;
  pt.w = std::move(w);
  pt.iota_val = separation_check(C, pt.w, test_degree);
  pt.tested_degree = test_degree;
  return pt;
}

LatticeSpec make_lattice(const Ctx& C, std::vector<Series> basis, int test_degree) {
  if (basis.empty()) throw DomainError("empty basis");
  LatticeSpec L;
  L.normalized = basis.back().identical(Series::one(C));
  L.basis = std::move(basis);
  L.iota_val = separation_check(C, L.basis, test_degree);
  L.tested_degree = test_degree;
  return L;
}

LatticeSpec scaled_lattice(const UpperHalfPoint& pt, const Series& c) {
  if (c.zero_to_prec()) throw DomainError("scaling by zero");
  LatticeSpec L;
  for (const auto& x : pt.w) L.basis.push_back(c * x);
  // val(c * l_b) - val(c * w_i) is unchanged, so the certificate carries over
  L.iota_val = pt.iota_val;
  L.tested_degree = pt.tested_degree;
  L.normalized = false;
  return L;
}

LatticeExp lattice_exp_product(const LatticeSpec& L, int D) {
  if (L.basis.empty() || !L.basis[0].ctx()) throw DomainError("empty lattice");
  const Ctx& C = *L.basis[0].ctx();
  int r = L.rank();
  if (D < 1) throw DomainError("degree cutoff must be positive");
  if (static_cast<std::int64_t>(r) * D > 64)
    throw BudgetError("lattice tower too deep");
  int q = C.q();
  std::vector<Series> beta{Series::one(C)};
  std::vector<Series> prev;
  for (int j = 0; j < D; ++j) {
    for (int i = 0; i < r; ++i) {
      Series v = Series::theta_pow(C, static_cast<std::int64_t>(j) * C.m()) *
                 L.basis[static_cast<size_t>(i)];
      // alpha = e(v) over the current span; must be nonzero
      Series alpha = Series::zero(C);
      for (size_t k = 0; k < beta.size(); ++k)
        alpha = alpha + beta[k] * qpow(v, static_cast<int>(k));
      if (alpha.zero_to_prec())
        throw DomainError("flag vector lies in the current span; basis not "
                          "independent at this precision");
      Series f = inv(alpha.pow_int(q - 1));
      std::vector<Series> next(beta.size() + 1, Series::zero(C));
      for (size_t k = 0; k < beta.size() + 1; ++k) {
        Series s = k < beta.size() ? beta[k] : Series::zero(C);
        if (k >= 1) s = s - qpow(beta[k - 1], 1) * f;
        next[k] = s;
      }
      beta = std::move(next);
    }
    if (j == D - 2) prev = beta;
  }
  LatticeExp out{EntireSeries(C, beta), {}};
  for (size_t k = 0; k < prev.size(); ++k)
    out.stab_val.push_back(Series::diff_val(beta[k], prev[k]));
  return out;
}

LatticeModule drinfeld_from_lattice(const LatticeSpec& L, int D, int k_check,
                                    std::int64_t min_check_val) {
  const Ctx& C = *L.basis[0].ctx();
  int r = L.rank();
  if (D < 2) throw DomainError("need at least two degree levels to see convergence");
  LatticeExp lat = lattice_exp_product(L, D);
  for (int k = 1; k <= r; ++k)
    if (lat.stab_val[static_cast<size_t>(k)] < min_check_val)
      throw PrecisionError("lattice exponential has not converged through the rank");
  Series theta = Series::theta(C);
  std::vector<Series> g;  // g_1..g_r
  for (int k = 1; k <= r; ++k) {
    Series acc = lat.e.coeff(k) * qpow(theta, k) - theta * lat.e.coeff(k);
    for (int i = 1; i < k; ++i)
      acc = acc - g[static_cast<size_t>(i - 1)] * qpow(lat.e.coeff(k - i), i);
    g.push_back(acc);
  }
  DrinfeldModule phi(C, g);
  if (k_check < 0) k_check = std::min(r * D, r + 2);
  k_check = std::min(k_check, r * D);
  EntireSeries alpha = exp_coeffs(phi, k_check);
  std::vector<std::int64_t> check;
  for (int k = 0; k <= k_check; ++k) {
    check.push_back(Series::diff_val(alpha.coeff(k), lat.e.coeff(k)));
    if (check.back() < min_check_val)
      throw PrecisionError("derived module does not reproduce the lattice "
                           "exponential at coefficient " + std::to_string(k));
  }
  return LatticeModule{phi, std::move(check)};
}

namespace {

// shared tail of the CM constructors: certify the point, verify c*w = M*w
CMPoint finish_cm_point(const Ctx& C, std::vector<Series> w, Series c,
                        std::vector<std::vector<Poly>> M, int test_degree) {
  CMPoint pt;
  pt.omega = make_upper_half_point(C, std::move(w), test_degree);
  size_t r = pt.omega.w.size();
  for (size_t i = 0; i < r; ++i) {
    Series diff = c * pt.omega.w[i];
    for (size_t j = 0; j < r; ++j)
      diff = diff - Series::from_theta_poly(C, M[i][j]) * pt.omega.w[j];
    std::int64_t thr = 4 * sat_min(C.work_prec_num(), diff.prec()) / 5;
    if (diff.val() < thr)
      throw PrecisionError("multiplier matrix identity fails on row " +
                           std::to_string(i));
  }
  pt.multiplier = std::move(c);
  pt.M = std::move(M);
  return pt;
}

}  // namespace

CMPoint cm_point_sqrt_theta(const Ctx& C) { return cm_point_kummer(C, 2); }

CMPoint cm_point_kummer(const Ctx& C, int r) {
  const Field& F = C.field();
  if (r < 2) throw DomainError("rank must be at least 2");
  if (C.m() % r) throw DomainError("field cannot host theta^(1/" +
                                   std::to_string(r) + "); need " +
                                   std::to_string(r) + " | m");
  if (r % F.p() == 0)
    throw DomainError("inseparable radical: the characteristic divides " +
                      std::to_string(r));
  int mr = C.m() / r;
  std::vector<Series> w;
  for (int i = 1; i < r; ++i)
    w.push_back(Series::theta_pow(C, static_cast<std::int64_t>(i) * mr));
  w.push_back(Series::one(C));
  Series c = Series::theta_pow(C, mr);
  std::vector<std::vector<Poly>> M(static_cast<size_t>(r),
                                   std::vector<Poly>(static_cast<size_t>(r), Poly(&F)));
  for (int i = 0; i + 2 < r; ++i)
    M[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = Poly::constant(&F, 1);
  M[static_cast<size_t>(r - 2)][static_cast<size_t>(r - 1)] = Poly::x(&F);
  M[static_cast<size_t>(r - 1)][0] = Poly::constant(&F, 1);
  int test_degree = r >= 3 ? 2 : 3;
  return finish_cm_point(C, std::move(w), std::move(c), std::move(M), test_degree);
}

CMPoint cm_point_quadratic(const Ctx& C, const Poly& a, const Poly& b) {
  const Field& F = C.field();
  if (!a.coeffs_in_base_field() || !b.coeffs_in_base_field())
    throw DomainError("coefficients must come from the degree-one subfield");
  Series y = Series::zero(C);
  if (F.p() == 2) {
    // wildly ramified roots do not live in any tame series field, so only
    // constant-coefficient equations are hosted: y^2 + a0 y = b0 over the
    // coefficient field itself
    if (a.is_zero()) throw DomainError("inseparable: y^2 = b has no new root "
                                       "in characteristic 2");
    if (a.deg() > 0 || b.deg() > 0)
      throw DomainError("nonconstant quadratic is wildly ramified at infinity; "
                        "not hosted by this field model");
    fq a0 = a.coeff(0), b0 = b.coeff(0);
    fq root_code = 0;
    bool found = false;
    for (std::uint32_t cand = 0; cand < F.card(); ++cand) {
      fq yc = static_cast<fq>(cand);
      if (F.add(F.mul(yc, yc), F.mul(a0, yc)) == b0) {
        if (!F.in_base_field(yc)) {
          root_code = yc;
          found = true;
          break;
        }
      }
    }
    if (!found)
      throw DomainError("no root beyond the degree-one subfield; "
                        "extend s or change the equation");
    y = Series::scalar(C, root_code);
  } else {
    Poly disc = a * a + b.scaled(F.from_int(4));
    if (disc.is_zero()) throw DomainError("degenerate: repeated rational root");
    Series sd = Series::from_theta_poly(C, disc);
    Series half = Series::scalar(C, F.inv(F.from_int(2)));
    y = (root(sd, 2) - Series::from_theta_poly(C, a)) * half;
  }
  if (imag_val(y) >= y.prec())
    throw DomainError("root lies on the rational line; nothing quadratic here");
  // y * (y, 1) = (-a y + b, y)
  std::vector<std::vector<Poly>> M{{a.neg(), b},
                                   {Poly::constant(&F, 1), Poly(&F)}};
  return finish_cm_point(C, {y, Series::one(C)}, y, std::move(M), 3);
}

namespace {

EisensteinValue eisenstein_core(const EisensteinSpec& spec,
                                const std::vector<Series>& basis,
                                std::int64_t iota_val, int tested_degree,
                                int target_prec, int max_D) {
  if (basis.empty() || !basis[0].ctx()) throw DomainError("empty point");
  const Ctx& C = *basis[0].ctx();
  const Field& F = C.field();
  int m = C.m(), q = F.q();
  int r = static_cast<int>(basis.size());
  if (spec.N.is_zero() || spec.N.deg() < 1 || spec.N.lead() != 1 ||
      !spec.N.coeffs_in_base_field())
    throw DomainError("level must be monic of positive degree over the "
                      "degree-one subfield");
  if (static_cast<int>(spec.v.size()) != r)
    throw DomainError("shift vector length must match the rank");
  bool nonzero = false;
  for (const Poly& vi : spec.v) {
    if (!vi.coeffs_in_base_field())
      throw DomainError("shift numerators must come from the degree-one subfield");
    if (!vi.is_zero()) {
      if (vi.deg() >= spec.N.deg())
        throw DomainError("shift numerators must have degree below the level");
      nonzero = true;
    }
  }
  if (!nonzero) throw DomainError("shift is zero mod the lattice");
  if (target_prec < 1) throw DomainError("target precision must be positive");

  std::int64_t wmin = min_basis_val(basis);
  std::int64_t target_num = static_cast<std::int64_t>(target_prec) * m;
  // smallest D with m*D - iota - wmin >= target_num
  std::int64_t need = target_num + iota_val + wmin;
  int D = static_cast<int>(std::max<std::int64_t>(1, (need + m - 1) / m));
  if (D > max_D)
    throw BudgetError("tail below q^-" + std::to_string(target_prec) + " needs D=" +
                      std::to_string(D) + ", cap is " + std::to_string(max_D));
  double terms = std::pow(double(q), double(r) * D);
  if (terms > 2'000'000) throw BudgetError("enumeration too large");

  PolyTable tab = polys_below(F, D);
  size_t n = tab.polys.size();
  std::vector<std::vector<Series>> S(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) {
    S[static_cast<size_t>(i)].reserve(n);
    for (size_t k = 0; k < n; ++k) {
      Poly b = tab.polys[k] * spec.N + spec.v[static_cast<size_t>(i)];
      S[static_cast<size_t>(i)].push_back(Series::from_theta_poly(C, b) *
                                          basis[static_cast<size_t>(i)]);
    }
  }
  // powers of q for the by-degree grouping
  std::vector<size_t> qd(static_cast<size_t>(D) + 1, 1);
  for (int d = 1; d <= D; ++d) qd[static_cast<size_t>(d)] = qd[static_cast<size_t>(d - 1)] * static_cast<size_t>(q);

  Series sum = Series::zero(C);
  // degree d = -1 is the single all-zero tuple, then d = 0..D-1 adds the
  // tuples whose maximal coordinate degree is exactly d; the grouping is
  // cosmetic since every addition is exact
  for (int d = -1; d < D; ++d) {
    size_t lim = d < 0 ? 1 : qd[static_cast<size_t>(d + 1)];
    size_t prev_lim = d < 0 ? 0 : qd[static_cast<size_t>(d)];
    std::vector<size_t> code(static_cast<size_t>(r), 0);
    for (;;) {
      bool fresh = d < 0;
      for (int i = 0; i < r && !fresh; ++i)
        if (code[static_cast<size_t>(i)] >= prev_lim) fresh = true;
      if (fresh) {
        Series den = Series::zero(C);
        for (int i = 0; i < r; ++i)
          den = den + S[static_cast<size_t>(i)][code[static_cast<size_t>(i)]];
        if (den.zero_to_prec())
          throw PrecisionError("a shifted lattice point vanished; separation "
                               "certificate violated");
        sum = sum + inv(den);
      }
      int i = 0;
      while (i < r && ++code[static_cast<size_t>(i)] == lim) {
        code[static_cast<size_t>(i)] = 0;
        ++i;
      }
      if (i == r) break;
    }
  }
  Series value = Series::from_theta_poly(C, spec.N) * sum;
  std::int64_t tail_val = static_cast<std::int64_t>(m) * D - iota_val - wmin;
  value = value.with_prec(sat_min(value.prec(), tail_val));
  EisensteinValue out;
  out.value = std::move(value);
  out.D = D;
  out.tail_val = tail_val;
  out.iota_val = iota_val;
  out.wmin = wmin;
  out.iota_tested_degree = tested_degree;
  return out;
}

}  // namespace

EisensteinValue eisenstein_eval(const EisensteinSpec& spec, const UpperHalfPoint& pt,
                                int target_prec, int max_D) {
  return eisenstein_core(spec, pt.w, pt.iota_val, pt.tested_degree, target_prec,
                         max_D);
}

EisensteinValue eisenstein_eval(const EisensteinSpec& spec, const LatticeSpec& L,
                                int target_prec, int max_D) {
  return eisenstein_core(spec, L.basis, L.iota_val, L.tested_degree, target_prec,
                         max_D);
}

}  // namespace drinfeld
