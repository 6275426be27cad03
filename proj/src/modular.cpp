#include "drinfeld/modular.hpp"

#include <algorithm>
#include <utility>

namespace drinfeld {

namespace {

Poly det_rec(const Field* F, const std::vector<std::vector<Poly>>& a) {
  size_t n = a.size();
  if (n == 1) return a[0][0];
  Poly acc(F);
  for (size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    minor.reserve(n - 1);
    for (size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      row.reserve(n - 1);
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    Poly term = a[0][j] * det_rec(F, minor);
    if (j % 2) term = term.neg();
    acc = acc + term;
  }
  return acc;
}

Poly random_base_poly(const Field& F, int deg_bound, Rng& rng) {
  const std::vector<fq>& el = F.base_field_elems();
  std::vector<fq> c(static_cast<size_t>(deg_bound) + 1);
  for (fq& ci : c) ci = el[rng.below(el.size())];
  return Poly(&F, std::move(c));
}

}  // namespace

GLrMatrix GLrMatrix::identity(const Field* F, int r) {
  GLrMatrix g;
  g.F = F;
  g.a.assign(static_cast<size_t>(r), std::vector<Poly>(static_cast<size_t>(r), Poly(F)));
  for (int i = 0; i < r; ++i)
    g.a[static_cast<size_t>(i)][static_cast<size_t>(i)] = Poly::constant(F, 1);
  return g;
}

Poly GLrMatrix::det() const {
  if (a.empty()) throw DomainError("determinant of an empty matrix");
  return det_rec(F, a);
}

bool GLrMatrix::entries_in_A() const {
  for (const auto& row : a)
    for (const Poly& p : row)
      if (!p.coeffs_in_base_field()) return false;
  return true;
}

bool GLrMatrix::is_gl() const {
  if (!entries_in_A()) return false;
  Poly d = det();
  return d.deg() == 0 && F->in_base_field(d.coeff(0));
}

bool GLrMatrix::in_level(const Poly& N) const {
  int r = rank();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Poly e = at(i, j);
      if (i == j) e = e - Poly::constant(F, 1);
      if (!N.divides(e)) return false;
    }
  return true;
}

GLrMatrix GLrMatrix::operator*(const GLrMatrix& o) const {
  if (rank() != o.rank()) throw DomainError("matrix size mismatch");
  int r = rank();
  GLrMatrix out;
  out.F = F;
  out.a.assign(static_cast<size_t>(r), std::vector<Poly>(static_cast<size_t>(r), Poly(F)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Poly s(F);
      for (int k = 0; k < r; ++k) s = s + at(i, k) * o.at(k, j);
      out.a[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
    }
  return out;
}

std::string GLrMatrix::str() const {
  std::string s = "[";
  for (size_t i = 0; i < a.size(); ++i) {
    s += i ? "; " : "";
    for (size_t j = 0; j < a[i].size(); ++j) {
      if (j) s += ", ";
      s += a[i][j].str("th");
    }
  }
  return s + "]";
}

ActionResult act(const Ctx& C, const GLrMatrix& gamma, const UpperHalfPoint& pt,
                 int test_degree) {
  int r = pt.rank();
  if (gamma.rank() != r) throw DomainError("matrix rank does not match the point");
  if (!gamma.is_gl()) throw DomainError("matrix is not a unit over the polynomial ring");
  std::vector<Series> rows(static_cast<size_t>(r), Series::zero(C));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const Poly& e = gamma.at(i, j);
      if (e.is_zero()) continue;
      rows[static_cast<size_t>(i)] =
          rows[static_cast<size_t>(i)] + Series::from_theta_poly(C, e) * pt.w[static_cast<size_t>(j)];
    }
  Series j = rows[static_cast<size_t>(r - 1)];
  if (j.zero_to_prec())
    throw PrecisionError("cocycle factor vanishes at working precision");
  Series ji = inv(j);
  std::vector<Series> nw;
  nw.reserve(static_cast<size_t>(r));
  for (int i = 0; i < r - 1; ++i) nw.push_back(rows[static_cast<size_t>(i)] * ji);
  nw.push_back(Series::one(C));
  return ActionResult{make_upper_half_point(C, std::move(nw), test_degree), j};
}

std::int64_t cocycle_residual(const Ctx& C, const GLrMatrix& g, const GLrMatrix& d,
                              const UpperHalfPoint& pt, int test_degree) {
  ActionResult ad = act(C, d, pt, test_degree);
  ActionResult ag = act(C, g, ad.point, test_degree);
  ActionResult agd = act(C, g * d, pt, test_degree);
  return Series::diff_val(agd.j, ag.j * ad.j);
}

AutomorphyReport automorphy_check(const Ctx& C,
                                  const std::function<Series(const UpperHalfPoint&)>& f,
                                  int weight, int type,
                                  const GLrMatrix& gamma,
                                  const std::vector<UpperHalfPoint>& samples,
                                  int test_degree) {
  if (!gamma.is_gl()) throw DomainError("matrix is not a unit over the polynomial ring");
  const Field& F = C.field();
  fq detc = gamma.det().coeff(0);
  int unit_order = static_cast<int>(F.q()) - 1;
  int t = unit_order ? ((type % unit_order) + unit_order) % unit_order : 0;
  fq det_pow = F.pow(detc, t);

  AutomorphyReport rep;
  rep.min_residual = kExactPrec;
  for (size_t i = 0; i < samples.size(); ++i) {
    ActionResult ar = act(C, gamma, samples[i], test_degree);
    Series lhs = f(ar.point);
    Series jk = weight >= 0 ? inv(ar.j.pow_int(weight)) : ar.j.pow_int(-weight);
    lhs = lhs * jk;
    if (det_pow != 1) lhs = lhs.scaled(det_pow);
    std::int64_t res = Series::diff_val(lhs, f(samples[i]));
    rep.samples.push_back(SampleResidual{static_cast<int>(i), res});
    rep.min_residual = std::min(rep.min_residual, res);
  }
  return rep;
}

GLrMatrix sample_gamma1(const Ctx& C, int r, int deg_bound, Rng& rng) {
  const Field& F = C.field();
  const std::vector<fq>& el = F.base_field_elems();
  GLrMatrix g = GLrMatrix::identity(&F, r);
  int factors = 2 + static_cast<int>(rng.below(4));
  for (int n = 0; n < factors; ++n) {
    GLrMatrix e = GLrMatrix::identity(&F, r);
    if (rng.below(5) == 0) {
      // unit diagonal twist
      size_t i = rng.below(static_cast<std::uint64_t>(r));
      fq c = el[1 + rng.below(el.size() - 1)];
      e.a[i][i] = Poly::constant(&F, c);
    } else {
      size_t i = rng.below(static_cast<std::uint64_t>(r));
      size_t j = rng.below(static_cast<std::uint64_t>(r - 1));
      if (j >= i) ++j;
      e.a[i][j] = random_base_poly(F, deg_bound, rng);
    }
    g = g * e;
  }
  return g;
}

GLrMatrix sample_gamma_n(const Ctx& C, int r, const Poly& N, int deg_bound, Rng& rng) {
  const Field& F = C.field();
  if (!N.monic() || !N.coeffs_in_base_field())
    throw DomainError("level must be a monic polynomial over F_q");
  GLrMatrix g = GLrMatrix::identity(&F, r);
  int factors = 2 + static_cast<int>(rng.below(4));
  for (int n = 0; n < factors; ++n) {
    GLrMatrix e = GLrMatrix::identity(&F, r);
    size_t i = rng.below(static_cast<std::uint64_t>(r));
    size_t j = rng.below(static_cast<std::uint64_t>(r - 1));
    if (j >= i) ++j;
    e.a[i][j] = N * random_base_poly(F, deg_bound, rng);
    g = g * e;
  }
  return g;
}

std::vector<UpperHalfPoint> sample_points(const Ctx& C, int r, int count, Rng& rng,
                                          int test_degree) {
  if (r < 1) throw DomainError("rank must be positive");
  const Field& F = C.field();
  int m = C.m();
  std::vector<UpperHalfPoint> out;
  int attempts = 0, cap = 40 * count + 40;
  while (static_cast<int>(out.size()) < count && attempts < cap) {
    ++attempts;
    std::vector<Series> w;
    for (int i = 0; i < r - 1; ++i) {
      int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(3 * m)));
      fq c = static_cast<fq>(1 + rng.below(F.card() - 1));
      Series wi = Series::monomial(C, c, -k);
      // a couple of guaranteed sub-leading digits keep the coordinate off
      // every low-degree rational; certification below is the real gate
      int noise = 2 + static_cast<int>(rng.below(6));
      for (int d = 1; d <= noise; ++d) {
        fq nc = static_cast<fq>(rng.below(F.card()));
        if (d <= 2 && nc == 0) nc = 1;
        if (nc) wi = wi + Series::monomial(C, nc, -k + d);
      }
      w.push_back(wi);
    }
    w.push_back(Series::one(C));
    try {
      out.push_back(make_upper_half_point(C, std::move(w), test_degree));
    } catch (const DomainError&) {
      continue;
    }
  }
  if (static_cast<int>(out.size()) < count)
    throw DomainError("could not certify enough sample points in this configuration");
  return out;
}

std::vector<Poly> enumerate_polys(const Field& F, int max_deg) {
  if (max_deg < 0) return {Poly(&F)};
  const std::vector<fq>& el = F.base_field_elems();
  std::int64_t total = 1;
  for (int i = 0; i <= max_deg; ++i) {
    total *= static_cast<std::int64_t>(el.size());
    if (total > 200000) throw BudgetError("polynomial enumeration too large");
  }
  std::vector<Poly> out;
  out.reserve(static_cast<size_t>(total));
  std::vector<size_t> idx(static_cast<size_t>(max_deg) + 1, 0);
  for (;;) {
    std::vector<fq> c(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) c[i] = el[idx[i]];
    out.emplace_back(&F, std::move(c));
    size_t pos = 0;
    while (pos < idx.size()) {
      if (++idx[pos] < el.size()) break;
      idx[pos++] = 0;
    }
    if (pos == idx.size()) break;
  }
  return out;
}

InfinityData infinity_data(const Ctx& C, const std::vector<Series>& w_tail, int D,
                           int k_max) {
  if (w_tail.empty()) throw DomainError("trailing coordinates required");
  if (!w_tail.back().identical(Series::one(C)))
    throw DomainError("last trailing coordinate must be exactly 1");
  Series pi = carlitz_period(C, C.work_prec());
  std::vector<Series> basis;
  basis.reserve(w_tail.size());
  for (const Series& w : w_tail) basis.push_back(pi * w);
  LatticeSpec lat = make_lattice(C, std::move(basis), 3);
  LatticeModule mod = drinfeld_from_lattice(lat, D);
  EntireSeries exp = exp_coeffs(mod.phi, k_max);
  return InfinityData{std::move(pi), std::move(lat), std::move(mod), std::move(exp)};
}

Series u_parameter(const InfinityData& id, const Poly& N,
                   const std::vector<Series>& w) {
  if (!N.monic() || !N.coeffs_in_base_field())
    throw DomainError("level must be a monic polynomial over F_q");
  if (w.size() < 2) throw DomainError("a point of rank at least two is required");
  const Ctx& C = *w[0].ctx();
  if (!w.back().identical(Series::one(C)))
    throw DomainError("last coordinate must be exactly 1");
  if (static_cast<int>(w.size()) - 1 != id.lat.rank())
    throw DomainError("trailing-lattice rank does not match the point");
  Series z = id.pi * w[0] * inv(Series::from_theta_poly(C, N));
  Series ev = entire_eval(id.exp, z);
  if (ev.zero_to_prec())
    throw DomainError("the scaled coordinate is a lattice point (pole of the parameter)");
  return inv(ev);
}

Series u_parameter(const Ctx& C, const Poly& N, const std::vector<Series>& w, int D,
                   int k_max) {
  if (w.size() < 2) throw DomainError("a point of rank at least two is required");
  std::vector<Series> tail(w.begin() + 1, w.end());
  return u_parameter(infinity_data(C, tail, D, k_max), N, w);
}

Series ReciprocalPoly::eval(const Series& x) const {
  const Ctx& C = *lead.ctx();
  Series acc = Series::one(C);
  if (d == 0) return acc;
  Series xqd = qpow(x, d);
  for (int i = 0; i < static_cast<int>(coeff.size()); ++i)
    acc = acc + coeff[static_cast<size_t>(i)] * xqd * inv(qpow(x, i));
  return acc;
}

std::string ReciprocalPoly::str() const {
  if (d == 0) return "1";
  std::string s = "1";
  std::int64_t qd = 1;
  const std::uint32_t q = lead.ctx()->q();
  for (int i = 0; i < d; ++i) qd *= q;
  std::int64_t qi = 1;
  for (int i = 0; i < static_cast<int>(coeff.size()); ++i, qi *= q) {
    s += " + (" + coeff[static_cast<size_t>(i)].str(4) + ")*X^" +
         std::to_string(qd - qi);
  }
  return s;
}

ReciprocalPoly reciprocal_poly(const InfinityData& id, const Poly& a) {
  if (a.is_zero()) throw DomainError("reciprocal of the zero operator");
  if (!a.coeffs_in_base_field())
    throw DomainError("operator polynomial must have coefficients in F_q");
  TwistedPoly tp = phi_of_a(id.mod.phi, a);
  int d = id.mod.phi.rank() * a.deg();
  if (tp.deg() != d)
    throw PrecisionError("top operator coefficient vanished at working precision");
  ReciprocalPoly rp;
  rp.d = d;
  rp.lead = tp.coeff(d);
  if (rp.lead.zero_to_prec())
    throw PrecisionError("top operator coefficient vanished at working precision");
  Series li = inv(rp.lead);
  rp.coeff.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) rp.coeff.push_back(tp.coeff(i) * li);
  return rp;
}

ReciprocalPoly reciprocal_poly(const Ctx& C, const Poly& a,
                               const std::vector<Series>& w_tail, int D) {
  return reciprocal_poly(infinity_data(C, w_tail, D), a);
}

LevelChangeReport level_change_check(const Ctx& C, const Poly& N1, const Poly& N2,
                                     const std::vector<Series>& w, int D) {
  if (!N1.monic() || !N2.monic()) throw DomainError("levels must be monic");
  Poly n, rem;
  Poly::divrem(N1, N2, &n, &rem);
  if (!rem.is_zero()) throw DomainError("second level must divide the first");
  if (w.size() < 2) throw DomainError("a point of rank at least two is required");
  std::vector<Series> tail(w.begin() + 1, w.end());
  InfinityData id = infinity_data(C, tail, D);
  LevelChangeReport rep;
  rep.u_n1 = u_parameter(id, N1, w);
  rep.u_n2 = u_parameter(id, N2, w);
  ReciprocalPoly rp = reciprocal_poly(id, n);
  rep.rhs = qpow(rep.u_n1, rp.d) * inv(rp.lead * rp.eval(rep.u_n1));
  rep.residual_val = Series::diff_val(rep.u_n2, rep.rhs);
  return rep;
}

ExpansionReport eisenstein_expansion_check(const Ctx& C, const Poly& N,
                                           const std::vector<Poly>& v,
                                           const UpperHalfPoint& pt, int B,
                                           int i_max, int target_prec, int D) {
  if (pt.rank() != 2) throw DomainError("the identity chain is wired for rank two");
  if (!N.monic() || N.deg() < 1 || !N.coeffs_in_base_field())
    throw DomainError("level must be monic of positive degree over F_q");
  if (v.size() != 2) throw DomainError("two shift numerators required");
  for (const Poly& vi : v) {
    if (vi.deg() >= N.deg()) throw DomainError("shift numerator must reduce mod the level");
    if (!vi.is_zero() && !vi.coeffs_in_base_field())
      throw DomainError("shift numerator must lie over F_q");
  }
  if (v[0].is_zero() && v[1].is_zero()) throw DomainError("shift must be nonzero");
  if (B < 0 || B > 8) throw DomainError("degree cutoff out of range");
  if (i_max < 1) throw DomainError("at least one expansion term required");

  const Field& F = C.field();
  std::vector<Series> tail{Series::one(C)};
  InfinityData id = infinity_data(C, tail, D, 12);
  Series u = u_parameter(id, N, pt.w);
  Series Ninv = inv(Series::from_theta_poly(C, N));

  Series T = Series::zero(C);
  ExpansionReport rep;
  if (!v[1].is_zero()) {
    T = entire_eval(id.exp, id.pi * Series::from_theta_poly(C, v[1]) * Ninv);
    UpperHalfPoint pt1 = make_upper_half_point(C, {Series::one(C)}, 3);
    EisensteinValue e1 = eisenstein_eval(EisensteinSpec{N, {v[1]}}, pt1, target_prec);
    rep.t_checked = true;
    rep.t_residual = Series::diff_val(T, id.pi * inv(e1.value));
  }

  EisensteinValue ev = eisenstein_eval(EisensteinSpec{N, v}, pt, target_prec);
  rep.direct = ev.value * inv(id.pi);
  rep.direct_val = rep.direct.val();

  Series one = Series::one(C);
  Series chain = Series::zero(C), closed = Series::zero(C);
  for (const Poly& a1 : enumerate_polys(F, B)) {
    Poly b = a1 * N + v[0];
    Series term, termc;
    if (b.is_zero()) {
      term = inv(T);
      termc = term;
    } else {
      TwistedPoly tp = phi_of_a(id.mod.phi, b);
      int d = id.mod.phi.rank() * b.deg();
      if (tp.deg() != d)
        throw PrecisionError("operator image lost its top coefficient");
      Series lead = tp.coeff(d);
      Series li = inv(lead);
      Series uqd = qpow(u, d);
      Series P = T * uqd * li;
      for (int i = 0; i < d; ++i)
        P = P + tp.coeff(i) * uqd * inv(lead * qpow(u, i));
      if (!P.zero_to_prec() && P.val() <= 0)
        throw DomainError("chain does not contract at this point");
      Series geo = one, pw = one;
      for (int i = 1; i <= i_max; ++i) {
        pw = pw * (-P);
        geo = geo + pw;
      }
      term = uqd * li * geo;
      termc = uqd * li * inv(one + P);
    }
    if (a1.is_zero()) rep.lead_term_val = term.val();
    chain = chain + term;
    closed = closed + termc;
  }
  rep.chain = chain;
  rep.chain_closed = closed;
  rep.residual_val = Series::diff_val(rep.direct, chain);
  rep.residual_closed = Series::diff_val(rep.direct, closed);

  // partial fractions over the truncated lattice against 1/e at pi w_1 / N:
  // the sum over deg <= B+1 equals the inverse of the partial product, so the
  // residual records how far that product has converged
  Series z = id.pi * pt.w[0] * Ninv;
  Series s = Series::zero(C);
  for (const Poly& a : enumerate_polys(F, B + 1))
    s = s + inv(z - id.pi * Series::from_theta_poly(C, a));
  rep.logder_residual = Series::diff_val(u, s);
  return rep;
}

Series arithmetic_normalize(ArithmeticKind kind, const Series& value,
                            const Series& pi, int i) {
  if (kind == ArithmeticKind::kEisenstein) return value * inv(pi);
  if (i < 0) throw DomainError("negative twist depth");
  if (i == 0) return value;
  return value * pi * inv(qpow(pi, i));
}

}  // namespace drinfeld
