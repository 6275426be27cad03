#include "drinfeld/relations.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace drinfeld {

namespace {

int inv_mod(int a, int p) {
  int t0 = 0, t1 = 1, r0 = p, r1 = a % p;
  while (r1) {
    int q = r0 / r1;
    int tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return ((t0 % p) + p) % p;
}

// reduced row echelon form in place; returns pivot column per pivot row
std::vector<size_t> rref(std::vector<std::vector<int>>& a, size_t cols, int p) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < a.size(); ++c) {
    size_t pr = r;
    while (pr < a.size() && a[pr][c] == 0) ++pr;
    if (pr == a.size()) continue;
    std::swap(a[r], a[pr]);
    int iv = inv_mod(a[r][c], p);
    for (size_t k = c; k < cols; ++k) a[r][k] = static_cast<int>(static_cast<std::int64_t>(a[r][k]) * iv % p);
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::int64_t f = a[i][c];
      for (size_t k = c; k < cols; ++k)
        a[i][k] = static_cast<int>(((a[i][k] - f * a[r][k]) % p + p) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<int>> kernel_basis(std::vector<std::vector<int>> a, size_t cols, int p) {
  std::vector<size_t> pivots = rref(a, cols, p);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<int>> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<int> v(cols, 0);
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = (p - a[r][f] % p) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

// columns of the relation system: one Series per (monomial value, theta power,
// base-field basis element); rows are the prime-field components of every
// stored digit below the target valuation
struct LinSystem {
  std::vector<std::vector<int>> mat;  // row-major
  size_t cols = 0;
};

LinSystem build_system(const Ctx& C, const std::vector<Series>& col_values,
                       std::int64_t vmin, std::int64_t vt_num) {
  const Field& F = C.field();
  int p = F.p();
  int ncomp = F.e() * F.s();
  size_t rows = static_cast<size_t>(vt_num - vmin) * static_cast<size_t>(ncomp);
  LinSystem sys;
  sys.cols = col_values.size();
  if (rows * sys.cols > 50'000'000)
    throw BudgetError("relation system too large: " + std::to_string(rows) + " x " +
                      std::to_string(sys.cols));
  sys.mat.assign(rows, std::vector<int>(sys.cols, 0));
  for (size_t c = 0; c < col_values.size(); ++c) {
    const Series& s = col_values[c];
    for (std::int64_t pos = std::max(vmin, s.val()); pos < vt_num; ++pos) {
      fq d = s.digit_at(pos);
      if (!d) continue;
      std::uint32_t code = d;
      for (int comp = 0; comp < ncomp; ++comp) {
        int digit = static_cast<int>(code % static_cast<std::uint32_t>(p));
        code /= static_cast<std::uint32_t>(p);
        if (digit)
          sys.mat[static_cast<size_t>(pos - vmin) * static_cast<size_t>(ncomp) +
                  static_cast<size_t>(comp)][c] = digit;
      }
    }
  }
  // drop all-zero rows
  std::vector<std::vector<int>> kept;
  for (auto& row : sys.mat)
    if (std::any_of(row.begin(), row.end(), [](int x) { return x != 0; }))
      kept.push_back(std::move(row));
  sys.mat = std::move(kept);
  return sys;
}

// basis 1, g, .., g^(e-1) of F_q over F_p
std::vector<fq> fq_basis(const Field& F) {
  std::vector<fq> b{1};
  for (int l = 1; l < F.e(); ++l) b.push_back(F.mul(b.back(), F.base_gen()));
  return b;
}

fq assemble_coeff(const Field& F, const std::vector<fq>& basis,
                  const std::vector<int>& x, size_t off) {
  fq c = 0;
  for (size_t l = 0; l < basis.size(); ++l)
    c = F.add(c, F.mul(F.from_int(x[off + l]), basis[l]));
  return c;
}

}  // namespace

std::string RelationCertificate::poly_str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    const Poly& c = coeffs[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    bool wrap = c.deg() > 0 && i > 0;
    if (i == 0 || !(c.deg() == 0 && c.coeff(0) == 1)) os << (wrap ? "(" : "") << c.str("th") << (wrap ? ")" : "");
    if (i > 0) {
      if (!(c.deg() == 0 && c.coeff(0) == 1)) os << "*";
      os << "X";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::optional<RelationCertificate> detect_relation(const RelationQuery& q) {
  if (!q.xi.ctx()) throw DomainError("relation query on null series");
  if (q.deg_x < 1 || q.deg_theta < 0 || q.vt < 1)
    throw DomainError("relation query bounds must satisfy d >= 1, h >= 0, vt >= 1");
  const Ctx& C = *q.xi.ctx();
  const Field& F = C.field();
  int m = C.m();
  std::int64_t vt_num = static_cast<std::int64_t>(q.vt) * m;

  std::vector<Series> pw{Series::one(C)};
  for (int i = 1; i <= q.deg_x; ++i) pw.push_back(pw.back() * q.xi);

  std::int64_t min_prec = kExactPrec, vmin_all = 0;
  for (const auto& s : pw) {
    min_prec = sat_min(min_prec, s.prec());
    vmin_all = std::min(vmin_all, s.val());
  }
  min_prec = sat_add(min_prec, -static_cast<std::int64_t>(q.deg_theta) * m);
  if (vt_num > min_prec - 10)
    throw DomainError("target valuation too close to the precision of xi "
                      "(need 10 digits of slack)");

  std::vector<fq> basis = fq_basis(F);
  // refuse oversized requests before searching: the search solves every
  // subsystem up to the full grid, so the full grid is what must fit
  {
    std::int64_t vmin_full = 0;
    for (const auto& s : pw)
      vmin_full = std::min(vmin_full,
                           s.val() - static_cast<std::int64_t>(q.deg_theta) * m);
    std::int64_t rows_full = (vt_num - vmin_full) * F.e() * F.s();
    std::int64_t cols_full = static_cast<std::int64_t>(q.deg_x + 1) *
                             (q.deg_theta + 1) * F.e();
    if (rows_full > 0 && rows_full * cols_full > 50'000'000)
      throw BudgetError("relation search too large: " + std::to_string(rows_full) +
                        " x " + std::to_string(cols_full));
  }
  for (int dd = 1; dd <= q.deg_x; ++dd) {
    for (int hh = 0; hh <= q.deg_theta; ++hh) {
      std::vector<Series> cols;
      std::int64_t vmin = 0;
      for (int i = 0; i <= dd; ++i)
        vmin = std::min(vmin, pw[static_cast<size_t>(i)].val() -
                                  static_cast<std::int64_t>(hh) * m);
      std::int64_t rows_est = (vt_num - vmin) * F.e() * F.s();
      std::int64_t cols_est = static_cast<std::int64_t>(dd + 1) * (hh + 1) * F.e();
      if (rows_est > 0 && rows_est * cols_est > 50'000'000)
        throw BudgetError("relation system too large: " + std::to_string(rows_est) +
                          " x " + std::to_string(cols_est));
      for (int i = 0; i <= dd; ++i)
        for (int j = 0; j <= hh; ++j)
          for (fq b : basis)
            cols.push_back(pw[static_cast<size_t>(i)]
                               .shifted(-static_cast<std::int64_t>(j) * m)
                               .scaled(b));
      LinSystem sys = build_system(C, cols, vmin, vt_num);
      std::vector<std::vector<int>> ker = kernel_basis(std::move(sys.mat), sys.cols, F.p());
      if (ker.empty()) continue;
      const std::vector<int>& x = ker.front();
      // reassemble P from the prime-field solution
      std::vector<Poly> P;
      size_t e = basis.size();
      for (int i = 0; i <= dd; ++i) {
        Poly ci(&F);
        for (int j = 0; j <= hh; ++j) {
          size_t off = (static_cast<size_t>(i) * static_cast<size_t>(hh + 1) +
                        static_cast<size_t>(j)) * e;
          ci.set_coeff(j, assemble_coeff(F, basis, x, off));
        }
        P.push_back(ci);
      }
      while (!P.empty() && P.back().is_zero()) P.pop_back();
      if (P.empty()) continue;
      // scale so the topmost coefficient is monic
      fq leadc = P.back().lead();
      fq scale = F.inv(leadc);
      for (auto& c : P) c = c.scaled(scale);
      // soundness: re-evaluate
      Series px = Series::zero(C);
      for (size_t i = 0; i < P.size(); ++i)
        px = px + Series::from_theta_poly(C, P[i]) * pw[i];
      if (px.val() < vt_num)
        throw PrecisionError("relation re-verification failed; inconsistent digits");
      RelationCertificate cert;
      cert.found = true;
      cert.coeffs = std::move(P);
      cert.achieved_val = px.val();
      cert.deg_x = dd;
      cert.deg_theta = hh;
      cert.vt_num = vt_num;
      cert.prec_num = q.xi.prec();
      return cert;
    }
  }
  return std::nullopt;
}

std::vector<CMValueResult> cm_value_certify(
    const std::vector<std::pair<std::string, Series>>& values,
    const Series& reference, int deg_x, int deg_theta, int vt) {
  if (reference.zero_to_prec())
    throw DomainError("reference value is zero at working precision");
  std::vector<CMValueResult> out;
  for (const auto& [label, val] : values) {
    RelationQuery q{div(val, reference), deg_x, deg_theta, vt};
    out.push_back({label, detect_relation(q)});
  }
  return out;
}

std::optional<RelationCertificate> legendre_check(const PeriodMatrix& P,
                                                  const Series& reference,
                                                  int deg_x, int deg_theta, int vt) {
  if (P.dim() < 1 || P.dim() > 2)
    throw DomainError("determinant relation is only supported for ranks 1 and 2");
  RelationQuery q{div(P.det(), reference), deg_x, deg_theta, vt};
  return detect_relation(q);
}

TrdegPrediction trdeg_predict(const std::vector<int>& ranks, bool pairwise_disjoint,
                              bool galois, int s) {
  TrdegPrediction pr;
  pr.ranks = ranks;
  pr.pairwise_disjoint = pairwise_disjoint;
  pr.galois = galois;
  if (ranks.empty()) throw DomainError("no ranks given");
  if (ranks.size() == 1) {
    int r = ranks[0];
    if (r < 1) throw DomainError("rank must be positive");
    if (s < 1) throw DomainError("single-module prediction needs the CM field degree s");
    if ((r * r) % s) throw DomainError("prediction r^2/s needs s | r^2; case not covered");
    pr.degree = r * r / s;
    return pr;
  }
  for (int r : ranks)
    if (r < 2) throw DomainError("multi-module prediction needs every rank >= 2");
  if (!pairwise_disjoint || !galois)
    throw DomainError("prediction requires pairwise non-isogenous CM modules with "
                      "Galois CM fields; hypothesis not asserted");
  int sum = 0;
  for (int r : ranks) sum += r;
  pr.degree = sum - (static_cast<int>(ranks.size()) - 1);
  return pr;
}

namespace {

void gen_level(int total, size_t i, std::vector<int>& a,
               std::vector<std::vector<int>>* out) {
  if (i + 1 == a.size()) {
    a[i] = total;
    out->push_back(a);
    return;
  }
  for (int v = 0; v <= total; ++v) {
    a[i] = v;
    gen_level(total - v, i + 1, a, out);
  }
}

// exponent tuples with |a| <= d: degree ascending, lex ascending within a degree
void enum_monomials(int nvars, int d, std::vector<std::vector<int>>* out) {
  std::vector<int> a(static_cast<size_t>(nvars), 0);
  for (int total = 0; total <= d; ++total) gen_level(total, 0, a, out);
}

Series monomial_value(const Ctx& C, const std::vector<Series>& vals,
                      const std::vector<int>& a,
                      std::map<std::vector<int>, Series>* memo) {
  auto it = memo->find(a);
  if (it != memo->end()) return it->second;
  Series r = Series::one(C);
  bool zero = true;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i]) {
      zero = false;
      std::vector<int> prev = a;
      prev[i] -= 1;
      r = monomial_value(C, vals, prev, memo) * vals[i];
      break;
    }
  if (zero) r = Series::one(C);
  memo->emplace(a, r);
  return r;
}

// one pseudo-reduction pass of rel modulo the univariate relations;
// divisors are used through their top X-power: L_k X^{d_k} = -(lower part)
struct UniDivisor {
  size_t var;
  int deg;
  Poly lead;                 // coefficient of X^deg
  std::vector<Poly> lower;   // coefficients of X^0..X^(deg-1)
};

bool reduce_once(std::vector<std::pair<std::vector<int>, Poly>>* terms,
                 const std::vector<UniDivisor>& divs, const Field& F) {
  // find the graded-lex largest reducible term
  int best = -1;
  size_t best_div = 0;
  for (size_t t = 0; t < terms->size(); ++t) {
    const auto& [a, c] = (*terms)[t];
    if (c.is_zero()) continue;
    for (size_t d = 0; d < divs.size(); ++d) {
      if (a[divs[d].var] >= divs[d].deg) {
        if (best < 0) {
          best = static_cast<int>(t);
          best_div = d;
        }
        break;
      }
    }
  }
  if (best < 0) return false;
  auto [a, c] = (*terms)[static_cast<size_t>(best)];
  const UniDivisor& dv = divs[best_div];
  // rel <- lead * rel - c * X^(a - deg e_var) * divisor
  for (auto& [ea, ec] : *terms) ec = ec * dv.lead;
  std::vector<int> qexp = a;
  qexp[dv.var] -= dv.deg;
  auto add_term = [&](const std::vector<int>& e, const Poly& p) {
    for (auto& [ea, ec] : *terms)
      if (ea == e) {
        ec = ec + p;
        return;
      }
    terms->emplace_back(e, p);
  };
  // subtract c * qexp * (lead X^deg + lower): the X^deg part cancels `a`
  add_term(a, (c * dv.lead).neg());
  for (int k = 0; k < dv.deg; ++k) {
    if (dv.lower[static_cast<size_t>(k)].is_zero()) continue;
    std::vector<int> e = qexp;
    e[dv.var] += k;
    add_term(e, (c * dv.lower[static_cast<size_t>(k)]).neg());
  }
  (void)F;
  // drop zero terms
  terms->erase(std::remove_if(terms->begin(), terms->end(),
                              [](const auto& t) { return t.second.is_zero(); }),
               terms->end());
  return true;
}

}  // namespace

std::string MultiRelation::str(const std::vector<std::string>& names) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : terms) {
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str("th") << ")";
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      os << "*" << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (a[i] > 1) os << "^" << a[i];
    }
  }
  if (first) os << "0";
  return os.str();
}

IndependenceReport independence_probe(const std::vector<Series>& values,
                                      int total_deg, int deg_theta, int vt) {
  if (values.empty()) throw DomainError("no values given");
  if (!values[0].ctx()) throw DomainError("null series");
  const Ctx& C = *values[0].ctx();
  const Field& F = C.field();
  int m = C.m();
  std::int64_t vt_num = static_cast<std::int64_t>(vt) * m;

  IndependenceReport rep;
  rep.total_deg = total_deg;
  rep.deg_theta = deg_theta;
  rep.vt_num = vt_num;

  for (const Series& v : values)
    rep.univariate.push_back(detect_relation({v, total_deg, deg_theta, vt}));

  std::vector<std::vector<int>> mono;
  enum_monomials(static_cast<int>(values.size()), total_deg, &mono);
  std::map<std::vector<int>, Series> memo;
  std::vector<Series> mvals;
  std::int64_t vmin = 0, min_prec = kExactPrec;
  for (const auto& a : mono) {
    Series s = monomial_value(C, values, a, &memo);
    vmin = std::min(vmin, s.val() - static_cast<std::int64_t>(deg_theta) * m);
    min_prec = sat_min(min_prec, s.prec());
    mvals.push_back(std::move(s));
  }
  min_prec = sat_add(min_prec, -static_cast<std::int64_t>(deg_theta) * m);
  if (vt_num > min_prec - 10)
    throw DomainError("target valuation too close to the precision of the values");

  std::vector<fq> basis = fq_basis(F);
  std::int64_t rows_est = (vt_num - vmin) * F.e() * F.s();
  std::int64_t cols_est =
      static_cast<std::int64_t>(mono.size()) * (deg_theta + 1) * F.e();
  if (rows_est > 0 && rows_est * cols_est > 50'000'000)
    throw BudgetError("relation system too large: " + std::to_string(rows_est) +
                      " x " + std::to_string(cols_est));
  std::vector<Series> cols;
  for (const auto& s : mvals)
    for (int j = 0; j <= deg_theta; ++j)
      for (fq b : basis)
        cols.push_back(s.shifted(-static_cast<std::int64_t>(j) * m).scaled(b));
  LinSystem sys = build_system(C, cols, vmin, vt_num);
  std::vector<std::vector<int>> ker = kernel_basis(std::move(sys.mat), sys.cols, F.p());

  // divisors for the implied-by-univariate classification
  std::vector<UniDivisor> divs;
  for (size_t v = 0; v < values.size(); ++v) {
    if (!rep.univariate[v] || !rep.univariate[v]->found) continue;
    const auto& P = rep.univariate[v]->coeffs;
    UniDivisor d;
    d.var = v;
    d.deg = static_cast<int>(P.size()) - 1;
    d.lead = P.back();
    d.lower.assign(P.begin(), P.end() - 1);
    if (d.deg >= 1) divs.push_back(std::move(d));
  }

  size_t e = basis.size();
  for (const auto& x : ker) {
    MultiRelation rel;
    for (size_t mi = 0; mi < mono.size(); ++mi) {
      Poly c(&F);
      for (int j = 0; j <= deg_theta; ++j) {
        size_t off = (mi * static_cast<size_t>(deg_theta + 1) + static_cast<size_t>(j)) * e;
        c.set_coeff(j, assemble_coeff(F, basis, x, off));
      }
      if (!c.is_zero()) rel.terms.emplace_back(mono[mi], c);
    }
    if (rel.terms.empty()) continue;
    // normalize: graded-lex largest term gets a monic theta-lead
    fq scale = F.inv(rel.terms.back().second.lead());
    for (auto& [a, c] : rel.terms) c = c.scaled(scale);
    // re-verify
    Series px = Series::zero(C);
    for (const auto& [a, c] : rel.terms) {
      size_t mi = static_cast<size_t>(std::find(mono.begin(), mono.end(), a) -
                                      mono.begin());
      px = px + Series::from_theta_poly(C, c) * mvals[mi];
    }
    if (px.val() < vt_num)
      throw PrecisionError("relation re-verification failed; inconsistent digits");
    rel.achieved_val = px.val();
    auto terms = rel.terms;
    int guard = 0;
    while (reduce_once(&terms, divs, F) && ++guard < 1000) {
    }
    rel.implied = terms.empty();
    if (!rel.implied) rep.cross_found = true;
    rep.relations.push_back(std::move(rel));
  }
  return rep;
}

}  // namespace drinfeld
