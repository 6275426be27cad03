#include "drinfeld/ore.hpp"

#include <sstream>

namespace drinfeld {

TwistedPoly::TwistedPoly(const Ctx& C, std::vector<Series> coeffs)
    : C_(&C), c_(std::move(coeffs)) {
  normalize();
}

void TwistedPoly::normalize() {
  while (!c_.empty() && c_.back().exact_zero()) c_.pop_back();
}

TwistedPoly TwistedPoly::tau(const Ctx& C, int i) {
  std::vector<Series> c(static_cast<size_t>(i) + 1, Series::zero(C));
  c.back() = Series::one(C);
  return TwistedPoly(C, std::move(c));
}

Series TwistedPoly::coeff(int i) const {
  if (i < 0 || static_cast<size_t>(i) >= c_.size()) return Series::zero(*C_);
  return c_[static_cast<size_t>(i)];
}

TwistedPoly TwistedPoly::operator+(const TwistedPoly& o) const {
  if (!C_ || !o.C_) throw DomainError("null twisted polynomial");
  std::vector<Series> r(std::max(c_.size(), o.c_.size()), Series::zero(*C_));
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return TwistedPoly(*C_, std::move(r));
}

TwistedPoly TwistedPoly::operator-(const TwistedPoly& o) const {
  return *this + o.scaled(Series::scalar(*C_, C_->field().minus_one()));
}

TwistedPoly TwistedPoly::operator*(const TwistedPoly& o) const {
  if (!C_ || !o.C_) throw DomainError("null twisted polynomial");
  if (c_.empty() || o.c_.empty()) return TwistedPoly(*C_, {});
  std::vector<Series> r(c_.size() + o.c_.size() - 1, Series::zero(*C_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].exact_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].exact_zero()) continue;
      // tau^i c = c^(q^i) tau^i
      r[i + j] = r[i + j] + c_[i] * qpow(o.c_[j], static_cast<int>(i));
    }
  }
  return TwistedPoly(*C_, std::move(r));
}

TwistedPoly TwistedPoly::scaled(const Series& s) const {
  std::vector<Series> r = c_;
  for (auto& x : r) x = s * x;
  return TwistedPoly(*C_, std::move(r));
}

Series TwistedPoly::act(const Series& x) const {
  Series r = Series::zero(*C_);
  Series xq = x;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) xq = qpow(xq, 1);
    if (!c_[i].exact_zero()) r = r + c_[i] * xq;
  }
  return r;
}

bool TwistedPoly::same_up_to_prec(const TwistedPoly& o) const {
  size_t n = std::max(c_.size(), o.c_.size());
  for (size_t i = 0; i < n; ++i) {
    Series d = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
    if (!d.zero_to_prec()) return false;
  }
  return true;
}

std::string TwistedPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].exact_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].str(4) << ")";
    if (i) os << "*tau^" << i;
  }
  return os.str();
}

DrinfeldModule::DrinfeldModule(const Ctx& C, std::vector<Series> g)
    : C_(&C), g_(std::move(g)) {
  if (g_.empty()) throw DomainError("rank must be at least 1");
  if (g_.back().zero_to_prec())
    throw DomainError("top coefficient g_r is zero at current precision");
}

const Series& DrinfeldModule::g(int i) const {
  if (i < 1 || i > rank()) throw DomainError("coefficient index out of range");
  return g_[static_cast<size_t>(i - 1)];
}

TwistedPoly DrinfeldModule::phi_t() const {
  std::vector<Series> c;
  c.reserve(g_.size() + 1);
  c.push_back(Series::theta(*C_));
  for (const auto& gi : g_) c.push_back(gi);
  return TwistedPoly(*C_, std::move(c));
}

TwistedPoly phi_of_a(const DrinfeldModule& phi, const Poly& a) {
  const Ctx& C = phi.ctx();
  if (!a.coeffs_in_base_field())
    throw DomainError("operator polynomial must have coefficients in F_q");
  TwistedPoly r = TwistedPoly::zero(C);
  TwistedPoly pt = phi.phi_t();
  for (int i = a.deg(); i >= 0; --i) {
    r = r * pt;
    fq c = a.coeff(i);
    if (c) r = r + TwistedPoly(C, {Series::scalar(C, c)});
  }
  return r;
}

EntireSeries::EntireSeries(const Ctx& C, std::vector<Series> coeffs)
    : C_(&C), c_(std::move(coeffs)) {}

Series EntireSeries::coeff(int k) const {
  if (k < 0 || static_cast<size_t>(k) >= c_.size()) return Series::zero(*C_);
  return c_[static_cast<size_t>(k)];
}

namespace {

// theta^(q^k) - theta, exact
Series bracket(const Ctx& C, int k) {
  std::int64_t qk = 1;
  for (int i = 0; i < k; ++i) qk = sat_mul_pos(qk, C.q());
  if (qk >= kExpCap) throw PrecisionError("q^k exponent overflow");
  return Series::theta_pow(C, qk * C.m()) - Series::theta(C);
}

}  // namespace

EntireSeries exp_coeffs(const DrinfeldModule& phi, int k_max) {
  const Ctx& C = phi.ctx();
  int r = phi.rank();
  std::vector<Series> al;
  al.reserve(static_cast<size_t>(k_max) + 1);
  al.push_back(Series::one(C));
  for (int k = 1; k <= k_max; ++k) {
    Series s = Series::zero(C);
    for (int j = 1; j <= std::min(k, r); ++j)
      s = s + phi.g(j) * qpow(al[static_cast<size_t>(k - j)], j);
    al.push_back(div(s, bracket(C, k)));
  }
  return EntireSeries(C, std::move(al));
}

EntireSeries log_coeffs(const DrinfeldModule& phi, int k_max) {
  const Ctx& C = phi.ctx();
  EntireSeries ex = exp_coeffs(phi, k_max);
  std::vector<Series> be;
  be.reserve(static_cast<size_t>(k_max) + 1);
  be.push_back(Series::one(C));
  for (int k = 1; k <= k_max; ++k) {
    Series s = Series::zero(C);
    for (int i = 0; i < k; ++i) s = s + be[static_cast<size_t>(i)] * qpow(ex.coeff(k - i), i);
    be.push_back(-s);
  }
  return EntireSeries(C, std::move(be));
}

EntireSeries quasi_period_coeffs(const DrinfeldModule& phi, int i, int k_max) {
  const Ctx& C = phi.ctx();
  if (i < 0 || i >= phi.rank())
    throw DomainError("biderivation index must lie in 0..r-1");
  EntireSeries ex = exp_coeffs(phi, k_max);
  std::vector<Series> c;
  c.reserve(static_cast<size_t>(k_max) + 1);
  if (i == 0) {
    // t -> phi_t - theta gives exp - X
    c.push_back(Series::zero(C));
    for (int k = 1; k <= k_max; ++k) c.push_back(ex.coeff(k));
  } else {
    for (int k = 0; k <= k_max; ++k) {
      if (k < i) {
        c.push_back(Series::zero(C));
      } else {
        c.push_back(div(qpow(ex.coeff(k - i), i), bracket(C, k)));
      }
    }
  }
  return EntireSeries(C, std::move(c));
}

Series entire_eval(const EntireSeries& f, const Series& x) {
  if (!f.ctx()) throw DomainError("null entire series");
  const Ctx& C = *f.ctx();
  int K = f.kmax();
  if (K < 0) return Series::zero(C);
  if (x.zero_to_prec()) {
    // every term c_k x^(q^k) vanishes below c_k.val() + q^k * prec(x)
    std::int64_t bound = kExactPrec, qk = 1;
    for (int k = 0; k <= K; ++k) {
      if (k) qk = sat_mul_pos(qk, C.q());
      bound = sat_min(bound, sat_add(f.coeff(k).val(),
                                     qk >= kExpCap ? kExactPrec : sat_mul_pos(x.prec(), qk)));
    }
    return Series::zero_at(C, bound);
  }
  Series sum = Series::zero(C);
  Series xq = x;
  std::vector<std::int64_t> tv;  // term valuations (precision bound when zero)
  for (int k = 0; k <= K; ++k) {
    if (k) xq = qpow(xq, 1);
    Series term = f.coeff(k) * xq;
    sum = sum + term;
    tv.push_back(term.val());
  }
  if (K < 2) throw PrecisionError("k_max too small for a tail bound");
  std::int64_t a = tv[static_cast<size_t>(K - 2)], b = tv[static_cast<size_t>(K - 1)],
               c = tv[static_cast<size_t>(K)];
  if (!(a < b && b < c))
    throw PrecisionError("entire series tail not certified: term valuations "
                         "not increasing at k_max");
  std::int64_t bound = sat_add(c, c - b);
  return sum.with_prec(sat_min(sum.prec(), bound));
}

PeriodMatrix::PeriodMatrix(const Ctx& C, std::vector<std::vector<Series>> rows)
    : C_(&C), a_(std::move(rows)) {
  for (const auto& row : a_)
    if (row.size() != a_.size()) throw DomainError("period matrix must be square");
}

Series PeriodMatrix::det() const {
  int n = dim();
  if (n == 0) return Series::one(*C_);
  if (n == 1) return a_[0][0];
  // Laplace along the first row; n is small (module rank)
  Series s = Series::zero(*C_);
  const Field& F = C_->field();
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<Series>> minor;
    for (int i = 1; i < n; ++i) {
      std::vector<Series> row;
      for (int k = 0; k < n; ++k)
        if (k != j) row.push_back(a_[static_cast<size_t>(i)][static_cast<size_t>(k)]);
      minor.push_back(std::move(row));
    }
    Series term = a_[0][static_cast<size_t>(j)] * PeriodMatrix(*C_, std::move(minor)).det();
    s = s + (j % 2 ? term.scaled(F.minus_one()) : term);
  }
  return s;
}

PeriodMatrix period_matrix(const DrinfeldModule& phi, const std::vector<Series>& basis,
                           int k_max) {
  const Ctx& C = phi.ctx();
  int r = phi.rank();
  if (static_cast<int>(basis.size()) != r)
    throw DomainError("basis size must equal the rank");
  EntireSeries ex = exp_coeffs(phi, k_max);
  for (const Series& w : basis) {
    Series res = entire_eval(ex, w);
    std::int64_t thr = 4 * sat_min(C.work_prec_num(), res.prec()) / 5;
    if (res.val() < thr)
      throw DomainError("basis element is not a period at working precision: "
                        "exp residual valuation " + std::to_string(res.val()) +
                        " below threshold " + std::to_string(thr));
  }
  std::vector<EntireSeries> qp;
  for (int j = 1; j < r; ++j) qp.push_back(quasi_period_coeffs(phi, j, k_max));
  std::vector<std::vector<Series>> rows;
  const Field& F = C.field();
  for (int i = 0; i < r; ++i) {
    std::vector<Series> row;
    row.push_back(basis[static_cast<size_t>(i)].scaled(F.minus_one()));
    for (int j = 1; j < r; ++j)
      row.push_back(entire_eval(qp[static_cast<size_t>(j - 1)], basis[static_cast<size_t>(i)]));
    rows.push_back(std::move(row));
  }
  return PeriodMatrix(C, std::move(rows));
}

}  // namespace drinfeld
