#include "drinfeld/tate.hpp"

#include <sstream>

namespace drinfeld {

TSeries::TSeries(const Ctx& C, std::vector<Series> coeffs, std::int64_t tprec)
    : C_(&C), c_(std::move(coeffs)), tprec_(tprec) {
  normalize();
}

void TSeries::normalize() {
  if (tprec_ < 0) tprec_ = 0;
  if (static_cast<std::int64_t>(c_.size()) > tprec_)
    c_.resize(static_cast<size_t>(tprec_));
  while (!c_.empty() && c_.back().exact_zero()) c_.pop_back();
}

TSeries TSeries::zero(const Ctx& C, std::int64_t tprec) {
  return TSeries(C, {}, tprec);
}

TSeries TSeries::t(const Ctx& C) {
  return TSeries(C, {Series::zero(C), Series::one(C)});
}

TSeries TSeries::constant(const Series& c) {
  if (!c.ctx()) throw DomainError("constant from null series");
  return TSeries(*c.ctx(), {c});
}

Series TSeries::coeff(int i) const {
  if (i < 0 || static_cast<size_t>(i) >= c_.size()) return Series::zero(*C_);
  return c_[static_cast<size_t>(i)];
}

TSeries TSeries::operator+(const TSeries& o) const {
  if (!C_ || !o.C_) throw DomainError("null t-series");
  std::int64_t tp = std::min(tprec_, o.tprec_);
  std::vector<Series> r(std::max(c_.size(), o.c_.size()), Series::zero(*C_));
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return TSeries(*C_, std::move(r), tp);
}

TSeries TSeries::operator-(const TSeries& o) const {
  return *this + o.scaled(Series::scalar(*C_, C_->field().minus_one()));
}

TSeries TSeries::operator*(const TSeries& o) const {
  if (!C_ || !o.C_) throw DomainError("null t-series");
  std::int64_t tp = std::min(tprec_, o.tprec_);
  if (c_.empty() || o.c_.empty()) return TSeries(*C_, {}, tp);
  size_t natural = c_.size() + o.c_.size() - 1;
  size_t len = natural;
  if (tp < kTExact) len = std::min<size_t>(len, static_cast<size_t>(tp));
  std::vector<Series> r(len, Series::zero(*C_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].exact_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (i + j >= len) break;
      r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
  }
  return TSeries(*C_, std::move(r), tp);
}

TSeries TSeries::scaled(const Series& s) const {
  std::vector<Series> r = c_;
  for (auto& x : r) x = x * s;
  return TSeries(*C_, std::move(r), tprec_);
}

TSeries TSeries::truncated(std::int64_t tprec) const {
  return TSeries(*C_, c_, std::min(tprec_, tprec));
}

Series TSeries::eval(const Series& z) const {
  Series r = Series::zero(*C_);
  for (size_t i = c_.size(); i-- > 0;) r = r * z + c_[i];
  return r;
}

std::string TSeries::str(int max_terms) const {
  std::ostringstream os;
  int printed = 0;
  bool first = true;
  for (size_t i = 0; i < c_.size() && printed < max_terms; ++i) {
    if (c_[i].exact_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].str(4) << ")";
    if (i) os << "*t^" << i;
    ++printed;
  }
  if (first) os << "0";
  if (printed == max_terms) os << " + ...";
  if (tprec_ < kTExact) os << " + O(t^" << tprec_ << ")";
  return os.str();
}

TSeries frobenius_twist(const TSeries& f, int n) {
  if (!f.ctx()) throw DomainError("twist of null t-series");
  std::vector<Series> r;
  r.reserve(f.size());
  for (size_t i = 0; i < f.size(); ++i)
    r.push_back(qpow(f.coeff(static_cast<int>(i)), n));
  return TSeries(*f.ctx(), std::move(r), f.tprec());
}

Series carlitz_period(const Ctx& C, int prec, int root_index, int i_cutoff) {
  const Field& F = C.field();
  int m = C.m();
  std::int64_t q = F.q();
  if (root_index < 1) throw DomainError("root index must be positive");
  std::int64_t denom = static_cast<std::int64_t>(root_index) * (q - 1);
  if (m % denom)
    throw DomainError("period needs m divisible by " + std::to_string(denom) +
                      " (got m=" + std::to_string(m) + ")");
  fq zeta = F.zeta();  // throws when the coefficient field has no such root
  if (prec > C.work_prec())
    throw PrecisionError("requested period precision exceeds working precision");

  std::int64_t mj = m / root_index;         // u-exponent of x = theta^(1/root_index)
  std::int64_t v = -mj / (q - 1) * q;       // valuation of x^(q/(q-1))
  std::int64_t target = static_cast<std::int64_t>(prec) * m;

  // prod (1 - x^(1-q^i)); factor i sits at u-exponent mj*(q^i - 1)
  Series prod = Series::one(C);
  std::int64_t a = 0;  // exponent of the first omitted factor
  std::int64_t qi = 1;
  for (int i = 1;; ++i) {
    qi = sat_mul_pos(qi, q);
    a = qi >= kExpCap ? kExactPrec : sat_mul_pos(qi - 1, mj);
    bool done = i_cutoff >= 0 ? (i > i_cutoff) : (a >= target - v);
    if (done) break;
    prod = prod * (Series::one(C) - Series::monomial(C, 1, a));
  }
  Series res = inv(prod).scaled(F.neg(F.pow(zeta, q))).shifted(v);
  // truncation of the product bounds the result at v + a
  return res.with_prec(sat_min(sat_add(v, a), i_cutoff >= 0 ? kExactPrec : target));
}

TSeries omega_series(const Ctx& C, int t_order, int prec) {
  const Field& F = C.field();
  int m = C.m();
  std::int64_t q = F.q();
  if (t_order < 1) throw DomainError("t_order must be positive");
  if (m % (q - 1))
    throw DomainError("omega needs m divisible by q-1");
  fq zeta = F.zeta();
  if (prec > C.work_prec())
    throw PrecisionError("requested omega precision exceeds working precision");

  std::int64_t target = static_cast<std::int64_t>(prec) * m;
  // leading factor (-theta)^(-q/(q-1)) = zeta^(-q) u^(qm/(q-1))
  fq lead = F.inv(F.pow(zeta, q));
  TSeries acc = TSeries::constant(Series::monomial(C, lead, q * m / (q - 1)));
  TSeries tvar = TSeries::t(C);
  std::int64_t qi = 1;
  for (;;) {
    qi = sat_mul_pos(qi, q);
    std::int64_t ex = qi >= kExpCap ? kExactPrec : sat_mul_pos(qi, m);  // theta^(-q^i)
    if (ex >= target) break;
    TSeries factor = TSeries::constant(Series::one(C)) -
                     tvar.scaled(Series::monomial(C, 1, ex));
    acc = acc * factor;
  }
  acc = acc.truncated(t_order);
  std::vector<Series> out;
  out.reserve(static_cast<size_t>(t_order));
  for (int k = 0; k < t_order; ++k) out.push_back(acc.coeff(k).with_prec(target));
  return TSeries(C, std::move(out), t_order);
}

}  // namespace drinfeld
