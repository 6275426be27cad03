#include "drinfeld/series.hpp"

#include <numeric>
#include <sstream>

namespace drinfeld {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= kExactPrec / 2 || b >= kExactPrec / 2) return kExactPrec;
  if (a <= -kExactPrec / 2 || b <= -kExactPrec / 2) return -kExactPrec;
  return a + b;
}

std::int64_t sat_min(std::int64_t a, std::int64_t b) { return a < b ? a : b; }

std::int64_t sat_mul_pos(std::int64_t a, std::int64_t q) {
  // q > 0; saturate instead of overflowing
  if (a >= kExactPrec / 2) return kExactPrec;
  if (a <= -kExactPrec / 2) return -kExactPrec;
  if (a > 0 && a > kExpCap / q) return kExactPrec;
  if (a < 0 && -a > kExpCap / q) return -kExactPrec;
  return a * q;
}

namespace {

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  return (r && ((r < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

void Series::normalize() {
  size_t lead0 = 0;
  while (lead0 < d_.size() && d_[lead0] == 0) ++lead0;
  if (lead0) {
    v_ += static_cast<std::int64_t>(lead0);
    d_.erase(d_.begin(), d_.begin() + static_cast<std::ptrdiff_t>(lead0));
  }
  if (d_.empty() || v_ >= prec_) {
    d_.clear();
    v_ = prec_;
    return;
  }
  if (prec_ < kExactPrec && v_ + static_cast<std::int64_t>(d_.size()) > prec_)
    d_.resize(static_cast<size_t>(prec_ - v_));
  // digit span is bounded by the window; dropping digits lowers the claimed
  // precision (sparse values like theta keep exact precision: span 1)
  std::int64_t W = C_->rel_window();
  if (static_cast<std::int64_t>(d_.size()) > W) {
    d_.resize(static_cast<size_t>(W));
    prec_ = sat_min(prec_, sat_add(v_, W));
  }
  while (!d_.empty() && d_.back() == 0) d_.pop_back();
  if (d_.empty()) v_ = prec_;
}

Series Series::zero(const Ctx& C) {
  Series r;
  r.C_ = &C;
  r.v_ = kExactPrec;
  r.prec_ = kExactPrec;
  return r;
}

Series Series::zero_at(const Ctx& C, std::int64_t precnum) {
  Series r;
  r.C_ = &C;
  r.prec_ = precnum;
  r.v_ = precnum;
  return r;
}

Series Series::scalar(const Ctx& C, fq c) {
  Series r;
  r.C_ = &C;
  if (c) {
    r.v_ = 0;
    r.d_ = {c};
  } else {
    r.v_ = kExactPrec;
  }
  return r;
}

Series Series::monomial(const Ctx& C, fq c, std::int64_t unum) {
  Series r;
  r.C_ = &C;
  if (c) {
    r.v_ = unum;
    r.d_ = {c};
  } else {
    r.v_ = kExactPrec;
  }
  return r;
}

Series Series::theta_pow(const Ctx& C, std::int64_t knum) {
  return monomial(C, 1, -knum);
}

Series Series::from_theta_poly(const Ctx& C, const Poly& a) {
  if (a.is_zero()) return zero(C);
  int dg = a.deg();
  int m = C.m();
  Series r;
  r.C_ = &C;
  r.v_ = -static_cast<std::int64_t>(dg) * m;
  r.d_.assign(static_cast<size_t>(dg) * m + 1, 0);
  for (int j = 0; j <= dg; ++j) r.d_[static_cast<size_t>(dg - j) * m] = a.coeff(j);
  r.normalize();
  return r;
}

Series Series::make(const Ctx& C, std::int64_t vnum, std::vector<fq> digits,
                    std::int64_t precnum) {
  Series r;
  r.C_ = &C;
  r.v_ = vnum;
  r.d_ = std::move(digits);
  r.prec_ = precnum;
  r.normalize();
  return r;
}

fq Series::digit_at(std::int64_t unum) const {
  if (d_.empty() || unum < v_) return 0;
  std::int64_t idx = unum - v_;
  if (idx >= static_cast<std::int64_t>(d_.size())) return 0;
  return d_[static_cast<size_t>(idx)];
}

Series Series::operator-() const {
  Series r = *this;
  const Field& F = C_->field();
  for (auto& c : r.d_) c = F.neg(c);
  return r;
}

Series Series::operator+(const Series& o) const {
  if (!C_ || !o.C_) throw DomainError("null series");
  const Field& F = C_->field();
  std::int64_t va = val(), vb = o.val();
  std::int64_t vn = sat_min(va, vb);
  std::int64_t pr = sat_min(prec_, o.prec_);
  if (vn >= pr) return zero_at(*C_, pr);
  // digit span that would be needed to keep every known digit
  std::int64_t ea = d_.empty() ? vn : v_ + static_cast<std::int64_t>(d_.size());
  std::int64_t eb = o.d_.empty() ? vn : o.v_ + static_cast<std::int64_t>(o.d_.size());
  std::int64_t span = std::max(ea, eb) - vn;
  std::int64_t alloc = std::min(span, C_->rel_window());
  if (pr < kExactPrec) alloc = std::min(alloc, std::max<std::int64_t>(pr - vn, 0));
  if (alloc < span) pr = sat_min(pr, sat_add(vn, alloc));
  Series r;
  r.C_ = C_;
  r.v_ = vn;
  r.prec_ = pr;
  r.d_.assign(static_cast<size_t>(alloc), 0);
  for (size_t i = 0; i < d_.size(); ++i) {
    std::int64_t pos = v_ + static_cast<std::int64_t>(i) - vn;
    if (pos >= 0 && pos < alloc) r.d_[static_cast<size_t>(pos)] = d_[i];
  }
  for (size_t i = 0; i < o.d_.size(); ++i) {
    std::int64_t pos = o.v_ + static_cast<std::int64_t>(i) - vn;
    if (pos >= 0 && pos < alloc)
      r.d_[static_cast<size_t>(pos)] = F.add(r.d_[static_cast<size_t>(pos)], o.d_[i]);
  }
  r.normalize();
  return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
  if (!C_ || !o.C_) throw DomainError("null series");
  const Field& F = C_->field();
  std::int64_t pr = sat_min(sat_add(prec_, o.val()), sat_add(o.prec_, val()));
  if (d_.empty() || o.d_.empty()) return zero_at(*C_, pr);
  std::int64_t vn = sat_add(v_, o.v_);
  if (vn >= pr) return zero_at(*C_, pr);
  std::int64_t span = static_cast<std::int64_t>(d_.size() + o.d_.size()) - 1;
  std::int64_t alloc = std::min(span, C_->rel_window());
  if (pr < kExactPrec) alloc = std::min(alloc, std::max<std::int64_t>(pr - vn, 0));
  if (alloc < span) pr = sat_min(pr, sat_add(vn, alloc));
  Series r;
  r.C_ = C_;
  r.v_ = vn;
  r.prec_ = pr;
  r.d_.assign(static_cast<size_t>(alloc), 0);
  for (size_t i = 0; i < d_.size(); ++i) {
    if (!d_[i]) continue;
    if (static_cast<std::int64_t>(i) >= alloc) break;
    for (size_t j = 0; j < o.d_.size(); ++j) {
      size_t k = i + j;
      if (k >= static_cast<size_t>(alloc)) break;
      if (o.d_[j]) r.d_[k] = F.add(r.d_[k], F.mul(d_[i], o.d_[j]));
    }
  }
  r.normalize();
  return r;
}

Series Series::scaled(fq c) const {
  if (!c) return zero(*C_);
  Series r = *this;
  const Field& F = C_->field();
  for (auto& x : r.d_) x = F.mul(x, c);
  return r;
}

Series Series::shifted(std::int64_t unum) const {
  Series r = *this;
  r.v_ = sat_add(r.v_, unum);
  r.prec_ = sat_add(r.prec_, unum);
  return r;
}

Series Series::with_prec(std::int64_t precnum) const {
  if (precnum >= prec_) return *this;
  Series r = *this;
  r.prec_ = precnum;
  r.normalize();
  return r;
}

Series inv(const Series& x) {
  if (x.zero_to_prec())
    throw DomainError("inverse of a series that is zero to working precision");
  const Ctx& C = *x.C_;
  const Field& F = C.field();
  std::int64_t v = x.v_;
  std::int64_t W = C.rel_window();
  std::int64_t relx = x.prec_ >= kExactPrec ? W : x.prec_ - v;
  std::int64_t R = std::min(relx, W);
  fq lead = x.d_[0];
  Series unit = x.shifted(-v).scaled(F.inv(lead)).with_prec(R);
  Series two = Series::scalar(C, F.from_int(2));
  Series y = Series::one(C).with_prec(R);
  for (int it = 0; it < 200; ++it) {
    Series yn = y * (two - unit * y);
    yn = yn.with_prec(R);
    if (yn.identical(y)) break;
    y = yn;
    if (it == 199) throw PrecisionError("series inverse did not converge");
  }
  return y.scaled(F.inv(lead)).shifted(-v);
}

Series div(const Series& a, const Series& b) { return a * inv(b); }

Series qpow(const Series& x, int j) {
  if (j < 0) {
    Series r = x;
    for (int i = 0; i < -j; ++i) r = root_q(r);
    return r;
  }
  if (j == 0) return x;
  const Ctx& C = *x.C_;
  const Field& F = C.field();
  std::int64_t Q = 1;
  for (int i = 0; i < j; ++i) Q = sat_mul_pos(Q, F.q());
  if (Q >= kExactPrec) throw PrecisionError("q-power exponent overflow");
  if (x.d_.empty()) return Series::zero_at(C, sat_mul_pos(x.prec_, Q));
  std::int64_t vn = sat_mul_pos(x.v_, Q);
  if (vn >= kExactPrec / 2 || vn <= -kExactPrec / 2)
    throw PrecisionError("q-power valuation overflow");
  std::int64_t pr = sat_mul_pos(x.prec_, Q);
  std::int64_t span = sat_add(sat_mul_pos(static_cast<std::int64_t>(x.d_.size()) - 1, Q), 1);
  std::int64_t alloc = std::min(span, C.rel_window());
  if (pr < kExactPrec) alloc = std::min(alloc, std::max<std::int64_t>(pr - vn, 0));
  if (alloc < span) pr = sat_min(pr, sat_add(vn, alloc));
  Series r;
  r.C_ = &C;
  r.v_ = vn;
  r.prec_ = pr;
  r.d_.assign(static_cast<size_t>(alloc), 0);
  for (size_t i = 0; i < x.d_.size(); ++i) {
    std::int64_t pos = static_cast<std::int64_t>(i) * Q;
    if (pos >= alloc) break;
    if (x.d_[i]) r.d_[static_cast<size_t>(pos)] = F.pow_q(x.d_[i], j);
  }
  r.normalize();
  return r;
}

Series root_q(const Series& x) {
  const Ctx& C = *x.C_;
  const Field& F = C.field();
  std::int64_t q = F.q();
  if (x.d_.empty()) return Series::zero_at(C, floordiv(x.prec_, q));
  if (x.v_ % q)
    throw DomainError("series is not a q-th power: valuation " +
                      exp_str(x.v_, 1) + " not divisible by q");
  Series r;
  r.C_ = &C;
  r.v_ = x.v_ / q;
  r.prec_ = x.prec_ >= kExactPrec ? kExactPrec : floordiv(x.prec_, q);
  std::int64_t len = (static_cast<std::int64_t>(x.d_.size()) - 1) / q + 1;
  r.d_.assign(static_cast<size_t>(len), 0);
  for (size_t i = 0; i < x.d_.size(); ++i) {
    if (!x.d_[i]) continue;
    if (static_cast<std::int64_t>(i) % q)
      throw DomainError("series is not a q-th power within precision");
    r.d_[i / static_cast<size_t>(q)] = F.pow_q(x.d_[i], -1);
  }
  r.normalize();
  return r;
}

Series Series::pow_int(std::int64_t n) const {
  if (n < 0) return inv(*this).pow_int(-n);
  Series r = Series::one(*C_);
  Series b = *this;
  std::uint64_t k = static_cast<std::uint64_t>(n);
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

namespace {

// p-th root by digit relabeling (valid in char p)
Series root_p(const Series& x) {
  const Ctx& C = *x.ctx();
  const Field& F = C.field();
  std::int64_t p = F.p();
  if (x.zero_to_prec()) return Series::zero_at(C, floordiv(x.prec(), p));
  if (x.val() % p) throw DomainError("series is not a p-th power: bad valuation");
  int n = F.e() * F.s();
  std::vector<fq> d((x.digits().size() - 1) / static_cast<size_t>(p) + 1, 0);
  for (size_t i = 0; i < x.digits().size(); ++i) {
    fq c = x.digits()[i];
    if (!c) continue;
    if (static_cast<std::int64_t>(i) % p)
      throw DomainError("series is not a p-th power within precision");
    fq r = c;
    for (int t = 0; t + 1 < n; ++t) r = F.pow(r, p);  // c^(p^(n-1)) = c^(1/p)
    d[i / static_cast<size_t>(p)] = r;
  }
  return Series::make(C, x.val() / p, std::move(d),
                      x.prec() >= kExactPrec ? kExactPrec : floordiv(x.prec(), p));
}

}  // namespace

Series root(const Series& x, std::uint32_t n) {
  if (n == 0) throw DomainError("0-th root");
  if (n == 1) return x;
  const Ctx& C = *x.C_;
  const Field& F = C.field();
  if (x.zero_to_prec()) {
    if (x.exact_zero()) return x;
    return Series::zero_at(C, floordiv(x.prec_, n));
  }
  std::uint32_t np = 1, n2 = n;
  while (n2 % F.p() == 0) {
    n2 /= static_cast<std::uint32_t>(F.p());
    np *= static_cast<std::uint32_t>(F.p());
  }
  Series y = x;
  for (std::uint32_t t = 1; t < np; t *= static_cast<std::uint32_t>(F.p())) y = root_p(y);
  if (n2 == 1) return y;
  if (y.v_ % n2)
    throw DomainError("series has no " + std::to_string(n) + "-th root: valuation");
  fq lr;
  if (!F.nth_root(y.d_[0], n2, &lr))
    throw DomainError("leading coefficient has no " + std::to_string(n2) +
                      "-th root in the coefficient field");
  std::int64_t v = y.v_;
  std::int64_t W = C.rel_window();
  std::int64_t relx = y.prec_ >= kExactPrec ? W : y.prec_ - v;
  std::int64_t R = std::min(relx, W);
  Series unit = y.shifted(-v).scaled(F.inv(y.d_[0])).with_prec(R);  // 1 + w
  // Newton for z^n2 = unit, n2 invertible in the field
  Series z = Series::one(C).with_prec(R);
  Series cinv = Series::scalar(C, F.inv(F.from_int(n2)));
  for (int it = 0; it < 200; ++it) {
    Series zn = z - cinv * (z.pow_int(n2) - unit) * inv(z.pow_int(static_cast<std::int64_t>(n2) - 1));
    zn = zn.with_prec(R);
    if (zn.identical(z)) break;
    z = zn;
    if (it == 199) throw PrecisionError("series root did not converge");
  }
  Series lead_root = Series::monomial(C, lr, v / n2);
  Series res = lead_root * z;
  std::int64_t pr = y.prec_ >= kExactPrec ? kExactPrec : (y.prec_ - v) + floordiv(v, n2);
  return res.with_prec(pr);
}

std::int64_t Series::diff_val(const Series& a, const Series& b) {
  return (a - b).val();
}

std::string exp_str(std::int64_t knum, int m) {
  std::int64_t g = std::gcd(knum < 0 ? -knum : knum, static_cast<std::int64_t>(m));
  if (g == 0) g = 1;
  std::int64_t num = knum / g, den = m / g;
  std::ostringstream os;
  os << num;
  if (den != 1) os << "/" << den;
  return os.str();
}

std::string Series::str(int max_terms) const {
  if (!C_) return "<null>";
  std::ostringstream os;
  if (d_.empty()) {
    if (prec_ >= kExactPrec) return "0";
    os << "O(th^(" << exp_str(-prec_, C_->m()) << "))";
    return os.str();
  }
  int printed = 0;
  bool first = true;
  for (size_t i = 0; i < d_.size() && printed < max_terms; ++i) {
    if (!d_[i]) continue;
    if (!first) os << " + ";
    first = false;
    std::int64_t k = v_ + static_cast<std::int64_t>(i);
    if (k == 0) {
      os << static_cast<int>(d_[i]);
    } else {
      if (d_[i] != 1) os << static_cast<int>(d_[i]) << "*";
      os << "th^(" << exp_str(-k, C_->m()) << ")";
    }
    ++printed;
  }
  if (printed == max_terms) os << " + ...";
  if (prec_ < kExactPrec) os << " + O(th^(" << exp_str(-prec_, C_->m()) << "))";
  return os.str();
}

}  // namespace drinfeld
