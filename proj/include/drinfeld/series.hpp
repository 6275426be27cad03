#pragma once
// Truncated elements of F_{q^s}((theta^(-1/m))): the computational stand-in for
// the completed algebraically closed field at infinity. A value is
//   sum_{k=vnum}^{...} digits[k-vnum] * u^k,  u = theta^(-1/m),
// known exactly for exponents k < precnum and unknown at k >= precnum.
// |x| = q^(-vnum/m); valuations and precisions are integers in u-units.
//
// Precision rules: add keeps min of the operands' precisions; mul propagates
// min(prec_a + val_b, prec_b + val_a); inv of x known to prec P with val v is
// good to P - 2v. Exact values carry a saturating precision sentinel. Every
// value keeps at most rel_window() significant digits: when an exact value's
// support would exceed the window (theta^(q^k) - theta for large k), the
// precision is lowered to the window edge instead. Claimed digits are always
// true digits.

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/field.hpp"

namespace drinfeld {

inline constexpr std::int64_t kExactPrec = std::int64_t(1) << 60;
inline constexpr std::int64_t kExpCap = std::int64_t(1) << 58;

std::int64_t sat_add(std::int64_t a, std::int64_t b);
std::int64_t sat_min(std::int64_t a, std::int64_t b);
std::int64_t sat_mul_pos(std::int64_t a, std::int64_t f);  // f > 0, saturating

// Working context: field tables plus the relative digit window used to bound
// storage. work_prec is in theta-units.
class Ctx {
 public:
  Ctx(const FieldParams& par, int work_prec = 160)
      : F_(par), work_prec_(work_prec), rel_window_(static_cast<std::int64_t>(par.m) * (work_prec + 48)) {
    if (rel_window_ < 16) rel_window_ = 16;
  }
  const Field& field() const { return F_; }
  const Field* fptr() const { return &F_; }
  int m() const { return F_.m(); }
  std::uint32_t q() const { return F_.q(); }
  int work_prec() const { return work_prec_; }                 // theta-units
  std::int64_t work_prec_num() const { return static_cast<std::int64_t>(work_prec_) * F_.m(); }
  std::int64_t rel_window() const { return rel_window_; }

 private:
  Field F_;
  int work_prec_;
  std::int64_t rel_window_;
};

class Series {
 public:
  Series() = default;

  static Series zero(const Ctx& C);                          // exact zero
  static Series zero_at(const Ctx& C, std::int64_t precnum); // zero to finite precision
  static Series scalar(const Ctx& C, fq c);                  // exact constant
  static Series one(const Ctx& C) { return scalar(C, 1); }
  static Series monomial(const Ctx& C, fq c, std::int64_t unum);   // c * u^unum
  static Series theta_pow(const Ctx& C, std::int64_t knum);        // theta^(knum/m)
  static Series theta(const Ctx& C) { return theta_pow(C, C.m()); }
  static Series from_theta_poly(const Ctx& C, const Poly& a);      // a(theta)
  static Series make(const Ctx& C, std::int64_t vnum, std::vector<fq> digits,
                     std::int64_t precnum);

  const Ctx* ctx() const { return C_; }
  bool null() const { return C_ == nullptr; }

  // numeric zero: no known nonzero digit (val() then reports the precision bound)
  bool zero_to_prec() const { return d_.empty(); }
  bool exact_zero() const { return d_.empty() && prec_ >= kExactPrec; }
  bool exact() const { return prec_ >= kExactPrec; }

  std::int64_t val() const { return d_.empty() ? prec_ : v_; }  // u-units
  std::int64_t prec() const { return prec_; }                   // u-units
  fq lead() const { return d_.empty() ? 0 : d_[0]; }
  const std::vector<fq>& digits() const { return d_; }
  std::int64_t vnum_raw() const { return v_; }
  fq digit_at(std::int64_t unum) const;  // 0 beyond the stored list (valid below prec())

  Series operator-() const;
  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;
  Series scaled(fq c) const;
  Series shifted(std::int64_t unum) const;  // multiply by u^unum
  Series with_prec(std::int64_t precnum) const;

  friend Series inv(const Series& x);
  friend Series qpow(const Series& x, int j);     // x^(q^j), j >= 0
  friend Series root_q(const Series& x);          // y with y^q = x (DomainError if none stored)
  Series pow_int(std::int64_t n) const;
  friend Series root(const Series& x, std::uint32_t n);  // y with y^n = x

  // valuation of a - b; precision bound of the difference when it is
  // numerically zero. The residual measure used by every check.
  static std::int64_t diff_val(const Series& a, const Series& b);

  bool identical(const Series& o) const {
    return v_ == o.v_ && prec_ == o.prec_ && d_ == o.d_;
  }

  std::string str(int max_terms = 12) const;

 private:
  const Ctx* C_ = nullptr;
  std::int64_t v_ = 0;
  std::int64_t prec_ = kExactPrec;
  std::vector<fq> d_;
  void normalize();
};

Series div(const Series& a, const Series& b);

// rational exponent formatting: knum/m reduced, e.g. -3/2; integers plain
std::string exp_str(std::int64_t knum, int m);

}  // namespace drinfeld
