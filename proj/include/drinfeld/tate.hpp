#pragma once

#include <string>
#include <vector>

#include "drinfeld/series.hpp"

namespace drinfeld {

inline constexpr std::int64_t kTExact = std::int64_t{1} << 30;

// Polynomial / truncated power series in t with Series coefficients.
// tprec = truncation order: coefficients of t^i are known for i < tprec.
class TSeries {
 public:
  TSeries() = default;
  TSeries(const Ctx& C, std::vector<Series> coeffs, std::int64_t tprec = kTExact);

  static TSeries zero(const Ctx& C, std::int64_t tprec = kTExact);
  static TSeries t(const Ctx& C);
  static TSeries constant(const Series& c);

  const Ctx* ctx() const { return C_; }
  std::int64_t tprec() const { return tprec_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  Series coeff(int i) const;
  size_t size() const { return c_.size(); }

  TSeries operator+(const TSeries& o) const;
  TSeries operator-(const TSeries& o) const;
  TSeries operator*(const TSeries& o) const;
  TSeries scaled(const Series& c) const;
  TSeries truncated(std::int64_t tprec) const;

  // Horner evaluation of the stored coefficients; the t-truncation tail is
  // the caller's responsibility (choose t_order so c_k z^k is below target).
  Series eval(const Series& z) const;

  std::string str(int max_terms = 8) const;

 private:
  void normalize();
  const Ctx* C_ = nullptr;
  std::vector<Series> c_;
  std::int64_t tprec_ = kTExact;
};

// coefficient-wise x -> x^(q^n); n < 0 takes q-th roots and throws
// DomainError when a coefficient is not a q-th power in the stored field
TSeries frobenius_twist(const TSeries& f, int n);

// Carlitz period of F_q[theta^(1/root_index)] as a ramified series:
//   -(-x)^(q/(q-1)) * prod_{i>=1} (1 - x^(1-q^i))^{-1},  x = theta^(1/root_index).
// Needs root_index*(q-1) | m and a pinned (q-1)-st root of -1 in the
// coefficient field. prec is absolute, in theta-units. i_cutoff overrides the
// automatic product cutoff (tests use it to probe truncation stability).
Series carlitz_period(const Ctx& C, int prec, int root_index = 1, int i_cutoff = -1);

// Omega(t) = (-theta)^(-q/(q-1)) * prod_{i>=1} (1 - t/theta^(q^i)) truncated
// to t_order coefficients, each at absolute precision prec (theta-units).
TSeries omega_series(const Ctx& C, int t_order, int prec);

}  // namespace drinfeld
