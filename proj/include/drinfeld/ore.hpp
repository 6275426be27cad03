#pragma once

#include <string>
#include <vector>

#include "drinfeld/series.hpp"

namespace drinfeld {

// sum c_i tau^i over ramified series; tau a = a^q tau
class TwistedPoly {
 public:
  TwistedPoly() = default;
  TwistedPoly(const Ctx& C, std::vector<Series> coeffs);

  static TwistedPoly zero(const Ctx& C) { return TwistedPoly(C, {}); }
  static TwistedPoly tau(const Ctx& C, int i = 1);

  const Ctx* ctx() const { return C_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  Series coeff(int i) const;
  size_t size() const { return c_.size(); }

  TwistedPoly operator+(const TwistedPoly& o) const;
  TwistedPoly operator-(const TwistedPoly& o) const;
  TwistedPoly operator*(const TwistedPoly& o) const;  // ore product
  TwistedPoly scaled(const Series& c) const;          // left multiply by scalar

  Series act(const Series& x) const;  // sum c_i x^(q^i)

  bool same_up_to_prec(const TwistedPoly& o) const;
  std::string str() const;

 private:
  void normalize();
  const Ctx* C_ = nullptr;
  std::vector<Series> c_;
};

// phi_t = theta + g_1 tau + ... + g_r tau^r, g_r != 0
class DrinfeldModule {
 public:
  DrinfeldModule(const Ctx& C, std::vector<Series> g);

  const Ctx& ctx() const { return *C_; }
  int rank() const { return static_cast<int>(g_.size()); }
  const Series& g(int i) const;  // 1-based
  TwistedPoly phi_t() const;

 private:
  const Ctx* C_;
  std::vector<Series> g_;
};

// image of a(t) in F_q[t] under the module map; a must have coefficients in
// the degree-one subfield F_q of the stored coefficient field
TwistedPoly phi_of_a(const DrinfeldModule& phi, const Poly& a);

// F_q-linear series sum_k c_k X^(q^k), truncated at k = K_max
class EntireSeries {
 public:
  EntireSeries() = default;
  EntireSeries(const Ctx& C, std::vector<Series> coeffs);

  const Ctx* ctx() const { return C_; }
  int kmax() const { return static_cast<int>(c_.size()) - 1; }
  Series coeff(int k) const;

 private:
  const Ctx* C_ = nullptr;
  std::vector<Series> c_;
};

// exp_phi coefficients alpha_0..alpha_K: alpha_0 = 1 and
//   alpha_k (theta^(q^k) - theta) = sum_{j=1..min(k,r)} g_j alpha_{k-j}^(q^j)
EntireSeries exp_coeffs(const DrinfeldModule& phi, int k_max);

// formal inverse of exp_phi: log(exp(X)) = X through X^(q^k_max)
EntireSeries log_coeffs(const DrinfeldModule& phi, int k_max);

// quasi-periodic series for the biderivation t -> tau^i, 0 <= i <= r-1.
// i = 0 is exp - X; for i >= 1 the coefficients satisfy
//   c_k (theta^(q^k) - theta) = alpha_{k-i}^(q^i), zero when k < i.
EntireSeries quasi_period_coeffs(const DrinfeldModule& phi, int i, int k_max);

// sum c_k x^(q^k) with a certified tail: the last three term valuations must
// be strictly increasing, and the reported precision is capped by the
// extrapolated valuation of the first omitted term.
Series entire_eval(const EntireSeries& f, const Series& x);

// r x r matrix: column 0 holds -w_i, column j holds F_{tau^j}(w_i)
class PeriodMatrix {
 public:
  PeriodMatrix() = default;
  PeriodMatrix(const Ctx& C, std::vector<std::vector<Series>> rows);

  int dim() const { return static_cast<int>(a_.size()); }
  const Series& at(int i, int j) const { return a_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  Series det() const;

 private:
  const Ctx* C_ = nullptr;
  std::vector<std::vector<Series>> a_;
};

// assemble the period matrix of phi on an r-element basis; every basis
// element must satisfy exp_phi(w) = 0 to roughly working precision
PeriodMatrix period_matrix(const DrinfeldModule& phi, const std::vector<Series>& basis,
                           int k_max = 24);

}  // namespace drinfeld
