#pragma once
// Group action on certified points, automorphy residuals, parameters at
// infinity, reciprocal operator polynomials, and the identity chains tying
// weight-one sums to their expansions. Everything here is a pointwise
// numeric check: function identities are sampled, never proved.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "drinfeld/lattice.hpp"
#include "drinfeld/ore.hpp"
#include "drinfeld/series.hpp"
#include "drinfeld/tate.hpp"

namespace drinfeld {

// square matrix over the polynomial ring (entries are polynomials in theta
// with coefficients that must stay inside F_q for group membership)
struct GLrMatrix {
  const Field* F = nullptr;
  std::vector<std::vector<Poly>> a;

  static GLrMatrix identity(const Field* F, int r);

  int rank() const { return static_cast<int>(a.size()); }
  const Poly& at(int i, int j) const {
    return a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }

  Poly det() const;
  bool entries_in_A() const;  // every coefficient lies in F_q
  // unit determinant: deg 0, nonzero, in F_q; entries in A
  bool is_gl() const;
  // congruent to the identity entrywise mod N
  bool in_level(const Poly& N) const;

  GLrMatrix operator*(const GLrMatrix& o) const;
  std::string str() const;
};

// gamma * omega renormalized so the last coordinate is 1, plus the cocycle
// factor j = last entry of gamma * omega. The returned point is re-certified
// to test_degree. Throws PrecisionError when j is numerically zero and
// DomainError when gamma is not invertible over A.
struct ActionResult {
  UpperHalfPoint point;
  Series j;
};
ActionResult act(const Ctx& C, const GLrMatrix& gamma, const UpperHalfPoint& pt,
                 int test_degree = 3);

// val of j(gd; w) - j(g; d.w) j(d; w)
std::int64_t cocycle_residual(const Ctx& C, const GLrMatrix& g, const GLrMatrix& d,
                              const UpperHalfPoint& pt, int test_degree = 3);

struct SampleResidual {
  int sample = 0;
  std::int64_t residual_val = 0;
};
struct AutomorphyReport {
  std::vector<SampleResidual> samples;
  std::int64_t min_residual = 0;
};

// residual of det(gamma)^type j^(-weight) f(gamma.w) - f(w) at each sample
AutomorphyReport automorphy_check(const Ctx& C,
                                  const std::function<Series(const UpperHalfPoint&)>& f,
                                  int weight, int type,
                                  const GLrMatrix& gamma,
                                  const std::vector<UpperHalfPoint>& samples,
                                  int test_degree = 3);

// deterministic samplers; all randomness flows through the caller's Rng
GLrMatrix sample_gamma1(const Ctx& C, int r, int deg_bound, Rng& rng);
// element of the level-N kernel: product of I + N b E_ij, det = 1
GLrMatrix sample_gamma_n(const Ctx& C, int r, const Poly& N, int deg_bound, Rng& rng);
// certified points with irrational coordinates; throws DomainError when the
// configured field cannot host enough of them
std::vector<UpperHalfPoint> sample_points(const Ctx& C, int r, int count, Rng& rng,
                                          int test_degree = 3);

// analytic package of the trailing coordinates (w_2, .., w_{r-1}, 1):
// the scaled lattice they span, its module (whose coefficients are the
// arithmetically normalized coefficient-form values), and its exponential
struct InfinityData {
  Series pi;          // period of the degree-one lattice, working precision
  LatticeSpec lat;    // pi * (A w_2 + .. + A)
  LatticeModule mod;
  EntireSeries exp;   // exponential of mod, depth k_max
};
InfinityData infinity_data(const Ctx& C, const std::vector<Series>& w_tail,
                           int D = 6, int k_max = 10);

// 1 / e(pi w_1 / N) on the lattice of the trailing coordinates.
// Throws DomainError when the argument is a lattice point (pole).
Series u_parameter(const Ctx& C, const Poly& N, const std::vector<Series>& w,
                   int D = 6, int k_max = 10);
Series u_parameter(const InfinityData& id, const Poly& N,
                   const std::vector<Series>& w);

// X^(q^d) lead^(-1) phi_a(X^(-1)) written out: 1 + sum_i coeff[i] X^(q^d - q^i),
// i < d, where phi is the module of the scaled trailing lattice and
// lead = top operator coefficient. d = (r-1) deg(a).
struct ReciprocalPoly {
  int d = 0;
  std::vector<Series> coeff;
  Series lead;  // top coefficient of phi_a, kept for reassembly

  Series eval(const Series& x) const;
  std::string str() const;
};
ReciprocalPoly reciprocal_poly(const Ctx& C, const Poly& a,
                               const std::vector<Series>& w_tail, int D = 6);
ReciprocalPoly reciprocal_poly(const InfinityData& id, const Poly& a);

// checks u_{N2} = u_{N1}^(q^d) / (lead_n f_n(u_{N1})) with n = N1/N2 monic
struct LevelChangeReport {
  Series u_n1, u_n2;
  Series rhs;
  std::int64_t residual_val = 0;
};
LevelChangeReport level_change_check(const Ctx& C, const Poly& N1, const Poly& N2,
                                     const std::vector<Series>& w, int D = 6);

// rank-2 identity chain: compares the weight-one sum scaled by 1/pi against
//   sum_{deg a_1 <= B} u^(q^d(b)) lead_b^(-1) sum_{i<=i_max} (-P_b)^i,
// b = a_1 N + v_1, P_b = (f_b(u) - 1) + T u^(q^d(b)) / lead_b,
// T = e(pi v_2 / N) on the trailing lattice. chain_closed replaces the
// geometric truncation by exact division. logder_residual compares 1/e(z)
// at z = pi w_1 / N against the partial-fraction sum over lattice points of
// degree <= B + 1. t_residual ties T to the rank-one weight-one sum
// (skipped, -1, when v_2 = 0 and T is exactly zero).
struct ExpansionReport {
  Series direct;
  Series chain;
  Series chain_closed;
  std::int64_t residual_val = 0;
  std::int64_t residual_closed = 0;
  std::int64_t logder_residual = 0;
  bool t_checked = false;
  std::int64_t t_residual = -1;
  std::int64_t lead_term_val = 0;  // val of the a_1 = 0 summand
  std::int64_t direct_val = 0;
};
ExpansionReport eisenstein_expansion_check(const Ctx& C, const Poly& N,
                                           const std::vector<Poly>& v,
                                           const UpperHalfPoint& pt, int B,
                                           int i_max, int target_prec = 4,
                                           int D = 6);

enum class ArithmeticKind { kGForm, kEisenstein };

// kGForm: value * pi^(1 - q^i) (identity when i = 0);
// kEisenstein: value / pi
Series arithmetic_normalize(ArithmeticKind kind, const Series& value,
                            const Series& pi, int i = 0);

// all polynomials over F_q of degree <= max_deg, zero included, in code order
std::vector<Poly> enumerate_polys(const Field& F, int max_deg);

}  // namespace drinfeld
