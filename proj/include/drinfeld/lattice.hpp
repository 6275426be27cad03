#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/ore.hpp"
#include "drinfeld/series.hpp"

namespace drinfeld {

// u-valuation of the distance from the rational-function line: every term
// with integral theta-exponent and coefficient in F_q is dropped, the
// valuation of what is left comes back. x on the line at working precision
// returns x.prec().
std::int64_t imag_val(const Series& x);

// column (w_1, .., w_r) with w_r = 1, certified linearly independent over
// the polynomial ring up to the tested degree. iota_val records the
// separation: val(sum b_i w_i) <= iota_val - m*maxdeg(b) + min val(w_i)
// for every nonzero tested combination b, so |sum b_i w_i| >=
// q^(-iota_val/m) * max|b_i| * |w|_inf.
struct UpperHalfPoint {
  std::vector<Series> w;
  std::int64_t iota_val = 0;
  int tested_degree = 0;

  int rank() const { return static_cast<int>(w.size()); }
  std::int64_t wmin() const;  // min val(w_i), the valuation of |w|_inf
};

// re-certify the separation with polynomial coefficients of degree < test_degree;
// throws DomainError when some combination vanishes at working precision
std::int64_t omega_r_check(const UpperHalfPoint& pt, int test_degree);

UpperHalfPoint make_upper_half_point(const Ctx& C, std::vector<Series> w,
                                     int test_degree = 3);

// free module over the polynomial ring on an independent basis; carries the
// same separation certificate as UpperHalfPoint (the last entry need not be 1)
struct LatticeSpec {
  std::vector<Series> basis;
  bool normalized = false;  // last basis vector is exactly 1
  std::int64_t iota_val = 0;
  int tested_degree = 0;

  int rank() const { return static_cast<int>(basis.size()); }
};

LatticeSpec make_lattice(const Ctx& C, std::vector<Series> basis, int test_degree = 3);

// basis scaled by c, certificate carried over (ratios are unchanged)
LatticeSpec scaled_lattice(const UpperHalfPoint& pt, const Series& c);

// z prod (1 - z/lambda) over the nonzero lambda spanned by theta^j * basis,
// j < D. The result is F_q-linear with coefficients beta_k, k = 0..r*D,
// computed by extending one flag vector at a time:
//   e' = e - e^q / e(v)^(q-1).
// stab_val[k] records val(beta_k at D minus beta_k at D-1), the observed
// stabilization of each coefficient.
struct LatticeExp {
  EntireSeries e;
  std::vector<std::int64_t> stab_val;
};

LatticeExp lattice_exp_product(const LatticeSpec& L, int D);

// module coefficients g_1..g_r solved from beta_k theta^(q^k) =
// sum_{i<=min(k,r)} g_i beta_{k-i}^(q^i); the exponential of the returned
// module is compared against beta_k for k <= k_check and the match
// valuations are reported. check_val[k] below min_check_val is an error.
struct LatticeModule {
  DrinfeldModule phi;
  std::vector<std::int64_t> check_val;
};

LatticeModule drinfeld_from_lattice(const LatticeSpec& L, int D, int k_check = -1,
                                    std::int64_t min_check_val = 1);

// CM constructors: a point whose lattice has multiplication by c beyond the
// polynomial ring. M gives the integral matrix with c * w = M * w, verified
// against the series arithmetic.
struct CMPoint {
  UpperHalfPoint omega;
  Series multiplier;
  std::vector<std::vector<Poly>> M;
};

// (theta^(1/2), 1) with multiplier theta^(1/2); needs 2 | m
CMPoint cm_point_sqrt_theta(const Ctx& C);

// (theta^(1/r), .., theta^((r-1)/r), 1) with multiplier theta^(1/r);
// needs r | m and gcd(r, p) = 1
CMPoint cm_point_kummer(const Ctx& C, int r);

// (y, 1) for y with y^2 + a(theta) y = b(theta). Rejected when the root does
// not live in the configured field, when it lands on the rational line
// (nothing quadratic about it), or, in characteristic 2, when a = 0
// (inseparable).
CMPoint cm_point_quadratic(const Ctx& C, const Poly& a, const Poly& b);

// weight-one sum over shifted r-tuples of polynomials: N is the monic level,
// v the numerator vector of the shift u = v/N, nonzero mod the lattice
struct EisensteinSpec {
  Poly N;
  std::vector<Poly> v;
};

// value with a certified tail: terms with max deg a >= D are bounded by
// q^(-D) / (iota * |w|_inf) using the separation certificate; the cutoff D
// is the smallest one putting that bound below q^(-target_prec), within
// max_D and the term budget. Certificate constants are recorded.
struct EisensteinValue {
  Series value;
  int D = 0;
  std::int64_t tail_val = 0;      // u-units; value.prec() is capped by this
  std::int64_t iota_val = 0;
  std::int64_t wmin = 0;
  int iota_tested_degree = 0;
};

EisensteinValue eisenstein_eval(const EisensteinSpec& spec, const UpperHalfPoint& pt,
                                int target_prec, int max_D = 6);

// same sum on an unnormalized certified basis; scaling the basis by c
// multiplies the value by 1/c, term by term
EisensteinValue eisenstein_eval(const EisensteinSpec& spec, const LatticeSpec& L,
                                int target_prec, int max_D = 6);

}  // namespace drinfeld
