#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drinfeld/ore.hpp"
#include "drinfeld/series.hpp"

namespace drinfeld {

// search for P in F_q[theta][X], deg_X <= deg_x, deg_theta <= deg_theta_,
// with val(P(xi)) >= vt (theta-units)
struct RelationQuery {
  Series xi;
  int deg_x = 1;
  int deg_theta = 0;
  int vt = 0;
};

struct RelationCertificate {
  bool found = false;
  std::vector<Poly> coeffs;       // coeffs[i] multiplies X^i; polynomials in theta
  std::int64_t achieved_val = 0;  // val(P(xi)), u-units, re-verified
  int deg_x = 0;                  // bounds of the successful subsystem
  int deg_theta = 0;
  std::int64_t vt_num = 0;        // target valuation, u-units
  std::int64_t prec_num = 0;      // precision of xi at evaluation, u-units

  std::string poly_str() const;   // e.g. "X^2+2*th"
};

// Minimal relation search: subsystems are tried with deg_X ascending and the
// theta-degree ascending within each deg_X, so the first hit has minimal
// X-degree. All linear algebra is exact over F_p: F_q unknowns split into e
// prime-field components against the basis 1, g, ..., g^(e-1) (g the base
// field generator), and every stored digit of the evaluated columns splits
// into e*s components the same way. Soundness: the returned P is re-evaluated
// with series arithmetic and must reach the target valuation. Completeness
// only relative to the bounds.
std::optional<RelationCertificate> detect_relation(const RelationQuery& q);

// ratio certification: for each labeled value, runs the detector on
// value / reference with the given bounds; entries that find nothing are
// flagged, not fatal
struct CMValueResult {
  std::string label;
  std::optional<RelationCertificate> cert;
};
std::vector<CMValueResult> cm_value_certify(
    const std::vector<std::pair<std::string, Series>>& values,
    const Series& reference, int deg_x, int deg_theta, int vt);

// rank-2 determinant test: xi = det(P)/reference must be algebraic of low
// degree and height; rank 1 degenerates to xi = -1
std::optional<RelationCertificate> legendre_check(const PeriodMatrix& P,
                                                  const Series& reference,
                                                  int deg_x, int deg_theta, int vt);

struct TrdegPrediction {
  std::vector<int> ranks;
  bool pairwise_disjoint = false;
  bool galois = false;
  int degree = 0;
};

// n >= 2: sum r_i - (n-1), requiring every r_i >= 2 and both hypothesis flags;
// n == 1: r^2/s, requiring s | r^2. Anything outside these cases is refused.
TrdegPrediction trdeg_predict(const std::vector<int>& ranks, bool pairwise_disjoint,
                              bool galois, int s = 0);

// multivariate probe. Monomial order: graded lexicographic on exponent
// tuples, total degree ascending, then lexicographically ascending
// left-to-right; columns and reports follow this order.
struct MultiRelation {
  std::vector<std::pair<std::vector<int>, Poly>> terms;  // exponents -> theta-poly
  std::int64_t achieved_val = 0;
  bool implied = false;  // pseudo-reduces to zero modulo the univariate relations
  std::string str(const std::vector<std::string>& names) const;
};

struct IndependenceReport {
  std::vector<std::optional<RelationCertificate>> univariate;  // one per value
  std::vector<MultiRelation> relations;  // kernel basis of the multivariate system
  bool cross_found = false;              // any relation not implied by univariate ones
  int total_deg = 0;
  int deg_theta = 0;
  std::int64_t vt_num = 0;
};

IndependenceReport independence_probe(const std::vector<Series>& values,
                                      int total_deg, int deg_theta, int vt);

}  // namespace drinfeld
