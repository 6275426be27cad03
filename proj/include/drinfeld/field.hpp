#pragma once
// Finite coefficient field F_{q^s}, q = p^e, realized as F_p[z]/(f) with
// log/antilog tables. Element codes are integers in [0, p^(e*s)): the base-p
// digits of a code are the polynomial-basis coordinates (least significant
// digit = constant term). Tables require q^s <= 2^16.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace drinfeld {

struct FieldError : std::runtime_error {
  explicit FieldError(const std::string& w) : std::runtime_error(w) {}
};
struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& w) : std::runtime_error(w) {}
};
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& w) : std::runtime_error(w) {}
};
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& w) : std::runtime_error(w) {}
};

using fq = std::uint16_t;  // element code of F_{q^s}

struct FieldParams {
  int p = 2;   // characteristic
  int e = 1;   // q = p^e
  int s = 1;   // coefficient field F_{q^s}
  int m = 1;   // ramification index of the series uniformizer theta^(-1/m)
};

class Field {
 public:
  explicit Field(const FieldParams& par);

  int p() const { return par_.p; }
  int e() const { return par_.e; }
  int s() const { return par_.s; }
  int m() const { return par_.m; }
  std::uint32_t q() const { return q_; }        // p^e
  std::uint32_t card() const { return card_; }  // q^s
  const std::vector<fq>& modulus() const { return modulus_; }

  fq add(fq a, fq b) const;
  fq sub(fq a, fq b) const;
  fq neg(fq a) const;
  fq mul(fq a, fq b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  fq inv(fq a) const {
    if (a == 0) throw DomainError("field inverse of zero");
    return exp_[card_ - 1 - log_[a]];
  }
  fq div(fq a, fq b) const { return mul(a, inv(b)); }
  fq pow(fq a, std::int64_t k) const;
  // a^(q^j), j may be negative (Frobenius is an automorphism of order s over F_q)
  fq pow_q(fq a, std::int64_t j) const;
  fq one() const { return 1; }
  fq minus_one() const { return static_cast<fq>(par_.p - 1); }
  fq from_int(std::int64_t c) const;  // image of an integer in the prime field

  bool in_prime_field(fq a) const { return a < static_cast<fq>(par_.p); }
  bool in_base_field(fq a) const { return pow_q(a, 1) == a; }  // F_q subfield

  // y with y^n = a, if one exists in F_{q^s}
  bool nth_root(fq a, std::uint32_t n, fq* out) const;
  fq sqrt(fq a) const;  // throws DomainError if a is not a square

  // canonical (q-1)-st root of -1: least element code with z^(q-1) = -1 (D2 pin)
  fq zeta() const;
  bool has_zeta() const;

  // canonical generator of F_q^* inside F_{q^s}
  fq base_gen() const { return base_gen_; }
  // elements of the F_q subfield in ascending code order; index 0 is 0
  const std::vector<fq>& base_field_elems() const { return base_elems_; }

  std::uint32_t log_of(fq a) const {
    if (a == 0) throw DomainError("log of zero");
    return log_[a];
  }
  fq generator() const { return gen_; }

 private:
  FieldParams par_;
  std::uint32_t q_ = 0, card_ = 0;
  std::vector<fq> modulus_;  // monic irreducible of degree e*s over F_p, coeff codes < p
  fq gen_ = 0;               // primitive element
  mutable fq zeta_ = 0;
  mutable bool zeta_searched_ = false;
  fq base_gen_ = 0;
  std::vector<fq> base_elems_;
  std::vector<std::uint32_t> log_;
  std::vector<fq> exp_;  // doubled to skip the mod in mul
  std::vector<fq> add_tab_;
  bool use_add_tab_ = false;
};

// Dense polynomial over F_{q^s} (used both for A = F_q[theta] elements and for
// operator polynomials in t). Coefficient i is the coefficient of x^i.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field* F) : F_(F) {}
  Poly(const Field* F, std::vector<fq> c) : F_(F), c_(std::move(c)) { trim(); }
  static Poly constant(const Field* F, fq c);
  static Poly x(const Field* F);  // the indeterminate

  const Field* field() const { return F_; }
  bool is_zero() const { return c_.empty(); }
  int deg() const { return static_cast<int>(c_.size()) - 1; }  // deg 0 poly -> 0; zero -> -1
  fq coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
  }
  void set_coeff(int i, fq v);
  fq lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<fq>& coeffs() const { return c_; }

  bool monic() const { return !c_.empty() && c_.back() == 1; }
  bool coeffs_in_base_field() const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(fq c) const;
  Poly neg() const;
  // division with remainder; divisor lead coefficient must be invertible
  static void divrem(const Poly& a, const Poly& b, Poly* quo, Poly* rem);
  bool divides(const Poly& o) const;  // this | o

  fq eval(fq x) const;
  std::string str(const std::string& var = "t") const;

 private:
  const Field* F_ = nullptr;
  std::vector<fq> c_;
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

// deterministic splitmix64; used everywhere randomness is needed so that
// reports are byte-identical for a fixed seed regardless of platform
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // unbiased-enough for desk use: n is tiny compared to 2^64
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace drinfeld
