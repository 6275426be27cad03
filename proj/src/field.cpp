#include "drinfeld/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace drinfeld {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// arithmetic on F_p[z] polynomials encoded as base-p digit strings
using PPoly = std::vector<int>;

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmul_mod(const PPoly& a, const PPoly& b, const PPoly& f, int p) {
  PPoly r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  // reduce mod f (monic)
  int df = static_cast<int>(f.size()) - 1;
  for (int i = static_cast<int>(r.size()) - 1; i >= df; --i) {
    int c = r[i];
    if (!c) continue;
    r[i] = 0;
    for (int j = 0; j < df; ++j) r[i - df + j] = ((r[i - df + j] - c * f[j]) % p + p) % p;
  }
  ptrim(r);
  return r;
}

PPoly ppow_mod(PPoly base, std::uint64_t n, const PPoly& f, int p) {
  PPoly r{1};
  while (n) {
    if (n & 1) r = pmul_mod(r, base, f, p);
    base = pmul_mod(base, base, f, p);
    n >>= 1;
  }
  return r;
}

PPoly psub(const PPoly& a, const PPoly& b, int p) {
  PPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    int x = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    r[i] = ((x % p) + p) % p;
  }
  ptrim(r);
  return r;
}

PPoly pgcd(PPoly a, PPoly b, int p) {
  auto pmod = [&](PPoly x, const PPoly& y) {
    int dy = static_cast<int>(y.size()) - 1;
    int il = 1;
    for (int k = 1; k < p; ++k)
      if (k * y.back() % p == 1) il = k;
    for (int i = static_cast<int>(x.size()) - 1; i >= dy; --i) {
      int c = x[i];
      if (!c) continue;
      int c2 = c * il % p;
      for (int j = 0; j <= dy; ++j) x[i - dy + j] = ((x[i - dy + j] - c2 * y[j]) % p + p) % p;
    }
    ptrim(x);
    return x;
  };
  while (!b.empty()) {
    PPoly r = pmod(a, b);
    a = b;
    b = r;
  }
  return a;
}

// Rabin irreducibility test for monic f of degree n over F_p
bool irreducible(const PPoly& f, int p) {
  int n = static_cast<int>(f.size()) - 1;
  PPoly z = pmul_mod(PPoly{0, 1}, PPoly{1}, f, p);  // x reduced mod f
  // x^(p^n) == x mod f
  PPoly t = z;
  for (int i = 0; i < n; ++i) t = ppow_mod(t, p, f, p);
  if (psub(t, z, p) != PPoly{}) return false;
  for (int l = 2; l <= n; ++l) {
    if (!is_prime(l) || n % l) continue;
    PPoly u = z;
    for (int i = 0; i < n / l; ++i) u = ppow_mod(u, p, f, p);
    PPoly g = pgcd(f, psub(u, z, p), p);
    if (static_cast<int>(g.size()) - 1 != 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> fs;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      if (fs.empty() || fs.back() != d) fs.push_back(d);
      n /= d;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

Field::Field(const FieldParams& par) : par_(par) {
  if (!is_prime(par.p)) throw FieldError("p must be prime");
  if (par.e < 1 || par.s < 1 || par.m < 1) throw FieldError("e, s, m must be positive");
  int n = par.e * par.s;
  double size = 1;
  for (int i = 0; i < par.e; ++i) size *= par.p;
  if (size > 65536.0) throw FieldError("q exceeds table bound 2^16");
  q_ = 1;
  for (int i = 0; i < par.e; ++i) q_ *= static_cast<std::uint32_t>(par.p);
  double full = 1;
  for (int i = 0; i < n; ++i) full *= par.p;
  if (full > 65536.0) throw FieldError("q^s exceeds table bound 2^16");
  card_ = 1;
  for (int i = 0; i < n; ++i) card_ *= static_cast<std::uint32_t>(par.p);

  // least monic irreducible of degree n, candidates ordered by code
  PPoly f;
  for (std::uint32_t lo = 0;; ++lo) {
    if (lo >= card_) throw FieldError("no irreducible polynomial found");
    PPoly cand(n + 1, 0);
    std::uint32_t v = lo;
    for (int i = 0; i < n; ++i) {
      cand[i] = static_cast<int>(v % par.p);
      v /= static_cast<std::uint32_t>(par.p);
    }
    cand[n] = 1;
    if (irreducible(cand, par.p)) {
      f = cand;
      break;
    }
  }
  modulus_.assign(f.begin(), f.end());

  // primitive element: least code generating the multiplicative group
  auto code_of = [&](const PPoly& a) {
    std::uint32_t c = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
      c = c * static_cast<std::uint32_t>(par.p) + static_cast<std::uint32_t>(a[i]);
    return c;
  };
  auto poly_of = [&](std::uint32_t c) {
    PPoly a;
    while (c) {
      a.push_back(static_cast<int>(c % par.p));
      c /= static_cast<std::uint32_t>(par.p);
    }
    return a;
  };
  std::vector<std::uint32_t> fac = prime_factors(card_ - 1);
  for (std::uint32_t g = 2; g < card_; ++g) {
    PPoly gp = poly_of(g);
    bool ok = true;
    for (std::uint32_t l : fac) {
      if (code_of(ppow_mod(gp, (card_ - 1) / l, f, par.p)) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen_ = static_cast<fq>(g);
      break;
    }
  }
  if (gen_ == 0 && card_ == 2) gen_ = 1;
  if (gen_ == 0) throw FieldError("no primitive element found");

  log_.assign(card_, 0);
  exp_.assign(2 * (card_ - 1), 0);
  PPoly acc{1};
  PPoly gp = poly_of(gen_);
  for (std::uint32_t i = 0; i < card_ - 1; ++i) {
    std::uint32_t c = code_of(acc);
    exp_[i] = static_cast<fq>(c);
    exp_[i + card_ - 1] = static_cast<fq>(c);
    log_[c] = i;
    acc = pmul_mod(acc, gp, f, par_.p);
  }

  if (par.p == 2) {
    use_add_tab_ = false;  // XOR path
  } else if (static_cast<std::uint64_t>(card_) * card_ <= (1u << 22)) {
    use_add_tab_ = true;
    add_tab_.assign(static_cast<size_t>(card_) * card_, 0);
    for (std::uint32_t a = 0; a < card_; ++a)
      for (std::uint32_t b = 0; b < card_; ++b) {
        std::uint32_t r = 0, mulp = 1, x = a, y = b;
        for (int i = 0; i < n; ++i) {
          r += mulp * ((x % par.p + y % par.p) % par.p);
          x /= static_cast<std::uint32_t>(par.p);
          y /= static_cast<std::uint32_t>(par.p);
          mulp *= static_cast<std::uint32_t>(par.p);
        }
        add_tab_[static_cast<size_t>(a) * card_ + b] = static_cast<fq>(r);
      }
  }

  // F_q subfield: generated by g^((card-1)/(q-1))
  if (q_ == card_) {
    base_gen_ = gen_;
  } else if (q_ > 2) {
    base_gen_ = exp_[(card_ - 1) / (q_ - 1)];
  } else {
    base_gen_ = 1;
  }
  base_elems_.push_back(0);
  fq t = 1;
  for (std::uint32_t i = 0; i + 1 < q_; ++i) {
    base_elems_.push_back(t);
    t = mul(t, base_gen_);
  }
  std::sort(base_elems_.begin(), base_elems_.end());
}

fq Field::add(fq a, fq b) const {
  if (par_.p == 2) return a ^ b;
  if (use_add_tab_) return add_tab_[static_cast<size_t>(a) * card_ + b];
  std::uint32_t r = 0, mulp = 1, x = a, y = b;
  int n = par_.e * par_.s;
  for (int i = 0; i < n; ++i) {
    r += mulp * ((x % par_.p + y % par_.p) % par_.p);
    x /= static_cast<std::uint32_t>(par_.p);
    y /= static_cast<std::uint32_t>(par_.p);
    mulp *= static_cast<std::uint32_t>(par_.p);
  }
  return static_cast<fq>(r);
}

fq Field::neg(fq a) const {
  if (par_.p == 2) return a;
  std::uint32_t r = 0, mulp = 1, x = a;
  int n = par_.e * par_.s;
  for (int i = 0; i < n; ++i) {
    r += mulp * ((par_.p - x % par_.p) % par_.p);
    x /= static_cast<std::uint32_t>(par_.p);
    mulp *= static_cast<std::uint32_t>(par_.p);
  }
  return static_cast<fq>(r);
}

fq Field::sub(fq a, fq b) const { return add(a, neg(b)); }

fq Field::pow(fq a, std::int64_t k) const {
  std::int64_t ord = card_ - 1;
  if (a == 0) {
    if (k < 0) throw DomainError("negative power of zero");
    return k == 0 ? 1 : 0;
  }
  std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (k % ord)) % ord;
  if (r < 0) r += ord;
  return exp_[r];
}

fq Field::pow_q(fq a, std::int64_t j) const {
  if (a == 0) return 0;
  int jj = static_cast<int>(((j % par_.s) + par_.s) % par_.s);
  std::uint64_t ord = card_ - 1;
  std::uint64_t ex = 1;
  for (int i = 0; i < jj; ++i) ex = (ex * q_) % ord;
  std::uint64_t r = (static_cast<std::uint64_t>(log_[a]) * ex) % ord;
  return exp_[r];
}

fq Field::from_int(std::int64_t c) const {
  std::int64_t r = ((c % par_.p) + par_.p) % par_.p;
  return static_cast<fq>(r);
}

bool Field::nth_root(fq a, std::uint32_t n, fq* out) const {
  if (a == 0) {
    *out = 0;
    return true;
  }
  std::uint64_t ord = card_ - 1;
  std::uint64_t la = log_[a];
  // solve n*x = la mod ord
  std::uint64_t nn = n % ord;
  if (nn == 0) nn = ord;
  std::uint64_t g = std::gcd(nn, ord);
  if (la % g) return false;
  // x = (la/g) * inv(nn/g) mod ord/g
  std::uint64_t m = ord / g, n2 = (nn / g) % m, rhs = (la / g) % m;
  std::uint64_t in = 1;
  {  // inverse by extended Euclid
    std::int64_t t0 = 0, t1 = 1, r0 = static_cast<std::int64_t>(m),
                 r1 = static_cast<std::int64_t>(n2);
    while (r1) {
      std::int64_t qq = r0 / r1;
      std::int64_t tmp = r0 - qq * r1;
      r0 = r1;
      r1 = tmp;
      tmp = t0 - qq * t1;
      t0 = t1;
      t1 = tmp;
    }
    if (r0 != 1) return false;
    in = static_cast<std::uint64_t>(((t0 % static_cast<std::int64_t>(m)) +
                                     static_cast<std::int64_t>(m)) %
                                    static_cast<std::int64_t>(m));
  }
  std::uint64_t x = (rhs * in) % m;
  *out = exp_[x % ord];
  return true;
}

fq Field::sqrt(fq a) const {
  fq r;
  if (par_.p == 2) {
    // squaring is bijective; inverse Frobenius step of x -> x^2
    if (a == 0) return 0;
    std::uint64_t ord = card_ - 1;
    std::uint64_t half = (ord + 1) / 2;  // 2*half = 1 mod ord
    return exp_[(static_cast<std::uint64_t>(log_[a]) * half) % ord];
  }
  if (!nth_root(a, 2, &r)) throw DomainError("element is not a square");
  return r;
}

bool Field::has_zeta() const {
  if (!zeta_searched_) {
    fq z = 0;
    for (std::uint32_t c = 1; c < card_; ++c) {
      if (pow(static_cast<fq>(c), static_cast<std::int64_t>(q_) - 1) == minus_one()) {
        z = static_cast<fq>(c);
        break;
      }
    }
    zeta_ = z;
    zeta_searched_ = true;
  }
  return zeta_ != 0;
}

fq Field::zeta() const {
  if (!has_zeta())
    throw FieldError("coefficient field has no (q-1)-st root of -1; increase s");
  return zeta_;
}

Poly Poly::constant(const Field* F, fq c) {
  Poly r(F);
  if (c) r.c_ = {c};
  return r;
}

Poly Poly::x(const Field* F) {
  Poly r(F);
  r.c_ = {0, 1};
  return r;
}

void Poly::set_coeff(int i, fq v) {
  if (i < 0) throw DomainError("negative polynomial index");
  if (static_cast<size_t>(i) >= c_.size()) c_.resize(i + 1, 0);
  c_[i] = v;
  trim();
}

bool Poly::coeffs_in_base_field() const {
  for (fq c : c_)
    if (c && !F_->in_base_field(c)) return false;
  return true;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r(F_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + o.neg(); }

Poly Poly::neg() const {
  Poly r(F_);
  r.c_ = c_;
  for (auto& c : r.c_) c = F_->neg(c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(F_);
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = F_->add(r.c_[i + j], F_->mul(c_[i], o.c_[j]));
  }
  r.trim();
  return r;
}

Poly Poly::scaled(fq c) const {
  Poly r(F_);
  if (!c) return r;
  r.c_ = c_;
  for (auto& x : r.c_) x = F_->mul(x, c);
  return r;
}

void Poly::divrem(const Poly& a, const Poly& b, Poly* quo, Poly* rem) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const Field* F = a.F_ ? a.F_ : b.F_;
  Poly q(F), r = a;
  fq il = F->inv(b.lead());
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int d = r.deg() - b.deg();
    fq c = F->mul(r.lead(), il);
    Poly t(F);
    t.c_.assign(d + 1, 0);
    t.c_[d] = c;
    q = q + t;
    r = r - t * b;
  }
  if (quo) *quo = q;
  if (rem) *rem = r;
}

bool Poly::divides(const Poly& o) const {
  if (is_zero()) return o.is_zero();
  Poly q, r;
  divrem(o, *this, &q, &r);
  return r.is_zero();
}

fq Poly::eval(fq x) const {
  fq r = 0;
  for (int i = deg(); i >= 0; --i) r = F_->add(F_->mul(r, x), c_[static_cast<size_t>(i)]);
  return r;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = deg(); i >= 0; --i) {
    fq c = coeff(i);
    if (!c) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || c != 1) os << static_cast<int>(c);
    if (i > 0) {
      if (c != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace drinfeld
