#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padlab/errors.hpp"

namespace padlab {

using i64 = long long;
using i128 = __int128;

// ---------------------------------------------------------------------------
// Small integer helpers
// ---------------------------------------------------------------------------

i64 pow_i64(i64 base, int exp);
i64 mod_pow(i64 base, i64 exp, i64 mod);
i64 mod_inv(i64 a, i64 mod);  // requires gcd(a, mod) = 1
int val_of(i64 x, i64 p);     // largest m with p^m | x, x != 0
bool is_prime(i64 n);
i64 euler_phi(i64 n);

// Smallest positive generator of the cyclic group (Z/p^k)^x for odd p.
i64 unit_group_generator(i64 p, int k);

// ---------------------------------------------------------------------------
// Residue rings Z/p^L (finite-depth model of a p-adic integer ring)
// ---------------------------------------------------------------------------

struct RingSpec {
  i64 p = 0;
  int level = 0;

  i64 modulus() const { return pow_i64(p, level); }
  bool operator==(const RingSpec& o) const { return p == o.p && level == o.level; }
};

// Validates p odd prime, L >= 1.
RingSpec make_ring(i64 p, int level);

struct ResElem {
  i64 v = 0;
  RingSpec spec;

  // valuation truncated at the working level: val(0) = level.
  int val() const;
};

ResElem res_make(const RingSpec& spec, i64 v);
ResElem res_add(const ResElem& a, const ResElem& b);
ResElem res_mul(const ResElem& a, const ResElem& b);
ResElem res_neg(const ResElem& a);
ResElem res_inv(const ResElem& a);  // throws NonUnit unless val(a) = 0

// ---------------------------------------------------------------------------
// Exact rationals.  Field elements of F = Q_p are modelled by rationals; in
// every structural use the denominator is a power of p, but intermediate
// values (adjugate inverses, Haar volumes) may carry general denominators.
// ---------------------------------------------------------------------------

struct Rat {
  i64 num = 0;
  i64 den = 1;  // > 0, gcd(num, den) = 1

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return Rat(-num, den); }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;
  bool is_zero() const { return num == 0; }

  // p-adic valuation; requires num != 0.
  int val(i64 p) const;
  double to_double() const { return double(num) / double(den); }
};

// ---------------------------------------------------------------------------
// Exact cyclotomic integers Z[zeta_M].
//
// Elements are stored on the full basis zeta_M^0 .. zeta_M^{M-1} (the group
// ring of Z/M), which makes multiplication by roots of unity a rotation.
// Zero testing reduces modulo the M-th cyclotomic polynomial, which is the
// authoritative (exact) test; the complex embedding is for numeric export
// only.
// ---------------------------------------------------------------------------

class CycInt {
public:
  explicit CycInt(i64 order = 1) : order_(order), c_(order, 0) {}

  static CycInt root(i64 order, i64 k);            // zeta_order^k
  static CycInt integer(i64 order, i64 n);

  i64 order() const { return order_; }
  const std::vector<i64>& coeffs() const { return c_; }

  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator*(const CycInt& o) const;
  CycInt operator-() const;
  CycInt& operator+=(const CycInt& o) { return *this = *this + o; }
  CycInt scaled(i64 k) const;

  bool is_zero() const;
  bool operator==(const CycInt& o) const;
  bool operator!=(const CycInt& o) const { return !(*this == o); }

  // Re-express in Z[zeta_M2] for order_ | M2.
  CycInt lifted(i64 order2) const;

  // Power-basis coefficients (length phi(M)) after reduction mod Phi_M.
  std::vector<i64> reduced() const;

  std::complex<double> embed() const;

  // Coefficients of the M-th cyclotomic polynomial, low degree first (cached).
  static std::vector<i64> cyclotomic(i64 M);

private:
  i64 order_;
  std::vector<i64> c_;
};

inline bool cyc_is_zero(const CycInt& z) { return z.is_zero(); }

// theta(x) = e^{2 pi i frac_p(x)} where frac_p is the p-adic fractional part;
// an additive character of conductor O.  Returned as an exact root of unity
// whose order is the p-power denominator of x.
CycInt additive_char(const Rat& x, i64 p);

}  // namespace padlab
