#include "padlab/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace padlab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonUnit: return "NonUnit";
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::LevelTooLow: return "LevelTooLow";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::CounterexampleFound: return "CounterexampleFound";
    case Errc::NotGeneric: return "NotGeneric";
    case Errc::NotInKl: return "NotInKl";
    case Errc::NotTrivialOnDepth2l: return "NotTrivialOnDepth2l";
    case Errc::ResidueCollision: return "ResidueCollision";
    case Errc::SupportViolation: return "SupportViolation";
    case Errc::CentralMu: return "CentralMu";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ThresholdExceeded: return "ThresholdExceeded";
    case Errc::NotRegular: return "NotRegular";
    case Errc::BadTheta: return "BadTheta";
    case Errc::SingularParameter: return "SingularParameter";
    case Errc::BadConfig: return "BadConfig";
    case Errc::CacheError: return "CacheError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Integer helpers
// ---------------------------------------------------------------------------

i64 pow_i64(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; i++) {
    if (base != 0 && std::abs(r) > (i64(1) << 62) / std::abs(base))
      fail(Errc::BudgetExceeded, "integer power overflow");
    r *= base;
  }
  return r;
}

i64 mod_pow(i64 base, i64 exp, i64 mod) {
  i64 r = 1 % mod;
  i64 b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) r = i64((i128)r * b % mod);
    b = i64((i128)b * b % mod);
    exp >>= 1;
  }
  return r;
}

static void ext_gcd(i64 a, i64 b, i64& g, i64& x, i64& y) {
  if (b == 0) {
    g = a;
    x = 1;
    y = 0;
    return;
  }
  i64 x1, y1;
  ext_gcd(b, a % b, g, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
}

i64 mod_inv(i64 a, i64 mod) {
  a = ((a % mod) + mod) % mod;
  i64 g, x, y;
  ext_gcd(a, mod, g, x, y);
  if (g != 1 && g != -1) fail(Errc::NonUnit, "mod_inv of non-unit");
  return ((x % mod) + mod) % mod;
}

int val_of(i64 x, i64 p) {
  if (x == 0) fail(Errc::BadConfig, "val_of(0)");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    v++;
  }
  return v;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; d++)
    if (n % d == 0) return false;
  return true;
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (i64 d = 2; d * d <= n; d++) {
    if (n % d == 0) {
      r -= r / d;
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

i64 unit_group_generator(i64 p, int k) {
  // (Z/p^k)^x is cyclic for odd p.  A generator mod p^2 generates mod all
  // higher powers, but we simply test the candidate at the requested modulus.
  i64 mod = pow_i64(p, k);
  i64 phi = euler_phi(mod);
  std::vector<i64> prime_factors;
  i64 m = phi;
  for (i64 d = 2; d * d <= m; d++) {
    if (m % d == 0) {
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) prime_factors.push_back(m);
  for (i64 g = 2; g < mod; g++) {
    if (g % p == 0) continue;
    bool ok = true;
    for (i64 f : prime_factors) {
      if (mod_pow(g, phi / f, mod) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(Errc::BadConfig, "no generator found");
}

// ---------------------------------------------------------------------------
// Residue ring
// ---------------------------------------------------------------------------

RingSpec make_ring(i64 p, int level) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) fail(Errc::BadConfig, "p must be an odd prime");
  if (level < 1) fail(Errc::BadConfig, "level must be >= 1");
  return RingSpec{p, level};
}

int ResElem::val() const {
  if (v == 0) return spec.level;
  int m = 0;
  i64 x = v;
  while (m < spec.level && x % spec.p == 0) {
    x /= spec.p;
    m++;
  }
  return m;
}

ResElem res_make(const RingSpec& spec, i64 v) {
  i64 mod = spec.modulus();
  return ResElem{((v % mod) + mod) % mod, spec};
}

static void check_same(const ResElem& a, const ResElem& b) {
  if (!(a.spec == b.spec)) fail(Errc::SpecMismatch, "mixed residue rings");
}

ResElem res_add(const ResElem& a, const ResElem& b) {
  check_same(a, b);
  return res_make(a.spec, a.v + b.v);
}

ResElem res_mul(const ResElem& a, const ResElem& b) {
  check_same(a, b);
  return ResElem{i64((i128)a.v * b.v % a.spec.modulus()), a.spec};
}

ResElem res_neg(const ResElem& a) { return res_make(a.spec, -a.v); }

ResElem res_inv(const ResElem& a) {
  if (a.val() != 0) fail(Errc::NonUnit, "inverse of non-unit residue");
  return ResElem{mod_inv(a.v, a.spec.modulus()), a.spec};
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

static i64 gcd_i64(i64 a, i64 b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

static i64 narrow(i128 x) {
  if (x > i128(INT64_MAX) || x < i128(INT64_MIN)) fail(Errc::BudgetExceeded, "rational overflow");
  return i64(x);
}

static Rat make_rat(i128 n, i128 d) {
  if (d == 0) fail(Errc::BadConfig, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 an = n < 0 ? -n : n;
  // gcd over i128
  i128 a = an, b = d;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  Rat r;
  r.num = narrow(n / a);
  r.den = narrow(d / a);
  return r;
}

Rat::Rat(i64 n, i64 d) { *this = make_rat(n, d); }

Rat Rat::operator+(const Rat& o) const { return make_rat((i128)num * o.den + (i128)o.num * den, (i128)den * o.den); }
Rat Rat::operator-(const Rat& o) const { return make_rat((i128)num * o.den - (i128)o.num * den, (i128)den * o.den); }
Rat Rat::operator*(const Rat& o) const { return make_rat((i128)num * o.num, (i128)den * o.den); }
Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) fail(Errc::NonUnit, "division by zero");
  return make_rat((i128)num * o.den, (i128)den * o.num);
}
bool Rat::operator<(const Rat& o) const { return (i128)num * o.den < (i128)o.num * den; }

int Rat::val(i64 p) const {
  if (num == 0) fail(Errc::BadConfig, "valuation of 0");
  int v = 0;
  i64 n = num;
  while (n % p == 0) {
    n /= p;
    v++;
  }
  i64 d = den;
  while (d % p == 0) {
    d /= p;
    v--;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Cyclotomic integers
// ---------------------------------------------------------------------------

CycInt CycInt::root(i64 order, i64 k) {
  CycInt z(order);
  k %= order;
  if (k < 0) k += order;
  z.c_[k] = 1;
  return z;
}

CycInt CycInt::integer(i64 order, i64 n) {
  CycInt z(order);
  z.c_[0] = n;
  return z;
}

static i64 lcm_i64(i64 a, i64 b) { return a / gcd_i64(a, b) * b; }

static void align(const CycInt& a, const CycInt& b, CycInt& la, CycInt& lb) {
  if (a.order() == b.order()) {
    la = a;
    lb = b;
    return;
  }
  i64 m = lcm_i64(a.order(), b.order());
  la = a.lifted(m);
  lb = b.lifted(m);
}

CycInt CycInt::operator+(const CycInt& o) const {
  CycInt a(1), b(1);
  align(*this, o, a, b);
  for (i64 i = 0; i < a.order_; i++) a.c_[i] += b.c_[i];
  return a;
}

CycInt CycInt::operator-(const CycInt& o) const { return *this + (-o); }

CycInt CycInt::operator-() const {
  CycInt z = *this;
  for (auto& x : z.c_) x = -x;
  return z;
}

CycInt CycInt::scaled(i64 k) const {
  CycInt z = *this;
  for (auto& x : z.c_) x *= k;
  return z;
}

CycInt CycInt::operator*(const CycInt& o) const {
  CycInt a(1), b(1);
  align(*this, o, a, b);
  i64 M = a.order_;
  // monomial fast paths
  auto term_count = [&](const CycInt& z) {
    int c = 0;
    for (auto x : z.c_)
      if (x != 0) c++;
    return c;
  };
  CycInt out(M);
  if (term_count(a) > term_count(b)) std::swap(a, b);
  for (i64 i = 0; i < M; i++) {
    if (a.c_[i] == 0) continue;
    for (i64 j = 0; j < M; j++) {
      if (b.c_[j] == 0) continue;
      i64 k = i + j;
      if (k >= M) k -= M;
      out.c_[k] += a.c_[i] * b.c_[j];
    }
  }
  return out;
}

CycInt CycInt::lifted(i64 order2) const {
  if (order2 % order_ != 0) fail(Errc::SpecMismatch, "cyclotomic order lift mismatch");
  i64 s = order2 / order_;
  CycInt z(order2);
  for (i64 i = 0; i < order_; i++) z.c_[i * s] = c_[i];
  return z;
}

// Phi_M via exact division of x^M - 1 by the cyclotomic polynomials of the
// proper divisors of M.
static std::vector<i64> cyclotomic_impl(i64 M);

static std::vector<i64> poly_divide_exact(std::vector<i64> num, const std::vector<i64>& den) {
  // both monic up to sign of den's leading coeff; exact integer division
  int dn = int(num.size()) - 1, dd = int(den.size()) - 1;
  std::vector<i64> q(dn - dd + 1, 0);
  for (int i = dn - dd; i >= 0; i--) {
    i64 lead = num[i + dd];
    i64 c = lead / den[dd];
    q[i] = c;
    for (int j = 0; j <= dd; j++) num[i + j] -= c * den[j];
  }
  return q;
}

static std::vector<i64> cyclotomic_impl(i64 M) {
  std::vector<i64> num(M + 1, 0);
  num[0] = -1;
  num[M] = 1;
  for (i64 d = 1; d < M; d++) {
    if (M % d != 0) continue;
    num = poly_divide_exact(num, CycInt::cyclotomic(d));
  }
  return num;
}

std::vector<i64> CycInt::cyclotomic(i64 M) {
  static std::map<i64, std::vector<i64>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
  }
  std::vector<i64> phi;
  if (M == 1) {
    phi = {-1, 1};
  } else {
    phi = cyclotomic_impl(M);
  }
  std::lock_guard<std::mutex> lk(mu);
  cache[M] = phi;
  return phi;
}

std::vector<i64> CycInt::reduced() const {
  std::vector<i64> r = c_;
  const std::vector<i64> phi = cyclotomic(order_);
  int dd = int(phi.size()) - 1;
  for (int i = int(r.size()) - 1; i >= dd; i--) {
    i64 c = r[i];
    if (c == 0) continue;
    for (int j = 0; j <= dd; j++) r[i - dd + j] -= c * phi[j];
  }
  r.resize(dd);
  return r;
}

bool CycInt::is_zero() const {
  bool any = false;
  for (i64 x : c_)
    if (x != 0) { any = true; break; }
  if (!any) return true;
  for (i64 x : reduced())
    if (x != 0) return false;
  return true;
}

// single term with coefficient one: (exponent, order)
static std::optional<std::pair<i64, i64>> unit_monomial(const CycInt& z) {
  i64 k = -1;
  const auto& c = z.coeffs();
  for (i64 i = 0; i < z.order(); i++) {
    if (c[i] == 0) continue;
    if (c[i] != 1 || k >= 0) return std::nullopt;
    k = i;
  }
  if (k < 0) return std::nullopt;
  return std::make_pair(k, z.order());
}

bool CycInt::operator==(const CycInt& o) const {
  // roots of unity are equal iff their angle fractions k/M agree
  auto a = unit_monomial(*this), b = unit_monomial(o);
  if (a && b) return (i128)a->first * b->second == (i128)b->first * a->second;
  return (*this - o).is_zero();
}

std::complex<double> CycInt::embed() const {
  std::complex<double> s = 0;
  const double tau = 6.283185307179586476925286766559;
  for (i64 i = 0; i < order_; i++) {
    if (c_[i] == 0) continue;
    double a = tau * double(i) / double(order_);
    s += double(c_[i]) * std::complex<double>(std::cos(a), std::sin(a));
  }
  return s;
}

CycInt additive_char(const Rat& x, i64 p) {
  if (x.num == 0) return CycInt::root(1, 0);
  // split denominator as p^k * u with u a unit; theta(x) depends on x mod O
  i64 d = x.den;
  int k = 0;
  while (d % p == 0) {
    d /= p;
    k++;
  }
  if (k == 0) return CycInt::root(1, 0);
  i64 pk = pow_i64(p, k);
  i64 uinv = mod_inv(d % pk, pk);
  i64 numr = ((x.num % pk) + pk) % pk;
  i64 t = i64((i128)numr * uinv % pk);
  return CycInt::root(pk, t);
}

}  // namespace padlab
