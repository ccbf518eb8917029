#pragma once

#include <complex>
#include <map>
#include <set>
#include <vector>

#include "padlab/matgroup.hpp"

namespace padlab {

using cplx = std::complex<double>;
using Cochar = std::vector<int>;

// ---------------------------------------------------------------------------
// Half-integers (values of the seminorm and of q-exponents)
// ---------------------------------------------------------------------------

struct Half {
  int twice = 0;  // value = twice / 2

  double value() const { return twice / 2.0; }
  bool operator==(const Half& o) const { return twice == o.twice; }
  Half operator-(const Half& o) const { return Half{twice - o.twice}; }
  Half operator+(const Half& o) const { return Half{twice + o.twice}; }
};

// ||mu||* = max_w <w mu, rho>: pair the sorted cocharacter against
// rho = ((m-1)/2, (m-3)/2, ..., -(m-1)/2).  A seminorm with kernel the
// central cocharacters, symmetric under mu -> -mu.
Half norm_star(const Cochar& mu);

Cochar sorted_desc(Cochar mu);
bool is_central(const Cochar& mu);
Cochar amplifier_j(int m, int j);        // [j] = (j, 0, ..., 0)
Cochar amplifier_jj(int m, int i);       // [i,-i] = (i, 0, ..., 0, -i)

// ---------------------------------------------------------------------------
// Exact coefficients a * q^{h/2} with a rational prime to q
// ---------------------------------------------------------------------------

struct QPow {
  Rat u;        // rational, p-part stripped into half
  int half = 0; // exponent of q^{1/2}

  static QPow zero() { return QPow{Rat(0), 0}; }
  bool is_zero() const { return u.is_zero(); }
  double value(i64 q) const { return u.to_double() * std::pow(double(q), half / 2.0); }
};

QPow qpow_make(i64 q, Rat u, int half);
QPow qpow_mul(i64 q, const QPow& a, const QPow& b);
QPow qpow_add(i64 q, const QPow& a, const QPow& b);  // requires matching half-exponent
bool qpow_eq(const QPow& a, const QPow& b);

// ---------------------------------------------------------------------------
// Spherical Hecke algebra elements: exact combinations of the normalized
// basis tau(mu) = q^{-||mu||*} 1_{K mu(pi) K}
// ---------------------------------------------------------------------------

struct HeckeElem {
  i64 q = 0;
  int m = 0;  // matrix size
  std::map<Cochar, QPow> terms;
};

HeckeElem tau(i64 q, int m, const Cochar& mu);

// Left coset representatives of K mu(pi) K / K in Hermite normal form:
// upper triangular, diagonal p^{b_i}, entry (i,j) reduced mod p^{b_i} for
// j > i; validated by the Cartan decomposition of each candidate.
std::vector<RatMat> left_cosets(i64 q, const Cochar& mu, i64 budget = 2'000'000);

// exact convolution via representative products and Cartan classification
HeckeElem convolve(const HeckeElem& a, const HeckeElem& b, i64 budget = 2'000'000);

// tau[j] * tau[-j] = sum_i c_i tau[i,-i]; throws SupportViolation if the
// product leaves the predicted span.
std::map<int, QPow> amplifier_relation(int m, int j, i64 q, i64 budget = 2'000'000);

// ---------------------------------------------------------------------------
// Satake parameters and spherical functions
// ---------------------------------------------------------------------------

struct SatakeParam {
  std::vector<cplx> alpha;

  bool is_regular() const;
  bool is_theta_tempered(i64 q, double theta) const;
};

// eigenvalue of tau(mu) on the spherical vector: q^{-||mu||*} times the sum
// of (delta^{1/2} alpha)(A(r)) over left coset representatives r
cplx satake_eigenvalue(i64 q, const Cochar& mu, const SatakeParam& alpha, i64 budget = 2'000'000);

// spherical function by the coset-sum (Iwasawa-integral) route; defined for
// every alpha
cplx spherical_coset_sum(i64 q, const Cochar& mu, const SatakeParam& alpha, i64 budget = 2'000'000);

// spherical function by the Macdonald c-function formula; requires regular
// alpha (throws SingularParameter otherwise)
cplx macdonald_spherical(i64 q, const Cochar& mu, const SatakeParam& alpha);

// one-row Hall-Littlewood polynomial P_(j)(alpha; 1/q): the Satake transform
// of the amplifier elements, used for large-q eigenvalue sweeps
cplx hall_littlewood_row(i64 q, int j, const SatakeParam& alpha);

// ---------------------------------------------------------------------------
// Restriction to H~ = GL_n x GL_1 (block diag(z h, z) at a split place)
// ---------------------------------------------------------------------------

struct HtildeLabel {
  Cochar lam_H;  // sorted descending, length n
  int c = 0;     // GL_1 exponent

  bool operator<(const HtildeLabel& o) const {
    return lam_H != o.lam_H ? lam_H < o.lam_H : c < o.c;
  }
  bool operator==(const HtildeLabel& o) const { return lam_H == o.lam_H && c == o.c; }
};

// predicted label set: the W-orbit of mu modulo W_H, i.e. all
// (sorted(mu minus one entry), that entry)
std::set<HtildeLabel> restriction_labels(const Cochar& mu);

// scan check of the intersection K mu(pi) K cap H~ = union of the labelled
// H~-double cosets, by classifying structured and random block elements on
// both sides
struct RestrictionScan {
  bool ok = true;
  long long tested = 0;
  std::string detail;
};
RestrictionScan restriction_scan(i64 q, int n, const Cochar& mu, int samples,
                                 unsigned long long seed);

// norm-difference identity: for each Weyl representative, after centering mu
// at the moved entry, ||lambda||*_{H~} - ||mu||* = -1/2 sum |mu_i|
struct NormDifference {
  Cochar lambda;   // length n+1: (mu with entry k removed, mu_k), centered
  Half lhs, rhs;   // must agree
};
std::vector<NormDifference> restriction_norm_differences(const Cochar& mu);

// <pi^{H~}(tau(mu)|_{H~}) v, v_dual>: exact coset volumes times spherical
// values of the factors; alpha_H on GL_n, alpha_z unit-modulus on GL_1
cplx hecke_restriction_value(i64 q, int n, const Cochar& mu, const SatakeParam& alpha_H,
                             cplx alpha_z, i64 budget = 2'000'000);

// every coset representative of K mu(pi) K has max-entry norm q^{max mu_i}
// and inverse norm q^{max -mu_i}
struct HeightCheck {
  bool ok = true;
  std::string detail;
};
HeightCheck hecke_height_check(i64 q, const Cochar& mu, i64 budget = 2'000'000);

}  // namespace padlab
