#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "padlab/arith.hpp"

namespace padlab {

// ---------------------------------------------------------------------------
// Matrices over Z/p^L.  Entries are stored flat (row major) as reduced
// integers; the ring spec travels with the matrix.
// ---------------------------------------------------------------------------

struct ResMat {
  RingSpec spec;
  int n = 0;
  std::vector<i64> a;

  ResMat() = default;
  ResMat(const RingSpec& s, int size) : spec(s), n(size), a(size_t(size) * size, 0) {}

  static ResMat identity(const RingSpec& s, int size);

  i64& at(int i, int j) { return a[size_t(i) * n + j]; }
  i64 at(int i, int j) const { return a[size_t(i) * n + j]; }

  ResMat mul(const ResMat& o) const;
  ResMat add(const ResMat& o) const;
  ResMat sub(const ResMat& o) const;
  ResMat scaled(i64 c) const;
  i64 det() const;
  bool det_is_unit() const { return det() % spec.p != 0; }
  ResMat inverse() const;  // throws NonUnit when det is not a unit

  ResMat reduced(int new_level) const;    // reduce entries mod p^new_level
  ResMat lifted(int new_level) const;     // entries re-read at a higher level
  ResMat conj_by(const ResMat& k) const;  // k * this * k^-1

  bool is_identity() const;
  bool operator==(const ResMat& o) const { return spec == o.spec && n == o.n && a == o.a; }
};

// Embed an n x n matrix into GL_{n+1} as diag(h, 1).
ResMat embed_upper_left(const ResMat& h);

// ---------------------------------------------------------------------------
// Exact rational matrices (elements of GL_m(F) at finite height).
// ---------------------------------------------------------------------------

struct RatMat {
  int n = 0;
  std::vector<Rat> a;

  RatMat() = default;
  explicit RatMat(int size) : n(size), a(size_t(size) * size) {}

  static RatMat identity(int size);
  static RatMat diag_powers(i64 p, const std::vector<int>& mu);  // diag(p^mu_i)
  static RatMat from_res(const ResMat& m);

  Rat& at(int i, int j) { return a[size_t(i) * n + j]; }
  const Rat& at(int i, int j) const { return a[size_t(i) * n + j]; }

  RatMat mul(const RatMat& o) const;
  Rat det() const;
  RatMat adjugate() const;
  RatMat inverse() const;
  RatMat transpose() const;
  bool is_p_integral(i64 p) const;

  // reduce a p-integral matrix mod p^level
  ResMat reduced(const RingSpec& spec) const;

  // max-entry p-adic norm, as a power of q: returns e with |g| = q^e
  int max_norm_exp(i64 p) const;

  bool operator==(const RatMat& o) const { return n == o.n && a == o.a; }
};

// ---------------------------------------------------------------------------
// Subgroup membership
// ---------------------------------------------------------------------------

enum class Tag {
  K,           // GL_m(O): unit determinant
  Kl,          // principal congruence subgroup 1 + p^l M
  BK,          // upper triangular Borel in K
  Tc,          // unit diagonal torus
  TcTilde,     // depth-l fattening T_c K(l): off-diagonal entries in p^l
  Hemb,        // GL_n embedded upper-left in GL_{n+1}: last row/col (0..0,1)
  HtildeEmb,   // Z*H: last row/col (0..0,z), z a unit
  Jconj,       // TcTilde(l) conjugated by a fixed element
  J1conj,      // Jconj intersected with K(1)
  KH_l,        // congruence subgroup of the small group (same test as Kl)
  KH1,         // K_H(1)
};

struct SubgroupTag {
  Tag tag;
  int l = 0;                     // depth parameter where applicable
  std::optional<ResMat> conj;    // conjugator for Jconj/J1conj
};

// Exact membership of g in the subgroup image at the matrix's level.  Throws
// LevelTooLow when the tag's defining depth exceeds the level of g.
bool membership(const ResMat& g, const SubgroupTag& tag);

// ---------------------------------------------------------------------------
// Coset spaces
// ---------------------------------------------------------------------------

struct CosetSpace {
  std::string ambient, sub;
  int n = 0;
  i64 p = 0;
  int level = 0;  // reps stored at this level
  std::vector<ResMat> reps;
  // lookup maps a matrix (at level >= level) to the rep index of its coset
  std::function<size_t(const ResMat&)> lookup;
};

// K(a)/K(b) for the size-n group: reps 1 + p^a A, A over M_n(Z/p^{b-a}).
CosetSpace congruence_cosets(int n, i64 p, int a, int b, i64 budget = 8'000'000);

// K/K(m): all of GL_n(Z/p^m), enumerated by lifting GL_n(F_p) through p-layers.
CosetSpace full_level_cosets(int n, i64 p, int m, i64 budget = 8'000'000);

i64 gl_order_mod_p(int n, i64 p);              // |GL_n(F_p)|
i64 gl_order_mod_pm(int n, i64 p, int m);      // |GL_n(Z/p^m)|

// Streaming enumeration of GL_n(Z/p^m) without materializing the list.
void for_each_gl(int n, i64 p, int m, const std::function<void(const ResMat&)>& fn);

// ---------------------------------------------------------------------------
// Decompositions and the distance function
// ---------------------------------------------------------------------------

// Cartan cocharacter of an invertible g: valuations of the elementary
// divisors, sorted non-increasing, via minimal minor valuations.
std::vector<int> smith_cartan(const RatMat& g, i64 p);

// Iwasawa A-coordinate: valuations of the diagonal in g = n a k with n upper
// unitriangular and k in K, computed by bottom-up column elimination over O.
std::vector<int> iwasawa_A(const RatMat& g, i64 p);

struct Distance {
  bool zero = false;       // inside the subgroup at the working level
  bool truncated = false;  // zero only because the working level cannot resolve deeper
  int m = 0;               // otherwise d = q^-m (m = 0 means d = 1)

  double value(i64 q) const { return zero ? 0.0 : std::pow(double(q), -double(m)); }
};

// d(g, K_Htilde) at working level 2l: depth of the congruence between g and
// the (Z * GL_n)-embedded subgroup, read off the last row and column.
Distance distance_to_Htilde(const ResMat& g, int l);

}  // namespace padlab
