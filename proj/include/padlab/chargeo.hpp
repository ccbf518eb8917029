#pragma once

#include <vector>

#include "padlab/arith.hpp"
#include "padlab/matgroup.hpp"

namespace padlab {

// ---------------------------------------------------------------------------
// Characters of the unit group (Z/p^{2l})^x, stored by exponent on a fixed
// generator of the cyclic group.  Values live in Z[zeta_M] with
// M = p^{2l} (p-1), which also contains all values of the additive character
// on p^{-2l} O.
// ---------------------------------------------------------------------------

struct UnitGroupCtx {
  i64 p = 0;
  int twol = 0;     // depth of the modulus p^{2l}
  i64 mod = 0;      // p^{2l}
  i64 gen = 0;      // smallest positive generator
  i64 phi = 0;      // order of the unit group
  i64 M = 0;        // cyclotomic order p^{2l}(p-1)
  std::vector<i64> log_table;  // discrete log base gen; -1 for non-units

  static const UnitGroupCtx& get(i64 p, int twol);  // cached per (p, 2l)
  i64 dlog(i64 x) const;
};

struct MultChar {
  i64 p = 0;
  int l = 0;   // character of (Z/p^{2l})^x
  i64 e = 0;   // exponent on the fixed generator, mod phi(p^{2l})

  const UnitGroupCtx& ctx() const { return UnitGroupCtx::get(p, 2 * l); }

  CycInt value(i64 x) const;       // x must be a unit mod p^{2l}
  MultChar inverse() const;
  MultChar times(const MultChar& o) const;
  bool is_trivial() const { return e % ctx().phi == 0; }

  // smallest c >= 0 with the character trivial on 1 + p^c (c = 0: trivial)
  int conductor_exp() const;
};

// Character with prescribed exp*_1 value a on 1 + p^l, extended by a free
// choice of exponent on the rest of the unit group.
MultChar char_with_expstar(i64 p, int l, i64 a, i64 free_part = 0);

// exp*_1: the unique a in O/p^l with chi(1+y) = theta(p^{-2l} a y) on p^l.
// Computed by solving on the generator 1 + p^l of (1+p^l)/(1+p^{2l}) and
// post-verified on the whole subgroup.
i64 exp_star_1(const MultChar& chi);

// ---------------------------------------------------------------------------
// Tuples and genericity
// ---------------------------------------------------------------------------

struct GenericTuple {
  std::vector<MultChar> comps;

  i64 p() const { return comps.at(0).p; }
  int l() const { return comps.at(0).l; }
  size_t size() const { return comps.size(); }

  std::vector<i64> D() const;  // diag of exp*_1 values, in O/p^l
  GenericTuple inverse() const;
};

GenericTuple tuple_from_D(i64 p, int l, const std::vector<i64>& a,
                          const std::vector<i64>& free_parts = {});

// conductor criterion (all chi_i chi_j^{-1} of conductor exactly p^{2l}),
// cross-checked against mod-p regularity of D.
bool is_generic(const GenericTuple& chi);
bool is_generic_pair(const GenericTuple& chi, const GenericTuple& chi_H);

// ---------------------------------------------------------------------------
// Characters of K(l)/K(2l) via the trace pairing
// ---------------------------------------------------------------------------

struct K1K2Char {
  int l = 0;
  ResMat X;  // parameter in M_n(Z/p^l)
};

// log*[X](k) = theta(p^{-2l} tr(X (k-1))) for k in K(l), exact root of unity
// of order dividing p^l.  Throws NotInKl if k is not in K(l).
CycInt log_star_eval(const K1K2Char& X, const ResMat& k);

// Recover X from the character by trace-pairing probes on the elementary
// generators 1 + p^l E_ij; inverse of log*.
ResMat exp_star(int n, i64 p, int l, const std::function<CycInt(const ResMat&)>& character);

}  // namespace padlab
