#pragma once

#include <functional>
#include <vector>

#include "padlab/chargeo.hpp"
#include "padlab/matgroup.hpp"

namespace padlab {

// ---------------------------------------------------------------------------
// The canonical character extension from the unit torus to its fattening.
//
// chi~ on T~(l) = T_c K(l) takes the value prod chi_i(t_ii); this is a
// character because the product of two fattened-torus elements differs from
// the product of their diagonals by 1 + p^{2l}-terms on the diagonal.
// ---------------------------------------------------------------------------

// value of chi~ at t (t must lie in the T~(l) image at level 2l)
CycInt chi_tilde(const GenericTuple& chi, const ResMat& t);

// character of B_K inflated from the torus: prod chi_i(b_ii)
CycInt borel_char(const GenericTuple& chi, const ResMat& b);

// Builds chi~ and verifies it: agrees with chi on T_c, trivial on K(2l),
// multiplicative on T~(l)/K(2l) (exhaustively when the quotient is small,
// sampled otherwise).  Throws NotGeneric when chi is not generic.
struct ChiTildeTable {
  GenericTuple chi;
  CycInt eval(const ResMat& t) const { return chi_tilde(chi, t); }
};
ChiTildeTable extend_chi_tilde(const GenericTuple& chi, bool exhaustive_check = true);

// ---------------------------------------------------------------------------
// chi-types and microlocal lift vectors in the compact model of I(chi):
// level-2l functions f on K/K(2l) with f(bk) = chi(b) f(k) for b in B_K.
// ---------------------------------------------------------------------------

struct ChiType {
  GenericTuple chi;
  ResMat conj;  // k: the type is (T~(l)^k, chi~^k); level 2l

  int l() const { return chi.l(); }
  // character lambda~ of J = T~(l)^k: lambda~(a) = chi~(k^-1 a k)
  CycInt lambda(const ResMat& a) const;
  SubgroupTag J_tag() const { return SubgroupTag{Tag::Jconj, l(), conj}; }
};

// The microlocal lift vector associated to a type: the right translate of the
// standard vector, v(x) = v_std(x k).  v_std is supported on B_K T~(l) with
// v_std(b a) = chi(b) chi~(a); evaluation factors the argument explicitly.
struct MicrolocalVector {
  GenericTuple chi;
  ResMat conj;

  CycInt eval(const ResMat& g) const;        // exact value at level 2l
  ChiType type() const { return ChiType{chi, conj}; }
};

MicrolocalVector microlocal_vector(const ChiType& t);

// <g v, v_dual> up to a fixed positive normalization: the sum of
// v(k g) v_dual(k) over representatives of B_K \ supp(v_dual) / K(2l).
// v_dual must be the dual vector (inverse tuple, same conjugator).
CycInt matrix_coefficient(const MicrolocalVector& v, const MicrolocalVector& v_dual,
                          const ResMat& g);

// ---------------------------------------------------------------------------
// Exhaustive verification helpers
// ---------------------------------------------------------------------------

// Dimension of the space of functions on K/K(2l) with the B_K-equivariance
// chi and right J-equivariance lambda~ of the given type.  Exact: the
// equivariance relations link B_K-orbit values by roots of unity, so the
// dimension is the number of weight-consistent orbit components.
// Exhausts K/K(2l); budgeted.
int isotypic_dimension(const GenericTuple& chi, const ChiType& type, i64 budget = 8'000'000);

struct ScanReport {
  bool ok = true;
  long long checked = 0;
  long long support_hits = 0;
  std::string witness;  // serialized counterexample when !ok
};

// Support of the diagonal matrix coefficient: rho(g) != 0 forces g into the
// conjugated fattened torus, within K.  Exhaustive over K/K(2l) when small;
// otherwise samples n_samples random g plus J-equivariance spot checks.
ScanReport support_scan(const ChiType& t, i64 n_samples, unsigned long long seed,
                        bool exhaustive);

// Enumerates all chi-types at this instance (conjugators over K / T~(l)) and
// counts how many the vector of `t` transforms under; also verifies that the
// K-stabilizer of the standard type is exactly T~(l).  Exhaustive; only for
// small instances.
struct TypeUniquenessReport {
  int types_total = 0;
  int types_matched = 0;
  bool stabilizer_ok = true;
};
TypeUniquenessReport unique_type_check(const GenericTuple& chi);

// One step of diagonal re-straightening: for regular diagonal Y and
// y in p^l M, returns (k, Z, z) with k in K(l), (Y+y)^k = Z + z, Z diagonal
// congruent to Y mod p^l and z in p^{l+1} M.  `steps` iterates the
// construction, pushing the off-diagonal error one level deeper each time.
struct DiagAdjust {
  ResMat k;  // accumulated conjugator in K(l)
  ResMat Z;  // diagonal part
  ResMat z;  // off-diagonal error
};
DiagAdjust diag_adjust(const ResMat& Y, const ResMat& y, int l, int steps = 1);

}  // namespace padlab
