#pragma once

#include "padlab/mlift.hpp"

namespace padlab {

// ---------------------------------------------------------------------------
// Compatible pairs: a generic tuple chi of length n+1 and chi_H of length n,
// with D-values alpha and beta mutually distinct mod p, are linked by the
// explicit Cauchy-type matrix
//
//   g0 = [ ( 1/(alpha_j - beta_i) )_{ij} ]      (rows 1..n)
//        [        1   ...   1             ]     (row n+1)
//
// which conjugates diag(alpha) into bordered-diagonal shape with beta on the
// upper-left diagonal.
// ---------------------------------------------------------------------------

struct CompatPair {
  GenericTuple chi;    // length n+1
  GenericTuple chi_H;  // length n
  std::vector<i64> alpha, beta;  // D-values in O/p^l
  ResMat g0_low;   // level l
  ResMat g0;       // fixed lift to level 2l (entries lifted as-is)

  int n() const { return int(chi_H.size()); }
  int l() const { return chi.l(); }
  i64 p() const { return chi.p(); }
};

// The explicit matrix at level l.  Throws ResidueCollision unless the 2n+1
// values are mutually distinct mod p.
ResMat build_g0(i64 p, int l, const std::vector<i64>& alpha, const std::vector<i64>& beta);

CompatPair make_compat_pair(const GenericTuple& chi, const GenericTuple& chi_H);

// Solution of alpha_j = z + sum_i y_i / (alpha_j - beta_i), via the closed
// forms y_i = -prod_j(alpha_j - beta_i)/prod_{j!=i}(beta_j - beta_i) and
// z = sum alpha - sum beta; post-verified against the system for every j.
struct FanPall {
  std::vector<i64> y;
  i64 z = 0;
};
FanPall fan_pall_solve(i64 p, int l, const std::vector<i64>& alpha, const std::vector<i64>& beta);

// Determinant of the system matrix [1/(alpha_j - beta_i) | 1], both by
// cofactor expansion and by the closed-form product; returns both values.
std::pair<i64, i64> fan_pall_determinant(i64 p, int l, const std::vector<i64>& alpha,
                                         const std::vector<i64>& beta);

struct CheckOutcome {
  bool ok = true;
  std::string detail;
};

// g0 diag(alpha) g0^{-1} = [[beta, 1],[y^t, z]]: exact at level l, and mod
// p^l after an arbitrary lift of g0 to level 2l.
CheckOutcome verify_conjugate_identity(const CompatPair& pair);

// All entries of g0 and g0^{-1} are units (checked at level l).
CheckOutcome g0_entries_are_units(const ResMat& g0_low);

// {k mod p^l : k diag(alpha) k^{-1} has the bordered shape} equals the double
// coset A_H g0 A.  Exhaustive over GL_{n+1}(F_p) at l = 1.
CheckOutcome compatible_orbit_check(const CompatPair& pair, i64 budget = 4'000'000);

// J cap H = K_H(l): (i) exhaustive over GL_n(O/p^{2l}): the embedding
// diag(h,1) lies in T~(l)^{g0} iff h is in K_H(l); (ii) sampled noncompact
// directions: k1 g0 t g0^{-1} k2 never has the (0,..,0,unit) border shape for
// diagonal t with a non-unit entry.
CheckOutcome atrans_exhaustive(const CompatPair& pair);
CheckOutcome atrans_noncompact_sampled(const CompatPair& pair, int pairs_per_t,
                                       unsigned long long seed);

// compatibility fingerprint: truncating the last row and column of
// exp*(lambda~) = D(chi)^{g0} recovers exp*_H(lambda~_H) = D(chi_H)
CheckOutcome compat_fingerprint(const CompatPair& pair);

}  // namespace padlab
