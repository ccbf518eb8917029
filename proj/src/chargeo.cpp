#include "padlab/chargeo.hpp"

#include <map>
#include <mutex>

namespace padlab {

const UnitGroupCtx& UnitGroupCtx::get(i64 p, int twol) {
  static std::map<std::pair<i64, int>, UnitGroupCtx> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(p, twol);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  UnitGroupCtx c;
  c.p = p;
  c.twol = twol;
  c.mod = pow_i64(p, twol);
  c.gen = unit_group_generator(p, twol);
  c.phi = euler_phi(c.mod);
  c.M = c.mod * (p - 1);
  c.log_table.assign(size_t(c.mod), -1);
  i64 x = 1;
  for (i64 k = 0; k < c.phi; k++) {
    c.log_table[size_t(x)] = k;
    x = i64((i128)x * c.gen % c.mod);
  }
  return cache.emplace(key, std::move(c)).first->second;
}

i64 UnitGroupCtx::dlog(i64 x) const {
  x = ((x % mod) + mod) % mod;
  i64 v = log_table[size_t(x)];
  if (v < 0) fail(Errc::NonUnit, "dlog of non-unit");
  return v;
}

CycInt MultChar::value(i64 x) const {
  const auto& c = ctx();
  // chi(g^k) = zeta_phi^{e k}; zeta_phi = zeta_M^{M/phi}
  i64 k = c.dlog(x);
  i64 expo = i64((i128)(e % c.phi) * k % c.phi);
  return CycInt::root(c.M, expo * (c.M / c.phi));
}

MultChar MultChar::inverse() const {
  const auto& c = ctx();
  return MultChar{p, l, (c.phi - (e % c.phi)) % c.phi};
}

MultChar MultChar::times(const MultChar& o) const {
  if (p != o.p || l != o.l) fail(Errc::SpecMismatch, "character modulus mismatch");
  const auto& c = ctx();
  return MultChar{p, l, (e + o.e) % c.phi};
}

int MultChar::conductor_exp() const {
  const auto& c = ctx();
  // (1+p^k)/(1+p^{2l}) is cyclic on 1+p^k for odd p, so triviality on the
  // subgroup is triviality on that one generator: e * dlog(1+p^k) = 0 mod phi.
  if (e % c.phi == 0) return 0;
  for (int k = 1; k <= 2 * l; k++) {
    i64 pk = pow_i64(p, k);
    if ((i128)(e % c.phi) * c.dlog(1 + pk) % c.phi == 0) return k;
  }
  fail(Errc::NotTrivialOnDepth2l, "character not trivial at depth 2l");
}

MultChar char_with_expstar(i64 p, int l, i64 a, i64 free_part) {
  const auto& c = UnitGroupCtx::get(p, 2 * l);
  i64 pl = pow_i64(p, l);
  // Need chi(1+p^l) = zeta_{p^l}^a.  With i0 = dlog(1+p^l) = (phi/p^l) u,
  // u a unit mod p^l, this reads e * u = a (mod p^l).
  i64 i0 = c.dlog(1 + pl);
  i64 cof = c.phi / pl;
  if (i0 % cof != 0) fail(Errc::BadConfig, "generator bookkeeping");
  i64 u = (i0 / cof) % pl;
  i64 e0 = i64((i128)(((a % pl) + pl) % pl) * mod_inv(u, pl) % pl);
  i64 e = (e0 + pl * (((free_part % cof) + cof) % cof)) % c.phi;
  return MultChar{p, l, e};
}

i64 exp_star_1(const MultChar& chi) {
  const auto& c = chi.ctx();
  i64 p = chi.p;
  int l = chi.l;
  i64 pl = pow_i64(p, l);
  // Solve on the generator 1 + p^l: chi(1+p^l) is a p^l-th root of unity
  // zeta_{p^l}^a, read a off the exponent.
  i64 k = c.dlog(1 + pl);
  i64 expo = i64((i128)(chi.e % c.phi) * k % c.phi);  // chi(1+p^l) = zeta_phi^expo
  // as a power of zeta_{p^l}: need expo * (M/phi) divisible by M/p^l
  i64 zM = expo * (c.M / c.phi);
  if (zM % (c.M / pl) != 0) fail(Errc::NotTrivialOnDepth2l, "value order exceeds p^l");
  i64 a = (zM / (c.M / pl)) % pl;
  // Post-verify the defining identity on all of 1 + p^l O / 1 + p^{2l} O.
  for (i64 t = 0; t < pl; t++) {
    i64 y = t * pl;  // element of p^l O mod p^{2l}
    CycInt lhs = chi.value(1 + y);
    CycInt rhs = additive_char(Rat(a * t, pl), p);  // theta(p^{-2l} a y) = theta(a t / p^l)
    if (!(lhs == rhs)) fail(Errc::BadConfig, "exp*_1 post-verification failed");
  }
  return a;
}

std::vector<i64> GenericTuple::D() const {
  std::vector<i64> d;
  d.reserve(comps.size());
  for (const auto& ch : comps) d.push_back(exp_star_1(ch));
  return d;
}

GenericTuple GenericTuple::inverse() const {
  GenericTuple t;
  for (const auto& ch : comps) t.comps.push_back(ch.inverse());
  return t;
}

GenericTuple tuple_from_D(i64 p, int l, const std::vector<i64>& a, const std::vector<i64>& free_parts) {
  GenericTuple t;
  for (size_t i = 0; i < a.size(); i++) {
    i64 f = i < free_parts.size() ? free_parts[i] : 0;
    t.comps.push_back(char_with_expstar(p, l, a[i], f));
  }
  return t;
}

static bool conductor_route(const GenericTuple& chi) {
  int twol = 2 * chi.l();
  for (size_t i = 0; i < chi.size(); i++) {
    for (size_t j = 0; j < chi.size(); j++) {
      if (i == j) continue;
      if (chi.comps[i].times(chi.comps[j].inverse()).conductor_exp() != twol) return false;
    }
  }
  return true;
}

static bool d_regular_route(const GenericTuple& chi) {
  auto d = chi.D();
  i64 p = chi.p();
  for (size_t i = 0; i < d.size(); i++)
    for (size_t j = i + 1; j < d.size(); j++)
      if (((d[i] - d[j]) % p + p) % p == 0) return false;
  return true;
}

bool is_generic(const GenericTuple& chi) {
  bool a = conductor_route(chi);
  bool b = d_regular_route(chi);
  if (a != b) fail(Errc::CounterexampleFound, "conductor criterion disagrees with D-regularity");
  return a;
}

bool is_generic_pair(const GenericTuple& chi, const GenericTuple& chi_H) {
  if (chi.p() != chi_H.p() || chi.l() != chi_H.l()) fail(Errc::SpecMismatch, "pair modulus mismatch");
  if (!is_generic(chi) || !is_generic(chi_H)) return false;
  // cross conductors: chi_i / chi_{H,j} of conductor exactly p^{2l}
  int twol = 2 * chi.l();
  bool cross = true;
  for (const auto& ci : chi.comps)
    for (const auto& cj : chi_H.comps)
      if (ci.times(cj.inverse()).conductor_exp() != twol) cross = false;
  // equivalently: residues of D(chi) and D(chi_H) disjoint mod p
  auto d1 = chi.D();
  auto d2 = chi_H.D();
  bool disjoint = true;
  i64 p = chi.p();
  for (i64 x : d1)
    for (i64 y : d2)
      if (((x - y) % p + p) % p == 0) disjoint = false;
  if (cross != disjoint) fail(Errc::CounterexampleFound, "cross-conductor criterion disagrees with residue disjointness");
  return cross;
}

CycInt log_star_eval(const K1K2Char& X, const ResMat& k) {
  int l = X.l;
  i64 p = k.spec.p;
  if (k.spec.level < 2 * l) fail(Errc::LevelTooLow, "log* needs level >= 2l");
  if (!membership(k, SubgroupTag{Tag::Kl, l, {}})) fail(Errc::NotInKl, "argument not in K(l)");
  i64 p2l = pow_i64(p, 2 * l);
  // trace(X * (k - 1)) mod p^{2l}; X read mod p^l
  i64 tr = 0;
  int n = k.n;
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      i64 y = k.at(j, i) - (i == j ? 1 : 0);
      tr = (tr + (i128)(X.X.at(i, j) % pow_i64(p, l)) * y) % p2l;
    }
  }
  tr = ((tr % p2l) + p2l) % p2l;
  return additive_char(Rat(tr, p2l), p);
}

ResMat exp_star(int n, i64 p, int l, const std::function<CycInt(const ResMat&)>& character) {
  RingSpec low = make_ring(p, l);
  RingSpec high = make_ring(p, 2 * l);
  i64 pl = pow_i64(p, l);
  ResMat X(low, n);
  // probe with k = 1 + p^l E_ji: log*[X](k) = theta(X_ij / p^l), recover X_ij
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      ResMat k = ResMat::identity(high, n);
      k.at(j, i) = (k.at(j, i) + pl) % high.modulus();
      CycInt v = character(k);
      bool found = false;
      for (i64 a = 0; a < pl; a++) {
        if (v == additive_char(Rat(a, pl), p)) {
          X.at(i, j) = a;
          found = true;
          break;
        }
      }
      if (!found) fail(Errc::BadConfig, "probe value is not a p^l-th root of unity");
    }
  }
  return X;
}

}  // namespace padlab
