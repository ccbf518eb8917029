#include "padlab/mlift.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace padlab {

CycInt chi_tilde(const GenericTuple& chi, const ResMat& t) {
  if (!membership(t, SubgroupTag{Tag::TcTilde, chi.l(), {}}))
    fail(Errc::SpecMismatch, "chi~ evaluated outside T~(l)");
  const auto& ctx = chi.comps[0].ctx();
  CycInt v = CycInt::root(ctx.M, 0);
  for (int i = 0; i < t.n; i++) v = v * chi.comps[size_t(i)].value(t.at(i, i) % ctx.mod);
  return v;
}

CycInt borel_char(const GenericTuple& chi, const ResMat& b) {
  const auto& ctx = chi.comps[0].ctx();
  CycInt v = CycInt::root(ctx.M, 0);
  for (int i = 0; i < b.n; i++) v = v * chi.comps[size_t(i)].value(b.at(i, i) % ctx.mod);
  return v;
}

ChiTildeTable extend_chi_tilde(const GenericTuple& chi, bool exhaustive_check) {
  if (!is_generic(chi)) fail(Errc::NotGeneric, "tuple is not generic");
  int l = chi.l();
  i64 p = chi.p();
  int n = int(chi.size());
  RingSpec spec = make_ring(p, 2 * l);
  i64 mod = spec.modulus();

  // enumerate (or sample) T~(l)/K(2l): diagonal units mod p^{2l} times
  // 1 + p^l (off-diagonal)
  std::vector<ResMat> elems;
  i64 units = euler_phi(mod);
  i64 offs = pow_i64(p, l * (n * n - n));
  i64 total = offs;
  for (int i = 0; i < n; i++) total *= units;
  std::mt19937_64 rng(271828);
  auto random_elem = [&]() {
    ResMat t(spec, n);
    for (int i = 0; i < n; i++) {
      i64 d;
      do
        d = 1 + i64(rng() % (unsigned long long)mod);
      while (d % p == 0);
      t.at(i, i) = d % mod;
    }
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++)
        if (i != j) t.at(i, j) = pow_i64(p, l) * i64(rng() % (unsigned long long)pow_i64(p, l)) % mod;
    return t;
  };
  if (exhaustive_check && total <= 20000) {
    // exhaustive element list
    i64 pl = pow_i64(p, l);
    std::vector<i64> unit_list;
    for (i64 u = 1; u < mod; u++)
      if (u % p != 0) unit_list.push_back(u);
    std::vector<ResMat> acc = {ResMat::identity(spec, n)};
    // fill diagonals
    for (int i = 0; i < n; i++) {
      std::vector<ResMat> next;
      for (const auto& m : acc)
        for (i64 u : unit_list) {
          ResMat m2 = m;
          m2.at(i, i) = u;
          next.push_back(m2);
        }
      acc.swap(next);
    }
    // fill off-diagonals
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        if (i == j) continue;
        std::vector<ResMat> next;
        for (const auto& m : acc)
          for (i64 t = 0; t < pl; t++) {
            ResMat m2 = m;
            m2.at(i, j) = t * pl % mod;
            next.push_back(m2);
          }
        acc.swap(next);
      }
    elems = std::move(acc);
  } else {
    for (int i = 0; i < 400; i++) elems.push_back(random_elem());
  }

  // agreement with chi on T_c is the definition; verify multiplicativity and
  // triviality on K(2l)
  for (size_t i = 0; i < elems.size(); i++) {
    size_t j = (i * 2654435761u + 17) % elems.size();
    const auto& s = elems[i];
    const auto& t = elems[j];
    if (!(chi_tilde(chi, s.mul(t)) == chi_tilde(chi, s) * chi_tilde(chi, t)))
      fail(Errc::CounterexampleFound, "chi~ not multiplicative");
  }
  if (exhaustive_check && elems.size() <= 2000) {
    for (const auto& s : elems)
      for (const auto& t : elems)
        if (!(chi_tilde(chi, s.mul(t)) == chi_tilde(chi, s) * chi_tilde(chi, t)))
          fail(Errc::CounterexampleFound, "chi~ not multiplicative");
  }
  // triviality on K(2l): at level 2l the only K(2l)-point is the identity
  if (!(chi_tilde(chi, ResMat::identity(spec, n)) == CycInt::root(1, 0)))
    fail(Errc::CounterexampleFound, "chi~ not trivial on K(2l)");
  return ChiTildeTable{chi};
}

CycInt ChiType::lambda(const ResMat& a) const {
  ResMat k = conj.lifted(a.spec.level);
  return chi_tilde(chi, k.inverse().mul(a).mul(k));
}

// ---------------------------------------------------------------------------
// Standard-vector evaluation: factor g = b t with b in B_K, t in T~(l),
// searching over the torus part mod p^l.  Returns zero off B_K T~(l).
// ---------------------------------------------------------------------------

static CycInt eval_standard(const GenericTuple& chi, const ResMat& g) {
  i64 p = chi.p();
  int l = chi.l();
  int n = g.n;
  const auto& ctx = chi.comps[0].ctx();
  RingSpec spec = g.spec;
  i64 mod = spec.modulus();
  i64 pl = pow_i64(p, l);

  // candidate torus parts t_c mod p^l (canonical lifts)
  std::vector<i64> units;
  for (i64 u = 1; u < pl; u++)
    if (u % p != 0) units.push_back(u);

  std::vector<int> pick(size_t(n), 0);
  while (true) {
    // u = g * t_c^{-1}
    ResMat u(spec, n);
    bool lower_ok = true;
    for (int j = 0; j < n && lower_ok; j++) {
      i64 inv = mod_inv(units[size_t(pick[size_t(j)])], mod);
      for (int i = 0; i < n; i++) {
        u.at(i, j) = i64((i128)g.at(i, j) * inv % mod);
        if (i > j && u.at(i, j) % pl != 0) {
          lower_ok = false;
          break;
        }
      }
    }
    if (lower_ok) {
      // diagonal of u must be units for b to lie in B_K
      bool diag_ok = true;
      for (int i = 0; i < n; i++)
        if (u.at(i, i) % p == 0) diag_ok = false;
      if (diag_ok) {
        ResMat b(spec, n);
        for (int i = 0; i < n; i++)
          for (int j = i; j < n; j++) b.at(i, j) = u.at(i, j);
        ResMat k1 = b.inverse().mul(u);  // in K(l)
        ResMat tc(spec, n);
        for (int i = 0; i < n; i++) tc.at(i, i) = units[size_t(pick[size_t(i)])];
        ResMat t = k1.mul(tc);  // in T~(l)
        return borel_char(chi, b) * chi_tilde(chi, t);
      }
    }
    // next candidate
    int i = 0;
    for (; i < n; i++) {
      if (size_t(++pick[size_t(i)]) < units.size()) break;
      pick[size_t(i)] = 0;
    }
    if (i == n) break;
  }
  return CycInt(ctx.M);  // zero
}

CycInt MicrolocalVector::eval(const ResMat& g) const {
  return eval_standard(chi, g.mul(conj.lifted(g.spec.level)));
}

MicrolocalVector microlocal_vector(const ChiType& t) {
  if (!is_generic(t.chi)) fail(Errc::NotGeneric, "tuple is not generic");
  return MicrolocalVector{t.chi, t.conj};
}

// ---------------------------------------------------------------------------
// Matrix coefficient, folded over B_K: representatives of
// B_K \ (B_K T~(l)) / K(2l) are 1 + p^l L with L strictly lower mod p^l, and
// the dual standard vector is 1 on them.
// ---------------------------------------------------------------------------

static void for_each_lower_rep(const RingSpec& spec, int n, int l,
                               const std::function<void(const ResMat&)>& fn) {
  i64 pl = pow_i64(spec.p, l);
  int slots = n * (n - 1) / 2;
  std::vector<i64> digits(size_t(slots), 0);
  while (true) {
    ResMat m = ResMat::identity(spec, n);
    int s = 0;
    for (int i = 0; i < n; i++)
      for (int j = 0; j < i; j++) m.at(i, j) = digits[size_t(s++)] * pl % spec.modulus();
    fn(m);
    int i = 0;
    for (; i < slots; i++) {
      if (++digits[size_t(i)] < pl) break;
      digits[size_t(i)] = 0;
    }
    if (i == slots) break;
  }
}

CycInt matrix_coefficient(const MicrolocalVector& v, const MicrolocalVector& v_dual,
                          const ResMat& g) {
  if (!(v.conj == v_dual.conj)) fail(Errc::SpecMismatch, "dual vector has a different type");
  const auto& ctx = v.chi.comps[0].ctx();
  for (size_t i = 0; i < v.chi.size(); i++) {
    i64 sum = (v.chi.comps[i].e + v_dual.chi.comps[i].e) % ctx.phi;
    if (sum != 0) fail(Errc::SpecMismatch, "dual vector tuple is not the inverse");
  }
  // rho_k(g) = rho_std(k^-1 g k)
  ResMat k = v.conj.lifted(g.spec.level);
  ResMat x = k.inverse().mul(g).mul(k);
  CycInt acc(ctx.M);
  for_each_lower_rep(g.spec, g.n, v.chi.l(), [&](const ResMat& rep) {
    // dual standard vector takes value chi~^{-1}(rep) = 1 on these reps
    acc += eval_standard(v.chi, rep.mul(x));
  });
  return acc;
}

// ---------------------------------------------------------------------------
// Isotypic dimension by weighted orbit consistency
// ---------------------------------------------------------------------------

namespace {

struct OrbitData {
  std::vector<size_t> orbit_of;   // coset index -> orbit id
  std::vector<size_t> rep_of;     // orbit id -> coset index of representative
  std::vector<ResMat> b_factor;   // coset index -> b with coset = b * rep
};

// B_K-orbits on K/K(2l), with the Borel factor of each coset tracked.
OrbitData borel_orbits(const CosetSpace& cosets, i64 p, int twol) {
  RingSpec spec = make_ring(p, twol);
  int n = cosets.reps[0].n;
  i64 mod = spec.modulus();
  // generators of B_K mod K(2l): unit-diagonal scalings and upper shears
  std::vector<ResMat> gens;
  i64 g = unit_group_generator(p, twol);
  for (int i = 0; i < n; i++) {
    ResMat d = ResMat::identity(spec, n);
    d.at(i, i) = g % mod;
    gens.push_back(d);
  }
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++) {
      ResMat e = ResMat::identity(spec, n);
      e.at(i, j) = 1;
      gens.push_back(e);
    }

  size_t N = cosets.reps.size();
  OrbitData od;
  od.orbit_of.assign(N, SIZE_MAX);
  od.b_factor.assign(N, ResMat());
  for (size_t s = 0; s < N; s++) {
    if (od.orbit_of[s] != SIZE_MAX) continue;
    size_t orbit = od.rep_of.size();
    od.rep_of.push_back(s);
    od.orbit_of[s] = orbit;
    od.b_factor[s] = ResMat::identity(spec, n);
    std::vector<size_t> stack = {s};
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      for (const auto& b : gens) {
        ResMat next = b.mul(cosets.reps[cur]);
        size_t idx = cosets.lookup(next);
        if (od.orbit_of[idx] == SIZE_MAX) {
          od.orbit_of[idx] = orbit;
          od.b_factor[idx] = b.mul(od.b_factor[cur]);
          stack.push_back(idx);
        }
      }
    }
  }
  return od;
}

std::vector<ResMat> fattened_torus_generators(i64 p, int l, int n) {
  RingSpec spec = make_ring(p, 2 * l);
  i64 mod = spec.modulus();
  std::vector<ResMat> gens;
  i64 g = unit_group_generator(p, 2 * l);
  for (int i = 0; i < n; i++) {
    ResMat d = ResMat::identity(spec, n);
    d.at(i, i) = g % mod;
    gens.push_back(d);
  }
  i64 pl = pow_i64(p, l);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      ResMat e = ResMat::identity(spec, n);
      e.at(i, j) = (e.at(i, j) + pl) % mod;
      gens.push_back(e);
    }
  return gens;
}

}  // namespace

int isotypic_dimension(const GenericTuple& chi, const ChiType& type, i64 budget) {
  i64 p = chi.p();
  int l = chi.l();
  int twol = 2 * l;
  RingSpec spec = make_ring(p, twol);
  // need the full coset space K/K(2l)
  int n = type.conj.n;
  if (gl_order_mod_pm(n, p, twol) > budget) fail(Errc::BudgetExceeded, "isotypic scan too large");
  auto cosets = full_level_cosets(n, p, twol, budget);
  auto od = borel_orbits(cosets, p, twol);
  size_t R = od.rep_of.size();

  const auto& ctx = chi.comps[0].ctx();
  ResMat k0 = type.conj.lifted(twol);

  // weighted constraints f(rep_j) = w * f(rep_i); propagate and detect
  // conflicts per component
  std::vector<int> comp(R, -1);
  std::vector<CycInt> weight(R, CycInt(ctx.M));  // value relative to component root
  std::vector<bool> dead;                        // component forced to zero

  auto gens = fattened_torus_generators(p, l, n);
  // adjacency: for each orbit rep i and generator a: k_i * (k0 a k0^-1) lies
  // in coset b * rep_j; constraint chi(b) f_j = lambda(a) f_i.
  struct Edge {
    size_t to;
    CycInt mult;  // f_to = mult * f_from
  };
  std::vector<std::vector<Edge>> adj(R);
  for (size_t i = 0; i < R; i++) {
    const ResMat& ki = cosets.reps[od.rep_of[i]];
    for (const auto& a : gens) {
      ResMat aa = k0.mul(a).mul(k0.inverse());
      ResMat target = ki.mul(aa);
      size_t idx = cosets.lookup(target);
      size_t j = od.orbit_of[idx];
      CycInt chib = borel_char(chi, od.b_factor[idx]);
      CycInt lam = chi_tilde(type.chi, a);  // lambda~(k0 a k0^-1) = chi~_type(a)
      // chi(b) f_j = lam f_i  =>  f_j = lam * chi(b)^{-1} f_i
      // chi(b) is a root of unity: invert by conjugating the exponent
      // (cheap path: find inverse as the matching monomial)
      // We know chib = zeta_M^k; represent inverse as zeta_M^{-k}.
      const auto& c = chib.coeffs();
      i64 kexp = -1;
      for (i64 t = 0; t < chib.order(); t++)
        if (c[size_t(t)] != 0) {
          kexp = t;
          break;
        }
      CycInt mult = lam * CycInt::root(chib.order(), -kexp);
      adj[i].push_back(Edge{j, mult});
    }
  }

  int dim = 0;
  for (size_t s = 0; s < R; s++) {
    if (comp[s] >= 0) continue;
    int cid = int(dead.size());
    dead.push_back(false);
    comp[s] = cid;
    weight[s] = CycInt::root(ctx.M, 0);
    std::vector<size_t> stack = {s};
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      for (const auto& e : adj[cur]) {
        CycInt w = e.mult * weight[cur];
        if (comp[e.to] < 0) {
          comp[e.to] = cid;
          weight[e.to] = w;
          stack.push_back(e.to);
        } else if (!(weight[e.to] == w)) {
          dead[size_t(cid)] = true;
        }
      }
    }
    if (!dead[size_t(cid)]) dim++;
  }
  return dim;
}

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

static std::string mat_to_string(const ResMat& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.n; i++) {
    os << (i ? ";" : "");
    for (int j = 0; j < m.n; j++) os << (j ? "," : "") << m.at(i, j);
  }
  os << "] mod " << m.spec.modulus();
  return os.str();
}

ScanReport support_scan(const ChiType& t, i64 n_samples, unsigned long long seed,
                        bool exhaustive) {
  ScanReport rep;
  i64 p = t.chi.p();
  int l = t.chi.l();
  int twol = 2 * l;
  int n = t.conj.n;
  RingSpec spec = make_ring(p, twol);
  auto v = microlocal_vector(t);
  auto vdual = microlocal_vector(ChiType{t.chi.inverse(), t.conj});
  auto rho = [&](const ResMat& g) { return matrix_coefficient(v, vdual, g); };
  auto J = t.J_tag();

  // rho(1) is a positive count of torus representatives, never zero
  CycInt rho1 = rho(ResMat::identity(spec, n));
  if (cyc_is_zero(rho1)) {
    rep.ok = false;
    rep.witness = "rho(1) = 0";
    return rep;
  }

  auto check_one = [&](const ResMat& g) {
    CycInt val = rho(g);
    rep.checked++;
    bool nonzero = !cyc_is_zero(val);
    if (nonzero) rep.support_hits++;
    if (nonzero && !membership(g, J)) {
      rep.ok = false;
      rep.witness = mat_to_string(g);
      return false;
    }
    return true;
  };

  if (exhaustive) {
    bool aborted = false;
    for_each_gl(n, p, twol, [&](const ResMat& g) {
      if (aborted) return;
      if (!check_one(g)) aborted = true;
    });
    return rep;
  }

  std::mt19937_64 rng(seed);
  RingSpec lowspec = make_ring(p, l);
  for (i64 s = 0; s < n_samples && rep.ok; s++) {
    ResMat g(spec, n);
    do {
      for (auto& x : g.a) x = i64(rng() % (unsigned long long)spec.modulus());
    } while (!g.det_is_unit());
    if (!check_one(g)) break;
  }
  // J-equivariance spot checks: rho(a g) = lambda(a) rho(g), and
  // rho(a) = lambda(a) rho(1) != 0 on the fattened-torus conjugate itself
  for (int s = 0; s < 64 && rep.ok; s++) {
    // random element of J: conjugated torus-fattening element
    ResMat tc(spec, n);
    for (int i = 0; i < n; i++) {
      i64 d;
      do
        d = i64(rng() % (unsigned long long)spec.modulus());
      while (d % p == 0);
      tc.at(i, i) = d;
    }
    ResMat kl = ResMat::identity(spec, n);
    i64 pl = pow_i64(p, l);
    for (auto& x : kl.a) x = (x + pl * i64(rng() % (unsigned long long)pl)) % spec.modulus();
    ResMat k0 = t.conj.lifted(twol);
    ResMat a = k0.mul(tc.mul(kl)).mul(k0.inverse());
    CycInt lhs = rho(a);
    CycInt rhs = t.lambda(a) * rho1;
    rep.checked++;
    if (!(lhs == rhs) || cyc_is_zero(lhs)) {
      rep.ok = false;
      rep.witness = "equivariance failure at " + mat_to_string(a);
    }
  }
  return rep;
}

TypeUniquenessReport unique_type_check(const GenericTuple& chi) {
  TypeUniquenessReport out;
  i64 p = chi.p();
  int l = chi.l();
  int twol = 2 * l;
  // size of the ambient group comes with the tuple length
  int n = int(chi.size());
  RingSpec spec = make_ring(p, twol);
  auto cosets = full_level_cosets(n, p, twol);

  // conjugator representatives of K / T~(l): reduce K/K(l)-level reps by the
  // right action of the fattened torus image
  auto level_l = full_level_cosets(n, p, l);
  std::vector<char> used(level_l.reps.size(), 0);
  std::vector<ResMat> conj_reps;
  // enumerate diagonal units mod p^l for the torus image at level l
  std::vector<ResMat> torus_l;
  {
    i64 pl = pow_i64(p, l);
    std::vector<i64> units;
    for (i64 u = 1; u < pl; u++)
      if (u % p != 0) units.push_back(u);
    std::vector<int> pick(size_t(n), 0);
    while (true) {
      ResMat d(make_ring(p, l), n);
      for (int i = 0; i < n; i++) d.at(i, i) = units[size_t(pick[size_t(i)])];
      torus_l.push_back(d);
      int i = 0;
      for (; i < n; i++) {
        if (size_t(++pick[size_t(i)]) < units.size()) break;
        pick[size_t(i)] = 0;
      }
      if (i == n) break;
    }
  }
  for (size_t i = 0; i < level_l.reps.size(); i++) {
    if (used[i]) continue;
    conj_reps.push_back(level_l.reps[i].lifted(twol));
    for (const auto& d : torus_l) used[level_l.lookup(level_l.reps[i].mul(d))] = 1;
  }
  out.types_total = int(conj_reps.size());

  // the standard vector
  MicrolocalVector v{chi, ResMat::identity(spec, n)};
  auto gens = fattened_torus_generators(p, l, n);

  for (const auto& c : conj_reps) {
    bool matches = true;
    for (const auto& k : cosets.reps) {
      for (const auto& a : gens) {
        ResMat aa = c.mul(a).mul(c.inverse());
        if (!(v.eval(k.mul(aa)) == chi_tilde(chi, a) * v.eval(k))) {
          matches = false;
          break;
        }
      }
      if (!matches) break;
    }
    if (matches) out.types_matched++;
  }

  // stabilizer of the standard type under K-conjugation equals T~(l):
  // k fixes (T~(l), chi~) iff it normalizes the subgroup (checked on
  // generators; conjugation preserves the order) and chi~(k a k^-1) = chi~(a)
  SubgroupTag ttag{Tag::TcTilde, l, {}};
  for (const auto& k : cosets.reps) {
    bool stab = true;
    for (const auto& a : gens) {
      ResMat ak = k.mul(a).mul(k.inverse());
      if (!membership(ak, ttag) || !(chi_tilde(chi, ak) == chi_tilde(chi, a))) {
        stab = false;
        break;
      }
    }
    bool in_torus = membership(k, ttag);
    if (stab != in_torus) {
      out.stabilizer_ok = false;
      break;
    }
  }
  return out;
}

DiagAdjust diag_adjust(const ResMat& Y, const ResMat& y, int l, int steps) {
  RingSpec spec = Y.spec;
  i64 p = spec.p;
  i64 mod = spec.modulus();
  int n = Y.n;
  // regular mod p: distinct diagonal residues
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++)
      if (((Y.at(i, i) - Y.at(j, j)) % p + p) % p == 0)
        fail(Errc::NotRegular, "diagonal not regular mod p");
  i64 pl = pow_i64(p, l);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      if (i != j && y.at(i, j) % pl != 0) fail(Errc::SpecMismatch, "perturbation not in p^l M");

  ResMat cur = Y.add(y);
  ResMat kacc = ResMat::identity(spec, n);
  for (int s = 0; s < steps; s++) {
    int depth = l + s;
    i64 pd = pow_i64(p, depth);
    if (depth >= spec.level) break;
    // choose A with A_ij = off_ij / (Y_jj - Y_ii) against the current diagonal
    ResMat A(spec, n);
    for (int i = 0; i < n; i++) {
      for (int j = 0; j < n; j++) {
        if (i == j) continue;
        i64 off = cur.at(i, j) / pd % mod;  // entries at this depth
        i64 denom = ((cur.at(j, j) - cur.at(i, i)) % mod + mod) % mod;
        A.at(i, j) = i64((i128)(((-off) % mod + mod) % mod) * mod_inv(denom, mod) % mod);
      }
    }
    ResMat k = ResMat::identity(spec, n).add(A.scaled(pd));
    cur = k.mul(cur).mul(k.inverse());
    kacc = k.mul(kacc);
  }
  DiagAdjust out;
  out.k = kacc;
  out.Z = ResMat(spec, n);
  out.z = ResMat(spec, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      if (i == j)
        out.Z.at(i, i) = cur.at(i, i);
      else
        out.z.at(i, j) = cur.at(i, j);
    }
  return out;
}

}  // namespace padlab
