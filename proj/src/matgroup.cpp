#include "padlab/matgroup.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

namespace padlab {

// ---------------------------------------------------------------------------
// ResMat
// ---------------------------------------------------------------------------

ResMat ResMat::identity(const RingSpec& s, int size) {
  ResMat m(s, size);
  for (int i = 0; i < size; i++) m.at(i, i) = 1;
  return m;
}

ResMat ResMat::mul(const ResMat& o) const {
  if (!(spec == o.spec) || n != o.n) fail(Errc::SpecMismatch, "matrix product shape/ring mismatch");
  ResMat r(spec, n);
  i64 mod = spec.modulus();
  for (int i = 0; i < n; i++) {
    for (int k = 0; k < n; k++) {
      i64 x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < n; j++) {
        r.at(i, j) = (r.at(i, j) + (i128)x * o.at(k, j)) % mod;
      }
    }
  }
  return r;
}

ResMat ResMat::add(const ResMat& o) const {
  ResMat r(spec, n);
  i64 mod = spec.modulus();
  for (size_t i = 0; i < a.size(); i++) r.a[i] = (a[i] + o.a[i]) % mod;
  return r;
}

ResMat ResMat::sub(const ResMat& o) const {
  ResMat r(spec, n);
  i64 mod = spec.modulus();
  for (size_t i = 0; i < a.size(); i++) r.a[i] = ((a[i] - o.a[i]) % mod + mod) % mod;
  return r;
}

ResMat ResMat::scaled(i64 c) const {
  ResMat r(spec, n);
  i64 mod = spec.modulus();
  c = ((c % mod) + mod) % mod;
  for (size_t i = 0; i < a.size(); i++) r.a[i] = i64((i128)a[i] * c % mod);
  return r;
}

i64 ResMat::det() const {
  // fraction-free elimination with unit pivots; falls back to Laplace for
  // matrices with no unit pivot in some column (possible over Z/p^L).
  if (n == 1) return at(0, 0);
  if (n == 2) {
    i64 mod = spec.modulus();
    return ((at(0, 0) * (i128)at(1, 1) - at(0, 1) * (i128)at(1, 0)) % mod + mod) % mod;
  }
  // Laplace along the first row; n <= 4 in practice.
  i64 mod = spec.modulus();
  i64 s = 0;
  ResMat minor(spec, n - 1);
  for (int j = 0; j < n; j++) {
    if (at(0, j) == 0) continue;
    for (int r = 1; r < n; r++) {
      int cc = 0;
      for (int c = 0; c < n; c++) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = at(r, c);
      }
    }
    i64 term = i64((i128)at(0, j) * minor.det() % mod);
    s = ((s + ((j % 2) ? -term : term)) % mod + mod) % mod;
  }
  return s;
}

ResMat ResMat::inverse() const {
  // Gauss-Jordan with unit pivots; a matrix over Z/p^L is invertible iff a
  // unit pivot can always be found.
  i64 mod = spec.modulus();
  ResMat m = *this;
  ResMat inv = identity(spec, n);
  for (int col = 0; col < n; col++) {
    int piv = -1;
    for (int r = col; r < n; r++) {
      if (m.at(r, col) % spec.p != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) fail(Errc::NonUnit, "matrix not invertible over residue ring");
    if (piv != col) {
      for (int j = 0; j < n; j++) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    i64 pi = mod_inv(m.at(col, col), mod);
    for (int j = 0; j < n; j++) {
      m.at(col, j) = i64((i128)m.at(col, j) * pi % mod);
      inv.at(col, j) = i64((i128)inv.at(col, j) * pi % mod);
    }
    for (int r = 0; r < n; r++) {
      if (r == col) continue;
      i64 f = m.at(r, col);
      if (f == 0) continue;
      for (int j = 0; j < n; j++) {
        m.at(r, j) = ((m.at(r, j) - (i128)f * m.at(col, j)) % mod + mod) % mod;
        inv.at(r, j) = ((inv.at(r, j) - (i128)f * inv.at(col, j)) % mod + mod) % mod;
      }
    }
  }
  return inv;
}

ResMat ResMat::reduced(int new_level) const {
  if (new_level > spec.level) fail(Errc::LevelTooLow, "cannot reduce upward");
  ResMat r(RingSpec{spec.p, new_level}, n);
  i64 mod = r.spec.modulus();
  for (size_t i = 0; i < a.size(); i++) r.a[i] = a[i] % mod;
  return r;
}

ResMat ResMat::lifted(int new_level) const {
  if (new_level < spec.level) fail(Errc::LevelTooLow, "cannot lift downward");
  ResMat r(RingSpec{spec.p, new_level}, n);
  r.a = a;
  return r;
}

ResMat ResMat::conj_by(const ResMat& k) const { return k.mul(*this).mul(k.inverse()); }

bool ResMat::is_identity() const { return *this == identity(spec, n); }

ResMat embed_upper_left(const ResMat& h) {
  ResMat g(h.spec, h.n + 1);
  for (int i = 0; i < h.n; i++)
    for (int j = 0; j < h.n; j++) g.at(i, j) = h.at(i, j);
  g.at(h.n, h.n) = 1;
  return g;
}

// ---------------------------------------------------------------------------
// RatMat
// ---------------------------------------------------------------------------

RatMat RatMat::identity(int size) {
  RatMat m(size);
  for (int i = 0; i < size; i++) m.at(i, i) = Rat(1);
  return m;
}

RatMat RatMat::diag_powers(i64 p, const std::vector<int>& mu) {
  RatMat m(int(mu.size()));
  for (size_t i = 0; i < mu.size(); i++) {
    m.at(int(i), int(i)) = mu[i] >= 0 ? Rat(pow_i64(p, mu[i])) : Rat(1, pow_i64(p, -mu[i]));
  }
  return m;
}

RatMat RatMat::from_res(const ResMat& m) {
  RatMat r(m.n);
  for (size_t i = 0; i < m.a.size(); i++) r.a[i] = Rat(m.a[i]);
  return r;
}

RatMat RatMat::mul(const RatMat& o) const {
  RatMat r(n);
  for (int i = 0; i < n; i++)
    for (int k = 0; k < n; k++) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < n; j++) r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
    }
  return r;
}

Rat RatMat::det() const {
  if (n == 1) return at(0, 0);
  Rat s(0);
  RatMat minor(n - 1);
  for (int j = 0; j < n; j++) {
    if (at(0, j).is_zero()) continue;
    for (int r = 1; r < n; r++) {
      int cc = 0;
      for (int c = 0; c < n; c++) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = at(r, c);
      }
    }
    Rat term = at(0, j) * minor.det();
    s = (j % 2) ? s - term : s + term;
  }
  return s;
}

RatMat RatMat::adjugate() const {
  RatMat adj(n);
  RatMat minor(n - 1);
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      int rr = 0;
      for (int r = 0; r < n; r++) {
        if (r == i) continue;
        int cc = 0;
        for (int c = 0; c < n; c++) {
          if (c == j) continue;
          minor.at(rr, cc++) = at(r, c);
        }
        rr++;
      }
      Rat m = (n == 1) ? Rat(1) : minor.det();
      adj.at(j, i) = ((i + j) % 2) ? -m : m;
    }
  }
  return adj;
}

RatMat RatMat::inverse() const {
  Rat d = det();
  if (d.is_zero()) fail(Errc::NonUnit, "singular rational matrix");
  RatMat adj = adjugate();
  for (auto& x : adj.a) x = x / d;
  return adj;
}

RatMat RatMat::transpose() const {
  RatMat r(n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) r.at(j, i) = at(i, j);
  return r;
}

bool RatMat::is_p_integral(i64 p) const {
  for (const auto& x : a)
    if (!x.is_zero() && x.val(p) < 0) return false;
  return true;
}

ResMat RatMat::reduced(const RingSpec& spec) const {
  // p-integral entries have denominators prime to p (num and den coprime)
  if (!is_p_integral(spec.p)) fail(Errc::SpecMismatch, "reducing non-integral matrix");
  ResMat r(spec, n);
  i64 mod = spec.modulus();
  for (size_t i = 0; i < a.size(); i++) {
    i64 v = ((a[i].num % mod) + mod) % mod;
    r.a[i] = i64((i128)v * mod_inv(a[i].den % mod, mod) % mod);
  }
  return r;
}

int RatMat::max_norm_exp(i64 p) const {
  int best = INT32_MIN;
  for (const auto& x : a) {
    if (x.is_zero()) continue;
    best = std::max(best, -x.val(p));
  }
  if (best == INT32_MIN) fail(Errc::BadConfig, "norm of zero matrix");
  return best;
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

static bool offdiag_in_pl(const ResMat& g, int l) {
  i64 pl = pow_i64(g.spec.p, l);
  for (int i = 0; i < g.n; i++)
    for (int j = 0; j < g.n; j++)
      if (i != j && g.at(i, j) % pl != 0) return false;
  return true;
}

static bool diag_units(const ResMat& g) {
  for (int i = 0; i < g.n; i++)
    if (g.at(i, i) % g.spec.p == 0) return false;
  return true;
}

bool membership(const ResMat& g, const SubgroupTag& tag) {
  const i64 p = g.spec.p;
  auto need_level = [&](int lv) {
    if (g.spec.level < lv) fail(Errc::LevelTooLow, "matrix level below tag depth");
  };
  switch (tag.tag) {
    case Tag::K:
      return g.det_is_unit();
    case Tag::Kl:
    case Tag::KH_l: {
      need_level(std::max(tag.l, 1));
      i64 pl = pow_i64(p, tag.l);
      for (int i = 0; i < g.n; i++)
        for (int j = 0; j < g.n; j++) {
          i64 want = (i == j) ? 1 : 0;
          if (((g.at(i, j) - want) % pl + pl) % pl != 0) return false;
        }
      return true;
    }
    case Tag::KH1:
      return membership(g, SubgroupTag{Tag::Kl, 1, {}});
    case Tag::BK: {
      if (!diag_units(g)) return false;
      for (int i = 0; i < g.n; i++)
        for (int j = 0; j < i; j++)
          if (g.at(i, j) != 0) return false;
      return true;
    }
    case Tag::Tc: {
      if (!diag_units(g)) return false;
      for (int i = 0; i < g.n; i++)
        for (int j = 0; j < g.n; j++)
          if (i != j && g.at(i, j) != 0) return false;
      return true;
    }
    case Tag::TcTilde: {
      need_level(std::max(2 * tag.l, 1));
      return diag_units(g) && offdiag_in_pl(g, tag.l);
    }
    case Tag::Hemb: {
      int m = g.n - 1;
      for (int j = 0; j < m; j++)
        if (g.at(m, j) != 0 || g.at(j, m) != 0) return false;
      return g.at(m, m) == 1 && g.det_is_unit();
    }
    case Tag::HtildeEmb: {
      int m = g.n - 1;
      for (int j = 0; j < m; j++)
        if (g.at(m, j) != 0 || g.at(j, m) != 0) return false;
      return g.at(m, m) % p != 0 && g.det_is_unit();
    }
    case Tag::Jconj: {
      need_level(std::max(2 * tag.l, 1));
      ResMat k = tag.conj->lifted(g.spec.level);
      ResMat t = k.inverse().mul(g).mul(k);
      return diag_units(t) && offdiag_in_pl(t, tag.l);
    }
    case Tag::J1conj: {
      if (!membership(g, SubgroupTag{Tag::Kl, 1, {}})) return false;
      return membership(g, SubgroupTag{Tag::Jconj, tag.l, tag.conj});
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Coset spaces
// ---------------------------------------------------------------------------

i64 gl_order_mod_p(int n, i64 p) {
  i64 pn = pow_i64(p, n);
  i64 r = 1;
  i64 pi = 1;
  for (int i = 0; i < n; i++) {
    r *= pn - pi;
    pi *= p;
  }
  return r;
}

i64 gl_order_mod_pm(int n, i64 p, int m) { return gl_order_mod_p(n, p) * pow_i64(p, (m - 1) * n * n); }

CosetSpace congruence_cosets(int n, i64 p, int a, int b, i64 budget) {
  if (b <= a || a < 1) fail(Errc::BadConfig, "congruence cosets need 1 <= a < b");
  i64 layers = pow_i64(p, b - a);
  i64 count = 1;
  for (int i = 0; i < n * n; i++) {
    count *= layers;
    if (count > budget) fail(Errc::BudgetExceeded, "coset budget");
  }
  RingSpec spec = make_ring(p, b);
  i64 pa = pow_i64(p, a);
  CosetSpace cs;
  cs.ambient = "K" + std::to_string(a);
  cs.sub = "K" + std::to_string(b);
  cs.n = n;
  cs.p = p;
  cs.level = b;
  cs.reps.reserve(size_t(count));
  for (i64 idx = 0; idx < count; idx++) {
    ResMat m = ResMat::identity(spec, n);
    i64 t = idx;
    for (int e = 0; e < n * n; e++) {
      i64 digit = t % layers;
      t /= layers;
      m.a[e] = (m.a[e] + digit * pa) % spec.modulus();
    }
    cs.reps.push_back(m);
  }
  int nn = n;
  cs.lookup = [nn, p, a, b, layers](const ResMat& g) -> size_t {
    // index of the coset of g: digits of (g - 1)/p^a mod p^{b-a}
    i64 pa2 = pow_i64(p, a);
    i64 pb = pow_i64(p, b);
    size_t idx = 0;
    i64 mul = 1;
    for (int e = 0; e < nn * nn; e++) {
      int i = e / nn, j = e % nn;
      i64 want = (i == j) ? 1 : 0;
      i64 d = ((g.at(i, j) - want) % pb + pb) % pb;
      if (d % pa2 != 0) fail(Errc::SpecMismatch, "element not in ambient congruence subgroup");
      idx += size_t((d / pa2) % layers) * mul;
      mul *= layers;
    }
    return idx;
  };
  return cs;
}

void for_each_gl(int n, i64 p, int m, const std::function<void(const ResMat&)>& fn) {
  RingSpec spec = make_ring(p, m);
  i64 mod = spec.modulus();
  ResMat g(spec, n);
  size_t cells = size_t(n) * n;
  std::vector<i64> v(cells, 0);
  while (true) {
    g.a = v;
    if (g.det_is_unit()) fn(g);
    size_t i = 0;
    for (; i < cells; i++) {
      if (++v[i] < mod) break;
      v[i] = 0;
    }
    if (i == cells) break;
  }
}

CosetSpace full_level_cosets(int n, i64 p, int m, i64 budget) {
  i64 count = gl_order_mod_pm(n, p, m);
  if (count > budget) fail(Errc::BudgetExceeded, "coset budget");
  CosetSpace cs;
  cs.ambient = "K";
  cs.sub = "K" + std::to_string(m);
  cs.n = n;
  cs.p = p;
  cs.level = m;
  cs.reps.reserve(size_t(count));
  // Enumerate GL_n(F_p) and lift through levels by adding p-layers; the
  // straightforward full scan is equivalent and simpler at desk sizes.
  for_each_gl(n, p, m, [&](const ResMat& g) { cs.reps.push_back(g); });
  // canonical ordering: lexicographic on entries
  std::sort(cs.reps.begin(), cs.reps.end(),
            [](const ResMat& x, const ResMat& y) { return x.a < y.a; });
  auto index = std::make_shared<std::unordered_map<std::string, size_t>>();
  index->reserve(cs.reps.size() * 2);
  auto key_of = [n](const ResMat& g, i64 mod) {
    std::string k;
    k.reserve(size_t(n) * n * 4);
    for (i64 x : g.a) {
      i64 r = ((x % mod) + mod) % mod;
      k.append(reinterpret_cast<const char*>(&r), 4);
    }
    return k;
  };
  i64 mod = pow_i64(p, m);
  for (size_t i = 0; i < cs.reps.size(); i++) (*index)[key_of(cs.reps[i], mod)] = i;
  cs.lookup = [index, key_of, mod](const ResMat& g) -> size_t {
    auto it = index->find(key_of(g, mod));
    if (it == index->end()) fail(Errc::SpecMismatch, "element not in enumerated group");
    return it->second;
  };
  return cs;
}

// ---------------------------------------------------------------------------
// Smith / Iwasawa / distance
// ---------------------------------------------------------------------------

static int rat_val_or_max(const Rat& x, i64 p) { return x.is_zero() ? INT32_MAX : x.val(p); }

std::vector<int> smith_cartan(const RatMat& g, i64 p) {
  int n = g.n;
  // d_k = min valuation over k x k minors; mu = successive differences,
  // sorted non-increasing.
  std::vector<int> d(n + 1, 0);
  for (int k = 1; k <= n; k++) {
    // iterate over k-subsets of rows and columns
    std::vector<int> rows(k), cols(k);
    std::iota(rows.begin(), rows.end(), 0);
    int best = INT32_MAX;
    auto next_subset = [n](std::vector<int>& s) {
      int k2 = int(s.size());
      int i = k2 - 1;
      while (i >= 0 && s[i] == n - k2 + i) i--;
      if (i < 0) return false;
      s[i]++;
      for (int j = i + 1; j < k2; j++) s[j] = s[j - 1] + 1;
      return true;
    };
    bool more_rows = true;
    while (more_rows) {
      std::iota(cols.begin(), cols.end(), 0);
      bool more_cols = true;
      while (more_cols) {
        RatMat minor(k);
        for (int i = 0; i < k; i++)
          for (int j = 0; j < k; j++) minor.at(i, j) = g.at(rows[i], cols[j]);
        best = std::min(best, rat_val_or_max(minor.det(), p));
        more_cols = next_subset(cols);
      }
      more_rows = next_subset(rows);
    }
    if (best == INT32_MAX) fail(Errc::NonUnit, "singular matrix in smith_cartan");
    d[k] = best;
  }
  std::vector<int> mu(n);
  for (int k = 1; k <= n; k++) mu[k - 1] = d[k] - d[k - 1];
  std::sort(mu.begin(), mu.end(), std::greater<int>());
  return mu;
}

std::vector<int> iwasawa_A(const RatMat& g, i64 p) {
  int n = g.n;
  RatMat m = g;
  // Bottom-up column elimination by right multiplication with elements of K:
  // column swaps and shears col_c -= (a_ic / a_ii) col_i with p-integral ratio.
  for (int i = n - 1; i >= 0; i--) {
    int piv = -1;
    int bestv = INT32_MAX;
    for (int c = 0; c <= i; c++) {
      int v = rat_val_or_max(m.at(i, c), p);
      if (v < bestv) {
        bestv = v;
        piv = c;
      }
    }
    if (piv < 0 || bestv == INT32_MAX) fail(Errc::NonUnit, "singular matrix in iwasawa_A");
    if (piv != i) {
      for (int r = 0; r < n; r++) std::swap(m.at(r, piv), m.at(r, i));
    }
    for (int c = 0; c < i; c++) {
      if (m.at(i, c).is_zero()) continue;
      Rat f = m.at(i, c) / m.at(i, i);
      for (int r = 0; r < n; r++) m.at(r, c) = m.at(r, c) - f * m.at(r, i);
    }
  }
  std::vector<int> A(n);
  for (int i = 0; i < n; i++) A[i] = m.at(i, i).val(p);
  return A;
}

Distance distance_to_Htilde(const ResMat& g, int l) {
  if (g.spec.level < 2 * l) fail(Errc::LevelTooLow, "distance needs level >= 2l");
  int m = g.n - 1;
  int depth = 2 * l;
  for (int j = 0; j < m; j++) {
    auto v = [&](i64 x) {
      if (x == 0) return 2 * l;
      int r = 0;
      while (x % g.spec.p == 0) {
        x /= g.spec.p;
        r++;
      }
      return std::min(r, 2 * l);
    };
    depth = std::min(depth, v(g.at(m, j)));
    depth = std::min(depth, v(g.at(j, m)));
  }
  Distance d;
  if (depth >= 2 * l) {
    d.zero = true;
    d.truncated = true;  // cannot distinguish exact membership from d < q^-2l
    return d;
  }
  d.m = depth;
  return d;
}

}  // namespace padlab
