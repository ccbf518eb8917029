#include "padlab/hecke.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace padlab {

Cochar sorted_desc(Cochar mu) {
  std::sort(mu.begin(), mu.end(), std::greater<int>());
  return mu;
}

bool is_central(const Cochar& mu) {
  for (int v : mu)
    if (v != mu[0]) return false;
  return true;
}

Cochar amplifier_j(int m, int j) {
  Cochar mu(size_t(m), 0);
  mu[0] = j;
  return mu;
}

Cochar amplifier_jj(int m, int i) {
  Cochar mu(size_t(m), 0);
  mu[0] = i;
  mu[size_t(m) - 1] = -i;
  return mu;
}

Half norm_star(const Cochar& mu) {
  Cochar s = sorted_desc(mu);
  int m = int(s.size());
  int twice = 0;
  for (int i = 0; i < m; i++) twice += s[size_t(i)] * (m - 1 - 2 * i);
  return Half{twice};
}

// ---------------------------------------------------------------------------
// QPow
// ---------------------------------------------------------------------------

QPow qpow_make(i64 q, Rat u, int half) {
  if (u.is_zero()) return QPow::zero();
  i64 num = u.num, den = u.den;
  while (num % q == 0) {
    num /= q;
    half += 2;
  }
  while (den % q == 0) {
    den /= q;
    half -= 2;
  }
  return QPow{Rat(num, den), half};
}

QPow qpow_mul(i64 q, const QPow& a, const QPow& b) {
  if (a.is_zero() || b.is_zero()) return QPow::zero();
  return qpow_make(q, a.u * b.u, a.half + b.half);
}

QPow qpow_add(i64 q, const QPow& a, const QPow& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.half != b.half) fail(Errc::SpecMismatch, "adding incompatible q-powers");
  return qpow_make(q, a.u + b.u, a.half);
}

bool qpow_eq(const QPow& a, const QPow& b) { return a.u == b.u && (a.is_zero() || a.half == b.half); }

// ---------------------------------------------------------------------------
// Coset representatives
// ---------------------------------------------------------------------------

HeckeElem tau(i64 q, int m, const Cochar& mu) {
  HeckeElem e;
  e.q = q;
  e.m = m;
  e.terms[sorted_desc(mu)] = qpow_make(q, Rat(1), 0);
  return e;
}

// dominance: partial sums of sorted b bounded by those of sorted mu
static bool dominated(const Cochar& b_sorted, const Cochar& mu_sorted) {
  int acc_b = 0, acc_m = 0;
  for (size_t i = 0; i < mu_sorted.size(); i++) {
    acc_b += b_sorted[i];
    acc_m += mu_sorted[i];
    if (acc_b > acc_m) return false;
  }
  return acc_b == acc_m;
}

std::vector<RatMat> left_cosets(i64 q, const Cochar& mu_in, i64 budget) {
  int m = int(mu_in.size());
  Cochar mu = sorted_desc(mu_in);
  int shift = mu[size_t(m) - 1];
  Cochar mus(mu);
  for (auto& v : mus) v -= shift;  // nonnegative, last entry 0
  int total = 0, maxv = 0;
  for (int v : mus) {
    total += v;
    maxv = std::max(maxv, v);
  }

  // enumerate diagonals b with 0 <= b_i <= maxv, sum = total, dominated by mus
  std::vector<Cochar> diags;
  Cochar b(size_t(m), 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == m) {
      if (left == 0 && dominated(sorted_desc(b), mus)) diags.push_back(b);
      return;
    }
    for (int v = 0; v <= std::min(maxv, left); v++) {
      b[size_t(idx)] = v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, total);

  // budget: total entry candidates
  i64 candidates = 0;
  for (const auto& d : diags) {
    i64 c = 1;
    for (int i = 0; i < m; i++)
      for (int j = i + 1; j < m; j++) {
        c *= pow_i64(q, d[size_t(i)]);
        if (c > budget) fail(Errc::BudgetExceeded, "coset enumeration too large");
      }
    candidates += c;
    if (candidates > budget) fail(Errc::BudgetExceeded, "coset enumeration too large");
  }

  std::vector<RatMat> out;
  Rat scale = shift >= 0 ? Rat(pow_i64(q, shift)) : Rat(1, pow_i64(q, -shift));
  for (const auto& d : diags) {
    // entry slots (i,j), j > i, each mod q^{d_i}
    std::vector<std::pair<int, int>> slots;
    std::vector<i64> mods;
    for (int i = 0; i < m; i++)
      for (int j = i + 1; j < m; j++) {
        slots.push_back({i, j});
        mods.push_back(pow_i64(q, d[size_t(i)]));
      }
    std::vector<i64> digits(slots.size(), 0);
    while (true) {
      RatMat r(m);
      for (int i = 0; i < m; i++) r.at(i, i) = Rat(pow_i64(q, d[size_t(i)]));
      for (size_t s = 0; s < slots.size(); s++) r.at(slots[s].first, slots[s].second) = Rat(digits[s]);
      if (smith_cartan(r, q) == mus) {
        for (auto& x : r.a) x = x * scale;
        out.push_back(r);
      }
      size_t i = 0;
      for (; i < slots.size(); i++) {
        if (++digits[i] < mods[i]) break;
        digits[i] = 0;
      }
      if (i == slots.size()) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Convolution
// ---------------------------------------------------------------------------

static std::map<Cochar, i64> convolve_basis(i64 q, int m, const Cochar& ma, const Cochar& mb,
                                            i64 budget) {
  auto Ra = left_cosets(q, ma, budget);
  auto Rb = left_cosets(q, mb, budget);
  // support candidates: Cartan classes of products of representatives
  std::set<Cochar> cands;
  for (const auto& r : Ra)
    for (const auto& s : Rb) cands.insert(smith_cartan(r.mul(s), q));
  std::map<Cochar, i64> counts;
  for (const auto& nu : cands) {
    RatMat x = RatMat::diag_powers(q, nu);
    i64 cnt = 0;
    for (const auto& r : Ra) {
      if (smith_cartan(r.inverse().mul(x), q) == sorted_desc(mb)) cnt++;
    }
    if (cnt > 0) counts[nu] = cnt;
  }
  (void)m;
  return counts;
}

HeckeElem convolve(const HeckeElem& a, const HeckeElem& b, i64 budget) {
  if (a.q != b.q || a.m != b.m) fail(Errc::SpecMismatch, "convolving different algebras");
  HeckeElem out;
  out.q = a.q;
  out.m = a.m;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      auto counts = convolve_basis(a.q, a.m, ma, mb, budget);
      Half na = norm_star(ma), nb = norm_star(mb);
      for (const auto& [nu, cnt] : counts) {
        // structure constant: count * q^{||nu||-||ma||-||mb||}
        int half = norm_star(nu).twice - na.twice - nb.twice;
        QPow term = qpow_mul(a.q, qpow_mul(a.q, ca, cb), qpow_make(a.q, Rat(cnt), half));
        auto it = out.terms.find(nu);
        if (it == out.terms.end())
          out.terms[nu] = term;
        else
          it->second = qpow_add(a.q, it->second, term);
      }
    }
  }
  // drop exact zeros
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (it->second.is_zero())
      it = out.terms.erase(it);
    else
      ++it;
  }
  return out;
}

std::map<int, QPow> amplifier_relation(int m, int j, i64 q, i64 budget) {
  auto prod = convolve(tau(q, m, amplifier_j(m, j)), tau(q, m, amplifier_j(m, -j)), budget);
  std::map<int, QPow> out;
  for (const auto& [nu, c] : prod.terms) {
    bool matched = false;
    for (int i = 0; i <= j; i++) {
      if (nu == sorted_desc(amplifier_jj(m, i))) {
        out[i] = c;
        matched = true;
        break;
      }
    }
    if (!matched) {
      std::ostringstream os;
      os << "unexpected support class (";
      for (int v : nu) os << v << " ";
      os << ")";
      fail(Errc::SupportViolation, os.str());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spherical functions
// ---------------------------------------------------------------------------

bool SatakeParam::is_regular() const {
  for (size_t i = 0; i < alpha.size(); i++)
    for (size_t j = i + 1; j < alpha.size(); j++)
      if (std::abs(alpha[i] - alpha[j]) < 1e-12) return false;
  return true;
}

bool SatakeParam::is_theta_tempered(i64 q, double theta) const {
  double lo = std::pow(double(q), -theta) - 1e-12, hi = std::pow(double(q), theta) + 1e-12;
  for (const auto& a : alpha) {
    double r = std::abs(a);
    if (r < lo || r > hi) return false;
  }
  return true;
}

// (delta^{1/2} alpha)(a) for an integer Iwasawa coordinate a
static cplx half_density_weight(i64 q, const Cochar& a, const SatakeParam& alpha) {
  int m = int(a.size());
  double expo = 0;  // -<a, rho>
  cplx val = 1;
  for (int i = 0; i < m; i++) {
    expo -= a[size_t(i)] * (m - 1 - 2 * i) / 2.0;
    val *= std::pow(alpha.alpha[size_t(i)], a[size_t(i)]);
  }
  return val * std::pow(double(q), expo);
}

// Hermite representatives are upper triangular, so their Iwasawa coordinate
// is the diagonal valuation vector.
static Cochar diag_valuations(const RatMat& r, i64 q) {
  Cochar a(size_t(r.n));
  for (int i = 0; i < r.n; i++) a[size_t(i)] = r.at(i, i).val(q);
  return a;
}

cplx satake_eigenvalue(i64 q, const Cochar& mu, const SatakeParam& alpha, i64 budget) {
  auto reps = left_cosets(q, mu, budget);
  cplx sum = 0;
  for (const auto& r : reps) sum += half_density_weight(q, diag_valuations(r, q), alpha);
  return sum * std::pow(double(q), -norm_star(mu).value());
}

cplx spherical_coset_sum(i64 q, const Cochar& mu, const SatakeParam& alpha, i64 budget) {
  auto reps = left_cosets(q, mu, budget);
  if (reps.empty()) fail(Errc::BadConfig, "no coset representatives");
  cplx sum = 0;
  for (const auto& r : reps) sum += half_density_weight(q, diag_valuations(r, q), alpha);
  return sum / double(reps.size());
}

cplx macdonald_spherical(i64 q, const Cochar& mu_in, const SatakeParam& alpha) {
  if (!alpha.is_regular()) fail(Errc::SingularParameter, "Macdonald formula needs regular alpha");
  int m = int(alpha.alpha.size());
  Cochar mu = sorted_desc(mu_in);
  double t = 1.0 / double(q);

  // Poincare polynomial W(t) = prod_k (1-t^k)/(1-t)
  double W = 1;
  for (int k = 1; k <= m; k++) W *= (1 - std::pow(t, k)) / (1 - t);

  std::vector<int> perm(static_cast<size_t>(m));
  for (int i = 0; i < m; i++) perm[size_t(i)] = i;
  cplx sum = 0;
  do {
    std::vector<cplx> a(static_cast<size_t>(m));
    for (int i = 0; i < m; i++) a[size_t(i)] = alpha.alpha[size_t(perm[size_t(i)])];
    cplx c = 1;
    for (int i = 0; i < m; i++)
      for (int j = i + 1; j < m; j++) c *= (1.0 - t * a[size_t(j)] / a[size_t(i)]) / (1.0 - a[size_t(j)] / a[size_t(i)]);
    cplx mono = 1;
    for (int i = 0; i < m; i++) mono *= std::pow(a[size_t(i)], mu[size_t(i)]);
    sum += c * mono;
  } while (std::next_permutation(perm.begin(), perm.end()));

  double expo = 0;  // <mu, rho>
  for (int i = 0; i < m; i++) expo += mu[size_t(i)] * (m - 1 - 2 * i) / 2.0;
  return sum * std::pow(double(q), -expo) / W;
}

cplx hall_littlewood_row(i64 q, int j, const SatakeParam& alpha) {
  if (j == 0) return 1;
  // generating function prod_i (1 - t a_i y)/(1 - a_i y) = sum_r Q_r y^r,
  // P_(j) = Q_j / (1 - t)
  double t = 1.0 / double(q);
  std::vector<cplx> series(size_t(j) + 1, 0.0);
  series[0] = 1;
  for (const auto& a : alpha.alpha) {
    // multiply by (1 - t a y) * (1 + a y + a^2 y^2 + ...)
    std::vector<cplx> geo(size_t(j) + 1);
    for (int r = 0; r <= j; r++) geo[size_t(r)] = std::pow(a, r);
    for (int r = 1; r <= j; r++) geo[size_t(r)] -= t * a * std::pow(a, r - 1);
    std::vector<cplx> next(size_t(j) + 1, 0.0);
    for (int r = 0; r <= j; r++)
      for (int s = 0; r + s <= j; s++) next[size_t(r + s)] += series[size_t(r)] * geo[size_t(s)];
    series.swap(next);
  }
  return series[size_t(j)] / (1.0 - t);
}

// ---------------------------------------------------------------------------
// Restriction to H~
// ---------------------------------------------------------------------------

std::set<HtildeLabel> restriction_labels(const Cochar& mu_in) {
  Cochar mu = sorted_desc(mu_in);
  std::set<HtildeLabel> out;
  for (size_t k = 0; k < mu.size(); k++) {
    HtildeLabel lab;
    for (size_t i = 0; i < mu.size(); i++)
      if (i != k) lab.lam_H.push_back(mu[i]);
    lab.lam_H = sorted_desc(lab.lam_H);
    lab.c = mu[k];
    out.insert(lab);
  }
  return out;
}

RestrictionScan restriction_scan(i64 q, int n, const Cochar& mu, int samples,
                                 unsigned long long seed) {
  RestrictionScan out;
  Cochar mus = sorted_desc(mu);
  auto labels = restriction_labels(mus);
  std::mt19937_64 rng(seed);
  int lo = mus[size_t(n)], hi = mus[0];
  RingSpec spec = make_ring(q, 2);

  // structured part: every label in the valuation window, tested via a
  // random sandwich k1 diag(z lamH(pi), z) k2 with k in GL mod q^2
  std::vector<HtildeLabel> all;
  {
    Cochar lam(size_t(n), 0);
    std::function<void(int)> rec = [&](int idx) {
      if (idx == n) {
        for (int c = lo; c <= hi; c++) all.push_back(HtildeLabel{sorted_desc(lam), c});
        return;
      }
      for (int v = lo; v <= hi; v++) {
        lam[size_t(idx)] = v;
        rec(idx + 1);
      }
    };
    rec(0);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  auto embed_label = [&](const HtildeLabel& lab, bool randomize) {
    RatMat h = RatMat::diag_powers(q, lab.lam_H);
    if (randomize) {
      RatMat k1(n), k2(n);
      do {
        for (auto& x : k1.a) x = Rat(i64(rng() % (unsigned long long)spec.modulus()));
      } while (k1.det().is_zero() || k1.det().val(q) != 0);
      do {
        for (auto& x : k2.a) x = Rat(i64(rng() % (unsigned long long)spec.modulus()));
      } while (k2.det().is_zero() || k2.det().val(q) != 0);
      h = k1.mul(h).mul(k2);
    }
    RatMat g(n + 1);
    Rat z = lab.c >= 0 ? Rat(pow_i64(q, lab.c)) : Rat(1, pow_i64(q, -lab.c));
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) g.at(i, j) = h.at(i, j) * z;
    g.at(n, n) = z;
    return g;
  };

  auto check = [&](const HtildeLabel& lab, bool randomize) {
    RatMat g = embed_label(lab, randomize);
    bool inG = smith_cartan(g, q) == mus;
    bool predicted = labels.count(lab) > 0;
    out.tested++;
    if (inG != predicted) {
      std::ostringstream os;
      os << "label (";
      for (int v : lab.lam_H) os << v << " ";
      os << "| " << lab.c << ") " << (inG ? "in" : "out") << " vs predicted "
         << (predicted ? "in" : "out");
      out.ok = false;
      out.detail = os.str();
      return false;
    }
    return true;
  };

  for (const auto& lab : all)
    if (!check(lab, false)) return out;
  for (int s = 0; s < samples; s++) {
    const auto& lab = all[rng() % all.size()];
    if (!check(lab, true)) return out;
  }
  return out;
}

std::vector<NormDifference> restriction_norm_differences(const Cochar& mu_in) {
  Cochar mu = sorted_desc(mu_in);
  int m = int(mu.size());
  std::vector<NormDifference> out;
  for (int k = 0; k < m; k++) {
    Cochar centered = mu;
    for (auto& v : centered) v -= mu[size_t(k)];
    NormDifference nd;
    Cochar lamH;
    int sum_abs = 0;
    for (int i = 0; i < m; i++) {
      if (i != k) lamH.push_back(centered[size_t(i)]);
      sum_abs += std::abs(centered[size_t(i)]);
    }
    nd.lambda = lamH;
    nd.lambda.push_back(0);  // moved entry, centered to 0
    nd.lhs = norm_star(lamH) - norm_star(centered);
    nd.rhs = Half{-sum_abs};
    out.push_back(nd);
  }
  return out;
}

cplx hecke_restriction_value(i64 q, int n, const Cochar& mu, const SatakeParam& alpha_H,
                             cplx alpha_z, i64 budget) {
  if (is_central(mu)) fail(Errc::CentralMu, "restriction bound needs non-central mu");
  if (int(mu.size()) != n + 1 || int(alpha_H.alpha.size()) != n)
    fail(Errc::SpecMismatch, "shape mismatch");
  auto labels = restriction_labels(mu);
  cplx sum = 0;
  for (const auto& lab : labels) {
    // vol(K_H~ lambda K_H~) = number of left cosets of the GL_n factor
    auto reps = left_cosets(q, lab.lam_H, budget);
    cplx phiH = spherical_coset_sum(q, lab.lam_H, alpha_H, budget);
    sum += double(reps.size()) * phiH * std::pow(alpha_z, lab.c);
  }
  return sum * std::pow(double(q), -norm_star(mu).value());
}

HeightCheck hecke_height_check(i64 q, const Cochar& mu, i64 budget) {
  HeightCheck out;
  Cochar mus = sorted_desc(mu);
  int want_fwd = mus[0];
  int want_bwd = -mus[size_t(mus.size()) - 1];
  for (const auto& r : left_cosets(q, mu, budget)) {
    if (r.max_norm_exp(q) != want_fwd || r.inverse().max_norm_exp(q) != want_bwd) {
      out.ok = false;
      out.detail = "height mismatch on a representative";
      return out;
    }
  }
  std::ostringstream os;
  os << "norms {q^" << want_fwd << ", q^" << want_bwd << "}";
  out.detail = os.str();
  return out;
}

}  // namespace padlab
