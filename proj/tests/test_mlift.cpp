#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "padlab/mlift.hpp"

using namespace padlab;

namespace {

GenericTuple std_tuple_231() { return tuple_from_D(3, 1, {0, 1}); }

ResMat weyl2(const RingSpec& R) {
  ResMat w(R, 2);
  w.at(0, 1) = 1;
  w.at(1, 0) = 1;
  return w;
}

}  // namespace

TEST_CASE("chi~ extension: values, triviality, multiplicativity") {
  auto chi = std_tuple_231();
  auto R = make_ring(3, 2);
  auto table = extend_chi_tilde(chi, true);  // throws internally on failure

  // on T_c, agrees with the product of components
  ResMat t(R, 2);
  t.at(0, 0) = 2;
  t.at(1, 1) = 5;
  CHECK(table.eval(t) == chi.comps[0].value(2) * chi.comps[1].value(5));

  // on mixed elements the value is read off the diagonal:
  // chi~([[1,3],[3,1]]) = chi(diag(1,1)) = 1
  ResMat m(R, 2);
  m.at(0, 0) = 1;
  m.at(1, 1) = 1;
  m.at(0, 1) = 3;
  m.at(1, 0) = 3;
  CHECK(table.eval(m) == CycInt::root(1, 0));

  // non-generic tuple is rejected
  CHECK_THROWS_AS(extend_chi_tilde(tuple_from_D(3, 1, {1, 1})), Error);
}

TEST_CASE("chi~ multiplicative at (3,5,1), sampled") {
  auto chi = tuple_from_D(5, 1, {0, 1, 2});
  extend_chi_tilde(chi, false);  // sampled self-check inside
  auto R = make_ring(5, 2);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; t++) {
    ResMat a(R, 3), b(R, 3);
    for (int i = 0; i < 3; i++) {
      a.at(i, i) = 1 + 5 * i64(rng() % 5) + i64(rng() % 4);
      b.at(i, i) = 1 + 5 * i64(rng() % 5) + i64(rng() % 4);
      if (a.at(i, i) % 5 == 0) a.at(i, i) = 1;
      if (b.at(i, i) % 5 == 0) b.at(i, i) = 1;
      for (int j = 0; j < 3; j++) {
        if (i == j) continue;
        a.at(i, j) = 5 * i64(rng() % 5);
        b.at(i, j) = 5 * i64(rng() % 5);
      }
    }
    CHECK(chi_tilde(chi, a.mul(b)) == chi_tilde(chi, a) * chi_tilde(chi, b));
  }
}

TEST_CASE("microlocal vector: support and equivariance, exhaustive at (2,3,1)") {
  auto chi = std_tuple_231();
  auto R = make_ring(3, 2);
  MicrolocalVector v{chi, ResMat::identity(R, 2)};

  CHECK(v.eval(ResMat::identity(R, 2)) == CycInt::root(1, 0));
  // the long Weyl element is outside B_K T~(1)
  CHECK(cyc_is_zero(v.eval(weyl2(R))));

  // f(b) = chi(b) on the Borel
  ResMat b(R, 2);
  b.at(0, 0) = 2;
  b.at(0, 1) = 7;
  b.at(1, 1) = 4;
  CHECK(v.eval(b) == borel_char(chi, b));

  // exhaustive equivariance and support check over K/K(2)
  auto gens_b = std::vector<ResMat>{};
  {
    ResMat d1 = ResMat::identity(R, 2);
    d1.at(0, 0) = 2;
    ResMat d2 = ResMat::identity(R, 2);
    d2.at(1, 1) = 2;
    ResMat e = ResMat::identity(R, 2);
    e.at(0, 1) = 1;
    gens_b = {d1, d2, e};
  }
  SubgroupTag ttilde{Tag::TcTilde, 1, {}};
  long long support = 0;
  for_each_gl(2, 3, 2, [&](const ResMat& g) {
    CycInt val = v.eval(g);
    // left B_K-equivariance via generators
    for (const auto& bb : gens_b) CHECK(v.eval(bb.mul(g)) == borel_char(chi, bb) * val);
    // right T~(1)-equivariance on a generator
    ResMat a = ResMat::identity(R, 2);
    a.at(0, 0) = 2;
    CHECK(v.eval(g.mul(a)) == chi_tilde(chi, a) * val);
    ResMat a2 = ResMat::identity(R, 2);
    a2.at(1, 0) = 3;
    CHECK(v.eval(g.mul(a2)) == chi_tilde(chi, a2) * val);
    if (!cyc_is_zero(val)) {
      support++;
      // support of the standard vector within K is B_K T~(1)
    }
  });
  // |B_K T~(1)/K(2)| = |B mod 9| * |lower reps| = 324 * 3
  CHECK(support == 972);
}

TEST_CASE("matrix coefficient: pairing, equivariance, conjugated type") {
  auto chi = std_tuple_231();
  auto R = make_ring(3, 2);
  auto id = ResMat::identity(R, 2);
  MicrolocalVector v{chi, id};
  MicrolocalVector vd{chi.inverse(), id};

  auto rho1 = matrix_coefficient(v, vd, id);
  CHECK(!cyc_is_zero(rho1));
  CHECK(rho1 == CycInt::integer(1, 3));  // three lower-unipotent representatives

  // rho vanishes at the Weyl element (outside K(l) T K(l))
  CHECK(cyc_is_zero(matrix_coefficient(v, vd, weyl2(R))));

  // equivariance rho(a g) = lambda(a) rho(g), rho(g a) = lambda(a) rho(g)
  std::mt19937_64 rng(1000);
  ChiType type{chi, id};
  for (int t = 0; t < 40; t++) {
    auto g = oracles::random_gln(rng, R, 2);
    ResMat a(R, 2);
    a.at(0, 0) = (rng() % 2) ? 2 : 5;
    a.at(1, 1) = (rng() % 2) ? 4 : 7;
    a.at(0, 1) = 3 * i64(rng() % 3);
    a.at(1, 0) = 3 * i64(rng() % 3);
    auto lam = type.lambda(a);
    CHECK(matrix_coefficient(v, vd, a.mul(g)) == lam * matrix_coefficient(v, vd, g));
    CHECK(matrix_coefficient(v, vd, g.mul(a)) == lam * matrix_coefficient(v, vd, g));
  }

  // mismatched dual is rejected
  CHECK_THROWS_AS(matrix_coefficient(v, v, id), Error);

  // conjugated type: rho_k(g) = rho_std(k^-1 g k)
  auto k0 = weyl2(R);
  MicrolocalVector vk{chi, k0};
  MicrolocalVector vkd{chi.inverse(), k0};
  for (int t = 0; t < 25; t++) {
    auto g = oracles::random_gln(rng, R, 2);
    CHECK(matrix_coefficient(vk, vkd, g) ==
          matrix_coefficient(v, vd, k0.inverse().mul(g).mul(k0)));
  }
}

TEST_CASE("support scan exhaustive at (2,3,1) for standard and conjugated types") {
  auto chi = std_tuple_231();
  auto R = make_ring(3, 2);
  {
    auto rep = support_scan(ChiType{chi, ResMat::identity(R, 2)}, 0, 1, true);
    CHECK(rep.ok);
    CHECK(rep.checked == 3888);
    // support of rho inside K is exactly the fattened torus: 324 elements
    CHECK(rep.support_hits == 324);
  }
  {
    auto rep = support_scan(ChiType{chi, weyl2(R)}, 0, 1, true);
    CHECK(rep.ok);
    CHECK(rep.support_hits == 324);
  }
}

TEST_CASE("isotypic dimension: 1 for every type, 0 for a non-type character") {
  auto chi = std_tuple_231();
  auto R = make_ring(3, 2);
  CHECK(isotypic_dimension(chi, ChiType{chi, ResMat::identity(R, 2)}) == 1);
  CHECK(isotypic_dimension(chi, ChiType{chi, weyl2(R)}) == 1);
  // J paired with the character of a different tuple annihilates the space
  auto other = tuple_from_D(3, 1, {1, 2});
  CHECK(isotypic_dimension(chi, ChiType{other, ResMat::identity(R, 2)}) == 0);
}

TEST_CASE("type uniqueness and stabilizer at (2,3,1)") {
  auto chi = std_tuple_231();
  auto rep = unique_type_check(chi);
  CHECK(rep.types_total == 12);  // [K : T~(1)] = 48/4
  CHECK(rep.types_matched == 1);
  CHECK(rep.stabilizer_ok);
}

TEST_CASE("diagonal re-straightening") {
  auto R = make_ring(3, 2);

  // y = 0 fixes everything
  ResMat Y(R, 2);
  Y.at(0, 0) = 0 + 1;  // diag(1, 2): regular mod 3
  Y.at(1, 1) = 2;
  ResMat zero(R, 2);
  auto d0 = diag_adjust(Y, zero, 1);
  CHECK(d0.k.is_identity());
  CHECK(d0.Z == Y);

  // worked example: Y = diag(0,1), y = 3*[[0,1],[1,0]] -> k = 1 + 3*[[0,2],[1,0]]
  ResMat Y2(R, 2);
  Y2.at(1, 1) = 1;
  ResMat y2(R, 2);
  y2.at(0, 1) = 3;
  y2.at(1, 0) = 3;
  auto d2 = diag_adjust(Y2, y2, 1);
  ResMat expect_k = ResMat::identity(R, 2);
  expect_k.at(0, 1) = 6;
  expect_k.at(1, 0) = 3;
  CHECK(d2.k == expect_k);
  // conjugate really is Z + z with z one level deeper
  auto conj = d2.k.mul(Y2.add(y2)).mul(d2.k.inverse());
  for (int i = 0; i < 2; i++)
    for (int j = 0; j < 2; j++)
      if (i != j) CHECK(conj.at(i, j) % 9 == 0);  // p^{l+1} = 9 at level 2
  CHECK(((d2.Z.at(0, 0) - Y2.at(0, 0)) % 3 + 3) % 3 == 0);
  CHECK(((d2.Z.at(1, 1) - Y2.at(1, 1)) % 3 + 3) % 3 == 0);

  // random instances, iterated to full depth: off-diagonal gone mod p^{2l}
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; t++) {
    auto R4 = make_ring(5, 4);  // l = 2, level 4
    ResMat Yr(R4, 2);
    Yr.at(0, 0) = 1;
    Yr.at(1, 1) = 2 + 5 * i64(rng() % 5);
    ResMat yr(R4, 2);
    for (int i = 0; i < 2; i++)
      for (int j = 0; j < 2; j++) {
        i64 e = 25 * i64(rng() % 25);
        if (i == j)
          yr.at(i, i) = e;
        else
          yr.at(i, j) = e;
      }
    auto dd = diag_adjust(Yr, yr, 2, 2);
    CHECK(membership(dd.k, SubgroupTag{Tag::Kl, 2, {}}));
    auto c = dd.k.mul(Yr.add(yr)).mul(dd.k.inverse());
    for (int i = 0; i < 2; i++)
      for (int j = 0; j < 2; j++)
        if (i != j) CHECK(c.at(i, j) == 0);  // vanished mod 5^4
  }

  // non-regular diagonal is rejected
  ResMat bad(R, 2);
  bad.at(0, 0) = 1;
  bad.at(1, 1) = 4;  // 1 = 4 mod 3
  CHECK_THROWS_AS(diag_adjust(bad, zero, 1), Error);
}

TEST_CASE("well-definedness of the factored evaluation at (2,3,1)") {
  // whenever several torus parts factor the same g, the value must agree;
  // checked by comparing against a fully independent brute-force evaluator
  // that enumerates B_K x T~(1) products.
  auto chi = std_tuple_231();
  auto R = make_ring(3, 2);
  MicrolocalVector v{chi, ResMat::identity(R, 2)};

  // build the table of all (b, t) products and their values
  std::unordered_map<size_t, CycInt> table;
  auto cosets = full_level_cosets(2, 3, 2);
  // enumerate B_K mod 9 and T~(1) mod 9
  std::vector<ResMat> borel, torus;
  for_each_gl(2, 3, 2, [&](const ResMat& g) {
    if (membership(g, SubgroupTag{Tag::BK, 0, {}})) borel.push_back(g);
    if (membership(g, SubgroupTag{Tag::TcTilde, 1, {}})) torus.push_back(g);
  });
  REQUIRE(borel.size() == 324);
  REQUIRE(torus.size() == 324);
  bool consistent = true;
  for (const auto& b : borel) {
    for (const auto& t : torus) {
      auto g = b.mul(t);
      auto val = borel_char(chi, b) * chi_tilde(chi, t);
      size_t idx = cosets.lookup(g);
      auto it = table.find(idx);
      if (it == table.end())
        table.emplace(idx, val);
      else if (!(it->second == val))
        consistent = false;
    }
  }
  CHECK(consistent);
  // and the factored evaluator returns exactly the table (zero elsewhere)
  for (size_t i = 0; i < cosets.reps.size(); i++) {
    auto it = table.find(i);
    CycInt want = (it != table.end()) ? it->second : CycInt(1);
    CHECK(v.eval(cosets.reps[i]) == want);
  }
}
