#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nca/gf.hpp"

using namespace nca;

TEST_CASE("prime field arithmetic") {
  Fp fp(32003);
  CHECK(is_prime(32003));
  CHECK_FALSE(is_prime(32001));
  CHECK(fp.add(32000, 10) == 7);
  CHECK(fp.sub(3, 10) == 31996);
  CHECK(fp.neg(0) == 0);
  CHECK(fp.mul(fp.inv(1234), 1234) == 1);
  CHECK(fp.pow(5, 32002) == 1);  // Fermat
  CHECK(fp.reduce(-1) == 32002);
  CHECK_THROWS_AS(Fp(32001), Error);
}

TEST_CASE("rref is deterministic reduced echelon") {
  Fp fp(7);
  FfMatrix m(3, 3);
  // rows: (1,2,3), (2,4,6), (0,1,1)
  m.at(0, 0) = 1; m.at(0, 1) = 2; m.at(0, 2) = 3;
  m.at(1, 0) = 2; m.at(1, 1) = 4; m.at(1, 2) = 6;
  m.at(2, 1) = 1; m.at(2, 2) = 1;
  Rref e = rref(fp, m);
  REQUIRE(e.pivots == std::vector<std::size_t>{0, 1});
  CHECK(e.m.at(0, 0) == 1);
  CHECK(e.m.at(0, 1) == 0);  // fully reduced above pivots
  CHECK(e.m.at(1, 1) == 1);
  CHECK(rank(fp, m) == 2);
}

TEST_CASE("kernel basis solves the system") {
  Fp fp(5);
  FfMatrix m(1, 2);
  m.at(0, 0) = 1; m.at(0, 1) = 2;
  auto kb = kernel_basis(fp, m);
  REQUIRE(kb.size() == 1);
  CHECK(kb[0] == Vec{3, 1});
  CHECK(kernel_basis(fp, FfMatrix::identity(4)).empty());
}

TEST_CASE("random kernels and rank-nullity") {
  Fp fp(13);
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<std::uint32_t> coef(0, 12);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> sz(1, 7);
    FfMatrix m(sz(rng), sz(rng));
    for (auto& x : m.a) x = coef(rng);
    auto kb = kernel_basis(fp, m);
    CHECK(kb.size() == m.cols - rank(fp, m));
    for (const auto& v : kb) {
      Vec img = mat_vec(fp, m, v);
      for (Scalar s : img) CHECK(s == 0);
    }
    // Kernel vectors are linearly independent.
    FfMatrix span = FfMatrix::from_columns(kb, m.cols);
    CHECK(rank(fp, span) == kb.size());
  }
}

TEST_CASE("matrix multiplication is associative") {
  Fp fp(11);
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::uint32_t> coef(0, 10);
  for (int trial = 0; trial < 20; ++trial) {
    FfMatrix a(3, 4), b(4, 2), c(2, 5);
    for (auto& x : a.a) x = coef(rng);
    for (auto& x : b.a) x = coef(rng);
    for (auto& x : c.a) x = coef(rng);
    CHECK(mat_mul(fp, mat_mul(fp, a, b), c) ==
          mat_mul(fp, a, mat_mul(fp, b, c)));
  }
}

TEST_CASE("reduce_mod_subspace picks a complement greedily") {
  Fp fp(7);
  Vec e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  Vec sum{1, 1, 0};
  SUBCASE("drops vectors inside the subspace") {
    auto sel = reduce_mod_subspace(fp, {e1, sum, e3}, {e1, e2});
    REQUIRE(sel.size() == 1);
    CHECK(sel[0] == e3);
  }
  SUBCASE("keeps first-fit representatives, skips dependents") {
    auto sel = reduce_mod_subspace(fp, {e1, e2, sum}, {});
    REQUIRE(sel.size() == 2);
    CHECK(sel[0] == e1);
    CHECK(sel[1] == e2);
  }
}

TEST_CASE("reduce_mod_subspace: selected count equals quotient dimension") {
  Fp fp(13);
  std::mt19937 rng(4242);
  std::uniform_int_distribution<std::uint32_t> coef(0, 12);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 6;
    std::vector<Vec> cand(5, Vec(n)), sub(2, Vec(n));
    for (auto& v : cand)
      for (auto& x : v) x = coef(rng);
    for (auto& v : sub)
      for (auto& x : v) x = coef(rng);
    auto sel = reduce_mod_subspace(fp, cand, sub);
    // dim(span(cand + sub)) - dim(span(sub)) vectors must be selected.
    std::vector<Vec> all = sub;
    all.insert(all.end(), cand.begin(), cand.end());
    std::size_t expect = rank(fp, FfMatrix::from_columns(all, n)) -
                         rank(fp, FfMatrix::from_columns(sub, n));
    CHECK(sel.size() == expect);
    // And together with sub they span everything.
    std::vector<Vec> chosen = sub;
    chosen.insert(chosen.end(), sel.begin(), sel.end());
    CHECK(rank(fp, FfMatrix::from_columns(chosen, n)) ==
          rank(fp, FfMatrix::from_columns(all, n)));
  }
}
