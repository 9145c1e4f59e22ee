#include <doctest.h>

#include <random>

#include "k3lat/exact.hpp"

using namespace k3lat;

namespace {

IntMat random_mat(std::mt19937& rng, std::size_t maxdim, long bound) {
  std::uniform_int_distribution<std::size_t> dim(1, maxdim);
  std::uniform_int_distribution<long> val(-bound, bound);
  IntMat m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = val(rng);
  return m;
}

bool is_diagonal(const IntMat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) return false;
  return true;
}

IntMat mat2(long a, long b, long c, long d) {
  IntMat m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("snf on the stated examples") {
  SUBCASE("unimodular matrix has trivial SNF") {
    SnfResult s = snf(mat2(0, 1, 1, 0));
    CHECK(s.d == IntMat::identity(2));
  }
  SUBCASE("already diagonal with divisibility") {
    SnfResult s = snf(mat2(2, 0, 0, 12));
    CHECK(s.d == mat2(2, 0, 0, 12));
  }
  SUBCASE("gcd 1, determinant 3") {
    SnfResult s = snf(mat2(2, 1, 1, 2));
    CHECK(s.d == mat2(1, 0, 0, 3));
  }
}

TEST_CASE("snf transform identity, divisibility chain, determinant product") {
  std::mt19937 rng(20240901);
  for (int trial = 0; trial < 500; ++trial) {
    IntMat m = random_mat(rng, 6, 50);
    SnfResult s = snf(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(is_diagonal(s.d));
    CHECK(abs(det(s.u)) == 1);
    CHECK(abs(det(s.v)) == 1);
    std::size_t k = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i + 1 < k; ++i) {
      CHECK(s.d(i, i) >= 0);
      if (s.d(i, i) != 0) CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
      if (s.d(i, i) == 0) CHECK(s.d(i + 1, i + 1) == 0);
    }
    if (m.is_square()) {
      Int prod = 1;
      for (std::size_t i = 0; i < k; ++i) prod *= s.d(i, i);
      CHECK(prod == abs(det(m)));
    }
  }
}

TEST_CASE("hnf examples and transform identity") {
  SUBCASE("identity is fixed") {
    HnfResult h = hnf(IntMat::identity(3));
    CHECK(h.h == IntMat::identity(3));
  }
  SUBCASE("integer row reduction") {
    HnfResult h = hnf(mat2(2, 4, 1, 2));
    CHECK(h.h == mat2(1, 2, 0, 0));
  }
  SUBCASE("gcd in a later column") {
    HnfResult h = hnf(mat2(0, 3, 0, 5));
    CHECK(h.h == mat2(0, 1, 0, 0));
  }
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    IntMat m = random_mat(rng, 5, 30);
    HnfResult h = hnf(m);
    CHECK(h.u * m == h.h);
    CHECK(abs(det(h.u)) == 1);
  }
}

TEST_CASE("kernel_basis examples and saturation") {
  SUBCASE("one-dimensional kernel") {
    auto k = kernel_basis(IntMat::from_rows({{Int(1), Int(1)}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == IntVec{1, -1});
  }
  SUBCASE("trivial kernel") {
    CHECK(kernel_basis(IntMat::identity(3)).empty());
  }
  SUBCASE("saturation: (2,-1), not (4,-2)") {
    auto k = kernel_basis(IntMat::from_rows({{Int(2), Int(4)}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == IntVec{2, -1});
  }
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    IntMat m = random_mat(rng, 5, 20);
    auto ker = kernel_basis(m);
    for (const auto& v : ker) {
      IntVec mv = mat_vec(m, v);
      for (const auto& x : mv) CHECK(x == 0);
    }
    CHECK(ker.size() == m.cols() - rank(m));
    if (!ker.empty()) {
      SnfResult s = snf(IntMat::from_rows(ker));
      for (std::size_t i = 0; i < ker.size(); ++i) CHECK(s.d(i, i) == 1);
    }
  }
}

TEST_CASE("det, rank, solve") {
  CHECK(det(mat2(0, 1, 1, 0)) == -1);
  CHECK(rank(mat2(1, 2, 2, 4)) == 1);
  CHECK(!solve(IntMat::from_rows({{Int(2)}}), IntVec{3}).has_value());

  std::mt19937 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    IntMat m = random_mat(rng, 5, 10);
    std::uniform_int_distribution<long> val(-10, 10);
    IntVec x(m.cols());
    for (auto& xi : x) xi = val(rng);
    IntVec b = mat_vec(m, x);
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(mat_vec(m, *sol) == b);
  }
}

TEST_CASE("complete_to_basis extends primitive rows unimodularly") {
  IntMat rows = IntMat::from_rows({{Int(2), Int(3), Int(5)}});
  IntMat w = complete_to_basis(rows);
  CHECK(abs(det(w)) == 1);
  CHECK(w.row(0) == rows.row(0));
  CHECK_THROWS_AS(complete_to_basis(IntMat::from_rows({{Int(2), Int(4)}})),
                  InputError);
}

TEST_CASE("rational kernel and inverse") {
  RatMat m(2, 3);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(0, 2) = 3;
  m(1, 0) = 2;
  m(1, 1) = 4;
  m(1, 2) = 6;
  CHECK(rank(m) == 1);
  RatMat k = kernel(m);
  CHECK(k.cols() == 2);
  CHECK((m * k).is_zero());

  RatMat a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 1;
  CHECK(inverse(a) * a == RatMat::identity(2));
}
