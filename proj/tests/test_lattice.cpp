#include <doctest.h>

#include <random>

#include "k3lat/discriminant.hpp"
#include "k3lat/lattice.hpp"

using namespace k3lat;

namespace {

Lattice diag_lattice(std::vector<long> d) {
  IntMat g(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
  return Lattice(g);
}

Lattice gram2(long a, long b, long d) {
  IntMat g(2, 2);
  g(0, 0) = a;
  g(0, 1) = b;
  g(1, 0) = b;
  g(1, 1) = d;
  return Lattice(g);
}

}  // namespace

TEST_CASE("pairing evaluation") {
  Lattice u = hyperbolic_U();
  CHECK(pair(u, {1, 0}, {0, 1}) == 1);
  CHECK(pair(diag_lattice({2, 12}), {1, 1}, {1, 1}) == 14);
  CHECK(pair(u, {0, 0}, {5, -3}) == 0);
  CHECK_THROWS_AS(pair(u, {1}, {0, 1}), InputError);
}

TEST_CASE("constructors") {
  CHECK(hyperbolic_U().gram == IntMat::from_rows({{0, 1}, {1, 0}}));
  CHECK(rescale(diag_lattice({2}), -1).gram ==
        IntMat::from_rows({{Int(-2)}}));
  CHECK(det(e8_minus().gram) == 1);  // E8 is unimodular
  CHECK(e8_minus().is_even());
  CHECK(is_negative_definite(e8_minus().gram));
  Lattice s = direct_sum(hyperbolic_U(), diag_lattice({-2}));
  CHECK(s.rank() == 3);
  CHECK(s.determinant() == 2);
}

TEST_CASE("discriminant groups") {
  SUBCASE("unimodular lattice has trivial group") {
    CHECK(discriminant(hyperbolic_U()).invariant_factors().empty());
    CHECK(discriminant(e8_minus()).order() == 1);
  }
  SUBCASE("diag(2,12)") {
    auto d = discriminant(diag_lattice({2, 12}));
    REQUIRE(d.invariant_factors().size() == 2);
    CHECK(d.invariant_factors()[0] == 2);
    CHECK(d.invariant_factors()[1] == 12);
  }
  SUBCASE("<2>: generator e/2 with q = 1/2") {
    auto d = discriminant(diag_lattice({2}));
    REQUIRE(d.invariant_factors() == std::vector<Int>{2});
    DiscElement g{1};
    CHECK(d.q_value(g) == Rat(1, 2));
    CHECK(d.b_value(g, g) == Rat(1, 2));
  }
  SUBCASE("order equals |det| on random lattices") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> val(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
      IntMat g(3, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) {
          g(i, j) = val(rng);
          g(j, i) = g(i, j);
        }
      Lattice l(g);
      if (l.determinant() == 0) continue;
      CHECK(discriminant(l).order() == abs(l.determinant()));
    }
  }
}

TEST_CASE("short vectors") {
  SUBCASE("diag(2,2), bound 2") {
    auto v = short_vectors(diag_lattice({2, 2}), 2);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == IntVec{0, 1});
    CHECK(v[1] == IntVec{1, 0});
  }
  SUBCASE("minimum above the bound") {
    CHECK(short_vectors(diag_lattice({4, 6}), 2).empty());
  }
  SUBCASE("<2>, bound 8: norms 2 and 8") {
    auto v = short_vectors(diag_lattice({2}), 8);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == IntVec{1});
    CHECK(v[1] == IntVec{2});
  }
  SUBCASE("indefinite input refused") {
    CHECK_THROWS_AS(short_vectors(hyperbolic_U(), 2), UnsupportedSignature);
  }
}

TEST_CASE("isometry enumeration") {
  SUBCASE("diag(2,2) automorphisms: signed permutations") {
    auto iso = isometries(diag_lattice({2, 2}), diag_lattice({2, 2}));
    CHECK(iso.size() == 8);
    for (const auto& f : iso) CHECK(f.valid());
  }
  SUBCASE("same determinant, not isometric") {
    CHECK(isometries(diag_lattice({2, 12}), diag_lattice({4, 6})).empty());
  }
  SUBCASE("A2-type pair with a determinant +1 witness") {
    auto iso = isometries(gram2(2, 1, 2), gram2(2, -1, 2));
    REQUIRE(!iso.empty());
    bool has_rotation = false;
    for (const auto& f : iso) {
      CHECK(f.valid());
      if (det(f.matrix) == 1) has_rotation = true;
    }
    CHECK(has_rotation);
  }
  SUBCASE("negative definite pairs reuse the same matrices") {
    auto pos = isometries(diag_lattice({2, 2}), diag_lattice({2, 2}));
    auto neg = isometries(diag_lattice({-2, -2}), diag_lattice({-2, -2}));
    REQUIRE(pos.size() == neg.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
      CHECK(pos[i].matrix == neg[i].matrix);
  }
  SUBCASE("indefinite input refused") {
    CHECK_THROWS_AS(isometries(hyperbolic_U(), hyperbolic_U()),
                    UnsupportedSignature);
  }
}

TEST_CASE("isometry group structure on enumerated sets") {
  std::vector<Lattice> fixtures = {diag_lattice({2, 2}), diag_lattice({2, 12}),
                                   gram2(2, 1, 2), diag_lattice({2, 4, 6})};
  for (const auto& l : fixtures) {
    auto group = isometries(l, l);
    auto contains = [&](const IntMat& m) {
      for (const auto& f : group)
        if (f.matrix == m) return true;
      return false;
    };
    CHECK(contains(IntMat::identity(l.rank())));
    CHECK(contains(IntMat::identity(l.rank()).negated()));
    for (const auto& f : group) {
      CHECK(contains(unimodular_inverse(f.matrix)));
      for (const auto& g : group) CHECK(contains((f.matrix * g.matrix)));
    }
  }
}

TEST_CASE("isometries agree with exhaustive search at rank <= 2") {
  std::vector<std::pair<Lattice, Lattice>> pairs = {
      {diag_lattice({2, 2}), diag_lattice({2, 2})},
      {diag_lattice({2, 12}), diag_lattice({4, 6})},
      {gram2(2, 1, 2), gram2(2, -1, 2)},
      {diag_lattice({2}), diag_lattice({2})},
      {gram2(4, 1, 4), gram2(4, 1, 4)}};
  const long B = 3;
  for (const auto& [l1, l2] : pairs) {
    auto fast = isometries(l1, l2);
    std::vector<IntMat> brute;
    const std::size_t n = l1.rank();
    std::vector<long> e(n * n, -B);
    for (;;) {
      IntMat m(n, n);
      for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = e[i];
      if (m.transpose() * l2.gram * m == l1.gram) brute.push_back(m);
      std::size_t k = 0;
      while (k < e.size() && e[k] == B) e[k++] = -B;
      if (k == e.size()) break;
      ++e[k];
    }
    CHECK(fast.size() == brute.size());
    for (const auto& m : brute) {
      bool found = false;
      for (const auto& f : fast)
        if (f.matrix == m) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("isometry composition stays valid") {
  Lattice l = gram2(2, 1, 2);
  auto group = isometries(l, l);
  for (const auto& f : group)
    for (const auto& g : group) CHECK(compose(g, f).valid());
}

TEST_CASE("orthogonal complements") {
  SUBCASE("isotropic vector inside U") {
    Sublattice s = orthogonal_complement(hyperbolic_U(), {{1, 0}});
    REQUIRE(s.basis.rows() == 1);
    CHECK(s.basis.row(0) == IntVec{1, 0});
    CHECK(s.gram == IntMat(1, 1));
  }
  SUBCASE("diagonal lattice") {
    Sublattice s = orthogonal_complement(diag_lattice({2, 12}), {{1, 0}});
    REQUIRE(s.basis.rows() == 1);
    CHECK(s.basis.row(0) == IntVec{0, 1});
    CHECK(s.gram == IntMat::from_rows({{Int(12)}}));
  }
  SUBCASE("U + <-2>") {
    Lattice l = direct_sum(hyperbolic_U(), diag_lattice({-2}));
    Sublattice s = orthogonal_complement(l, {{1, 0, 0}});
    REQUIRE(s.basis.rows() == 2);
    CHECK(s.gram == IntMat::from_rows({{0, 0}, {0, -2}}));
  }
}

TEST_CASE("isotropic quotients") {
  SUBCASE("U by its isotropic generator: rank 0") {
    auto q = quotient_by_isotropic(hyperbolic_U(), {1, 0});
    CHECK(q.lattice.rank() == 0);
  }
  SUBCASE("U + <-2> by e") {
    Lattice l = direct_sum(hyperbolic_U(), diag_lattice({-2}));
    auto q = quotient_by_isotropic(l, {1, 0, 0});
    REQUIRE(q.lattice.rank() == 1);
    CHECK(q.lattice.gram == IntMat::from_rows({{Int(-2)}}));
    CHECK(abs(det(q.lattice.gram)) == abs(l.determinant()));
  }
  SUBCASE("error paths") {
    CHECK_THROWS_AS(quotient_by_isotropic(hyperbolic_U(), {0, 0}), InputError);
    CHECK_THROWS_AS(quotient_by_isotropic(hyperbolic_U(), {2, 0}), InputError);
    CHECK_THROWS_AS(quotient_by_isotropic(hyperbolic_U(), {1, 1}), InputError);
  }
}

TEST_CASE("overlattice gluing") {
  SUBCASE("<2> + <-2> glued along (e/2, f/2) is U up to basis change") {
    GlueData g{diag_lattice({2}), diag_lattice({-2}), {{{1}, {1}}}};
    Overlattice ov = overlattice_from_glue(g);
    CHECK(ov.lattice.is_even());
    CHECK(ov.lattice.determinant() == -1);
    // explicit unimodular change of basis onto U
    bool found = false;
    for (long a = -3; a <= 3 && !found; ++a)
      for (long b = -3; b <= 3 && !found; ++b)
        for (long c = -3; c <= 3 && !found; ++c)
          for (long d = -3; d <= 3 && !found; ++d) {
            IntMat t = IntMat::from_rows({{a, b}, {c, d}});
            if (abs(det(t)) != 1) continue;
            if (t.transpose() * hyperbolic_U().gram * t == ov.lattice.gram)
              found = true;
          }
    CHECK(found);
  }
  SUBCASE("empty glue is the direct sum") {
    GlueData g{diag_lattice({2}), diag_lattice({4}), {}};
    Overlattice ov = overlattice_from_glue(g);
    CHECK(ov.lattice.gram == IntMat::from_rows({{2, 0}, {0, 4}}));
  }
  SUBCASE("trivial glue on E8(-1) + <2>") {
    GlueData g{e8_minus(), diag_lattice({2}), {}};
    CHECK(overlattice_from_glue(g).lattice.determinant() ==
          e8_minus().determinant() * 2);
  }
  SUBCASE("determinant law on anti-isometry glues") {
    std::vector<Lattice> ls = {diag_lattice({2}), diag_lattice({4}),
                               diag_lattice({6}), diag_lattice({2, 2}),
                               gram2(2, 1, 2), diag_lattice({2, 4})};
    int checked = 0;
    for (const auto& l : ls) {
      Lattice neg = rescale(l, -1);
      DiscriminantGroup dl(l);
      for (const auto& lam : anti_isometries(dl, DiscriminantGroup(neg))) {
        GlueData g = glue_from_anti_isometry(l, neg, dl, lam);
        Overlattice ov = overlattice_from_glue(g);
        Int lhs = abs(ov.lattice.determinant()) * dl.order() * dl.order();
        CHECK(lhs == abs(l.determinant() * neg.determinant()));
        CHECK(ov.lattice.is_even());
        ++checked;
      }
    }
    CHECK(checked >= 10);
  }
}

TEST_CASE("induced discriminant actions") {
  SUBCASE("identity acts trivially") {
    Lattice l = diag_lattice({2, 12});
    auto act = induced_disc_action(Isometry::identity_on(l));
    DiscriminantGroup d(l);
    for (std::size_t i = 0; i < d.num_generators(); ++i) {
      DiscElement e(d.num_generators());
      e[i] = 1;
      CHECK(d.normalized(act.apply(d, e)) == e);
    }
  }
  SUBCASE("-id on <2> acts trivially on Z/2") {
    Lattice l = diag_lattice({2});
    Isometry minus{l.gram, l.gram, IntMat::identity(1).negated()};
    auto act = induced_disc_action(minus);
    DiscriminantGroup d(l);
    CHECK(d.normalized(act.apply(d, {1})) == DiscElement{1});
  }
  SUBCASE("-id on <6> is a nontrivial action on Z/6") {
    Lattice l = diag_lattice({6});
    Isometry minus{l.gram, l.gram, IntMat::identity(1).negated()};
    auto act = induced_disc_action(minus);
    DiscriminantGroup d(l);
    CHECK(d.normalized(act.apply(d, {1})) == DiscElement{5});
  }
}
