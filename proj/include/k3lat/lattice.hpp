#pragma once

// Integral lattices: pairing, standard constructors, short-vector
// enumeration, isometry enumeration for definite forms, orthogonal
// complements and isotropic quotients.

#include "k3lat/exact.hpp"

namespace k3lat {

struct Lattice {
  IntMat gram;  // symmetric, usually nondegenerate

  Lattice() = default;
  explicit Lattice(IntMat g) : gram(std::move(g)) {
    if (!gram.is_symmetric()) throw InputError("Lattice: gram not symmetric");
  }

  std::size_t rank() const { return gram.rows(); }
  Int determinant() const { return det(gram); }
  bool is_even() const {
    for (std::size_t i = 0; i < gram.rows(); ++i)
      if (gram(i, i) % 2 != 0) return false;
    return true;
  }
};

inline Int pair(const Lattice& l, const IntVec& x, const IntVec& y) {
  if (x.size() != l.rank() || y.size() != l.rank())
    throw InputError("pair: vector length mismatch");
  return dot(x, mat_vec(l.gram, y));
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
  return Lattice(IntMat::block_diag(a.gram, b.gram));
}

inline Lattice hyperbolic_U() {
  IntMat g(2, 2);
  g(0, 1) = 1;
  g(1, 0) = 1;
  return Lattice(g);
}

inline Lattice rescale(const Lattice& l, const Int& c) {
  if (c == 0) throw InputError("rescale: zero scale");
  return Lattice(l.gram.scaled(c));
}

// Negated E8 root-basis Gram (Bourbaki numbering; node 2 attached to node 4).
inline Lattice e8_minus() {
  IntMat g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  auto edge = [&](std::size_t i, std::size_t j) {
    g(i, j) = -1;
    g(j, i) = -1;
  };
  edge(0, 2);
  edge(1, 3);
  edge(2, 3);
  edge(3, 4);
  edge(4, 5);
  edge(5, 6);
  edge(6, 7);
  return Lattice(g.negated());
}

// Sylvester criterion, exact.
inline bool is_positive_definite(const IntMat& g) {
  if (!g.is_symmetric()) return false;
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    IntMat minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = g(i, j);
    if (det(minor) <= 0) return false;
  }
  return true;
}
inline bool is_negative_definite(const IntMat& g) {
  return is_positive_definite(g.negated());
}

// floor(sqrt(x)) for nonnegative rationals.
inline Int isqrt_floor(const Rat& x) {
  if (x < 0) throw InputError("isqrt_floor: negative argument");
  Int lo = 0, hi = x.get_num() / x.get_den() + 1;
  while (lo < hi) {
    Int mid = (lo + hi + 1) / 2;
    if (Rat(mid * mid) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// All v != 0 with 0 < (v,v) <= bound, one representative per {v,-v}
// (first nonzero coordinate positive), sorted lexicographically.
inline std::vector<IntVec> short_vectors(const Lattice& l, const Int& bound) {
  if (bound <= 0) throw InputError("short_vectors: bound must be positive");
  if (!is_positive_definite(l.gram))
    throw UnsupportedSignature("short_vectors: lattice not positive definite");
  const std::size_t n = l.rank();
  RatMat ginv = inverse(RatMat::from_int(l.gram));
  std::vector<Int> box(n);
  for (std::size_t i = 0; i < n; ++i) box[i] = isqrt_floor(ginv(i, i) * bound);

  std::vector<IntVec> out;
  IntVec x(n);
  // enumerate the box; representative: first nonzero coordinate positive
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      bool all_zero = true, rep = false;
      for (std::size_t j = 0; j < n; ++j)
        if (x[j] != 0) {
          all_zero = false;
          rep = x[j] > 0;
          break;
        }
      if (all_zero || !rep) return;
      if (pair(l, x, x) <= bound) out.push_back(x);
      return;
    }
    for (Int c = -box[i]; c <= box[i]; ++c) {
      x[i] = c;
      self(self, i + 1);
    }
    x[i] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// ---------------------------------------------------------------------------

struct Isometry {
  IntMat source_gram;
  IntMat target_gram;
  IntMat matrix;  // columns are images of the source basis, target coords

  bool valid() const {
    if (matrix.rows() != target_gram.rows() ||
        matrix.cols() != source_gram.rows())
      return false;
    return matrix.transpose() * target_gram * matrix == source_gram;
  }

  IntVec apply(const IntVec& x) const { return mat_vec(matrix, x); }

  static Isometry identity_on(const Lattice& l) {
    return {l.gram, l.gram, IntMat::identity(l.rank())};
  }
};

// g after f.
inline Isometry compose(const Isometry& g, const Isometry& f) {
  if (!(f.target_gram == g.source_gram))
    throw InputError("compose: isometry chain mismatch");
  return {f.source_gram, g.target_gram, g.matrix * f.matrix};
}

inline Isometry inverse(const Isometry& f) {
  return {f.target_gram, f.source_gram, unimodular_inverse(f.matrix)};
}

// Complete enumeration of isometries L1 -> L2 for definite lattices.
// Negative definite pairs are negated first (same matrices solve both Gram
// laws). Indefinite input is refused.
inline std::vector<Isometry> isometries(const Lattice& l1, const Lattice& l2) {
  if (l1.rank() != l2.rank())
    throw InputError("isometries: rank mismatch");
  const std::size_t n = l1.rank();
  std::vector<Isometry> out;
  if (n == 0) {
    out.push_back({l1.gram, l2.gram, IntMat(0, 0)});
    return out;
  }
  IntMat g1 = l1.gram, g2 = l2.gram;
  if (is_negative_definite(g1) && is_negative_definite(g2)) {
    g1 = g1.negated();
    g2 = g2.negated();
  }
  if (!is_positive_definite(g1) || !is_positive_definite(g2)) {
    throw UnsupportedSignature(
        "isometries: only definite lattices are supported");
  }
  if (det(g1) != det(g2)) return out;

  Lattice p2{g2};
  Int max_norm = 0;
  for (std::size_t j = 0; j < n; ++j)
    max_norm = std::max(max_norm, g1(j, j));
  std::vector<IntVec> half = short_vectors(p2, max_norm);
  std::vector<IntVec> cand;
  cand.reserve(2 * half.size());
  for (const auto& v : half) {
    cand.push_back(v);
    IntVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
    cand.push_back(std::move(w));
  }
  std::sort(cand.begin(), cand.end(), lex_less);

  std::vector<IntVec> cols(n);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == n) {
      IntMat m(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) m(r, c) = cols[c][r];
      out.push_back({l1.gram, l2.gram, m});
      return;
    }
    for (const auto& v : cand) {
      if (pair(p2, v, v) != g1(j, j)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < j; ++i)
        if (pair(p2, cols[i], v) != g1(i, j)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cols[j] = v;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------------------

struct Sublattice {
  IntMat basis;  // rows are basis vectors in ambient coordinates
  IntMat gram;   // induced Gram
};

// Saturated sublattice {x : (x,s)=0 for all s in S}.
inline Sublattice orthogonal_complement(const Lattice& l,
                                        const std::vector<IntVec>& s) {
  const std::size_t n = l.rank();
  IntMat a(s.size(), n);
  for (std::size_t i = 0; i < s.size(); ++i) {
    IntVec r = mat_vec(l.gram, s[i]);
    if (s[i].size() != n)
      throw InputError("orthogonal_complement: vector length mismatch");
    for (std::size_t j = 0; j < n; ++j) a(i, j) = r[j];
  }
  std::vector<IntVec> ker = kernel_basis(a);
  IntMat basis = ker.empty() ? IntMat(0, n) : IntMat::from_rows(ker);
  IntMat gram = basis * l.gram * basis.transpose();
  return {basis, gram};
}

struct IsotropicQuotient {
  Lattice lattice;
  IntMat lifts;  // rows: representatives of the quotient basis in L coords
};

// (v^perp)/Zv for a primitive isotropic v in a nondegenerate lattice.
inline IsotropicQuotient quotient_by_isotropic(const Lattice& l,
                                               const IntVec& v) {
  const std::size_t n = l.rank();
  if (v.size() != n)
    throw InputError("quotient_by_isotropic: vector length mismatch");
  if (vec_gcd(v) == 0) throw InputError("quotient_by_isotropic: zero vector");
  if (vec_gcd(v) != 1)
    throw InputError("quotient_by_isotropic: vector not primitive");
  if (pair(l, v, v) != 0)
    throw InputError("quotient_by_isotropic: vector not isotropic");
  if (l.determinant() == 0)
    throw InputError("quotient_by_isotropic: degenerate lattice");

  Sublattice comp = orthogonal_complement(l, {v});
  const std::size_t k = comp.basis.rows();  // = n - 1
  // coordinates of v inside the complement
  std::optional<IntVec> c = solve(comp.basis.transpose(), v);
  if (!c) throw Error("quotient_by_isotropic: internal lift failure");
  IntMat crow(1, k);
  for (std::size_t j = 0; j < k; ++j) crow(0, j) = (*c)[j];
  IntMat t = complete_to_basis(crow);  // first row is c
  IntMat lifts(k - 1, n);
  for (std::size_t i = 1; i < k; ++i) {
    IntVec w(n);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t m = 0; m < n; ++m) w[m] += t(i, j) * comp.basis(j, m);
    for (std::size_t m = 0; m < n; ++m) lifts(i - 1, m) = w[m];
  }
  IntMat gram = lifts * l.gram * lifts.transpose();
  return {Lattice(gram), lifts};
}

}  // namespace k3lat
