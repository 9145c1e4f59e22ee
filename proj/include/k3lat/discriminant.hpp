#pragma once

// Discriminant groups of nondegenerate integral lattices, the induced
// quadratic/bilinear forms, isometry actions on them, anti-isometry search
// and overlattice gluing.

#include "k3lat/lattice.hpp"

namespace k3lat {

// Exponent vector w.r.t. the cyclic generators of a discriminant group.
using DiscElement = IntVec;

class DiscriminantGroup {
 public:
  DiscriminantGroup() = default;

  explicit DiscriminantGroup(const Lattice& l) : gram_(l.gram) {
    if (l.determinant() == 0)
      throw InputError("DiscriminantGroup: degenerate lattice");
    SnfResult s = snf(l.gram);
    usnf_ = s.u;
    RatMat ginv = inverse(RatMat::from_int(l.gram));
    RatMat uinv = RatMat::from_int(unimodular_inverse(s.u));
    const std::size_t n = l.rank();
    for (std::size_t i = 0; i < n; ++i) {
      Int d = s.d(i, i);
      if (d <= 1) continue;
      factors_.push_back(d);
      indices_.push_back(i);
      RatVec g(n);
      for (std::size_t r = 0; r < n; ++r) g[r] = uinv(r, i);
      gens_.push_back(mat_vec(ginv, g));  // G^-1 U^-1 e_i
    }
  }

  const std::vector<Int>& invariant_factors() const { return factors_; }
  std::size_t num_generators() const { return factors_.size(); }
  const std::vector<RatVec>& generators() const { return gens_; }
  const IntMat& gram() const { return gram_; }

  Int order() const {
    Int o = 1;
    for (const auto& d : factors_) o *= d;
    return o;
  }

  DiscElement normalized(DiscElement e) const {
    if (e.size() != factors_.size())
      throw InputError("DiscElement: wrong exponent count");
    for (std::size_t i = 0; i < e.size(); ++i) {
      mpz_fdiv_r(e[i].get_mpz_t(), e[i].get_mpz_t(), factors_[i].get_mpz_t());
    }
    return e;
  }
  DiscElement add(const DiscElement& a, const DiscElement& b) const {
    DiscElement c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return normalized(c);
  }
  DiscElement neg(const DiscElement& a) const {
    DiscElement c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return normalized(c);
  }
  DiscElement scale(const Int& k, const DiscElement& a) const {
    DiscElement c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = k * a[i];
    return normalized(c);
  }
  bool is_zero(const DiscElement& a) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] % factors_[i] != 0) return false;
    return true;
  }
  Int element_order(const DiscElement& a) const {
    Int o = 1;
    DiscElement e = normalized(a);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Int oi = factors_[i] / gcd(factors_[i], e[i]);
      o = o / gcd(o, oi) * oi;  // lcm
    }
    return o;
  }

  // Rational representative in L (x) Q, lattice-basis coordinates.
  RatVec representative(const DiscElement& e) const {
    RatVec r(gram_.rows());
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) r[j] += Rat(e[i]) * gens_[i][j];
    return r;
  }

  // Class of a dual vector x (rational coordinates with G x integral).
  DiscElement classify(const RatVec& x) const {
    RatVec gx = mat_vec(RatMat::from_int(gram_), x);
    IntVec gxi(gx.size());
    for (std::size_t i = 0; i < gx.size(); ++i) {
      if (gx[i].get_den() != 1)
        throw InputError("DiscriminantGroup: vector is not in the dual");
      gxi[i] = gx[i].get_num();
    }
    IntVec coords = mat_vec(usnf_, gxi);
    DiscElement e;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      Int c;
      mpz_fdiv_r(c.get_mpz_t(), coords[indices_[k]].get_mpz_t(),
                 factors_[k].get_mpz_t());
      e.push_back(c);
    }
    return e;
  }

  // Quadratic form value q(e) in Q/2Z, normalized into [0,2); even lattices.
  Rat q_value(const DiscElement& e) const {
    RatVec r = representative(e);
    Rat v = 0;
    RatMat g = RatMat::from_int(gram_);
    RatVec gr = mat_vec(g, r);
    for (std::size_t i = 0; i < r.size(); ++i) v += r[i] * gr[i];
    return mod_positive(v, 2);
  }

  // Bilinear form value b(e1,e2) in Q/Z, normalized into [0,1).
  Rat b_value(const DiscElement& e1, const DiscElement& e2) const {
    RatVec r1 = representative(e1), r2 = representative(e2);
    RatMat g = RatMat::from_int(gram_);
    RatVec gr = mat_vec(g, r2);
    Rat v = 0;
    for (std::size_t i = 0; i < r1.size(); ++i) v += r1[i] * gr[i];
    return mod_positive(v, 1);
  }

  std::vector<DiscElement> all_elements() const {
    std::vector<DiscElement> out;
    DiscElement e(factors_.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == factors_.size()) {
        out.push_back(e);
        return;
      }
      for (Int c = 0; c < factors_[i]; ++c) {
        e[i] = c;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
    return out;
  }

  static Rat mod_positive(const Rat& x, const Int& modulus) {
    Rat m(modulus);
    Rat q = x / m;
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(),
               q.get_den().get_mpz_t());
    Rat r = x - Rat(fl) * m;
    r.canonicalize();
    return r;
  }

 private:
  IntMat gram_;
  IntMat usnf_;
  std::vector<Int> factors_;
  std::vector<std::size_t> indices_;
  std::vector<RatVec> gens_;
};

inline DiscriminantGroup discriminant(const Lattice& l) {
  return DiscriminantGroup(l);
}

// Action induced by a (square, unimodular) isometry on discriminant groups:
// image of each source generator, expressed in target generators.
struct DiscAction {
  std::vector<DiscElement> gen_images;  // per source generator

  DiscElement apply(const DiscriminantGroup& src, const DiscElement& e) const {
    DiscElement out(gen_images.empty() ? 0 : gen_images[0].size());
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < out.size(); ++j)
        out[j] += e[i] * gen_images[i][j];
    (void)src;
    return out;
  }
};

inline DiscAction induced_disc_action(const Isometry& h,
                                      const DiscriminantGroup& src,
                                      const DiscriminantGroup& tgt) {
  if (!h.valid()) throw InputError("induced_disc_action: invalid isometry");
  DiscAction act;
  RatMat m = RatMat::from_int(h.matrix);
  for (const auto& g : src.generators())
    act.gen_images.push_back(tgt.classify(mat_vec(m, g)));
  return act;
}

inline DiscAction induced_disc_action(const Isometry& h) {
  return induced_disc_action(h, DiscriminantGroup(Lattice(h.source_gram)),
                             DiscriminantGroup(Lattice(h.target_gram)));
}

// ---------------------------------------------------------------------------
// Anti-isometries between finite quadratic forms: bijective homomorphisms
// with q_right(f(x)) = -q_left(x) mod 2 for every element.

struct AntiIsometry {
  std::vector<DiscElement> gen_images;  // images of the left generators

  DiscElement apply(const DiscElement& e) const {
    DiscElement out(gen_images.empty() ? 0 : gen_images[0].size());
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < out.size(); ++j)
        out[j] += e[i] * gen_images[i][j];
    return out;
  }
};

inline std::vector<AntiIsometry> anti_isometries(const DiscriminantGroup& a,
                                                 const DiscriminantGroup& b,
                                                 bool first_only = false) {
  std::vector<AntiIsometry> out;
  if (a.order() != b.order()) return out;
  std::vector<DiscElement> elems_b = b.all_elements();
  std::vector<DiscElement> elems_a = a.all_elements();
  const std::size_t ng = a.num_generators();
  std::vector<DiscElement> images(ng);

  auto check_full = [&](const AntiIsometry& cand) -> bool {
    // bijectivity and the q condition over every element
    std::vector<DiscElement> seen;
    for (const auto& e : elems_a) {
      DiscElement img = b.normalized(cand.apply(e));
      if (b.q_value(img) != DiscriminantGroup::mod_positive(-a.q_value(e), 2))
        return false;
      seen.push_back(img);
    }
    std::sort(seen.begin(), seen.end(), lex_less);
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
  };

  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == ng) {
      AntiIsometry cand{images};
      if (check_full(cand)) {
        out.push_back(cand);
        if (first_only) return true;
      }
      return false;
    }
    for (const auto& e : elems_b) {
      // generator i has order d_i; its image must be killed by d_i
      if (!b.is_zero(b.scale(a.invariant_factors()[i], e))) continue;
      images[i] = e;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Gluing: an overlattice of left (+) right generated by lifts of a subgroup
// of disc(left) (+) disc(right).

struct GlueData {
  Lattice left;
  Lattice right;
  std::vector<std::pair<DiscElement, DiscElement>> graph;
};

struct Overlattice {
  Lattice lattice;
  RatMat basis;  // rows: basis vectors in (left (+) right) coordinates
};

inline Overlattice overlattice_from_glue(const GlueData& g) {
  DiscriminantGroup dl(g.left), dr(g.right);
  const std::size_t n1 = g.left.rank(), n2 = g.right.rank();
  const std::size_t n = n1 + n2;
  IntMat gsum = IntMat::block_diag(g.left.gram, g.right.gram);

  // rational generators: standard basis plus glue lifts
  std::vector<RatVec> gens;
  for (std::size_t i = 0; i < n; ++i) {
    RatVec e(n);
    e[i] = 1;
    gens.push_back(e);
  }
  for (const auto& [x, y] : g.graph) {
    RatVec rl = dl.representative(x), rr = dr.representative(y);
    RatVec v(n);
    for (std::size_t i = 0; i < n1; ++i) v[i] = rl[i];
    for (std::size_t i = 0; i < n2; ++i) v[n1 + i] = rr[i];
    gens.push_back(v);
  }
  // common denominator, integer HNF, scale back
  Int den = 1;
  for (const auto& v : gens)
    for (const auto& x : v) den = den / gcd(den, Int(x.get_den())) * x.get_den();
  IntMat m(gens.size(), n);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat scaled = gens[i][j] * den;
      m(i, j) = scaled.get_num();
    }
  IntMat h = hnf(m).h;
  RatMat basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat x(h(i, j), den);
      x.canonicalize();
      basis(i, j) = x;
    }
  RatMat gram = basis * RatMat::from_int(gsum) * basis.transpose();
  if (!gram.is_integral())
    throw InputError(
        "overlattice_from_glue: glue is not isotropic for the bilinear "
        "discriminant form");
  return {Lattice(gram.to_int()), basis};
}

// Convenience: overlattice defined by the graph of an anti-isometry.
inline GlueData glue_from_anti_isometry(const Lattice& left,
                                        const Lattice& right,
                                        const DiscriminantGroup& dl,
                                        const AntiIsometry& lambda) {
  GlueData g{left, right, {}};
  for (std::size_t i = 0; i < dl.num_generators(); ++i) {
    DiscElement e(dl.num_generators());
    e[i] = 1;
    g.graph.emplace_back(e, lambda.gen_images[i]);
  }
  return g;
}

}  // namespace k3lat
