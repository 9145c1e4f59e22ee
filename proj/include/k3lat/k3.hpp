#pragma once

// K3 surface descriptors, the transcendental-lattice equivalence decision,
// partner filtering and extension of T-isometries to glued Mukai lattices.

#include <string>

#include "k3lat/discriminant.hpp"
#include "k3lat/mukai.hpp"

namespace k3lat {

struct K3SurfaceData {
  std::string name;
  IntMat ns_gram;
  std::optional<IntMat> t_gram;
  std::optional<std::vector<std::size_t>> orientation;  // ordered T basis

  std::size_t rho() const { return ns_gram.rows(); }
  SurfaceModel model() const {
    return {ns_gram, t_gram ? *t_gram : IntMat(0, 0)};
  }
};

struct SignatureCounts {
  std::size_t positive = 0, negative = 0, zero = 0;
};

// Exact signature via rational congruence diagonalization.
inline SignatureCounts signature_of(const IntMat& g) {
  if (!g.is_symmetric()) throw InputError("signature_of: not symmetric");
  RatMat a = RatMat::from_int(g);
  std::vector<bool> done(a.rows(), false);
  SignatureCounts sc;
  for (;;) {
    std::size_t piv = a.rows();
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (!done[i] && a(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv == a.rows()) {
      // no nonzero diagonal; look for an off-diagonal entry
      std::size_t bi = a.rows(), bj = a.rows();
      for (std::size_t i = 0; i < a.rows() && bi == a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.rows(); ++j)
          if (!done[i] && !done[j] && a(i, j) != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi == a.rows()) break;  // remaining block is zero
      // congruence e_i += e_j turns the diagonal nonzero
      for (std::size_t k = 0; k < a.rows(); ++k) a(bi, k) += a(bj, k);
      for (std::size_t k = 0; k < a.rows(); ++k) a(k, bi) += a(k, bj);
      continue;
    }
    if (a(piv, piv) > 0)
      ++sc.positive;
    else
      ++sc.negative;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (done[i] || i == piv || a(i, piv) == 0) continue;
      Rat f = a(i, piv) / a(piv, piv);
      for (std::size_t j = 0; j < a.rows(); ++j)
        a(i, j) -= f * a(piv, j);
      for (std::size_t j = 0; j < a.rows(); ++j)
        a(j, i) -= f * a(j, piv);
    }
    done[piv] = true;
  }
  sc.zero = a.rows() - sc.positive - sc.negative;
  return sc;
}

struct ValidationReport {
  bool valid = true;
  bool full_mode = false;           // both Grams present, ranks sum to 22
  bool decision_supported = false;  // T present and positive definite
  std::vector<std::string> violations;
};

inline ValidationReport validate_surface(const K3SurfaceData& s) {
  ValidationReport rep;
  auto flag = [&](const std::string& msg) {
    rep.valid = false;
    rep.violations.push_back(msg);
  };
  if (!s.ns_gram.is_symmetric()) flag("ns_gram is not symmetric");
  for (std::size_t i = 0; i < s.ns_gram.rows(); ++i)
    if (s.ns_gram(i, i) % 2 != 0) {
      flag("ns_gram is not even");
      break;
    }
  if (s.t_gram) {
    const IntMat& t = *s.t_gram;
    if (!t.is_symmetric()) flag("t_gram is not symmetric");
    for (std::size_t i = 0; i < t.rows(); ++i)
      if (t(i, i) % 2 != 0) {
        flag("t_gram is not even");
        break;
      }
    rep.full_mode = s.ns_gram.rows() + t.rows() == 22;
    if (rep.full_mode && abs(det(s.ns_gram)) != abs(det(t)))
      flag("|det ns_gram| != |det t_gram| in full mode");
    if (t.is_symmetric()) {
      SignatureCounts sc = signature_of(t);
      rep.decision_supported =
          rep.valid && sc.zero == 0 && sc.negative == 0 && t.rows() > 0;
      if (!(sc.zero == 0 && sc.negative == 0))
        rep.violations.push_back(
            "t_gram is not positive definite: unsupported for decision ops");
    }
    if (s.orientation) {
      if (s.orientation->size() != t.rows())
        flag("orientation tag length does not match T rank");
      else {
        std::vector<bool> seen(t.rows(), false);
        for (auto i : *s.orientation) {
          if (i >= t.rows() || seen[i]) {
            flag("orientation tag is not a permutation of the T basis");
            break;
          }
          seen[i] = true;
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

inline int orientation_sign(const std::vector<std::size_t>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

struct HodgeIsometry {
  Isometry iso;
  bool oriented = false;
};

enum class DecisionMode { any, oriented };

inline const char* to_string(DecisionMode m) {
  return m == DecisionMode::any ? "any" : "oriented";
}

inline std::vector<HodgeIsometry> hodge_isometries(const K3SurfaceData& s1,
                                                   const K3SurfaceData& s2,
                                                   DecisionMode mode) {
  if (!s1.t_gram || !s2.t_gram)
    throw InputError("hodge_isometries: transcendental data missing");
  int e1 = 1, e2 = 1;
  if (mode == DecisionMode::oriented) {
    e1 = s1.orientation ? orientation_sign(*s1.orientation) : 1;
    e2 = s2.orientation ? orientation_sign(*s2.orientation) : 1;
  }
  std::vector<HodgeIsometry> out;
  for (const auto& iso : isometries(Lattice(*s1.t_gram), Lattice(*s2.t_gram))) {
    bool oriented = det(iso.matrix) * e1 * e2 == 1;
    if (mode == DecisionMode::oriented && !oriented) continue;
    out.push_back({iso, oriented});
  }
  return out;
}

struct EquivalenceDecision {
  bool equivalent = false;
  std::optional<HodgeIsometry> witness;
  DecisionMode mode = DecisionMode::any;
};

// Theorem-level decision: equivalent iff an isometry of transcendental
// lattices (oriented, when asked) exists.
inline EquivalenceDecision derived_equivalent(const K3SurfaceData& s1,
                                              const K3SurfaceData& s2,
                                              DecisionMode mode) {
  ValidationReport r1 = validate_surface(s1), r2 = validate_surface(s2);
  if (!r1.decision_supported || !r2.decision_supported)
    throw UnsupportedSignature(
        "derived_equivalent: surfaces not decision-supported (need positive "
        "definite transcendental lattices)");
  EquivalenceDecision d;
  d.mode = mode;
  std::vector<HodgeIsometry> w = hodge_isometries(s1, s2, mode);
  if (!w.empty()) {
    d.equivalent = true;
    d.witness = w.front();
  }
  return d;
}

inline std::vector<K3SurfaceData> fm_partner_filter(
    const K3SurfaceData& s, const std::vector<K3SurfaceData>& candidates,
    DecisionMode mode) {
  std::vector<K3SurfaceData> out;
  for (const auto& c : candidates)
    if (derived_equivalent(s, c, mode).equivalent) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// Glue between disc(T) and disc(N), N = U (+) -NS inside the Mukai lattice.

inline Lattice algebraic_mukai_lattice(const K3SurfaceData& s) {
  SurfaceModel alg{s.ns_gram, IntMat(0, 0)};
  return mukai_lattice(alg);
}

struct SurfaceGlue {
  Lattice t, n;
  DiscriminantGroup dt, dn;
  AntiIsometry lambda;  // disc(T) -> disc(N)
};

// Canonical anti-isometry disc(T) -> disc(N); its graph presents the full
// Mukai lattice as an even unimodular overlattice of T (+) N.
inline SurfaceGlue surface_glue(const K3SurfaceData& s) {
  if (!s.t_gram) throw InputError("surface_glue: transcendental data missing");
  SurfaceGlue g{Lattice(*s.t_gram), algebraic_mukai_lattice(s), {}, {}, {}};
  g.dt = DiscriminantGroup(g.t);
  g.dn = DiscriminantGroup(g.n);
  std::vector<AntiIsometry> lams = anti_isometries(g.dt, g.dn, true);
  if (lams.empty())
    throw InputError(
        "surface_glue: no anti-isometry between disc(T) and disc(N); surface "
        "data admits no unimodular glue");
  g.lambda = lams.front();
  return g;
}

// True iff the discriminant actions of g (on T) and h (on N) agree under the
// two glue identifications.
inline bool check_glue_compatible(const Isometry& g, const Isometry& h,
                                  const K3SurfaceData& s1,
                                  const K3SurfaceData& s2) {
  SurfaceGlue g1 = surface_glue(s1), g2 = surface_glue(s2);
  if (!g.valid() || !h.valid())
    throw InputError("check_glue_compatible: invalid isometry input");
  DiscAction at = induced_disc_action(g, g1.dt, g2.dt);
  DiscAction an = induced_disc_action(h, g1.dn, g2.dn);
  for (std::size_t i = 0; i < g1.dt.num_generators(); ++i) {
    DiscElement x(g1.dt.num_generators());
    x[i] = 1;
    DiscElement lhs = g2.dn.normalized(g2.lambda.apply(at.apply(g1.dt, x)));
    DiscElement rhs = g2.dn.normalized(an.apply(g1.dn, g1.lambda.apply(x)));
    if (lhs != rhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

// Extend the pair (g on T, h on N) to an isometry of the glued rank
// tau + rho + 2 Mukai overlattices. The returned matrix is written in bases
// whose first tau vectors are the T bases, so its T block equals g exactly.
inline Isometry assemble_mukai_isometry(const Isometry& g, const Isometry& h,
                                        const K3SurfaceData& s1,
                                        const K3SurfaceData& s2) {
  if (!check_glue_compatible(g, h, s1, s2))
    throw InputError("assemble_mukai_isometry: glue-incompatible pair");
  SurfaceGlue gl1 = surface_glue(s1), gl2 = surface_glue(s2);

  auto adapted_basis = [](const SurfaceGlue& gl) -> RatMat {
    Overlattice ov =
        overlattice_from_glue(glue_from_anti_isometry(gl.t, gl.n, gl.dt,
                                                      gl.lambda));
    const std::size_t n = ov.basis.rows();
    const std::size_t tau = gl.t.rank();
    // coordinates of the T basis vectors inside the overlattice basis
    IntMat tcoords(tau, n);
    RatMat bt = ov.basis.transpose();
    for (std::size_t j = 0; j < tau; ++j) {
      RatVec e(n);
      e[j] = 1;
      std::optional<RatVec> x = solve(bt, e);
      if (!x) throw Error("assemble: T basis not inside the overlattice");
      for (std::size_t k = 0; k < n; ++k) {
        if ((*x)[k].get_den() != 1)
          throw Error("assemble: T is not primitive in the overlattice");
        tcoords(j, k) = (*x)[k].get_num();
      }
    }
    IntMat w = complete_to_basis(tcoords);
    return RatMat::from_int(w) * ov.basis;
  };

  RatMat a1 = adapted_basis(gl1), a2 = adapted_basis(gl2);
  const std::size_t n = a1.rows();
  IntMat gsum1 = IntMat::block_diag(gl1.t.gram, gl1.n.gram);
  IntMat gsum2 = IntMat::block_diag(gl2.t.gram, gl2.n.gram);
  IntMat gram1 = (a1 * RatMat::from_int(gsum1) * a1.transpose()).to_int();
  IntMat gram2 = (a2 * RatMat::from_int(gsum2) * a2.transpose()).to_int();

  // block-diagonal action in T (+) N coordinates
  RatMat phi = RatMat::from_int(IntMat::block_diag(g.matrix, h.matrix));
  RatMat a2t = a2.transpose();
  IntMat mat(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    RatVec row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = a1(k, j);
    RatVec img = mat_vec(phi, row);
    std::optional<RatVec> z = solve(a2t, img);
    if (!z) throw Error("assemble: image escapes the target overlattice");
    for (std::size_t i = 0; i < n; ++i) {
      if ((*z)[i].get_den() != 1)
        throw Error("assemble: non-integral assembled matrix");
      mat(i, k) = (*z)[i].get_num();
    }
  }
  Isometry out{gram1, gram2, mat};
  if (!out.valid()) throw Error("assemble: Gram law violated");
  return out;
}

// Bounded word search for an h on N = U (+) -NS compatible with g; not a
// nonexistence certificate when it fails.
inline Isometry search_extension(const Isometry& g, const K3SurfaceData& s1,
                                 const K3SurfaceData& s2, unsigned depth) {
  Lattice n1 = algebraic_mukai_lattice(s1), n2 = algebraic_mukai_lattice(s2);
  SurfaceModel alg2{s2.ns_gram, IntMat(0, 0)};

  std::vector<Isometry> bases;
  if (s1.ns_gram == s2.ns_gram) {
    bases.push_back({n1.gram, n2.gram, IntMat::identity(n1.rank())});
  } else {
    // lift NS isometries (definite NS only) to U (+) -NS block-diagonally
    std::vector<Isometry> psis;
    try {
      psis = isometries(Lattice(s1.ns_gram), Lattice(s2.ns_gram));
    } catch (const UnsupportedSignature&) {
      throw BoundExhausted(
          "search_extension: no base isometry available for indefinite "
          "mismatched NS lattices");
    }
    for (const auto& psi : psis) {
      const std::size_t rho = s1.ns_gram.rows();
      IntMat m = IntMat::identity(rho + 2);
      for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < rho; ++j) m(1 + i, 1 + j) = psi.matrix(i, j);
      bases.push_back({n1.gram, n2.gram, m});
    }
  }
  // word generators acting on the target side
  std::vector<Isometry> gens;
  gens.push_back(swap_rs(alg2));
  for (std::size_t i = 0; i < alg2.rho(); ++i)
    for (long a : {1L, -1L}) {
      IntVec mvec(alg2.rho());
      mvec[i] = a;
      gens.push_back(twist(mvec, alg2));
    }
  {
    Isometry minus{n2.gram, n2.gram,
                   IntMat::identity(n2.rank()).negated()};
    gens.push_back(minus);
  }

  std::vector<Isometry> frontier = bases;
  std::vector<IntMat> seen;
  auto known = [&](const IntMat& m) {
    for (const auto& s : seen)
      if (s == m) return true;
    return false;
  };
  for (unsigned d = 0; d <= depth; ++d) {
    std::vector<Isometry> next;
    for (const auto& h : frontier) {
      if (known(h.matrix)) continue;
      seen.push_back(h.matrix);
      if (check_glue_compatible(g, h, s1, s2)) return h;
      if (d < depth)
        for (const auto& w : gens) next.push_back(compose(w, h));
    }
    frontier = std::move(next);
  }
  throw BoundExhausted("search_extension: not found within bound");
}

}  // namespace k3lat
