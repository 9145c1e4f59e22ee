#pragma once

// Mukai lattice of a K3 surface: the pairing (u,u') = rs' + sr' - aa',
// Mukai vectors of sheaves, the twist/swap isometries, rank normalization,
// companion vectors, moduli partners and cohomological transforms.

#include "k3lat/lattice.hpp"

namespace k3lat {

struct UnnormalizableError : Error {
  using Error::Error;
};
struct DivisibilityError : Error {
  Int divisibility;
  DivisibilityError(const std::string& msg, Int d)
      : Error(msg), divisibility(std::move(d)) {}
};

// NS and (optionally empty) transcendental Gram of the ambient surface.
struct SurfaceModel {
  IntMat ns_gram;
  IntMat t_gram;  // 0x0 for algebraic-only data

  std::size_t rho() const { return ns_gram.rows(); }
  std::size_t tau() const { return t_gram.rows(); }
  std::size_t model_rank() const { return 2 + rho() + tau(); }
};

struct MukaiVector {
  Int r;
  IntVec l;  // NS coordinates
  Int s;
  IntVec t;  // transcendental coordinates, may be empty

  bool operator==(const MukaiVector&) const = default;
};

// Coordinate order (r, l, t, s) against the basis (e, NS, T, f); equals the
// cohomology-model basis order (1, H^2-classes, w).
inline IntVec to_coords(const MukaiVector& v, const SurfaceModel& m) {
  if (v.l.size() != m.rho() || v.t.size() != m.tau())
    throw InputError("MukaiVector: component length mismatch");
  IntVec x(m.model_rank());
  x[0] = v.r;
  for (std::size_t i = 0; i < m.rho(); ++i) x[1 + i] = v.l[i];
  for (std::size_t i = 0; i < m.tau(); ++i) x[1 + m.rho() + i] = v.t[i];
  x[m.model_rank() - 1] = v.s;
  return x;
}

inline MukaiVector from_coords(const IntVec& x, const SurfaceModel& m) {
  if (x.size() != m.model_rank())
    throw InputError("MukaiVector: coordinate length mismatch");
  MukaiVector v;
  v.r = x[0];
  v.l.assign(x.begin() + 1, x.begin() + 1 + m.rho());
  v.t.assign(x.begin() + 1 + m.rho(), x.begin() + 1 + m.rho() + m.tau());
  v.s = x[x.size() - 1];
  return v;
}

// Gram of the Mukai lattice model U' (+) -NS (+) -T in the (e, NS, T, f)
// basis; e = (1,0,...,0) and f = (0,...,0,1) are isotropic with (e,f) = 1.
inline IntMat mukai_gram(const SurfaceModel& m) {
  const std::size_t n = m.model_rank();
  IntMat g(n, n);
  g(0, n - 1) = 1;
  g(n - 1, 0) = 1;
  for (std::size_t i = 0; i < m.rho(); ++i)
    for (std::size_t j = 0; j < m.rho(); ++j)
      g(1 + i, 1 + j) = -m.ns_gram(i, j);
  for (std::size_t i = 0; i < m.tau(); ++i)
    for (std::size_t j = 0; j < m.tau(); ++j)
      g(1 + m.rho() + i, 1 + m.rho() + j) = -m.t_gram(i, j);
  return g;
}

inline Lattice mukai_lattice(const SurfaceModel& m) {
  return Lattice(mukai_gram(m));
}

inline Int mukai_pairing(const MukaiVector& u, const MukaiVector& v,
                         const SurfaceModel& m) {
  Int p = u.r * v.s + u.s * v.r;
  p -= dot(u.l, mat_vec(m.ns_gram, v.l));
  if (m.tau() > 0) p -= dot(u.t, mat_vec(m.t_gram, v.t));
  return p;
}

inline Int euler_characteristic(const MukaiVector& u, const MukaiVector& v,
                                const SurfaceModel& m) {
  return mukai_pairing(u, v, m);
}

// ---------------------------------------------------------------------------

struct SheafData {
  Int r;       // rank, nonnegative
  IntVec c1;   // NS coordinates
  Int c2;
};

// v(E) = ch(E) sqrt(td) = (r, c1, r + c1^2/2 - c2); c1^2 in the un-negated
// NS intersection form.
inline MukaiVector mukai_vector(const SheafData& d, const SurfaceModel& m) {
  if (d.c1.size() != m.rho())
    throw InputError("mukai_vector: c1 length mismatch");
  for (std::size_t i = 0; i < m.rho(); ++i)
    if (m.ns_gram(i, i) % 2 != 0)
      throw InputError("mukai_vector: NS lattice is not even");
  Int c1sq = dot(d.c1, mat_vec(m.ns_gram, d.c1));
  MukaiVector v;
  v.r = d.r;
  v.l = d.c1;
  v.s = d.r + c1sq / 2 - d.c2;
  v.t = IntVec(m.tau());
  return v;
}

// ---------------------------------------------------------------------------
// The two isometry families that fix the transcendental block pointwise.

// phi_m(r,l,s) = (r, l+rm, s+(m,l)+ r/2 m^2), identity on T.
inline Isometry twist(const IntVec& mvec, const SurfaceModel& m) {
  if (mvec.size() != m.rho()) throw InputError("twist: NS vector mismatch");
  for (std::size_t i = 0; i < m.rho(); ++i)
    if (m.ns_gram(i, i) % 2 != 0)
      throw InputError("twist: NS lattice is not even");
  const std::size_t n = m.model_rank();
  IntMat g = mukai_gram(m);
  IntMat mat = IntMat::identity(n);
  IntVec gm = mat_vec(m.ns_gram, mvec);
  Int msq = dot(mvec, gm);
  // image of e: (1, m, 0, m^2/2)
  for (std::size_t i = 0; i < m.rho(); ++i) mat(1 + i, 0) = mvec[i];
  mat(n - 1, 0) = msq / 2;
  // image of a NS basis vector b_j: (0, b_j, 0, (m, b_j))
  for (std::size_t j = 0; j < m.rho(); ++j) mat(n - 1, 1 + j) = gm[j];
  return {g, g, mat};
}

// (r,l,s) -> (s,l,r), identity on l and T.
inline Isometry swap_rs(const SurfaceModel& m) {
  const std::size_t n = m.model_rank();
  IntMat g = mukai_gram(m);
  IntMat mat = IntMat::identity(n);
  mat(0, 0) = 0;
  mat(n - 1, n - 1) = 0;
  mat(0, n - 1) = 1;
  mat(n - 1, 0) = 1;
  return {g, g, mat};
}

// ---------------------------------------------------------------------------

struct NormalizeResult {
  Isometry g;      // composition of twists and swaps, g(v) = normalized
  MukaiVector v;   // with r > 1 (or r = 1 when r1_warning is set)
  bool r1_warning = false;  // only r = 1 was achievable; not promoted
};

// Move a primitive isotropic vector into the r > 1 regime using twists and
// swaps only. The exceptional orbit {+-(0,0,1), +-(1,0,0)} and the l = 0
// degenerate cases where no twist moves s are reported as unnormalizable.
inline NormalizeResult normalize_rank(const MukaiVector& v0,
                                      const SurfaceModel& m) {
  IntVec coords = to_coords(v0, m);
  if (vec_gcd(coords) == 0) throw InputError("normalize_rank: zero vector");
  if (vec_gcd(coords) != 1)
    throw InputError("normalize_rank: vector not primitive");

  bool l_zero = true;
  for (const auto& x : v0.l) l_zero = l_zero && x == 0;
  for (const auto& x : v0.t) l_zero = l_zero && x == 0;
  if (l_zero && ((abs(v0.r) == 1 && v0.s == 0) ||
                 (v0.r == 0 && abs(v0.s) == 1)))
    throw UnnormalizableError(
        "normalize_rank: vector lies in the exceptional orbit of the point "
        "vector");

  Isometry id = Isometry::identity_on(mukai_lattice(m));
  auto image = [&](const Isometry& h, const MukaiVector& w) {
    return from_coords(mat_vec(h.matrix, to_coords(w, m)), m);
  };

  if (v0.r > 1) return {id, v0};
  if (v0.s > 1) return {swap_rs(m), image(swap_rs(m), v0)};

  // one twist making s > 1, then a swap; tried on v and on swap(v)
  std::vector<std::pair<Isometry, MukaiVector>> starts;
  starts.emplace_back(id, v0);
  starts.emplace_back(swap_rs(m), image(swap_rs(m), v0));
  std::vector<IntVec> dirs;
  for (std::size_t i = 0; i < m.rho(); ++i) {
    IntVec d(m.rho());
    d[i] = 1;
    dirs.push_back(d);
    for (std::size_t j = i + 1; j < m.rho(); ++j) {
      IntVec e = d;
      e[j] = 1;
      dirs.push_back(e);
      e[j] = -1;
      dirs.push_back(e);
    }
  }
  const long kmax = 24;
  for (const auto& [prefix, w] : starts) {
    for (const auto& d : dirs) {
      for (long a = 1; a <= kmax; ++a) {
        for (long sgn : {+1, -1}) {
          IntVec mvec(d.size());
          for (std::size_t i = 0; i < d.size(); ++i) mvec[i] = sgn * a * d[i];
          Int ml = dot(mvec, mat_vec(m.ns_gram, w.l));
          Int msq = dot(mvec, mat_vec(m.ns_gram, mvec));
          Int snew = w.s + ml + w.r * msq / 2;
          if (snew > 1) {
            Isometry g = compose(swap_rs(m), compose(twist(mvec, m), prefix));
            return {g, image(g, v0)};
          }
        }
      }
    }
  }
  // r = 1 is reported, not promoted
  if (v0.r == 1) return {id, v0, true};
  if (v0.s == 1) return {swap_rs(m), image(swap_rs(m), v0), true};
  throw UnnormalizableError(
      "normalize_rank: no twist/swap word reaches r > 1");
}

// ---------------------------------------------------------------------------

// Companion u with (v,u) = 1, via extended gcd over the pairing functional
// x -> (v,x) evaluated on the model basis. Throws DivisibilityError when the
// gcd of those values exceeds 1.
inline MukaiVector companion(const MukaiVector& v, const SurfaceModel& m,
                             bool algebraic_only = true) {
  SurfaceModel amb = m;
  MukaiVector vv = v;
  if (algebraic_only) {
    for (const auto& x : v.t)
      if (x != 0)
        throw InputError("companion: algebraic mode on a non-algebraic vector");
    amb.t_gram = IntMat(0, 0);
    vv.t.clear();
  }
  IntVec coords = to_coords(vv, amb);
  if (vec_gcd(coords) != 1) throw InputError("companion: vector not primitive");
  const std::size_t n = amb.model_rank();
  IntVec c(n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVec e(n);
    e[j] = 1;
    c[j] = mukai_pairing(vv, from_coords(e, amb), amb);
  }
  // chained extended gcd
  Int g = 0;
  IntVec x(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (c[j] == 0) continue;
    if (g == 0) {
      g = abs(c[j]);
      x[j] = sgn(c[j]);
      continue;
    }
    Int gg, p, q;
    mpz_gcdext(gg.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), g.get_mpz_t(),
               c[j].get_mpz_t());
    for (std::size_t k = 0; k < j; ++k) x[k] *= p;
    x[j] = q;
    g = gg;
  }
  if (g != 1)
    throw DivisibilityError("companion: pairing functional has divisibility " +
                                g.get_str(),
                            g);
  MukaiVector u = from_coords(x, amb);
  if (algebraic_only) u.t = IntVec(m.tau());
  return u;
}

// ---------------------------------------------------------------------------

struct PartnerData {
  IntMat ns_gram;       // sign-normalized back to the NS convention
  IntMat raw_quotient;  // the quotient Gram as computed (carries -NS)
  IntMat t_carryover;   // transcendental Gram, unchanged
  bool fine = false;
  bool identity_partner = false;  // point-vector case: the partner is S
};

// NS lattice of the moduli space M(v): (v^perp cap algebraic lattice)/Zv.
inline PartnerData moduli_partner(const SurfaceModel& m, const MukaiVector& v) {
  for (const auto& x : v.t)
    if (x != 0) throw InputError("moduli_partner: vector is not algebraic");

  PartnerData out;
  out.t_carryover = m.t_gram;

  SurfaceModel alg{m.ns_gram, IntMat(0, 0)};
  MukaiVector va{v.r, v.l, v.s, {}};
  bool is_point = va.r == 0 && va.s == 1;
  for (const auto& x : va.l) is_point = is_point && x == 0;
  if (is_point) {
    out.ns_gram = m.ns_gram;
    out.raw_quotient = m.ns_gram.negated();
    out.fine = true;
    out.identity_partner = true;
    return out;
  }
  if (mukai_pairing(va, va, alg) != 0)
    throw InputError("moduli_partner: vector not isotropic");
  if (va.r < 1)
    throw InputError("moduli_partner: need r >= 1 (run normalize_rank first)");

  Lattice a = mukai_lattice(alg);
  IsotropicQuotient q = quotient_by_isotropic(a, to_coords(va, alg));
  out.raw_quotient = q.lattice.gram;
  out.ns_gram = q.lattice.gram.negated();
  try {
    companion(va, alg, true);
    out.fine = true;
  } catch (const DivisibilityError&) {
    out.fine = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kunneth classes: rational coefficient matrices on the model bases
// (1, NS, T, w) of the two surfaces; f_Z(b) = sum <a cup b>_top Z[a][.] .

struct KunnethClass {
  RatMat coeff;  // rows: source basis, cols: target basis
};

inline int model_degree(std::size_t index, const SurfaceModel& m) {
  if (index == 0) return 0;
  if (index + 1 == m.model_rank()) return 2;
  return 1;
}

// Contraction coefficients <basis_a cup beta>_top for all source basis
// elements a: (s, G alpha, r) with the un-negated intersection form G.
inline RatVec cup_contraction(const MukaiVector& beta, const SurfaceModel& m) {
  IntMat g = IntMat::block_diag(m.ns_gram, m.t_gram);
  IntVec alpha(m.rho() + m.tau());
  for (std::size_t i = 0; i < m.rho(); ++i) alpha[i] = beta.l[i];
  for (std::size_t i = 0; i < m.tau(); ++i) alpha[m.rho() + i] = beta.t[i];
  IntVec ga = mat_vec(g, alpha);
  RatVec c(m.model_rank());
  c[0] = beta.s;
  for (std::size_t i = 0; i < ga.size(); ++i) c[1 + i] = ga[i];
  c[m.model_rank() - 1] = beta.r;
  return c;
}

inline RatVec cohomological_transform_rational(const KunnethClass& z,
                                               const MukaiVector& beta,
                                               const SurfaceModel& m1,
                                               const SurfaceModel& m2) {
  if (z.coeff.rows() != m1.model_rank() || z.coeff.cols() != m2.model_rank())
    throw InputError("cohomological_transform: class dimension mismatch");
  RatVec c = cup_contraction(beta, m1);
  RatVec out(m2.model_rank());
  for (std::size_t a = 0; a < c.size(); ++a) {
    if (c[a] == 0) continue;
    for (std::size_t b = 0; b < out.size(); ++b)
      out[b] += c[a] * z.coeff(a, b);
  }
  return out;
}

inline MukaiVector cohomological_transform(const KunnethClass& z,
                                           const MukaiVector& beta,
                                           const SurfaceModel& m1,
                                           const SurfaceModel& m2) {
  RatVec out = cohomological_transform_rational(z, beta, m1, m2);
  IntVec x(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].get_den() != 1)
      throw InputError("cohomological_transform: non-integral image");
    x[i] = out[i].get_num();
  }
  return from_coords(x, m2);
}

// Z -> Z^dual: block (i,j) scaled by (-1)^{deg_i + deg_j}.
inline KunnethClass dual_class(const KunnethClass& z, const SurfaceModel& m1,
                               const SurfaceModel& m2) {
  KunnethClass d = z;
  for (std::size_t i = 0; i < d.coeff.rows(); ++i)
    for (std::size_t j = 0; j < d.coeff.cols(); ++j)
      if ((model_degree(i, m1) + model_degree(j, m2)) % 2 != 0)
        d.coeff(i, j) = -d.coeff(i, j);
  return d;
}

inline MukaiVector vector_dual(const MukaiVector& u) {
  MukaiVector d = u;
  for (auto& x : d.l) x = -x;
  for (auto& x : d.t) x = -x;
  return d;
}

// Kunneth class of the diagonal: sum of e_a (x) (Poincare dual of e_a);
// induces the identity transform.
inline KunnethClass diagonal_kunneth(const SurfaceModel& m) {
  const std::size_t n = m.model_rank();
  KunnethClass z{RatMat(n, n)};
  z.coeff(0, n - 1) = 1;
  z.coeff(n - 1, 0) = 1;
  RatMat ginv =
      inverse(RatMat::from_int(IntMat::block_diag(m.ns_gram, m.t_gram)));
  for (std::size_t i = 0; i + 2 < n; ++i)
    for (std::size_t j = 0; j + 2 < n; ++j) z.coeff(1 + i, 1 + j) = ginv(i, j);
  return z;
}

}  // namespace k3lat
