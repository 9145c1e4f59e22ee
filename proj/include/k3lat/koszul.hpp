#pragma once

// n-Koszulity of degree-1-generated graded algebras over the rationals:
// the B_m iterated-kernel recursion and degreewise exactness of
// B_n (x) A -> ... -> B_1 (x) A -> A -> k -> 0.

#include <map>

#include "k3lat/exact.hpp"

namespace k3lat {

// Multiplication tables in lexicographic tensor bases: mult[{i,j}] is the
// matrix of mu_{i,j}: A_i (x) A_j -> A_{i+j}, shape dim A_{i+j} by
// dim A_i * dim A_j, tensor index a * dim A_j + b.
struct GradedAlgebra {
  std::vector<std::size_t> dims;  // dims[i] = dim A_i; dims[0] must be 1
  std::map<std::pair<std::size_t, std::size_t>, RatMat> mult;

  std::size_t truncation_degree() const { return dims.size() - 1; }
  std::size_t dim(std::size_t i) const {
    return i < dims.size() ? dims[i] : 0;
  }

  const RatMat& mu(std::size_t i, std::size_t j) const {
    auto it = mult.find({i, j});
    if (it == mult.end())
      throw InputError("GradedAlgebra: missing multiplication mu_{" +
                       std::to_string(i) + "," + std::to_string(j) + "}");
    return it->second;
  }
  bool has_mu(std::size_t i, std::size_t j) const {
    return mult.count({i, j}) > 0;
  }
};

// Structural validation: unit degree, identity action of A_0, associativity
// on every fully provided triple, surjectivity of mu_{1,j}.
inline std::vector<std::string> validate_algebra(const GradedAlgebra& a) {
  std::vector<std::string> bad;
  if (a.dims.empty() || a.dims[0] != 1) {
    bad.push_back("dim A_0 must be 1");
    return bad;
  }
  for (const auto& [key, m] : a.mult) {
    auto [i, j] = key;
    if (i + j >= a.dims.size()) {
      bad.push_back("mu_{" + std::to_string(i) + "," + std::to_string(j) +
                    "} exceeds the truncation degree");
      continue;
    }
    if (m.rows() != a.dims[i + j] || m.cols() != a.dims[i] * a.dims[j])
      bad.push_back("mu_{" + std::to_string(i) + "," + std::to_string(j) +
                    "} has wrong shape");
    if ((i == 0 || j == 0) && !(m == RatMat::identity(a.dims[i + j])))
      bad.push_back("mu with a degree-0 factor must be the identity");
  }
  // associativity: mu_{i+j,k} (mu_{i,j} (x) id) = mu_{i,j+k} (id (x) mu_{j,k})
  for (const auto& [key1, mij] : a.mult) {
    auto [i, j] = key1;
    if (i == 0 || j == 0) continue;
    for (std::size_t k = 1; i + j + k < a.dims.size(); ++k) {
      if (!a.has_mu(i + j, k) || !a.has_mu(j, k) || !a.has_mu(i, j + k))
        continue;
      RatMat lhs =
          a.mu(i + j, k) * RatMat::kronecker(mij, RatMat::identity(a.dims[k]));
      RatMat rhs = a.mu(i, j + k) *
                   RatMat::kronecker(RatMat::identity(a.dims[i]), a.mu(j, k));
      if (!(lhs == rhs))
        bad.push_back("associativity fails on (" + std::to_string(i) + "," +
                      std::to_string(j) + "," + std::to_string(k) + ")");
    }
  }
  for (std::size_t j = 1; j + 1 < a.dims.size(); ++j)
    if (a.has_mu(1, j) && rank(a.mu(1, j)) != a.dims[j + 1])
      bad.push_back("mu_{1," + std::to_string(j) +
                    "} is not surjective: algebra not degree-1 generated");
  return bad;
}

// ---------------------------------------------------------------------------

struct KoszulData {
  // embeddings[m]: basis of B_m as a subspace of A_1^{(x)m}
  // (dim A_1^m rows, b_m columns); coords[m]: the same basis written in
  // B_{m-1} (x) A_1 coordinates.
  std::vector<RatMat> embeddings;
  std::vector<RatMat> coords;
  std::vector<std::size_t> b_dims;
};

namespace detail {

// Columnwise rational solve A X = B; throws when inconsistent.
inline RatMat solve_matrix(const RatMat& a, const RatMat& b) {
  RatMat x(a.cols(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    RatVec rhs(b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) rhs[i] = b(i, c);
    std::optional<RatVec> sol = solve(a, rhs);
    if (!sol) throw Error("solve_matrix: inconsistent system");
    for (std::size_t i = 0; i < a.cols(); ++i) x(i, c) = (*sol)[i];
  }
  return x;
}

}  // namespace detail

// B_0 = k, B_1 = A_1, B_m = Ker(B_{m-1} (x) A_1 -> B_{m-2} (x) A_2).
inline KoszulData b_modules(const GradedAlgebra& a, std::size_t n) {
  if (a.dims.size() < 2 || (n >= 2 && a.dims.size() < 3))
    throw InputError("b_modules: insufficient degree data");
  const std::size_t a1 = a.dims[1];
  KoszulData kd;
  kd.embeddings.push_back(RatMat::identity(1));   // B_0 = k
  kd.coords.push_back(RatMat::identity(1));
  kd.b_dims.push_back(1);
  if (n == 0) return kd;
  kd.embeddings.push_back(RatMat::identity(a1));  // B_1 = A_1
  kd.coords.push_back(RatMat::identity(a1));
  kd.b_dims.push_back(a1);
  for (std::size_t m = 2; m <= n; ++m) {
    const RatMat& eprev = kd.embeddings[m - 1];
    const RatMat& cprev = kd.coords[m - 1];
    const std::size_t bprev2 = kd.b_dims[m - 2];
    // B_{m-1} (x) A_1 -> B_{m-2} (x) A_2
    RatMat map =
        RatMat::kronecker(RatMat::identity(bprev2), a.mu(1, 1)) *
        RatMat::kronecker(cprev, RatMat::identity(a1));
    RatMat ker = kernel(map);
    kd.coords.push_back(ker);
    kd.embeddings.push_back(RatMat::kronecker(eprev, RatMat::identity(a1)) *
                            ker);
    kd.b_dims.push_back(ker.cols());
  }
  return kd;
}

// Basis of the quadratic relation space R = ker(mu_{1,1}) = B_2.
inline RatMat relations(const GradedAlgebra& a) {
  return kernel(a.mu(1, 1));
}

// Differential B_m (x) A_{d-m} -> B_{m-1} (x) A_{d-m+1} of the Koszul
// complex in internal degree d.
inline RatMat koszul_differential(const GradedAlgebra& a, const KoszulData& kd,
                                  std::size_t m, std::size_t d) {
  const std::size_t j = d - m;  // caller guarantees d >= m >= 1
  const std::size_t aj = a.dim(j);
  RatMat incl =
      RatMat::kronecker(kd.coords[m], RatMat::identity(aj));
  RatMat mul;
  if (j == 0)
    mul = RatMat::identity(a.dims[1]);  // mu_{1,0} is the identity on A_1
  else
    mul = a.mu(1, j);
  return RatMat::kronecker(RatMat::identity(kd.b_dims[m - 1]), mul) * incl;
}

struct KoszulFailure {
  std::size_t position = 0;  // index p of the deficient term B_p (x) A
  std::size_t degree = 0;    // internal degree
  std::size_t kernel_dim = 0;
  std::size_t image_dim = 0;
};

struct KoszulReport {
  bool koszul = true;
  std::size_t n = 0;
  std::size_t max_internal_degree = 0;
  std::optional<KoszulFailure> first_failure;
};

// Degreewise exactness check of B_n (x) A -> ... -> B_1 (x) A -> A -> k -> 0
// for every internal degree <= max_internal_degree. Exactness at node m
// failing is reported at position m+1 (the term whose image falls short).
inline KoszulReport is_n_koszul(const GradedAlgebra& a, std::size_t n,
                                std::size_t max_internal_degree) {
  if (max_internal_degree >= a.dims.size())
    throw InputError("is_n_koszul: max_internal_degree exceeds provided data");
  KoszulData kd = b_modules(a, n);
  KoszulReport rep;
  rep.n = n;
  rep.max_internal_degree = max_internal_degree;

  for (std::size_t d = 0; d <= max_internal_degree; ++d) {
    // kernel dimension at node m, image dimension of the incoming map
    std::vector<RatMat> diff(n + 2);  // diff[m] = d_m in degree d, m>=1
    auto term_dim = [&](std::size_t m) -> std::size_t {
      if (m > n || d < m) return 0;
      return kd.b_dims[m] * a.dim(d - m);
    };
    for (std::size_t m = 1; m <= n; ++m) {
      if (d < m || term_dim(m) == 0 || term_dim(m - 1) == 0) continue;
      diff[m] = koszul_differential(a, kd, m, d);
    }
    // d^2 = 0 on adjacent provided differentials
    for (std::size_t m = 1; m + 1 <= n; ++m) {
      if (diff[m].rows() == 0 || diff[m + 1].rows() == 0) continue;
      if (!(diff[m] * diff[m + 1]).is_zero())
        throw Error("is_n_koszul: differential composition is nonzero");
    }
    for (std::size_t m = 0; m <= n; ++m) {
      std::size_t dim_m = term_dim(m);
      std::size_t ker_dim;
      if (m == 0) {
        // augmentation A_d -> (k in degree 0)
        ker_dim = d == 0 ? 0 : dim_m;
      } else {
        std::size_t rk =
            (dim_m == 0 || term_dim(m - 1) == 0) ? 0 : rank(diff[m]);
        ker_dim = dim_m - rk;
      }
      std::size_t im_dim =
          (m + 1 <= n && term_dim(m + 1) > 0 && dim_m > 0)
              ? rank(diff[m + 1])
              : 0;
      if (ker_dim != im_dim) {
        rep.koszul = false;
        rep.first_failure = KoszulFailure{m + 1, d, ker_dim, im_dim};
        return rep;
      }
    }
  }
  return rep;
}

// Differential matrices of one internal-degree strand, left to right; the
// degree-0 strand ends with the 1x1 augmentation.
inline std::vector<RatMat> koszul_complex_matrices(const GradedAlgebra& a,
                                                   std::size_t n,
                                                   std::size_t d) {
  KoszulData kd = b_modules(a, n);
  std::vector<RatMat> out;
  for (std::size_t m = n; m >= 1; --m) {
    if (d < m) continue;
    if (kd.b_dims[m] * a.dim(d - m) == 0 &&
        kd.b_dims[m - 1] * a.dim(d - m + 1) == 0)
      continue;
    out.push_back(koszul_differential(a, kd, m, d));
  }
  if (d == 0) out.push_back(RatMat::identity(1));
  return out;
}

}  // namespace k3lat
