#pragma once

// Stock graded-algebra models with monomial bases, for tests and fixtures.

#include "k3lat/koszul.hpp"

namespace k3lat {

namespace detail {

// degree-d exponent vectors in v variables, lexicographic
inline std::vector<std::vector<unsigned>> monomials(std::size_t v,
                                                    unsigned d) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> e(v);
  auto rec = [&](auto&& self, std::size_t i, unsigned rem) -> void {
    if (i + 1 == v) {
      e[i] = rem;
      out.push_back(e);
      return;
    }
    for (unsigned c = 0; c <= rem; ++c) {
      e[i] = c;
      self(self, i + 1, rem - c);
    }
  };
  if (v > 0) rec(rec, 0, d);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline std::size_t monomial_index(
    const std::vector<std::vector<unsigned>>& basis,
    const std::vector<unsigned>& e) {
  auto it = std::find(basis.begin(), basis.end(), e);
  if (it == basis.end()) throw Error("monomial_index: missing monomial");
  return static_cast<std::size_t>(it - basis.begin());
}

}  // namespace detail

// Polynomial algebra k[x_1..x_v] truncated at degree max_degree.
inline GradedAlgebra polynomial_model(std::size_t v, std::size_t max_degree) {
  GradedAlgebra a;
  std::vector<std::vector<std::vector<unsigned>>> bases;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    bases.push_back(detail::monomials(v, static_cast<unsigned>(d)));
    a.dims.push_back(bases.back().size());
  }
  for (std::size_t i = 0; i <= max_degree; ++i)
    for (std::size_t j = 0; i + j <= max_degree; ++j) {
      RatMat m(a.dims[i + j], a.dims[i] * a.dims[j]);
      for (std::size_t p = 0; p < a.dims[i]; ++p)
        for (std::size_t q = 0; q < a.dims[j]; ++q) {
          std::vector<unsigned> prod(v);
          for (std::size_t k = 0; k < v; ++k)
            prod[k] = bases[i][p][k] + bases[j][q][k];
          m(detail::monomial_index(bases[i + j], prod), p * a.dims[j] + q) = 1;
        }
      a.mult[{i, j}] = m;
    }
  return a;
}

// k[x]/(x^k), tabulated through max_degree (zero spaces past degree k-1).
inline GradedAlgebra truncated_power_model(std::size_t k,
                                           std::size_t max_degree) {
  GradedAlgebra a;
  for (std::size_t d = 0; d <= max_degree; ++d)
    a.dims.push_back(d < k ? 1 : 0);
  for (std::size_t i = 0; i <= max_degree; ++i)
    for (std::size_t j = 0; i + j <= max_degree; ++j) {
      RatMat m(a.dims[i + j], a.dims[i] * a.dims[j]);
      if (a.dims[i + j] == 1 && a.dims[i] == 1 && a.dims[j] == 1) m(0, 0) = 1;
      a.mult[{i, j}] = m;
    }
  return a;
}

// Veronese subalgebra of k[x_1..x_v] in degrees l, 2l, ...; graded piece i
// holds the degree i*l monomials.
inline GradedAlgebra veronese_model(std::size_t v, unsigned l,
                                    std::size_t max_degree) {
  GradedAlgebra a;
  std::vector<std::vector<std::vector<unsigned>>> bases;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    bases.push_back(detail::monomials(v, static_cast<unsigned>(d) * l));
    a.dims.push_back(bases.back().size());
  }
  for (std::size_t i = 0; i <= max_degree; ++i)
    for (std::size_t j = 0; i + j <= max_degree; ++j) {
      RatMat m(a.dims[i + j], a.dims[i] * a.dims[j]);
      for (std::size_t p = 0; p < a.dims[i]; ++p)
        for (std::size_t q = 0; q < a.dims[j]; ++q) {
          std::vector<unsigned> prod(v);
          for (std::size_t k = 0; k < v; ++k)
            prod[k] = bases[i][p][k] + bases[j][q][k];
          m(detail::monomial_index(bases[i + j], prod), p * a.dims[j] + q) = 1;
        }
      a.mult[{i, j}] = m;
    }
  return a;
}

}  // namespace k3lat
