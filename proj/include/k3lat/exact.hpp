#pragma once

// Exact integer and rational linear algebra on top of GMP.
// All matrices are dense, row-major, immutable-by-convention values.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace k3lat {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Malformed or dimensionally inconsistent input.
struct InputError : Error {
  using Error::Error;
};
// Operation defined only for definite lattices was asked on an indefinite one.
struct UnsupportedSignature : Error {
  using Error::Error;
};
// A bounded search ran out of budget; not a nonexistence certificate.
struct BoundExhausted : Error {
  using Error::Error;
};

class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMat(std::size_t rows, std::size_t cols, std::vector<Int> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_)
      throw InputError("IntMat: entry count does not match dimensions");
  }
  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMat from_rows(const std::vector<IntVec>& rows) {
    std::size_t nr = rows.size();
    std::size_t nc = nr ? rows[0].size() : 0;
    IntMat m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
      if (rows[i].size() != nc) throw InputError("IntMat: ragged rows");
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  IntVec row(std::size_t i) const {
    IntVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }
  IntVec col(std::size_t j) const {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMat transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const IntMat& x, const IntMat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  friend IntMat operator*(const IntMat& x, const IntMat& y) {
    if (x.cols_ != y.rows_) throw InputError("IntMat multiply: shape mismatch");
    IntMat z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Int& v = x(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) z(i, j) += v * y(k, j);
      }
    return z;
  }
  friend IntMat operator+(const IntMat& x, const IntMat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw InputError("IntMat add: shape mismatch");
    IntMat z(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) z.a_[i] = x.a_[i] + y.a_[i];
    return z;
  }
  friend IntMat operator-(const IntMat& x, const IntMat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw InputError("IntMat sub: shape mismatch");
    IntMat z(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) z.a_[i] = x.a_[i] - y.a_[i];
    return z;
  }
  IntMat scaled(const Int& c) const {
    IntMat z(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) z.a_[i] = a_[i] * c;
    return z;
  }
  IntMat negated() const { return scaled(-1); }

  static IntMat block_diag(const IntMat& x, const IntMat& y) {
    IntMat z(x.rows_ + y.rows_, x.cols_ + y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t j = 0; j < x.cols_; ++j) z(i, j) = x(i, j);
    for (std::size_t i = 0; i < y.rows_; ++i)
      for (std::size_t j = 0; j < y.cols_; ++j)
        z(x.rows_ + i, x.cols_ + j) = y(i, j);
    return z;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

inline IntVec mat_vec(const IntMat& m, const IntVec& x) {
  if (m.cols() != x.size()) throw InputError("mat_vec: shape mismatch");
  IntVec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

inline Int dot(const IntVec& x, const IntVec& y) {
  if (x.size() != y.size()) throw InputError("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Int vec_gcd(const IntVec& x) {
  Int g = 0;
  for (const auto& v : x) g = gcd(g, v);
  return g;
}

inline bool lex_less(const IntVec& x, const IntVec& y) {
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    int c = cmp(x[i], y[i]);
    if (c != 0) return c < 0;
  }
  return x.size() < y.size();
}

// ---------------------------------------------------------------------------
// Hermite normal form (row style): U * M = H, U unimodular, pivots positive,
// entries above each pivot reduced into [0, pivot).

struct HnfResult {
  IntMat h, u;
};

inline HnfResult hnf(const IntMat& m) {
  IntMat h = m;
  IntMat u = IntMat::identity(m.rows());
  const std::size_t nr = h.rows(), nc = h.cols();
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < nc; ++k) swap(h(i, k), h(j, k));
    for (std::size_t k = 0; k < nr; ++k) swap(u(i, k), u(j, k));
  };
  auto addmul_row = [&](std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < nc; ++k) h(dst, k) += c * h(src, k);
    for (std::size_t k = 0; k < nr; ++k) u(dst, k) += c * u(src, k);
  };
  auto negate_row = [&](std::size_t i) {
    for (std::size_t k = 0; k < nc; ++k) h(i, k) = -h(i, k);
    for (std::size_t k = 0; k < nr; ++k) u(i, k) = -u(i, k);
  };

  std::size_t prow = 0;
  for (std::size_t col = 0; col < nc && prow < nr; ++col) {
    // gcd-eliminate everything below prow in this column
    for (;;) {
      std::size_t best = nr;
      for (std::size_t i = prow; i < nr; ++i) {
        if (h(i, col) == 0) continue;
        if (best == nr || cmp(abs(h(i, col)), abs(h(best, col))) < 0) best = i;
      }
      if (best == nr) break;  // column clear
      swap_rows(prow, best);
      bool dirty = false;
      for (std::size_t i = prow + 1; i < nr; ++i) {
        if (h(i, col) == 0) continue;
        Int q = h(i, col) / h(prow, col);  // truncated division
        addmul_row(i, prow, -q);
        if (h(i, col) != 0) dirty = true;
      }
      if (!dirty) break;
    }
    if (h(prow, col) == 0) continue;
    if (h(prow, col) < 0) negate_row(prow);
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < prow; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(),
                 h(prow, col).get_mpz_t());
      addmul_row(i, prow, -q);
    }
    ++prow;
  }
  return {h, u};
}

// ---------------------------------------------------------------------------
// Smith normal form: U * M * V = D, D = diag(d_1,...,d_r,0,...) with d_i >= 0
// and d_i | d_{i+1}. Alternating row/column HNF passes keep the entry sizes
// tame (naive min-pivot elimination explodes already on random 6x6 inputs),
// followed by a gcd/lcm pass that enforces the divisibility chain.

struct SnfResult {
  IntMat d, u, v;
};

inline SnfResult snf(const IntMat& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  IntMat d = m;
  IntMat u = IntMat::identity(nr);
  IntMat v = IntMat::identity(nc);

  auto off_diagonal_zero = [](const IntMat& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (i != j && a(i, j) != 0) return false;
    return true;
  };

  while (!off_diagonal_zero(d)) {
    HnfResult r = hnf(d);
    d = r.h;
    u = r.u * u;
    if (off_diagonal_zero(d)) break;
    HnfResult c = hnf(d.transpose());
    d = c.h.transpose();
    v = v * c.u.transpose();
  }

  auto swap_diag = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < nc; ++k) swap(d(i, k), d(j, k));
    for (std::size_t k = 0; k < nr; ++k) swap(u(i, k), u(j, k));
    for (std::size_t k = 0; k < nr; ++k) swap(d(k, i), d(k, j));
    for (std::size_t k = 0; k < nc; ++k) swap(v(k, i), v(k, j));
  };
  const std::size_t k = std::min(nr, nc);
  for (std::size_t i = 0; i < k; ++i)
    if (d(i, i) < 0) {
      for (std::size_t c = 0; c < nc; ++c) d(i, c) = -d(i, c);
      for (std::size_t c = 0; c < nr; ++c) u(i, c) = -u(i, c);
    }
  // bubble the diagonal into a divisibility chain with zeros last
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      Int a = d(i, i), b = d(i + 1, i + 1);
      if (a == 0 && b != 0) {
        swap_diag(i, i + 1);
        changed = true;
        continue;
      }
      if (a == 0 || b % a == 0) continue;
      // diag(a,b) -> diag(gcd, lcm) by an embedded 2x2 transform
      Int g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      Int ag = a / g, bg = b / g;
      // rows i, i+1 of U and D: [[p, q], [-b/g, a/g]]
      for (std::size_t c = 0; c < nr; ++c) {
        Int x = u(i, c), y = u(i + 1, c);
        u(i, c) = p * x + q * y;
        u(i + 1, c) = -bg * x + ag * y;
      }
      // columns i, i+1 of V: [[1, -q*b/g], [1, p*a/g]]
      for (std::size_t r2 = 0; r2 < nc; ++r2) {
        Int x = v(r2, i), y = v(r2, i + 1);
        v(r2, i) = x + y;
        v(r2, i + 1) = -q * bg * x + p * ag * y;
      }
      d(i, i) = g;
      d(i + 1, i + 1) = a * bg;
      changed = true;
    }
  }
  return {d, u, v};
}

// ---------------------------------------------------------------------------

inline std::size_t rank(const IntMat& m) {
  IntMat h = hnf(m).h;
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool nz = false;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) {
        nz = true;
        break;
      }
    if (nz) ++r;
  }
  return r;
}

// Fraction-free Bareiss determinant.
inline Int det(const IntMat& m) {
  if (!m.is_square()) throw InputError("det: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          s = i;
          break;
        }
      if (s == n) return 0;
      for (std::size_t j = 0; j < n; ++j) swap(a(k, j), a(s, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Basis of the saturated integer null space {x : M x = 0}, rows of the
// returned list; canonical (HNF of the raw kernel basis).
inline std::vector<IntVec> kernel_basis(const IntMat& m) {
  HnfResult hr = hnf(m.transpose());
  std::vector<IntVec> ker;
  for (std::size_t i = 0; i < hr.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < hr.h.cols(); ++j)
      if (hr.h(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) ker.push_back(hr.u.row(i));
  }
  if (ker.empty()) return ker;
  IntMat k = IntMat::from_rows(ker);
  IntMat h = hnf(k).h;
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < ker.size(); ++i) out.push_back(h.row(i));
  return out;
}

// One integer solution of M x = b, if any.
inline std::optional<IntVec> solve(const IntMat& m, const IntVec& b) {
  if (m.rows() != b.size()) throw InputError("solve: shape mismatch");
  SnfResult s = snf(m);
  IntVec c = mat_vec(s.u, b);
  IntVec y(m.cols());
  const std::size_t k = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Int& di = (i < k) ? s.d(i, i) : Int(0);
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % di != 0) return std::nullopt;
      if (i < m.cols()) y[i] = c[i] / di;
    }
  }
  return mat_vec(s.v, y);
}

// ---------------------------------------------------------------------------
// Rational matrices.

class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  static RatMat identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RatMat from_int(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  RatMat transpose() const {
    RatMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const RatMat& x, const RatMat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend RatMat operator*(const RatMat& x, const RatMat& y) {
    if (x.cols_ != y.rows_) throw InputError("RatMat multiply: shape mismatch");
    RatMat z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Rat& v = x(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) z(i, j) += v * y(k, j);
      }
    return z;
  }
  friend RatMat operator-(const RatMat& x, const RatMat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw InputError("RatMat sub: shape mismatch");
    RatMat z(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) z.a_[i] = x.a_[i] - y.a_[i];
    return z;
  }
  RatMat scaled(const Rat& c) const {
    RatMat z(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) z.a_[i] = a_[i] * c;
    return z;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }
  bool is_integral() const {
    for (const auto& x : a_)
      if (x.get_den() != 1) return false;
    return true;
  }
  IntMat to_int() const {
    if (!is_integral()) throw InputError("RatMat: not integral");
    IntMat m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        m(i, j) = (*this)(i, j).get_num();
    return m;
  }

  static RatMat block_diag(const RatMat& x, const RatMat& y) {
    RatMat z(x.rows_ + y.rows_, x.cols_ + y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t j = 0; j < x.cols_; ++j) z(i, j) = x(i, j);
    for (std::size_t i = 0; i < y.rows_; ++i)
      for (std::size_t j = 0; j < y.cols_; ++j)
        z(x.rows_ + i, x.cols_ + j) = y(i, j);
    return z;
  }
  // Kronecker product, lexicographic tensor basis.
  static RatMat kronecker(const RatMat& x, const RatMat& y) {
    RatMat z(x.rows_ * y.rows_, x.cols_ * y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t j = 0; j < x.cols_; ++j) {
        if (x(i, j) == 0) continue;
        for (std::size_t k = 0; k < y.rows_; ++k)
          for (std::size_t l = 0; l < y.cols_; ++l)
            z(i * y.rows_ + k, j * y.cols_ + l) = x(i, j) * y(k, l);
      }
    return z;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

inline RatVec mat_vec(const RatMat& m, const RatVec& x) {
  if (m.cols() != x.size()) throw InputError("mat_vec: shape mismatch");
  RatVec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

// Reduced row echelon form; returns pivot column indices.
inline std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
    std::size_t p = m.rows();
    for (std::size_t i = prow; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p == m.rows()) continue;
    if (p != prow)
      for (std::size_t j = 0; j < m.cols(); ++j) swap(m(prow, j), m(p, j));
    Rat inv = 1 / m(prow, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(prow, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == prow || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) -= f * m(prow, j);
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

inline std::size_t rank(const RatMat& m) {
  RatMat c = m;
  return rref(c).size();
}

// Canonical rational kernel basis (columns of the returned matrix), from the
// free columns of the RREF.
inline RatMat kernel(const RatMat& m) {
  RatMat r = m;
  std::vector<std::size_t> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::size_t nfree = m.cols() - pivots.size();
  RatMat k(m.cols(), nfree);
  std::size_t kc = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    k(f, kc) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], kc) = -r(i, f);
    ++kc;
  }
  return k;
}

// Solve M x = b over the rationals; nullopt when inconsistent.
inline std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  if (m.rows() != b.size()) throw InputError("solve: shape mismatch");
  RatMat aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols())
    return std::nullopt;  // pivot in the augmented column
  RatVec x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

inline RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw InputError("inverse: matrix not square");
  const std::size_t n = m.rows();
  RatMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw InputError("inverse: singular matrix");
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Inverse of a unimodular integer matrix, as an integer matrix.
inline IntMat unimodular_inverse(const IntMat& m) {
  return inverse(RatMat::from_int(m)).to_int();
}

// Extend k primitive rows (spanning a saturated sublattice of Z^n) to a basis
// of Z^n; the returned unimodular n x n matrix has the given rows first.
inline IntMat complete_to_basis(const IntMat& rows) {
  const std::size_t k = rows.rows(), n = rows.cols();
  SnfResult s = snf(rows);
  for (std::size_t i = 0; i < k; ++i)
    if (s.d(i, i) != 1)
      throw InputError("complete_to_basis: rows are not primitive");
  IntMat vinv = unimodular_inverse(s.v);
  IntMat uinv = unimodular_inverse(s.u);
  IntMat out(n, n);
  // rows = U^-1 [I_k 0] V^-1 => first k rows are U^-1-combinations of the
  // first k rows of V^-1; keep the remaining rows of V^-1 as the completion.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int acc = 0;
      for (std::size_t l = 0; l < k; ++l) acc += uinv(i, l) * vinv(l, j);
      out(i, j) = acc;
    }
  for (std::size_t i = k; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = vinv(i, j);
  return out;
}

}  // namespace k3lat
