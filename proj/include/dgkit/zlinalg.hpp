#pragma once

// Exact integer linear algebra: dense matrices over Z, Smith normal form,
// solving, kernels, cokernels and finitely presented abelian groups.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dgkit/error.hpp"

namespace dgkit {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

inline int sign_pow(long long e) { return (e % 2 == 0) ? 1 : -1; }

/// Dense row-major integer matrix. 0 x n and n x 0 matrices are valid zero maps.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix scalar(std::size_t n, const Int& c) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }
  static IntMatrix column(const IntVec& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw ShapeMismatch("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  const IntVec& data() const { return data_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVec row(std::size_t i) const {
    return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  IntVec col(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
  }
  bool same_shape(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeMismatch("block out of range");
    IntMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeMismatch("set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  void add_block(std::size_t r0, std::size_t c0, const IntMatrix& b, const Int& scale = 1) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeMismatch("add_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Int& v = b(i, j);
        if (v != 0) (*this)(r0 + i, c0 + j) += scale * v;
      }
  }

  IntVec apply(const IntVec& x) const {
    if (x.size() != cols_) throw DimensionMismatch("matrix-vector dimension mismatch");
    IntVec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        const Int& a = (*this)(i, j);
        if (a != 0 && x[j] != 0) s += a * x[j];
      }
      y[i] = std::move(s);
    }
    return y;
  }

  IntMatrix& operator+=(const IntMatrix& o) {
    if (!same_shape(o)) throw ShapeMismatch("matrix sum shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  IntMatrix& operator-=(const IntMatrix& o) {
    if (!same_shape(o)) throw ShapeMismatch("matrix difference shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  IntMatrix& operator*=(const Int& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator-(IntMatrix a) { return a *= Int(-1); }
  friend IntMatrix operator*(const Int& c, IntMatrix a) { return a *= c; }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
      throw ShapeMismatch("matrix product shape mismatch: " + a.shape_string() + " * " +
                          b.shape_string());
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Int& y = b(k, j);
          if (y != 0) c(i, j) += x * y;
        }
      }
    return c;
  }
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += c * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(src, j) != 0) (*this)(dst, j) += c * (*this)(src, j);
  }
  /// col[dst] += c * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, src) != 0) (*this)(i, dst) += c * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVec data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << "](" << m.shape_string() << ")";
}

inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw ShapeMismatch("hstack row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

inline IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw ShapeMismatch("vstack column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

inline IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

/// Kronecker product; row index (i, k) -> i * b.rows() + k.
inline IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Int& x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return m;
}

/// Select the listed columns.
inline IntMatrix columns_of(const IntMatrix& m, std::size_t first, std::size_t count) {
  return m.block(0, first, m.rows(), count);
}
inline IntMatrix rows_of(const IntMatrix& m, std::size_t first, std::size_t count) {
  return m.block(first, 0, count, m.cols());
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Int d = determinant(m);
  return d == 1 || d == -1;
}

/// U * M * V = D with U, V unimodular and D in Smith form.
/// `U_inv` and `V_inv` are carried along so callers never need to invert.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;
  std::size_t rank = 0;

  IntVec invariant_factors() const {
    IntVec out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
};

/// Smith normal form. Pivot: nonzero entry of least absolute value in the
/// active submatrix, ties broken by lowest (row, col).
inline SmithDecomposition smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  SmithDecomposition s{IntMatrix::identity(m), M, IntMatrix::identity(n), IntMatrix::identity(m),
                       IntMatrix::identity(n), 0};
  IntMatrix& D = s.D;

  // Row operation on D mirrored into U (left) and U_inv (inverse, right).
  auto row_add = [&](std::size_t dst, std::size_t src, const Int& c) {
    D.add_row(dst, src, c);
    s.U.add_row(dst, src, c);
    s.U_inv.add_col(src, dst, -c);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Int& c) {
    D.add_col(dst, src, c);
    s.V.add_col(dst, src, c);
    s.V_inv.add_row(src, dst, -c);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    s.U.swap_rows(a, b);
    s.U_inv.swap_cols(a, b);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    s.V.swap_cols(a, b);
    s.V_inv.swap_rows(a, b);
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    bool have_pivot = true;
    for (;;) {
      // least |entry| in D[t.., t..]
      std::size_t pr = m, pc = n;
      Int best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int& x = D(i, j);
          if (x == 0) continue;
          Int ax = abs(x);
          if (pr == m || ax < best) {
            best = ax;
            pr = i;
            pc = j;
          }
        }
      if (pr == m) {
        have_pivot = false;
        break;
      }
      row_swap(t, pr);
      col_swap(t, pc);
      const Int p = D(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q = D(i, t) / p;
        row_add(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q = D(t, j) / p;
        col_add(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block by the pivot
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % p != 0) {
            row_add(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (!have_pivot) break;
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
      s.U_inv.negate_col(t);
    }
    s.rank = t + 1;
  }
  return s;
}

inline std::size_t matrix_rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

/// Integer solution of M x = b, if any.
inline std::optional<IntVec> solve(const IntMatrix& M, const IntVec& b) {
  if (b.size() != M.rows())
    throw DimensionMismatch("solve: matrix has " + std::to_string(M.rows()) + " rows, rhs has " +
                            std::to_string(b.size()));
  auto s = smith_normal_form(M);
  IntVec c = s.U.apply(b);
  IntVec y(M.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.rank) {
      const Int& d = s.D(i, i);
      if (c[i] % d != 0) return std::nullopt;
      y[i] = c[i] / d;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(y);
}

/// Solve M X = B column by column.
inline std::optional<IntMatrix> solve_matrix(const IntMatrix& M, const IntMatrix& B) {
  if (B.rows() != M.rows()) throw DimensionMismatch("solve_matrix: row mismatch");
  auto s = smith_normal_form(M);
  IntMatrix C = s.U * B;
  IntMatrix Y(M.cols(), B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j)
    for (std::size_t i = 0; i < C.rows(); ++i) {
      if (i < s.rank) {
        const Int& d = s.D(i, i);
        if (C(i, j) % d != 0) return std::nullopt;
        Y(i, j) = C(i, j) / d;
      } else if (C(i, j) != 0) {
        return std::nullopt;
      }
    }
  return s.V * Y;
}

/// Columns form a Z-basis of ker M.
inline IntMatrix kernel_basis(const IntMatrix& M) {
  auto s = smith_normal_form(M);
  return columns_of(s.V, s.rank, M.cols() - s.rank);
}

/// Columns form a Z-basis of the column span of M.
inline IntMatrix image_basis(const IntMatrix& M) {
  auto s = smith_normal_form(M);
  // M V = U^{-1} D, so the nonzero columns of U^{-1} D span im M.
  IntMatrix out(M.rows(), s.rank);
  for (std::size_t j = 0; j < s.rank; ++j)
    for (std::size_t i = 0; i < M.rows(); ++i) out(i, j) = s.U_inv(i, j) * s.D(j, j);
  return out;
}

/// True when the column spans of a and b agree as subgroups of Z^rows.
inline bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return false;
  if (a.cols() == 0 || a.is_zero()) return b.cols() == 0 || b.is_zero();
  if (b.cols() == 0 || b.is_zero()) return false;
  return solve_matrix(a, b).has_value() && solve_matrix(b, a).has_value();
}

/// Finitely presented abelian group: generators modulo the column span of
/// `presentation`. The invariant data is Z^free_rank + sum Z/torsion[i] with
/// torsion[0] | torsion[1] | ... and every factor > 1.
class FPAbGroup {
 public:
  FPAbGroup() = default;

  static FPAbGroup from_presentation(IntMatrix relations) {
    FPAbGroup g;
    auto s = smith_normal_form(relations);
    g.free_rank_ = relations.rows() - s.rank;
    for (std::size_t i = 0; i < s.rank; ++i)
      if (s.D(i, i) != 1) g.torsion_.push_back(s.D(i, i));
    g.presentation_ = std::move(relations);
    return g;
  }
  static FPAbGroup free(std::size_t rank) { return from_presentation(IntMatrix(rank, 0)); }
  static FPAbGroup cyclic(const Int& order) { return from_presentation(IntMatrix{{order}}); }

  std::size_t free_rank() const { return free_rank_; }
  const IntVec& torsion() const { return torsion_; }
  const IntMatrix& presentation() const { return presentation_; }
  std::size_t generator_count() const { return presentation_.rows(); }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_free() const { return torsion_.empty(); }

  /// Canonical isomorphism-type comparison.
  friend bool operator==(const FPAbGroup& a, const FPAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::vector<std::string> parts;
    if (free_rank_ == 1) parts.push_back("Z");
    if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
    for (const auto& t : torsion_) parts.push_back("Z/" + t.str());
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
    return out;
  }

 private:
  std::size_t free_rank_ = 0;
  IntVec torsion_;
  IntMatrix presentation_;
};

inline std::ostream& operator<<(std::ostream& os, const FPAbGroup& g) { return os << g.to_string(); }

/// x == y in G, i.e. x - y lies in the relation subgroup.
inline bool element_equal(const FPAbGroup& G, const IntVec& x, const IntVec& y) {
  if (x.size() != G.generator_count() || y.size() != G.generator_count())
    throw DimensionMismatch("element_equal: expected vectors of length " +
                            std::to_string(G.generator_count()));
  IntVec diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  return solve(G.presentation(), diff).has_value();
}

/// Cokernel Z^rows / im M in canonical form. Canonical generators are the
/// torsion generators (in divisibility order) followed by the free ones.
/// `projection` maps ambient coordinates to canonical generators and
/// `section` lifts canonical generators back, so projection * section = 1.
struct Cokernel {
  FPAbGroup group;
  IntMatrix projection;
  IntMatrix section;
};

inline Cokernel cokernel(const IntMatrix& M) {
  auto s = smith_normal_form(M);
  const std::size_t m = M.rows();
  std::vector<std::size_t> keep;
  IntVec factors;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) {
      keep.push_back(i);
      factors.push_back(s.D(i, i));
    }
  const std::size_t torsion_count = keep.size();
  for (std::size_t i = s.rank; i < m; ++i) keep.push_back(i);

  IntMatrix proj(keep.size(), m);
  IntMatrix sec(m, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    for (std::size_t j = 0; j < m; ++j) proj(k, j) = s.U(keep[k], j);
    for (std::size_t i = 0; i < m; ++i) sec(i, k) = s.U_inv(i, keep[k]);
  }
  IntMatrix rel(keep.size(), torsion_count);
  for (std::size_t k = 0; k < torsion_count; ++k) rel(k, k) = factors[k];
  return {FPAbGroup::from_presentation(std::move(rel)), std::move(proj), std::move(sec)};
}

}  // namespace dgkit
