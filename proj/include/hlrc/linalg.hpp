#pragma once

// Dense matrices over GF(q) and Gaussian elimination.

#include <optional>
#include <vector>

#include "hlrc/galois.hpp"

namespace hlrc {

using Vec = std::vector<Fe>;

class Mat {
 public:
  Mat() = default;
  Mat(FieldPtr f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, Fe{0}) {}
  Mat(FieldPtr f, std::size_t rows, std::size_t cols, std::vector<Fe> entries)
      : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw UsageError("Mat: entry count does not match shape");
    for (Fe e : a_)
      if (!f_->contains(e)) throw UsageError("Mat: entry outside field");
  }

  static Mat identity(FieldPtr f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f->one();
    return m;
  }

  static Mat from_rows(FieldPtr f, const std::vector<Vec>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows[0].size();
    Mat m(f, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw UsageError("Mat: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field() const { return f_; }
  const std::vector<Fe>& entries() const { return a_; }

  Fe& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Fe operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  Vec col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Mat transpose() const {
    Mat t(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Mat s(f_, rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs.at(i), cs.at(j));
    return s;
  }

  Mat select_cols(const std::vector<std::size_t>& cs) const {
    std::vector<std::size_t> rs(rows_);
    for (std::size_t i = 0; i < rows_; ++i) rs[i] = i;
    return select(rs, cs);
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  FieldPtr f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Fe> a_;
};

inline Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols() != y.rows()) throw UsageError("Mat: dimension mismatch in product");
  const Field& f = *x.field();
  Mat r(x.field(), x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t l = 0; l < x.cols(); ++l) {
      Fe a = x(i, l);
      if (a.rep == 0) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) r(i, j) = f.add(r(i, j), f.mul(a, y(l, j)));
    }
  return r;
}

/// x * M for a row vector x.
inline Vec vec_mat(const Field& f, const Vec& x, const Mat& m) {
  if (x.size() != m.rows()) throw UsageError("vec_mat: length mismatch");
  Vec r(m.cols(), Fe{0});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i].rep == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = f.add(r[j], f.mul(x[i], m(i, j)));
  }
  return r;
}

/// M * x for a column vector x.
inline Vec mat_vec(const Field& f, const Mat& m, const Vec& x) {
  if (x.size() != m.cols()) throw UsageError("mat_vec: length mismatch");
  Vec r(m.rows(), Fe{0});
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] = f.add(r[i], f.mul(m(i, j), x[j]));
  return r;
}

struct RrefResult {
  Mat r;                            // reduced row-echelon form
  std::vector<std::size_t> pivots;  // strictly increasing column indices
  Mat t;                            // invertible, t * input = r
};

/// Gauss-Jordan elimination. When `track` is false the transform is left empty.
inline RrefResult rref(const Mat& a, bool track = true) {
  const Field& f = *a.field();
  RrefResult out{a, {}, track ? Mat::identity(a.field(), a.rows()) : Mat()};
  Mat& r = out.r;
  std::size_t row = 0;
  for (std::size_t c = 0; c < r.cols() && row < r.rows(); ++c) {
    std::size_t piv = row;
    while (piv < r.rows() && r(piv, c).rep == 0) ++piv;
    if (piv == r.rows()) continue;
    auto swap_rows = [](Mat& m, std::size_t i, std::size_t j) {
      if (i == j) return;
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(i, k), m(j, k));
    };
    swap_rows(r, piv, row);
    if (track) swap_rows(out.t, piv, row);
    Fe inv = f.inv(r(row, c));
    for (std::size_t k = 0; k < r.cols(); ++k) r(row, k) = f.mul(r(row, k), inv);
    if (track)
      for (std::size_t k = 0; k < out.t.cols(); ++k) out.t(row, k) = f.mul(out.t(row, k), inv);
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, c).rep == 0) continue;
      Fe factor = f.neg(r(i, c));
      for (std::size_t k = c; k < r.cols(); ++k) r(i, k) = f.add(r(i, k), f.mul(factor, r(row, k)));
      if (track)
        for (std::size_t k = 0; k < out.t.cols(); ++k)
          out.t(i, k) = f.add(out.t(i, k), f.mul(factor, out.t(row, k)));
    }
    out.pivots.push_back(c);
    ++row;
  }
  return out;
}

inline std::size_t rank(const Mat& a) {
  // Eliminating the thinner orientation is cheaper.
  if (a.rows() > a.cols()) return rref(a.transpose(), false).pivots.size();
  return rref(a, false).pivots.size();
}

/// One solution of A x = b (free variables zero), or nullopt if inconsistent.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (b.size() != a.rows()) throw UsageError("solve: right-hand side length mismatch");
  const Field& f = *a.field();
  Mat aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto res = rref(aug, false);
  if (!res.pivots.empty() && res.pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols(), f.zero());
  for (std::size_t i = 0; i < res.pivots.size(); ++i) x[res.pivots[i]] = res.r(i, a.cols());
  return x;
}

inline std::vector<Vec> nullspace_basis(const Mat& a) {
  const Field& f = *a.field();
  auto res = rref(a, false);
  std::vector<char> is_pivot(a.cols(), 0);
  for (auto p : res.pivots) is_pivot[p] = 1;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < res.pivots.size(); ++i) v[res.pivots[i]] = f.neg(res.r(i, free));
    out.push_back(std::move(v));
  }
  return out;
}

inline std::size_t submatrix_rank(const Mat& a, const std::vector<std::size_t>& rows,
                                  const std::vector<std::size_t>& cols) {
  return rank(a.select(rows, cols));
}

/// Rank of the column subset, all rows kept.
inline std::size_t column_rank(const Mat& a, const std::vector<std::size_t>& cols) {
  return rank(a.select_cols(cols));
}

inline Fe determinant(const Mat& a) {
  if (a.rows() != a.cols()) throw UsageError("determinant: matrix not square");
  const Field& f = *a.field();
  Mat m = a;
  Fe det = f.one();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).rep == 0) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(piv, k), m(c, k));
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    Fe inv = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).rep == 0) continue;
      Fe factor = f.neg(f.mul(m(i, c), inv));
      for (std::size_t k = c; k < n; ++k) m(i, k) = f.add(m(i, k), f.mul(factor, m(c, k)));
    }
  }
  return det;
}

}  // namespace hlrc
