#include "arreg/linalg.hpp"

#include <algorithm>

namespace arreg {

Matrix Matrix::identity(FieldSpec field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
  return m;
}

Matrix Matrix::from_rows(FieldSpec field, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_cols(FieldSpec field, const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(field, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DimensionMismatch("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Vec Matrix::row(std::size_t i) const {
  Vec v(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
  return v;
}

Vec Matrix::col(std::size_t j) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

void Matrix::set_row(std::size_t i, const Vec& v) {
  if (v.size() != cols_) throw DimensionMismatch("row length mismatch");
  for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_))
    throw DimensionMismatch("matrix addition shape mismatch");
  Matrix r(field_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_))
    throw DimensionMismatch("matrix subtraction shape mismatch");
  Matrix r(field_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || !(field_ == o.field_))
    throw DimensionMismatch("matrix product shape mismatch");
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& f = at(i, k);
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& g = o.at(k, j);
        if (!g.is_zero()) r.at(i, j) += f * g;
      }
    }
  return r;
}

Matrix Matrix::operator*(const Scalar& c) const {
  Matrix r(field_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_)) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

Vec Matrix::mul_vec(const Vec& x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
  Vec r(rows_, field_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& a = at(i, j);
      if (!a.is_zero() && !x[j].is_zero()) r[i] += a * x[j];
    }
  return r;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix r(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  return r;
}

Vec vec_zero(FieldSpec field, std::size_t n) { return Vec(n, field.zero()); }

Vec vec_unit(FieldSpec field, std::size_t n, std::size_t i) {
  Vec v(n, field.zero());
  v[i] = field.one();
  return v;
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector addition length mismatch");
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector subtraction length mismatch");
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const Scalar& c, const Vec& a) {
  Vec r(a);
  for (auto& x : r) x = x * c;
  return r;
}

bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& x) { return x.is_zero(); });
}

int vec_cmp(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    int c = a[i].cmp(b[i]);
    if (c != 0) return c;
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

namespace {

// Gauss-Jordan with fixed pivot order: for each column left to right, take the
// first row at or below the frontier with a nonzero entry.
EchelonForm rref_impl(Matrix m, Matrix* ops) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!m.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
      if (ops)
        for (std::size_t j = 0; j < ops->cols(); ++j) std::swap(ops->at(sel, j), ops->at(r, j));
    }
    const Scalar inv = m.at(r, c).inverse();
    if (!inv.is_one()) {
      for (std::size_t j = c; j < cols; ++j) m.at(r, j) = m.at(r, j) * inv;
      if (ops)
        for (std::size_t j = 0; j < ops->cols(); ++j) ops->at(r, j) = ops->at(r, j) * inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Scalar f = m.at(i, c);
      if (f.is_zero()) continue;
      for (std::size_t j = c; j < cols; ++j) {
        if (!m.at(r, j).is_zero()) m.at(i, j) -= f * m.at(r, j);
      }
      if (ops)
        for (std::size_t j = 0; j < ops->cols(); ++j) ops->at(i, j) -= f * ops->at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return EchelonForm{std::move(m), std::move(pivots), r};
}

}  // namespace

EchelonForm rref(Matrix m) { return rref_impl(std::move(m), nullptr); }

EchelonForm rref_recorded(Matrix m, Matrix& ops) {
  ops = Matrix::identity(m.field(), m.rows());
  return rref_impl(std::move(m), &ops);
}

std::size_t mat_rank(const Matrix& m) { return rref(m).rank; }

std::optional<Matrix> mat_inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  Matrix ops(m.field(), 0, 0);
  EchelonForm e = rref_recorded(m, ops);
  if (e.rank != m.rows()) return std::nullopt;
  return ops;
}

std::optional<Vec> solve_linear(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_linear: rhs length mismatch");
  const std::size_t cols = a.cols();
  Matrix aug(a.field(), a.rows(), cols + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, cols) = b[i];
  }
  EchelonForm e = rref(std::move(aug));
  // inconsistent iff the augmented column is a pivot
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == cols) return std::nullopt;
  Vec x(cols, a.field().zero());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = e.mat.at(r, cols);
  return x;
}

std::optional<Matrix> solve_linear_multi(const Matrix& a, const Matrix& rhs) {
  if (rhs.rows() != a.rows()) throw DimensionMismatch("solve_linear_multi: rhs shape mismatch");
  const std::size_t cols = a.cols(), k = rhs.cols();
  Matrix aug(a.field(), a.rows(), cols + k);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < k; ++j) aug.at(i, cols + j) = rhs.at(i, j);
  }
  EchelonForm e = rref(std::move(aug));
  std::size_t a_rank = 0;
  for (std::size_t c : e.pivot_cols)
    if (c < cols) ++a_rank;
  if (a_rank != e.rank) return std::nullopt;  // a pivot landed in the rhs block
  Matrix x(a.field(), cols, k);
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
    for (std::size_t j = 0; j < k; ++j) x.at(e.pivot_cols[r], j) = e.mat.at(r, cols + j);
  return x;
}

Subspace Subspace::zero(FieldSpec field, std::size_t ambient) {
  return Subspace(field, ambient, Matrix(field, 0, ambient), {});
}

Subspace Subspace::full(FieldSpec field, std::size_t ambient) {
  return Subspace(field, ambient, Matrix::identity(field, ambient), [&] {
    std::vector<std::size_t> p(ambient);
    for (std::size_t i = 0; i < ambient; ++i) p[i] = i;
    return p;
  }());
}

Subspace Subspace::span_of(FieldSpec field, std::size_t ambient, const std::vector<Vec>& vectors) {
  return row_space(Matrix::from_rows(field, vectors, ambient));
}

Subspace Subspace::row_space(const Matrix& m) {
  EchelonForm e = rref(m);
  Matrix basis = e.mat.submatrix(0, 0, e.rank, m.cols());
  return Subspace(m.field(), m.cols(), std::move(basis), std::move(e.pivot_cols));
}

std::vector<std::size_t> Subspace::complement_coords() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < ambient_; ++c) {
    if (k < pivots_.size() && pivots_[k] == c) {
      ++k;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != ambient_) throw AmbientMismatch("vector length does not match ambient dim");
  Vec r = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
      if (!basis_.at(i, j).is_zero()) r[j] -= c * basis_.at(i, j);
    }
  }
  return r;
}

std::optional<Vec> Subspace::coords_of(const Vec& v) const {
  if (v.size() != ambient_) throw AmbientMismatch("vector length does not match ambient dim");
  Vec r = v;
  Vec coords(dim(), field_.zero());
  for (std::size_t i = 0; i < dim(); ++i) {
    const Scalar c = r[pivots_[i]];
    coords[i] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
      if (!basis_.at(i, j).is_zero()) r[j] -= c * basis_.at(i, j);
    }
  }
  if (!vec_is_zero(r)) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw AmbientMismatch("ambient dims differ");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && field_ == o.field_ && basis_ == o.basis_;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw AmbientMismatch("ambient dims differ");
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < dim(); ++i) rows.push_back(basis_vector(i));
  for (std::size_t i = 0; i < o.dim(); ++i) rows.push_back(o.basis_vector(i));
  return span_of(field_, ambient_, rows);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw AmbientMismatch("ambient dims differ");
  // x in both spans: x = B1^T u = B2^T w; solve [B1^T | -B2^T] (u,w)^T = 0.
  const std::size_t d1 = dim(), d2 = o.dim();
  Matrix sys(field_, ambient_, d1 + d2);
  for (std::size_t i = 0; i < ambient_; ++i) {
    for (std::size_t j = 0; j < d1; ++j) sys.at(i, j) = basis_.at(j, i);
    for (std::size_t j = 0; j < d2; ++j) sys.at(i, d1 + j) = -o.basis_.at(j, i);
  }
  Subspace ker = mat_kernel(sys);
  std::vector<Vec> vectors;
  for (std::size_t r = 0; r < ker.dim(); ++r) {
    const Vec kv = ker.basis_vector(r);
    Vec u(kv.begin(), kv.begin() + d1);
    Vec x(ambient_, field_.zero());
    for (std::size_t j = 0; j < d1; ++j)
      if (!u[j].is_zero())
        for (std::size_t c = 0; c < ambient_; ++c) x[c] += u[j] * basis_.at(j, c);
    vectors.push_back(std::move(x));
  }
  return span_of(field_, ambient_, vectors);
}

Subspace mat_kernel(const Matrix& m) {
  EchelonForm e = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, m.field().zero());
    v[f] = m.field().one();
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
      v[e.pivot_cols[r]] = -e.mat.at(r, f);
    basis.push_back(std::move(v));
  }
  return Subspace::span_of(m.field(), cols, basis);
}

BasisChange BasisChange::from_forward(Matrix forward) {
  if (forward.rows() != forward.cols()) throw DimensionMismatch("basis change must be square");
  auto inv = mat_inverse(forward);
  if (!inv) throw Error("basis change matrix is singular");
  if (!((forward * *inv).is_identity())) throw Error("basis change inverse check failed");
  return BasisChange(std::move(forward), std::move(*inv));
}

BasisChange BasisChange::identity(FieldSpec field, std::size_t n) {
  return BasisChange(Matrix::identity(field, n), Matrix::identity(field, n));
}

Subspace BasisChange::transform_to_new(const Subspace& s) const {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(to_new(s.basis_vector(i)));
  return Subspace::span_of(s.field(), s.ambient(), rows);
}

Subspace BasisChange::transform_to_old(const Subspace& s) const {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(to_old(s.basis_vector(i)));
  return Subspace::span_of(s.field(), s.ambient(), rows);
}

}  // namespace arreg
