#pragma once

#include <cstddef>
#include <vector>

#include "arreg/scalar.hpp"

namespace arreg {

using Vec = std::vector<Scalar>;

/// Dense row-major matrix over a fixed field.  All entries stay in the field
/// of construction; dimensions are checked on every operation.
class Matrix {
 public:
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), e_(rows * cols, field.zero()) {}

  static Matrix identity(FieldSpec field, std::size_t n);
  static Matrix from_rows(FieldSpec field, const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_cols(FieldSpec field, const std::vector<Vec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Scalar& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  void set_row(std::size_t i, const Vec& v);

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& c) const;
  bool operator==(const Matrix& o) const;

  Matrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  Vec mul_vec(const Vec& x) const;                   // this * x (column vector)
  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  /// Row-major flattening; the vectorization used by every intertwining solve.
  Vec vectorize() const { return e_; }

 private:
  FieldSpec field_;
  std::size_t rows_, cols_;
  Vec e_;
};

// small Vec helpers shared across modules
Vec vec_zero(FieldSpec field, std::size_t n);
Vec vec_unit(FieldSpec field, std::size_t n, std::size_t i);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& a);
bool vec_is_zero(const Vec& a);
int vec_cmp(const Vec& a, const Vec& b);  // lexicographic, via Scalar::cmp

}  // namespace arreg
