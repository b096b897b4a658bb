#pragma once

#include <optional>
#include <vector>

#include "arreg/matrix.hpp"

namespace arreg {

/// Reduced row echelon form: leading coefficient 1, zeros above and below
/// pivots.  Pivot selection is deterministic (leftmost column, first nonzero
/// row), so the form is canonical for a given row space.
struct EchelonForm {
  Matrix mat;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank;
};

EchelonForm rref(Matrix m);
/// Same, accumulating the row operations: ops * input = result.
EchelonForm rref_recorded(Matrix m, Matrix& ops);

std::size_t mat_rank(const Matrix& m);
std::optional<Matrix> mat_inverse(const Matrix& m);

/// Some x with a*x = b, or nullopt when b is outside the column space.
/// Deterministic: free variables are set to zero.
std::optional<Vec> solve_linear(const Matrix& a, const Vec& b);

/// Solves a*X = rhs for all columns in one elimination; nullopt if any
/// column is inconsistent.
std::optional<Matrix> solve_linear_multi(const Matrix& a, const Matrix& rhs);

/// Canonical subspace of F^n: the basis is kept in reduced row echelon form,
/// so equal subspaces have identical representations.
class Subspace {
 public:
  static Subspace zero(FieldSpec field, std::size_t ambient);
  static Subspace full(FieldSpec field, std::size_t ambient);
  static Subspace span_of(FieldSpec field, std::size_t ambient, const std::vector<Vec>& vectors);
  static Subspace row_space(const Matrix& m);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const FieldSpec& field() const { return field_; }
  const Matrix& basis() const { return basis_; }
  Vec basis_vector(std::size_t i) const { return basis_.row(i); }
  const std::vector<std::size_t>& pivot_cols() const { return pivots_; }
  /// Indices of standard basis vectors spanning a complement (non-pivot coordinates).
  std::vector<std::size_t> complement_coords() const;

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const;

  Subspace sum(const Subspace& o) const;        // throws AmbientMismatch
  Subspace intersect(const Subspace& o) const;  // throws AmbientMismatch

  /// Residual of v after eliminating all pivot coordinates; zero iff v is a member.
  Vec reduce(const Vec& v) const;
  /// Coordinates of v in the echelon basis, or nullopt if v is not a member.
  std::optional<Vec> coords_of(const Vec& v) const;

 private:
  Subspace(FieldSpec field, std::size_t ambient, Matrix basis, std::vector<std::size_t> pivots)
      : field_(field), ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}
  FieldSpec field_;
  std::size_t ambient_;
  Matrix basis_;  // dim x ambient, RREF, no zero rows
  std::vector<std::size_t> pivots_;
};

/// Right null space {x : m*x = 0}; dim kernel + rank = cols.
Subspace mat_kernel(const Matrix& m);

/// An invertible change of basis; forward columns are the new basis vectors
/// in old coordinates.  forward * inverse = identity is checked.
class BasisChange {
 public:
  static BasisChange from_forward(Matrix forward);  // throws if singular
  static BasisChange identity(FieldSpec field, std::size_t n);

  const Matrix& forward() const { return forward_; }
  const Matrix& inverse() const { return inverse_; }
  std::size_t dim() const { return forward_.rows(); }

  Vec to_new(const Vec& old_coords) const { return inverse_.mul_vec(old_coords); }
  Vec to_old(const Vec& new_coords) const { return forward_.mul_vec(new_coords); }
  /// Functionals transform contravariantly.
  Vec functional_to_new(const Vec& old_functional) const {
    return forward_.transpose().mul_vec(old_functional);
  }
  Vec functional_to_old(const Vec& new_functional) const {
    return inverse_.transpose().mul_vec(new_functional);
  }
  Subspace transform_to_new(const Subspace& s) const;
  Subspace transform_to_old(const Subspace& s) const;

 private:
  BasisChange(Matrix f, Matrix i) : forward_(std::move(f)), inverse_(std::move(i)) {}
  Matrix forward_, inverse_;
};

}  // namespace arreg
