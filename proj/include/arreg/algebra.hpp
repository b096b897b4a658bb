#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arreg/linalg.hpp"
#include "arreg/prng.hpp"

namespace arreg {

enum class Side { Left, Right, TwoSided };

std::string side_name(Side s);

/// One entry of the sparse structure-constant tensor: a_i * a_j has
/// coefficient c at basis element a_k.
struct MuEntry {
  std::size_t i, j, k;
  Scalar c;
};

struct ValidationReport {
  // (i, j, k, l): coordinate l of (a_i a_j) a_k differs from a_i (a_j a_k)
  std::vector<std::array<std::size_t, 4>> associativity_violations;
  std::vector<std::size_t> unit_failures;  // basis indices where the unit law fails
  bool valid() const { return associativity_violations.empty() && unit_failures.empty(); }
  std::string summary() const;
};

/// A finite-dimensional unital associative algebra presented by structure
/// constants: a_i * a_j = sum_k mu_{i,j,k} a_k, with the unit's coordinate
/// vector stored explicitly.
class StructureAlgebra {
 public:
  StructureAlgebra(FieldSpec field, std::size_t dim, std::vector<MuEntry> mu, Vec unit,
                   std::vector<std::string> labels = {});

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Vec& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<MuEntry>& mu() const { return mu_; }

  /// Sparse product of basis elements: list of (k, coefficient).
  const std::vector<std::pair<std::size_t, Scalar>>& basis_product(std::size_t i,
                                                                   std::size_t j) const {
    return table_[i * dim_ + j];
  }

  Vec multiply(const Vec& x, const Vec& y) const;
  Matrix left_mult_matrix(const Vec& x) const;   // operator y -> x*y
  Matrix right_mult_matrix(const Vec& x) const;  // operator y -> y*x

  ValidationReport validate() const;

  /// Tries to solve the two-sided unit law for a table with no unit given.
  static std::optional<Vec> solve_unit(const FieldSpec& field, std::size_t dim,
                                       const std::vector<MuEntry>& mu);

 private:
  FieldSpec field_;
  std::size_t dim_;
  std::vector<std::string> labels_;
  std::vector<MuEntry> mu_;
  Vec unit_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> table_;
};

/// A subspace verified to be closed under the declared one- or two-sided
/// multiplication by the whole algebra.
struct IdealBasis {
  Subspace subspace;
  Side side;
};

bool is_ideal(const StructureAlgebra& a, const Subspace& s, Side side);
/// Throws NotAnIdeal when the closure verification fails.
IdealBasis make_ideal(const StructureAlgebra& a, Subspace s, Side side);

/// Smallest ideal of the requested side containing the seed vectors.
IdealBasis ideal_closure(const StructureAlgebra& a, const std::vector<Vec>& seed, Side side);

struct QuotientResult {
  StructureAlgebra algebra;
  Matrix projection;  // (dim - d) x dim, coordinates modulo the ideal
  Matrix section;     // dim x (dim - d), the standard complement lift
};

/// Structure constants induced on the complement of a verified two-sided
/// ideal.  Throws NotUnital when the unit dies in the quotient.
QuotientResult quotient(const StructureAlgebra& a, const IdealBasis& j);

struct GeneratedAlgebra {
  StructureAlgebra algebra;
  std::vector<Matrix> inclusion;  // basis element -> d x d matrix
};

/// Unital subalgebra of d x d matrices generated by gens, with structure
/// constants extracted over the discovered basis (identity first).
GeneratedAlgebra construct_from_generators(const FieldSpec& field, const std::vector<Matrix>& gens);

StructureAlgebra transform_algebra(const StructureAlgebra& a, const BasisChange& change);
StructureAlgebra opposite_algebra(const StructureAlgebra& a);

/// Same field, dimension, unit and basis products (labels ignored).
bool same_multiplication(const StructureAlgebra& a, const StructureAlgebra& b);

BasisChange random_basis_change(const FieldSpec& field, std::size_t n, Prng& rng);

}  // namespace arreg
