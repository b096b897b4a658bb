#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "arreg/algebra.hpp"

namespace arreg {

using AlgebraPtr = std::shared_ptr<const StructureAlgebra>;

struct ModuleValidationReport {
  // (i, j): action(a_i) o action(a_j) disagrees with the table
  std::vector<std::pair<std::size_t, std::size_t>> representation_violations;
  bool unit_ok = true;
  bool valid() const { return representation_violations.empty() && unit_ok; }
};

/// A module over a StructureAlgebra, given by one action matrix per algebra
/// basis element (operators on column vectors).
class RModule {
 public:
  RModule(AlgebraPtr algebra, Side side, std::vector<Matrix> action);

  const StructureAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  Side side() const { return side_; }
  std::size_t dim() const { return dim_; }
  const Matrix& action(std::size_t i) const { return action_[i]; }
  const std::vector<Matrix>& actions() const { return action_; }

  /// Operator of the algebra element r = sum r_i a_i.
  Matrix action_of(const Vec& r) const;

  ModuleValidationReport validate() const;

 private:
  AlgebraPtr algebra_;
  Side side_;
  std::size_t dim_;
  std::vector<Matrix> action_;
};

RModule regular_module(AlgebraPtr a, Side side);
/// U^k with the diagonal action.
RModule power_module(const RModule& u, std::size_t k);

/// Indices of a small generating subset of the basis (as a unital algebra).
/// An operator commuting with the generators' actions commutes with all.
std::vector<std::size_t> generating_basis_indices(const StructureAlgebra& a);

struct HomBasis {
  std::size_t source_dim, target_dim;
  std::vector<Matrix> maps;  // canonical basis of Hom_R(U, V), target_dim x source_dim
  bool spans(const Matrix& f) const;
};

/// Basis of the intertwiner space {f : f a = a f for the two actions}.
/// Throws SideMismatch when the modules live on different sides, and
/// DimensionMismatch when they are over visibly different algebras.
HomBasis hom_space(const RModule& u, const RModule& v);

enum class CompositionConvention { ReverseOfMatrixProduct };

/// An endomorphism ring materialized as a structure-constant algebra together
/// with the matrices realizing its basis as operators on the module.  The
/// recorded convention: the carrier product e_i * e_j is the operator
/// mat(e_j) * mat(e_i) (maps act on the right of module elements).
struct EndoAlgebra {
  StructureAlgebra carrier;
  std::vector<Matrix> inclusion;
  Subspace operator_span;  // span of vectorized inclusion matrices
  CompositionConvention composition = CompositionConvention::ReverseOfMatrixProduct;
};

EndoAlgebra commutant(const RModule& u);

struct BicommutantResult {
  EndoAlgebra biend;
  Subspace algebra_image;  // span of the module's action matrices
  bool image_equals_biend;
  bool image_inside_biend;  // always true; rechecked, not assumed
};

BicommutantResult bicommutant(const RModule& u);

/// Trace ideal T(U): span of all values <u, f> over f in Hom_R(U, R); verified
/// two-sided.  Requires a left module.
IdealBasis trace_ideal(const RModule& u);

struct ModuleFlags {
  bool faithful = false;
  bool torsionless = false;
  bool t_accessible = false;
  bool generator = false;
  bool projective = false;
};

ModuleFlags classify(const RModule& u);

/// Finds r in the algebra with r*x = b(x) for every x in g, by one stacked
/// linear solve.  b must lie in the bicommutant of u.
std::optional<Vec> density_check(const RModule& u, const Matrix& b, const std::vector<Vec>& g);
/// Same, with the bicommutant operator span precomputed by the caller.
std::optional<Vec> density_check(const RModule& u, const Matrix& b, const std::vector<Vec>& g,
                                 const Subspace& biend_span);

}  // namespace arreg
