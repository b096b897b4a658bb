#pragma once

#include <optional>

#include "arreg/modules.hpp"

namespace arreg {

/// Linear dual with the transposed action on the opposite side; coordinates
/// are taken in the dual basis of the base module.
RModule dual_module(const RModule& u);

struct AdjointMap {
  Matrix original;  // f : U -> V
  Matrix adjoint;   // f* : V* -> U*, the transpose in dual bases
};

/// Throws NotAHomomorphism when f is not in the span of Hom_R(U, V).
AdjointMap adjoint(const Matrix& f, const RModule& u, const RModule& v);

enum class InclusionStatus { Holds, Fails, ExpectedNA };
std::string inclusion_status_name(InclusionStatus s);

struct Th3Report {
  ModuleFlags hypotheses;
  bool raw_i = false;   // {b* : b in Biend(U)} inside Biend(U*)
  bool raw_ii = false;  // adjoints of Biend(U*) inside Biend(U)
  InclusionStatus inclusion_i = InclusionStatus::ExpectedNA;
  InclusionStatus inclusion_ii = InclusionStatus::ExpectedNA;
  std::size_t biend_dim = 0;       // dim Biend(U)
  std::size_t biend_dual_dim = 0;  // dim Biend(U*)
};

/// Both biendomorphism rings and the two adjoint-image inclusions, with
/// hypothesis-aware grading: failures outside the hypotheses are ExpectedNA,
/// never Fails.
Th3Report check_biend_inclusion(const RModule& u);

struct AdjointDensityReport {
  bool surjective = false;
  std::size_t hom_dim = 0;       // dim Hom_R(U, V)
  std::size_t dual_hom_dim = 0;  // dim Hom_R(V*, U*)
  std::optional<Matrix> non_adjoint_witness;
};

/// At finite dimension, approximation by adjoints upgrades to exactness: the
/// adjoint map Hom_R(U,V) -> Hom_R(V*,U*) must be onto.
AdjointDensityReport adjoint_density_check(const RModule& u, const RModule& v);

}  // namespace arreg
