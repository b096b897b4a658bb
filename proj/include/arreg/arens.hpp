#pragma once

#include <functional>

#include "arreg/modules.hpp"

namespace arreg {

/// Functionals rho in R* and bidual elements s in R** are coordinate vectors:
/// rho = (rho(a_0), ..., rho(a_{n-1})), and R** is identified with R through
/// the canonical map at finite dimension.

/// The two one-sided actions of R** on R*: returns (rho.s, s.rho) with
/// <r, rho.s> = <s, r.rho> and <r, s.rho> = <s, rho.r>, everything expanded
/// through the structure constants.
std::pair<Vec, Vec> dual_actions(const StructureAlgebra& a, const Vec& s, const Vec& rho);

/// The two Arens products (s.t, s<>t), computed through the dual actions:
/// <s.t, rho> = <s, t.rho> and <s<>t, rho> = <t, rho.s>.
std::pair<Vec, Vec> arens_products(const StructureAlgebra& a, const Vec& s, const Vec& t);

/// Left topological center {s : s.t = s<>t for all t}, as the kernel of a
/// linear map (both products are bilinear).
Subspace topological_center(const StructureAlgebra& a);

struct BiendDualReport {
  std::size_t biend_dim = 0;        // dim Biend_R(R*)
  std::size_t center_dim = 0;       // dim of the left topological center
  bool biend_equals_center_rmults = false;
  std::size_t lend_dim = 0;         // dim End_R(R*)
  bool lend_equals_bidual_lmults = false;
};

/// Cross-check of the two computation routes: Biend_R(R*) from the commutant
/// solver against right multiplications by the topological center, plus
/// End_R(R*) against left multiplications by R**.
BiendDualReport biend_of_dual(const StructureAlgebra& a);

/// The matrix [rho(a_i a_j)].
Matrix rank_map(const StructureAlgebra& a, const Vec& rho);

/// dim(R.rho): the rank of rank_map, which equals the dimension of the span
/// of the translates r.rho.
std::size_t dim_r_rho(const StructureAlgebra& a, const Vec& rho);

struct BilinearFormFamily {
  std::function<Matrix(std::size_t level)> at_level;
};

struct ExtensionVerdict {
  enum class Kind { Extends, DoesNotExtend, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::size_t bound = 0;  // rank bound when Extends
  std::vector<std::size_t> ranks;
};

/// Field-case normality criterion: the form extends normally to the biduals
/// iff its rank stays bounded along the truncation tower.
ExtensionVerdict normal_extension_check(const BilinearFormFamily& theta,
                                        const std::vector<std::size_t>& levels);

}  // namespace arreg
