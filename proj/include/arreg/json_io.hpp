#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "arreg/duality.hpp"
#include "arreg/regularity.hpp"

namespace arreg {

using nlohmann::json;

FieldSpec field_from_json(const json& j);
json field_to_json(const FieldSpec& f);

Scalar scalar_from_json(const FieldSpec& field, const json& j);

Vec vec_from_json(const FieldSpec& field, const json& j);
json vec_to_json(const Vec& v);

Matrix matrix_from_json(const FieldSpec& field, const json& j);
json matrix_to_json(const Matrix& m);

/// {"field": {...}, "dim": n, "basis"?: [...], "unit"?: [...], "mu": [[i,j,k,"c"],...]}
/// A missing unit is solved for; an algebra with no unit is an input error.
StructureAlgebra algebra_from_json(const json& j);
json algebra_to_json(const StructureAlgebra& a);

json subspace_to_json(const Subspace& s);

/// {"algebra": <inline object or file path>, "dim": m, "side": "left"|"right",
///  "action": [matrix, ...]}; relative algebra paths resolve against base_dir.
RModule module_from_json(const json& j, const std::string& base_dir = ".");

/// {"family": name, "params"?, "field"?, "levels"?, "seed"?, "samples"?} or
/// {"tower": ["a.json", ...] | [inline algebras], "quotients"?: [matrix...]}.
struct FamilySpec {
  std::unique_ptr<TruncationFamily> family;
  DecisionBudget budget;
};
FamilySpec family_spec_from_json(const json& j, const std::string& base_dir = ".");

json certificate_to_json(const StructureAlgebra& a, const SquareZeroCertificate& cert);
/// Reads a certificate; the algebra comes from the embedded "algebra" object
/// unless one is supplied.
std::pair<StructureAlgebra, SquareZeroCertificate> certificate_from_json(const json& j);
SquareZeroCertificate certificate_from_json(const StructureAlgebra& a, const json& j);

json profile_to_json(const RankMapProfile& p);
json verdict_to_json(const RegularityVerdict& v);
json flags_to_json(const ModuleFlags& f);
json th3_to_json(const Th3Report& r);
json biend_dual_to_json(const BiendDualReport& r);
json validation_to_json(const ValidationReport& r);

json load_json_file(const std::string& path);

}  // namespace arreg
