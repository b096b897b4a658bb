#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arreg/algebra.hpp"

namespace arreg {

/// A coherent tower of finite-dimensional algebras indexed by a level
/// parameter: for admissible levels L < L', the span of the basis elements of
/// level L' with index >= dim_at(L) is a two-sided ideal, and the quotient by
/// it has the same multiplication table as level L.  This is the finite
/// window onto a countable-dimensional algebra used by the regularity
/// procedures.
///
/// Every family accepts an optional "scramble_seed" parameter; the scramble
/// is a seeded change of basis, block-triangular along the level filtration
/// so that the tower invariant survives it.
class TruncationFamily {
 public:
  TruncationFamily(std::string name, FieldSpec field, std::optional<std::uint64_t> scramble_seed)
      : name_(std::move(name)), field_(field), scramble_seed_(scramble_seed) {}
  virtual ~TruncationFamily() = default;

  const std::string& name() const { return name_; }
  const FieldSpec& field() const { return field_; }

  virtual bool admissible(std::size_t level) const = 0;
  virtual std::size_t dim_at(std::size_t level) const = 0;
  virtual std::size_t min_level() const = 0;

  /// Admissible levels <= level, ascending.
  std::vector<std::size_t> admissible_up_to(std::size_t level) const;

  /// Level algebra with the scramble applied.  Throws BadLevel.
  StructureAlgebra make(std::size_t level) const;

  /// make() plus verification: the result passes validate(), and the tower
  /// invariant holds against the previous admissible level.
  StructureAlgebra truncate(std::size_t level) const;

  /// Canonical quotient map between admissible levels (coordinates of the
  /// scrambled bases).
  Matrix quotient_map(std::size_t upper, std::size_t lower) const;

 protected:
  virtual StructureAlgebra make_raw(std::size_t level) const = 0;
  /// Tower check used by truncate(); the default verifies the canonical
  /// tail-span quotient against the lower level algebra.
  virtual void verify_coherence(const StructureAlgebra& upper, std::size_t upper_level,
                                std::size_t lower_level) const;
  bool scrambled() const { return scramble_seed_.has_value(); }

 private:
  Matrix scramble_matrix(std::size_t dim, std::size_t level) const;

  std::string name_;
  FieldSpec field_;
  std::optional<std::uint64_t> scramble_seed_;
};

/// Registry lookup; params are family specific.  Throws UnknownFamily or
/// BadParams.
std::unique_ptr<TruncationFamily> builtin_family(const std::string& name,
                                                 const nlohmann::json& params,
                                                 const FieldSpec& field);

struct FamilyInfo {
  std::string name;
  std::string params_doc;
  std::string description;
};
const std::vector<FamilyInfo>& builtin_family_list();

/// User-supplied tower of explicit algebras (level = dimension), coherence
/// checked against the supplied or canonical quotient maps.
std::unique_ptr<TruncationFamily> explicit_tower(std::vector<StructureAlgebra> algebras,
                                                 std::vector<Matrix> quotients);

}  // namespace arreg
