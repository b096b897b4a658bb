#pragma once

#include <optional>
#include <string>

#include "arreg/arens.hpp"
#include "arreg/family.hpp"

namespace arreg {

/// Thrown by the extraction when it derives a functional whose rank map
/// exceeds the claimed maximum: the sampler under-estimated n0.  Carries the
/// better witness so the caller can retry.
class NotMaximalRank : public Error {
 public:
  NotMaximalRank(Vec witness, std::size_t rank)
      : Error("rank map maximum was under-estimated; found rank " + std::to_string(rank)),
        witness(std::move(witness)), rank(rank) {}
  Vec witness;
  std::size_t rank;
};

struct SamplerBudget {
  std::uint64_t seed = 0;
  std::size_t random_samples = 8;
};

/// Coordinate functionals, the all-ones functional, then seeded random
/// functionals (stream seeded as seed xor level).
std::vector<Vec> sampler_functionals(const StructureAlgebra& a, const SamplerBudget& budget,
                                     std::size_t level);

struct LevelRankRecord {
  std::size_t level = 0;
  std::size_t dim = 0;
  std::size_t max_rank_found = 0;
  Vec witness;  // lexicographically smallest functional attaining the max
  std::size_t translate_span_dim = 0;  // dim(R.rho) by the independent route
};

struct RankMapProfile {
  std::string family_name;
  SamplerBudget budget;
  std::vector<LevelRankRecord> records;  // ordered by level
};

RankMapProfile rank_profile(const TruncationFamily& f, const std::vector<std::size_t>& levels,
                            const SamplerBudget& budget);

struct SquareZeroCertificate {
  std::size_t level = 0;  // equals the algebra dimension
  IdealBasis ideal;       // TwoSided
  std::size_t codim = 0;
  struct Verified {
    bool is_ideal = false;
    bool square_zero = false;
    bool codim_finite = false;
  } verified;
  std::size_t n0 = 0;  // rank bound the extraction ran with
  Vec witness;
  bool used_compression = false;  // finite-field induction branch was taken
};

/// Constructive square-zero-ideal extraction: witness
/// normalization, corner normalization, corner-vanishing checks with the
/// finite-field compression-and-induction fallback, the R0 / S / L = RS
/// steps, a two-sided shrink, and a radical-guided enlargement pass so the
/// certificate is as large as the verified sweeps allow.
///
/// Throws NotMaximalRank when a functional of rank > n0 is derived, and
/// ExtractionFailed when verification cannot be completed.
SquareZeroCertificate extract_square_zero_ideal(const StructureAlgebra& a, const Vec& witness,
                                                std::size_t n0,
                                                const SamplerBudget& budget = {});

/// From-scratch re-verification, independent of the extraction path.
bool verify_certificate(const StructureAlgebra& a, const SquareZeroCertificate& cert);

/// Witness search over the sampler followed by extraction, retrying through
/// NotMaximalRank self-corrections.
SquareZeroCertificate extract_auto(const StructureAlgebra& a, const SamplerBudget& budget);

struct DecisionBudget {
  std::vector<std::size_t> levels;
  std::uint64_t seed = 0;
  std::size_t random_samples = 8;
};

struct RegularityVerdict {
  enum class Kind { Regular, NotRegular, Inconclusive };
  Kind kind = Kind::Inconclusive;
  /// Finite levels cannot prove the limit statement; every verdict is
  /// evidence-graded with the tested level set embedded in the profile.
  std::string grade = "EVIDENCE";
  RankMapProfile profile;
  std::vector<SquareZeroCertificate> certificates;  // Regular only
  std::optional<std::size_t> codim;                 // Regular: constant codimension
  std::string note;                                 // diagnostics for Inconclusive
};

RegularityVerdict decide_regularity(const TruncationFamily& f, const DecisionBudget& budget);

/// Generator rule for subalgebra checks: either explicit sparse elements or
/// seeded random ones supported on the first max_index coordinates (so one
/// rule denotes compatible elements at every level).
struct GeneratorRule {
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> sparse;
  std::optional<std::uint64_t> seed;
  std::size_t count = 1;
  std::size_t max_index = 2;
};

struct SubalgebraLevelRecord {
  std::size_t level = 0;
  std::size_t subalgebra_dim = 0;
  std::size_t subalgebra_max_rank = 0;
  std::size_t parent_max_rank = 0;
};

struct SubalgebraReport {
  std::vector<SubalgebraLevelRecord> records;
  bool bounded_by_parent = true;
};

/// Builds the unital subalgebra generated by the rule inside the regular
/// representation of each level and compares rank bounds with the parent.
SubalgebraReport subalgebra_check(const TruncationFamily& f, const GeneratorRule& rule,
                                  const DecisionBudget& budget);

}  // namespace arreg
