#include "arreg/duality.hpp"

namespace arreg {

RModule dual_module(const RModule& u) {
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < u.algebra().dim(); ++i) action.push_back(u.action(i).transpose());
  Side flipped = u.side() == Side::Left ? Side::Right : Side::Left;
  return RModule(u.algebra_ptr(), flipped, std::move(action));
}

AdjointMap adjoint(const Matrix& f, const RModule& u, const RModule& v) {
  if (f.rows() != v.dim() || f.cols() != u.dim())
    throw DimensionMismatch("adjoint: map shape does not fit the modules");
  HomBasis h = hom_space(u, v);
  if (!h.spans(f)) throw NotAHomomorphism("adjoint: map is not an R-homomorphism");
  Matrix ft = f.transpose();
  // f* must intertwine the dual actions
  for (std::size_t i = 0; i < u.algebra().dim(); ++i) {
    Matrix lhs = ft * v.action(i).transpose();
    Matrix rhs = u.action(i).transpose() * ft;
    if (!(lhs == rhs)) throw NotAHomomorphism("adjoint: transpose fails to intertwine duals");
  }
  return AdjointMap{f, std::move(ft)};
}

std::string inclusion_status_name(InclusionStatus s) {
  switch (s) {
    case InclusionStatus::Holds:
      return "HOLDS";
    case InclusionStatus::Fails:
      return "FAILS";
    default:
      return "EXPECTED_NA";
  }
}

namespace {

bool transposed_span_inside(const Subspace& from, const Subspace& into) {
  const std::size_t mm = from.ambient();
  std::size_t m = 0;
  while (m * m < mm) ++m;
  for (std::size_t i = 0; i < from.dim(); ++i) {
    const Vec v = from.basis_vector(i);
    Vec t(mm, from.field().zero());
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) t[c * m + r] = v[r * m + c];
    if (!into.contains(t)) return false;
  }
  return true;
}

}  // namespace

Th3Report check_biend_inclusion(const RModule& u) {
  if (u.side() != Side::Left) throw SideMismatch("check_biend_inclusion: left modules only");
  Th3Report rep;
  rep.hypotheses = classify(u);
  BicommutantResult b = bicommutant(u);
  BicommutantResult bt = bicommutant(dual_module(u));
  rep.biend_dim = b.biend.operator_span.dim();
  rep.biend_dual_dim = bt.biend.operator_span.dim();
  rep.raw_i = transposed_span_inside(b.biend.operator_span, bt.biend.operator_span);
  rep.raw_ii = transposed_span_inside(bt.biend.operator_span, b.biend.operator_span);
  // (i) needs faithful + torsionless + T-accessible; (ii) needs faithful +
  // flat (= projective here); a finite separating set always exists at finite
  // dimension.
  const bool hyp_i =
      rep.hypotheses.faithful && rep.hypotheses.torsionless && rep.hypotheses.t_accessible;
  const bool hyp_ii = rep.hypotheses.faithful && rep.hypotheses.projective;
  rep.inclusion_i =
      hyp_i ? (rep.raw_i ? InclusionStatus::Holds : InclusionStatus::Fails)
            : InclusionStatus::ExpectedNA;
  rep.inclusion_ii =
      hyp_ii ? (rep.raw_ii ? InclusionStatus::Holds : InclusionStatus::Fails)
             : InclusionStatus::ExpectedNA;
  return rep;
}

AdjointDensityReport adjoint_density_check(const RModule& u, const RModule& v) {
  if (u.side() != Side::Left || v.side() != Side::Left)
    throw SideMismatch("adjoint_density_check: left modules only");
  AdjointDensityReport rep;
  HomBasis h = hom_space(u, v);
  HomBasis hd = hom_space(dual_module(v), dual_module(u));
  rep.hom_dim = h.maps.size();
  rep.dual_hom_dim = hd.maps.size();
  std::vector<Vec> adjoints;
  for (const auto& f : h.maps) adjoints.push_back(f.transpose().vectorize());
  Subspace image =
      Subspace::span_of(u.algebra().field(), u.dim() * v.dim(), adjoints);
  for (const auto& g : hd.maps) {
    if (!image.contains(g.vectorize())) {
      rep.non_adjoint_witness = g;
      break;
    }
  }
  rep.surjective = !rep.non_adjoint_witness.has_value();
  return rep;
}

}  // namespace arreg
