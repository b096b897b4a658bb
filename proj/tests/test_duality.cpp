#include <doctest.h>

#include "arreg/duality.hpp"
#include "arreg/family.hpp"

using namespace arreg;

namespace {
const FieldSpec Q = FieldSpec::rationals();

AlgebraPtr make_ptr(StructureAlgebra a) {
  return std::make_shared<const StructureAlgebra>(std::move(a));
}

AlgebraPtr matrix_algebra(std::size_t d, FieldSpec f = Q) {
  return make_ptr(builtin_family("matrix_tower", nlohmann::json{{"d", d}}, f)->truncate(1));
}

AlgebraPtr dual_numbers() {
  return make_ptr(builtin_family("truncated_polynomial", {}, Q)->truncate(2));
}

RModule column_module(AlgebraPtr m, std::size_t d) {
  std::vector<Matrix> action;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Matrix e(m->field(), d, d);
      e.at(a, b) = m->field().one();
      action.push_back(std::move(e));
    }
  return RModule(std::move(m), Side::Left, std::move(action));
}

RModule x_to_zero_module(AlgebraPtr a) {
  std::vector<Matrix> action{Matrix::identity(a->field(), 1), Matrix(a->field(), 1, 1)};
  return RModule(std::move(a), Side::Left, std::move(action));
}
}  // namespace

TEST_CASE("dual_module flips the side and transposes the action") {
  auto m2 = matrix_algebra(2);
  RModule reg = regular_module(m2, Side::Left);
  RModule d = dual_module(reg);
  CHECK(d.side() == Side::Right);
  CHECK(d.dim() == reg.dim());
  CHECK(d.validate().valid());
  // R* with the usual right action agrees with the transposed left regular one
  for (std::size_t i = 0; i < 4; ++i) CHECK(d.action(i) == reg.action(i).transpose());

  RModule dd = dual_module(d);
  CHECK(dd.side() == Side::Left);
  for (std::size_t i = 0; i < 4; ++i) CHECK(dd.action(i) == reg.action(i));

  RModule cols = column_module(m2, 2);
  CHECK(dual_module(cols).validate().valid());
}

TEST_CASE("adjoint basics and anti-multiplicativity") {
  auto m2 = matrix_algebra(2);
  RModule reg = regular_module(m2, Side::Left);
  AdjointMap id = adjoint(Matrix::identity(Q, 4), reg, reg);
  CHECK(id.adjoint.is_identity());
  AdjointMap zero = adjoint(Matrix(Q, 4, 4), reg, reg);
  CHECK(zero.adjoint.is_zero());

  HomBasis ends = hom_space(reg, reg);
  Prng rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    Matrix f(Q, 4, 4), g(Q, 4, 4);
    for (const auto& e : ends.maps) {
      f = f + e * rng.scalar(Q);
      g = g + e * rng.scalar(Q);
    }
    AdjointMap af = adjoint(f, reg, reg), ag = adjoint(g, reg, reg);
    AdjointMap afg = adjoint(f * g, reg, reg);
    CHECK(afg.adjoint == ag.adjoint * af.adjoint);
  }

  Matrix not_hom(Q, 4, 4);
  not_hom.at(0, 1) = Q.one();
  if (!ends.spans(not_hom)) CHECK_THROWS_AS(adjoint(not_hom, reg, reg), NotAHomomorphism);
}

TEST_CASE("check_biend_inclusion on the regular module") {
  for (FieldSpec f : {Q, FieldSpec::prime(5)}) {
    auto m2 = matrix_algebra(2, f);
    Th3Report rep = check_biend_inclusion(regular_module(m2, Side::Left));
    CHECK(rep.hypotheses.faithful);
    CHECK(rep.hypotheses.torsionless);
    CHECK(rep.hypotheses.t_accessible);
    CHECK(rep.hypotheses.projective);
    CHECK(rep.inclusion_i == InclusionStatus::Holds);
    CHECK(rep.inclusion_ii == InclusionStatus::Holds);
    CHECK(rep.biend_dim == 4);       // Biend(R) = R
    CHECK(rep.biend_dual_dim == 4);  // Biend(R*) = R as well
  }
}

TEST_CASE("check_biend_inclusion on R + R and on a non-example") {
  auto m2 = matrix_algebra(2);
  Th3Report rep = check_biend_inclusion(power_module(regular_module(m2, Side::Left), 2));
  CHECK(rep.inclusion_i == InclusionStatus::Holds);
  CHECK(rep.inclusion_ii == InclusionStatus::Holds);

  Th3Report na = check_biend_inclusion(x_to_zero_module(dual_numbers()));
  CHECK_FALSE(na.hypotheses.faithful);
  CHECK(na.inclusion_i == InclusionStatus::ExpectedNA);
  CHECK(na.inclusion_ii == InclusionStatus::ExpectedNA);
  CHECK(na.biend_dim >= 1);  // raw data still reported
}

TEST_CASE("adjoint_density_check is exact at finite dimension") {
  auto m2 = matrix_algebra(2);
  RModule reg = regular_module(m2, Side::Left);
  AdjointDensityReport r1 = adjoint_density_check(reg, reg);
  CHECK(r1.surjective);
  CHECK(r1.hom_dim == 4);
  CHECK(r1.dual_hom_dim == 4);

  auto f1 = make_ptr(builtin_family("truncated_polynomial", {}, Q)->truncate(1));
  RModule planes(f1, Side::Left, {Matrix::identity(Q, 2)});
  AdjointDensityReport r2 = adjoint_density_check(planes, planes);
  CHECK(r2.surjective);
  CHECK(r2.hom_dim == 4);  // all 2x2 matrices

  RModule cols = column_module(m2, 2);
  CHECK(adjoint_density_check(cols, reg).surjective);
  CHECK(adjoint_density_check(reg, cols).surjective);
}

TEST_CASE("weak density through the dual on finite evaluation sets") {
  // for generators (where u lies in T*u), every bicommutant element of U*
  // matches a right multiplication on any finite set of (u, rho) pairs
  std::vector<RModule> mods;
  mods.push_back(regular_module(matrix_algebra(2), Side::Left));
  mods.push_back(power_module(regular_module(dual_numbers(), Side::Left), 2));
  mods.push_back(column_module(matrix_algebra(2, FieldSpec::prime(5)), 2));
  Prng rng(57);
  for (const auto& u : mods) {
    const FieldSpec f = u.algebra().field();
    const std::size_t n = u.algebra().dim(), m = u.dim();
    RModule ud = dual_module(u);
    BicommutantResult bi = bicommutant(ud);
    for (const auto& b : bi.biend.inclusion) {
      // H: up to 3 random (u, rho) pairs; solve <x, rho.r> = <x, rho.b> for r
      std::vector<std::pair<Vec, Vec>> h;
      for (std::size_t t = 0; t < 1 + rng.below(3); ++t)
        h.emplace_back(rng.vector(f, m), rng.vector(f, m));
      Matrix sys(f, h.size(), n);
      Vec rhs(h.size(), f.zero());
      for (std::size_t row = 0; row < h.size(); ++row) {
        const auto& [x, rho] = h[row];
        for (std::size_t i = 0; i < n; ++i) {
          Vec rho_ai = ud.action(i).mul_vec(rho);
          Scalar v = f.zero();
          for (std::size_t c = 0; c < m; ++c) v += rho_ai[c] * x[c];
          sys.at(row, i) = v;
        }
        Vec rho_b = b.mul_vec(rho);
        for (std::size_t c = 0; c < m; ++c) rhs[row] += rho_b[c] * x[c];
      }
      CHECK(solve_linear(sys, rhs).has_value());
    }
  }
}

TEST_CASE("duality is exact: hom dimensions match through adjoints") {
  Prng rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    FieldSpec f = trial % 2 ? FieldSpec::prime(3) : Q;
    auto alg = make_ptr(construct_from_generators(f, {rng.matrix(f, 2, 2)}).algebra);
    RModule u = regular_module(alg, Side::Left);
    RModule v = power_module(u, 1 + trial % 2);
    HomBasis h = hom_space(u, v);
    HomBasis hd = hom_space(dual_module(v), dual_module(u));
    CHECK(h.maps.size() == hd.maps.size());
    for (const auto& m : h.maps) CHECK(hd.spans(m.transpose()));
  }
}
