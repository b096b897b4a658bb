#include <doctest.h>

#include "arreg/family.hpp"
#include "arreg/radical.hpp"

using namespace arreg;

namespace {
const FieldSpec Q = FieldSpec::rationals();

StructureAlgebra upper_triangular(FieldSpec f) {
  Matrix e11(f, 2, 2), e12(f, 2, 2), e22(f, 2, 2);
  e11.at(0, 0) = f.one();
  e12.at(0, 1) = f.one();
  e22.at(1, 1) = f.one();
  return construct_from_generators(f, {e11, e12, e22}).algebra;
}
}  // namespace

TEST_CASE("charpoly on pinned matrices") {
  Matrix a(Q, 2, 2);
  a.at(0, 0) = Q.from_int(1);
  a.at(0, 1) = Q.from_int(2);
  a.at(1, 0) = Q.from_int(3);
  a.at(1, 1) = Q.from_int(4);
  auto p = charpoly(a);  // t^2 - 5t - 2
  REQUIRE(p.size() == 3);
  CHECK(p[0] == Q.one());
  CHECK(p[1] == Q.from_int(-5));
  CHECK(p[2] == Q.from_int(-2));

  CHECK(charpoly(Matrix::identity(Q, 3))[3] == Q.from_int(-1));  // (t-1)^3 constant term
  FieldSpec f2 = FieldSpec::prime(2);
  Matrix n(f2, 2, 2);
  n.at(0, 1) = f2.one();
  auto pn = charpoly(n);  // t^2
  CHECK(pn[1].is_zero());
  CHECK(pn[2].is_zero());
}

TEST_CASE("radical of semisimple algebras is zero") {
  for (FieldSpec f : {Q, FieldSpec::prime(2), FieldSpec::prime(5)}) {
    StructureAlgebra m2 = builtin_family("matrix_tower", nlohmann::json{{"d", 2}}, f)->truncate(1);
    CHECK(radical(m2).dim() == 0);
    StructureAlgebra f1 = builtin_family("truncated_polynomial", {}, f)->truncate(1);
    CHECK(radical(f1).dim() == 0);
  }
  // F_2[x]/(x^2+x) = F_2 x F_2 is semisimple although x is not a unit
  FieldSpec f2 = FieldSpec::prime(2);
  Matrix idem(f2, 2, 2);
  idem.at(0, 0) = f2.one();  // diag(1, 0)
  CHECK(radical(construct_from_generators(f2, {idem}).algebra).dim() == 0);
}

TEST_CASE("radical of truncated polynomial algebras") {
  for (FieldSpec f : {Q, FieldSpec::prime(2), FieldSpec::prime(3)}) {
    StructureAlgebra p4 = builtin_family("truncated_polynomial", {}, f)->truncate(4);
    Subspace r = radical(p4);
    CHECK(r.dim() == 3);
    for (std::size_t k = 1; k < 4; ++k) CHECK(r.contains(vec_unit(f, 4, k)));
    CHECK(nilpotency_index(p4, r) == 4);  // rad^4 = 0, rad^3 != 0
  }
}

TEST_CASE("radical of the upper triangular algebra") {
  for (FieldSpec f : {Q, FieldSpec::prime(2)}) {
    StructureAlgebra tri = upper_triangular(f);
    Subspace r = radical(tri);
    CHECK(r.dim() == 1);
    CHECK(nilpotency_index(tri, r) == 2);
  }
}

TEST_CASE("radical of the square-zero unitization is the whole tail") {
  for (FieldSpec f : {Q, FieldSpec::prime(2)}) {
    StructureAlgebra u6 = builtin_family("unitization_square_zero", {}, f)->truncate(6);
    Subspace r = radical(u6);
    CHECK(r.dim() == 5);
    CHECK_FALSE(r.contains(u6.unit()));
    CHECK(nilpotency_index(u6, r) == 2);
  }
}

TEST_CASE("radical respects direct sums and quotients are semisimple") {
  nlohmann::json params{{"first", {{"family", "unitization_square_zero"}}},
                        {"second", {{"family", "matrix_tower"}, {"params", {{"d", 2}}}}}};
  for (FieldSpec f : {Q, FieldSpec::prime(2)}) {
    StructureAlgebra s = builtin_family("direct_sum", params, f)->truncate(4);  // dim 4 + 4
    Subspace r = radical(s);
    CHECK(r.dim() == 3);  // only the square-zero tail
    QuotientResult q = quotient(s, IdealBasis{r, Side::TwoSided});
    CHECK(radical(q.algebra).dim() == 0);
  }
}

TEST_CASE("radical of scrambled algebras transports correctly") {
  Prng rng(91);
  for (FieldSpec f : {Q, FieldSpec::prime(2)}) {
    StructureAlgebra p4 = builtin_family("truncated_polynomial", {}, f)->truncate(4);
    BasisChange ch = random_basis_change(f, 4, rng);
    StructureAlgebra t = transform_algebra(p4, ch);
    Subspace r = radical(t);
    CHECK(r.dim() == 3);
    CHECK(ch.transform_to_old(r) == radical(p4));
  }
}
