#include <doctest.h>

#include "arreg/family.hpp"
#include "arreg/json_io.hpp"

using namespace arreg;

namespace {
const FieldSpec Q = FieldSpec::rationals();
}

TEST_CASE("unitization_square_zero levels") {
  auto fam = builtin_family("unitization_square_zero", {}, Q);
  StructureAlgebra a4 = fam->truncate(4);
  CHECK(a4.dim() == 4);
  CHECK(a4.unit() == vec_unit(Q, 4, 0));
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t j = 1; j < 4; ++j)
      CHECK(vec_is_zero(a4.multiply(vec_unit(Q, 4, i), vec_unit(Q, 4, j))));
  CHECK(a4.validate().valid());
  CHECK_THROWS_AS(fam->truncate(1), BadLevel);
}

TEST_CASE("truncated_polynomial levels") {
  auto fam = builtin_family("truncated_polynomial", {}, FieldSpec::prime(5));
  StructureAlgebra p4 = fam->truncate(4);
  CHECK(p4.dim() == 4);
  // x * x^2 = x^3, x^2 * x^2 = 0
  FieldSpec f5 = FieldSpec::prime(5);
  CHECK(p4.multiply(vec_unit(f5, 4, 1), vec_unit(f5, 4, 2)) == vec_unit(f5, 4, 3));
  CHECK(vec_is_zero(p4.multiply(vec_unit(f5, 4, 2), vec_unit(f5, 4, 2))));
}

TEST_CASE("matrix_tower is constant and valid") {
  auto fam = builtin_family("matrix_tower", nlohmann::json{{"d", 2}}, Q);
  StructureAlgebra m2 = fam->truncate(3);
  CHECK(m2.dim() == 4);
  CHECK(m2.validate().valid());
  CHECK(same_multiplication(m2, fam->truncate(7)));
}

TEST_CASE("direct_sum interleaves coherently") {
  nlohmann::json params{{"first", {{"family", "unitization_square_zero"}}},
                        {"second", {{"family", "matrix_tower"}, {"params", {{"d", 2}}}}}};
  auto fam = builtin_family("direct_sum", params, Q);
  StructureAlgebra s = fam->truncate(3);  // dim 3 + 4
  CHECK(s.dim() == 7);
  CHECK(s.validate().valid());
  fam->truncate(5);  // exercises the tower check against level 4
}

TEST_CASE("square_zero_extension admissibility and validity") {
  nlohmann::json params{{"matrix_size", 2}, {"x_seed", 42}};
  auto fam = builtin_family("square_zero_extension", params, Q);
  std::size_t nx = fam->min_level() - 4;  // dim X
  CHECK(nx >= 1);
  CHECK_THROWS_AS(fam->truncate(fam->min_level() + 1), BadLevel);
  StructureAlgebra r = fam->truncate(fam->min_level() + 4);
  CHECK(r.validate().valid());
  // the M part squares to zero
  for (std::size_t i = nx; i < r.dim(); ++i)
    for (std::size_t j = nx; j < r.dim(); ++j)
      CHECK(vec_is_zero(r.multiply(vec_unit(Q, r.dim(), i), vec_unit(Q, r.dim(), j))));
}

TEST_CASE("square_zero_extension with an explicit x algebra") {
  nlohmann::json x = {{"field", {{"kind", "rational"}}},
                      {"dim", 2},
                      {"mu", nlohmann::json::array({nlohmann::json::array({0, 0, 0, "1"}),
                                                    nlohmann::json::array({0, 1, 1, "1"}),
                                                    nlohmann::json::array({1, 0, 1, "1"})})}};
  // F[t]/(t^2): unit solved automatically
  auto fam = builtin_family("square_zero_extension", nlohmann::json{{"x", x}}, Q);
  CHECK(fam->min_level() == 2 + 4);
  CHECK(fam->truncate(6).validate().valid());
}

TEST_CASE("scrambled families stay coherent towers") {
  for (const char* name : {"unitization_square_zero", "truncated_polynomial"}) {
    auto fam = builtin_family(name, nlohmann::json{{"scramble_seed", 7}}, Q);
    StructureAlgebra a8 = fam->truncate(8);  // verifies coherence vs level 7 internally
    CHECK(a8.validate().valid());
    auto plain = builtin_family(name, {}, Q);
    CHECK_FALSE(same_multiplication(a8, plain->truncate(8)));  // scramble does something
  }
  auto fam = builtin_family(
      "square_zero_extension",
      nlohmann::json{{"matrix_size", 2}, {"x_seed", 3}, {"scramble_seed", 11}},
      FieldSpec::prime(2));
  CHECK(fam->truncate(fam->min_level() + 8).validate().valid());
}

TEST_CASE("explicit tower with canonical and given quotients") {
  auto poly = builtin_family("truncated_polynomial", {}, Q);
  std::vector<StructureAlgebra> algs{poly->make(2), poly->make(3)};
  auto tower = explicit_tower(algs, {});
  CHECK(tower->truncate(3).dim() == 3);
  CHECK_THROWS_AS(tower->truncate(4), BadLevel);

  Matrix q(Q, 2, 3);
  q.at(0, 0) = Q.one();
  q.at(1, 1) = Q.one();
  auto tower2 = explicit_tower(algs, {q});
  CHECK(tower2->truncate(3).dim() == 3);

  // a non-multiplicative map is rejected
  Matrix bad(Q, 2, 3);
  bad.at(0, 0) = Q.one();
  bad.at(1, 2) = Q.one();
  auto tower3 = explicit_tower(algs, {bad});
  CHECK_THROWS(tower3->truncate(3));
}

TEST_CASE("unknown family and bad params") {
  CHECK_THROWS_AS(builtin_family("nope", {}, Q), UnknownFamily);
  CHECK_THROWS_AS(builtin_family("matrix_tower", nlohmann::json{{"x", 1}}, Q), BadParams);
  CHECK(builtin_family_list().size() == 5);
}
