#include <doctest.h>

#include "arreg/algebra.hpp"
#include "arreg/linalg.hpp"
#include "arreg/prng.hpp"

using namespace arreg;

namespace {
const FieldSpec Q = FieldSpec::rationals();

Matrix mat(const FieldSpec& f, std::vector<std::vector<long long>> rows) {
  std::vector<Vec> vrows;
  for (auto& r : rows) {
    Vec v;
    for (long long x : r) v.push_back(f.from_int(x));
    vrows.push_back(v);
  }
  return Matrix::from_rows(f, vrows, rows.empty() ? 0 : rows.front().size());
}

Vec ints(const FieldSpec& f, std::vector<long long> xs) {
  Vec v;
  for (long long x : xs) v.push_back(f.from_int(x));
  return v;
}
}  // namespace

TEST_CASE("scalar parsing and printing") {
  CHECK(Q.parse("3/6").str() == "1/2");
  CHECK(Q.parse("-4/2").str() == "-2");
  CHECK(Q.parse("7").str() == "7");
  CHECK_THROWS_AS(Q.parse("1.5"), ParseError);
  CHECK_THROWS_AS(Q.parse("1/0"), ParseError);
  CHECK_THROWS_AS(Q.parse(""), ParseError);

  FieldSpec f5 = FieldSpec::prime(5);
  CHECK(f5.parse("3").str() == "3");
  CHECK_THROWS_AS(f5.parse("5"), ParseError);
  CHECK_THROWS_AS(f5.parse("-1"), ParseError);
  CHECK((f5.from_int(3) * f5.from_int(4)).str() == "2");
  CHECK((f5.from_int(2).inverse()).str() == "3");
  CHECK_THROWS_AS(FieldSpec::prime(6), InvalidField);
  CHECK_THROWS_AS(FieldSpec::prime(1), InvalidField);

  // mixed-field arithmetic is rejected
  CHECK_THROWS_AS(Q.one() + f5.one(), DimensionMismatch);
  CHECK_THROWS_AS(f5.one() + FieldSpec::prime(7).one(), DimensionMismatch);
}

TEST_CASE("mat_rank on pinned examples") {
  CHECK(mat_rank(Matrix(Q, 3, 3)) == 0);
  CHECK(mat_rank(Matrix::identity(Q, 4)) == 4);
  // ones on the anti-diagonal i+j=3 (0-based)
  Matrix h(Q, 4, 4);
  for (std::size_t i = 0; i < 4; ++i) h.at(i, 3 - i) = Q.one();
  CHECK(mat_rank(h) == 4);
}

TEST_CASE("mat_kernel on pinned examples") {
  CHECK(mat_kernel(Matrix::identity(Q, 5)).dim() == 0);
  CHECK(mat_kernel(Matrix(Q, 2, 3)).dim() == 3);
  Subspace k = mat_kernel(mat(Q, {{1, 1}, {0, 0}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.basis_vector(0) == ints(Q, {1, -1}));
}

TEST_CASE("solve_linear on pinned examples") {
  Vec b = ints(Q, {4, -7, 9});
  auto x = solve_linear(Matrix::identity(Q, 3), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  CHECK_FALSE(solve_linear(Matrix(Q, 2, 2), ints(Q, {1, 0})).has_value());

  auto y = solve_linear(mat(Q, {{2, 0}, {0, 3}}), ints(Q, {1, 1}));
  REQUIRE(y.has_value());
  CHECK((*y)[0].str() == "1/2");
  CHECK((*y)[1].str() == "1/3");
}

TEST_CASE("subspace operations on pinned examples") {
  auto e = [&](std::size_t i) { return vec_unit(Q, 3, i); };
  Subspace s12 = Subspace::span_of(Q, 3, {e(0), e(1)});
  Subspace s23 = Subspace::span_of(Q, 3, {e(1), e(2)});
  Subspace meet = s12.intersect(s23);
  REQUIRE(meet.dim() == 1);
  CHECK(meet.basis_vector(0) == e(1));

  Subspace su = Subspace::span_of(Q, 3, {e(0)}).sum(Subspace::span_of(Q, 3, {e(1)}));
  CHECK(su == s12);

  CHECK(Subspace::full(Q, 3).contains(s23));
  CHECK_THROWS_AS(s12.sum(Subspace::zero(Q, 4)), AmbientMismatch);
}

TEST_CASE("canonical form: same subspace from different spanning sets") {
  Prng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    FieldSpec f = trial % 2 ? FieldSpec::prime(5) : Q;
    std::size_t n = 2 + rng.below(4);
    std::vector<Vec> gens;
    std::size_t g = 1 + rng.below(3);
    for (std::size_t i = 0; i < g; ++i) gens.push_back(rng.vector(f, n));
    Subspace s = Subspace::span_of(f, n, gens);
    // respan from random combinations of the originals
    std::vector<Vec> regen;
    for (std::size_t i = 0; i < g + 2; ++i) {
      Vec v = vec_zero(f, n);
      for (const auto& w : gens) v = vec_add(v, vec_scale(rng.scalar(f), w));
      regen.push_back(v);
    }
    Subspace s2 = Subspace::span_of(f, n, regen);
    CHECK(s.contains(s2));
    if (s2.dim() == s.dim()) CHECK(s == s2);
  }
}

TEST_CASE("rank-nullity and solve consistency on random matrices") {
  Prng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    FieldSpec f = trial % 2 ? FieldSpec::prime(7) : Q;
    std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
    Matrix m = rng.matrix(f, r, c);
    CHECK(mat_rank(m) + mat_kernel(m).dim() == c);

    Vec b = rng.vector(f, r);
    auto x = solve_linear(m, b);
    Matrix aug(f, r, c + 1);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) aug.at(i, j) = m.at(i, j);
      aug.at(i, c) = b[i];
    }
    if (x) {
      CHECK(m.mul_vec(*x) == b);
    } else {
      CHECK(mat_rank(aug) > mat_rank(m));  // b outside the column space
    }
    // kernel vectors actually annihilate
    Subspace k = mat_kernel(m);
    for (std::size_t i = 0; i < k.dim(); ++i)
      CHECK(vec_is_zero(m.mul_vec(k.basis_vector(i))));
  }
}

TEST_CASE("rank over Q agrees with rank mod a large prime for integer matrices") {
  // Entries are small integers, so all minors are below the Hadamard bound
  // (4^2 * 6)^3 < 1000003; a nonzero minor stays nonzero mod p.
  const FieldSpec fp = FieldSpec::prime(1000003);
  Prng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t r = 1 + rng.below(6), c = 1 + rng.below(6);
    Matrix mq(Q, r, c), mp(fp, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        long long v = rng.range(-4, 4);
        mq.at(i, j) = Q.from_int(v);
        mp.at(i, j) = fp.from_int(v);
      }
    CHECK(mat_rank(mq) == mat_rank(mp));
  }
}

TEST_CASE("subspace dimension formula dim(sum) + dim(meet) = dim + dim") {
  Prng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    FieldSpec f = trial % 3 ? Q : FieldSpec::prime(3);
    std::size_t n = 2 + rng.below(4);
    std::vector<Vec> g1, g2;
    for (std::size_t i = 0; i < 1 + rng.below(3); ++i) g1.push_back(rng.vector(f, n));
    for (std::size_t i = 0; i < 1 + rng.below(3); ++i) g2.push_back(rng.vector(f, n));
    Subspace a = Subspace::span_of(f, n, g1), b = Subspace::span_of(f, n, g2);
    CHECK(a.sum(b).dim() + a.intersect(b).dim() == a.dim() + b.dim());
    CHECK(a.sum(b).contains(a));
    CHECK(a.contains(a.intersect(b)));
  }
}

TEST_CASE("basis change round trip and invertibility check") {
  CHECK_THROWS(BasisChange::from_forward(mat(Q, {{1, 2}, {2, 4}})));
  Prng rng(5);
  BasisChange ch = random_basis_change(Q, 4, rng);
  CHECK((ch.forward() * ch.inverse()).is_identity());
  Vec v = rng.vector(Q, 4);
  CHECK(ch.to_old(ch.to_new(v)) == v);
  // functionals transform contravariantly: values are preserved
  Vec rho = rng.vector(Q, 4);
  Scalar lhs = Q.zero(), rhs = Q.zero();
  Vec vn = ch.to_new(v), rn = ch.functional_to_new(rho);
  for (std::size_t i = 0; i < 4; ++i) {
    lhs += rho[i] * v[i];
    rhs += rn[i] * vn[i];
  }
  CHECK(lhs == rhs);
}
