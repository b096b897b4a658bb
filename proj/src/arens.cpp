#include "arreg/arens.hpp"

#include "arreg/duality.hpp"

namespace arreg {

std::pair<Vec, Vec> dual_actions(const StructureAlgebra& a, const Vec& s, const Vec& rho) {
  const std::size_t n = a.dim();
  if (s.size() != n || rho.size() != n)
    throw DimensionMismatch("dual_actions: coordinate length != algebra dim");
  Vec rho_s(n, a.field().zero()), s_rho(n, a.field().zero());
  // <a_j, rho.s> = <s, a_j.rho> = sum_k s_k rho(a_k a_j)
  // <a_j, s.rho> = <s, rho.a_j> = sum_k s_k rho(a_j a_k)
  for (const auto& e : a.mu()) {
    if (rho[e.k].is_zero()) continue;
    const Scalar v = e.c * rho[e.k];
    if (!s[e.i].is_zero()) rho_s[e.j] += s[e.i] * v;  // rho(a_i a_j) paired against s_i
    if (!s[e.j].is_zero()) s_rho[e.i] += s[e.j] * v;
  }
  return {std::move(rho_s), std::move(s_rho)};
}

std::pair<Vec, Vec> arens_products(const StructureAlgebra& a, const Vec& s, const Vec& t) {
  const std::size_t n = a.dim();
  if (s.size() != n || t.size() != n)
    throw DimensionMismatch("arens_products: coordinate length != algebra dim");
  Vec dot(n, a.field().zero()), diamond(n, a.field().zero());
  for (std::size_t k = 0; k < n; ++k) {
    const Vec lambda_k = vec_unit(a.field(), n, k);
    // <s.t, l_k> = <s, t.l_k> and <s<>t, l_k> = <t, l_k.s>
    const Vec t_lk = dual_actions(a, t, lambda_k).second;
    const Vec lk_s = dual_actions(a, s, lambda_k).first;
    for (std::size_t j = 0; j < n; ++j) {
      if (!s[j].is_zero() && !t_lk[j].is_zero()) dot[k] += s[j] * t_lk[j];
      if (!t[j].is_zero() && !lk_s[j].is_zero()) diamond[k] += t[j] * lk_s[j];
    }
  }
  return {std::move(dot), std::move(diamond)};
}

Subspace topological_center(const StructureAlgebra& a) {
  const std::size_t n = a.dim();
  // rows: for each t-basis element e_k and coordinate c, the linear form
  // s -> (s.e_k - s<>e_k)_c
  Matrix sys(a.field(), n * n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec ej = vec_unit(a.field(), n, j);
    for (std::size_t k = 0; k < n; ++k) {
      auto [dot, dia] = arens_products(a, ej, vec_unit(a.field(), n, k));
      Vec diff = vec_sub(dot, dia);
      for (std::size_t c = 0; c < n; ++c) sys.at(k * n + c, j) = diff[c];
    }
  }
  return mat_kernel(sys);
}

BiendDualReport biend_of_dual(const StructureAlgebra& a) {
  BiendDualReport rep;
  auto shared = std::make_shared<const StructureAlgebra>(a);
  RModule rstar = dual_module(regular_module(shared, Side::Left));
  const std::size_t n = a.dim();

  BicommutantResult bi = bicommutant(rstar);
  rep.biend_dim = bi.biend.operator_span.dim();

  Subspace center = topological_center(a);
  rep.center_dim = center.dim();
  std::vector<Vec> rmults;
  for (std::size_t i = 0; i < center.dim(); ++i)
    rmults.push_back(a.left_mult_matrix(center.basis_vector(i)).transpose().vectorize());
  Subspace rmult_span = Subspace::span_of(a.field(), n * n, rmults);
  rep.biend_equals_center_rmults = rmult_span == bi.biend.operator_span;

  EndoAlgebra lend = commutant(rstar);
  rep.lend_dim = lend.operator_span.dim();
  std::vector<Vec> lmults;
  for (std::size_t j = 0; j < n; ++j)
    lmults.push_back(
        a.right_mult_matrix(vec_unit(a.field(), n, j)).transpose().vectorize());
  Subspace lmult_span = Subspace::span_of(a.field(), n * n, lmults);
  rep.lend_equals_bidual_lmults = lmult_span == lend.operator_span;
  return rep;
}

Matrix rank_map(const StructureAlgebra& a, const Vec& rho) {
  const std::size_t n = a.dim();
  if (rho.size() != n) throw DimensionMismatch("rank_map: functional length != algebra dim");
  Matrix m(a.field(), n, n);
  for (const auto& e : a.mu())
    if (!rho[e.k].is_zero()) m.at(e.i, e.j) += e.c * rho[e.k];
  return m;
}

std::size_t dim_r_rho(const StructureAlgebra& a, const Vec& rho) {
  return mat_rank(rank_map(a, rho));
}

ExtensionVerdict normal_extension_check(const BilinearFormFamily& theta,
                                        const std::vector<std::size_t>& levels) {
  ExtensionVerdict v;
  for (std::size_t l : levels) v.ranks.push_back(mat_rank(theta.at_level(l)));
  if (v.ranks.size() < 2) {
    v.kind = ExtensionVerdict::Kind::Inconclusive;
    return v;
  }
  bool strictly_increasing = true, tail_stable = v.ranks[v.ranks.size() - 2] == v.ranks.back();
  std::size_t max_rank = 0;
  for (std::size_t i = 0; i < v.ranks.size(); ++i) {
    max_rank = std::max(max_rank, v.ranks[i]);
    if (i > 0 && v.ranks[i] <= v.ranks[i - 1]) strictly_increasing = false;
  }
  if (strictly_increasing) {
    v.kind = ExtensionVerdict::Kind::DoesNotExtend;
  } else if (tail_stable && max_rank == v.ranks.back()) {
    v.kind = ExtensionVerdict::Kind::Extends;
    v.bound = max_rank;
  } else {
    v.kind = ExtensionVerdict::Kind::Inconclusive;
  }
  return v;
}

}  // namespace arreg
