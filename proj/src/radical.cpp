#include "arreg/radical.hpp"

namespace arreg {

std::vector<Scalar> charpoly(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("charpoly: square matrices only");
  const FieldSpec f = a.field();
  const std::size_t n = a.rows();
  std::vector<Scalar> p{f.one()};
  for (std::size_t r = 1; r <= n; ++r) {
    std::vector<Scalar> t(r + 1, f.zero());
    t[0] = f.one();
    t[1] = -a.at(r - 1, r - 1);
    if (r >= 2) {
      Vec cur(r - 1, f.zero());
      for (std::size_t i = 0; i < r - 1; ++i) cur[i] = a.at(i, r - 1);
      for (std::size_t k = 2; k <= r; ++k) {
        Scalar val = f.zero();
        for (std::size_t i = 0; i < r - 1; ++i) val += a.at(r - 1, i) * cur[i];
        t[k] = -val;
        if (k < r) {
          Vec nxt(r - 1, f.zero());
          for (std::size_t i = 0; i < r - 1; ++i)
            for (std::size_t j = 0; j < r - 1; ++j)
              if (!a.at(i, j).is_zero() && !cur[j].is_zero()) nxt[i] += a.at(i, j) * cur[j];
          cur = std::move(nxt);
        }
      }
    }
    std::vector<Scalar> pn(r + 1, f.zero());
    for (std::size_t i = 0; i <= r; ++i)
      for (std::size_t j = 0; j < p.size() && j <= i; ++j)
        if (!t[i - j].is_zero() && !p[j].is_zero()) pn[i] += t[i - j] * p[j];
    p = std::move(pn);
  }
  return p;
}

std::size_t nilpotency_index(const StructureAlgebra& a, const Subspace& s) {
  Subspace power = s;
  for (std::size_t k = 1; k <= a.dim() + 1; ++k) {
    if (power.dim() == 0) return k;
    std::vector<Vec> next;
    for (std::size_t i = 0; i < power.dim(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j)
        next.push_back(a.multiply(power.basis_vector(i), s.basis_vector(j)));
    Subspace grown = Subspace::span_of(a.field(), a.dim(), next);
    if (grown.dim() >= power.dim() && grown == power) return 0;  // stabilized nonzero
    power = std::move(grown);
  }
  return power.dim() == 0 ? a.dim() + 1 : 0;
}

namespace {

Scalar trace_of_product(const Matrix& a, const Matrix& b) {
  Scalar t = a.field().zero();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!a.at(r, c).is_zero() && !b.at(c, r).is_zero()) t += a.at(r, c) * b.at(c, r);
  return t;
}

Subspace radical_char0(const StructureAlgebra& a) {
  const std::size_t n = a.dim();
  std::vector<Matrix> lmult;
  for (std::size_t i = 0; i < n; ++i)
    lmult.push_back(a.left_mult_matrix(vec_unit(a.field(), n, i)));
  Matrix gram(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram.at(i, j) = trace_of_product(lmult[i], lmult[j]);
  return mat_kernel(gram);
}

Subspace radical_charp(const StructureAlgebra& a) {
  const std::size_t n = a.dim();
  const std::uint64_t p = a.field().modulus();
  Subspace current = Subspace::full(a.field(), n);
  std::uint64_t pk = 1;
  while (pk <= n) {
    // refine: {x in current : c_{pk}(charpoly L_{x y}) = 0 for all y in current};
    // on the chain this coefficient is linear in x over the prime field
    const std::size_t d = current.dim();
    if (d == 0) break;
    Matrix cond(a.field(), d, d);
    for (std::size_t yi = 0; yi < d; ++yi) {
      const Vec y = current.basis_vector(yi);
      for (std::size_t xi = 0; xi < d; ++xi) {
        Vec prod = a.multiply(current.basis_vector(xi), y);
        auto coeffs = charpoly(a.left_mult_matrix(prod));
        cond.at(yi, xi) = coeffs[static_cast<std::size_t>(pk)];
      }
    }
    Subspace kernel_in_coords = mat_kernel(cond);
    std::vector<Vec> vecs;
    for (std::size_t i = 0; i < kernel_in_coords.dim(); ++i) {
      const Vec c = kernel_in_coords.basis_vector(i);
      Vec v = vec_zero(a.field(), n);
      for (std::size_t xi = 0; xi < d; ++xi)
        if (!c[xi].is_zero()) v = vec_add(v, vec_scale(c[xi], current.basis_vector(xi)));
      vecs.push_back(std::move(v));
    }
    current = Subspace::span_of(a.field(), n, vecs);
    pk *= p;
  }
  return current;
}

}  // namespace

Subspace radical(const StructureAlgebra& a) {
  Subspace rad = a.field().is_rational() ? radical_char0(a) : radical_charp(a);
  if (!is_ideal(a, rad, Side::TwoSided))
    throw Error("radical computation produced a non-ideal");
  if (rad.dim() > 0 && nilpotency_index(a, rad) == 0)
    throw Error("radical computation produced a non-nilpotent subspace");
  return rad;
}

}  // namespace arreg
