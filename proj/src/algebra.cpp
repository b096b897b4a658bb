#include "arreg/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace arreg {

std::string side_name(Side s) {
  switch (s) {
    case Side::Left:
      return "left";
    case Side::Right:
      return "right";
    default:
      return "two_sided";
  }
}

std::string ValidationReport::summary() const {
  if (valid()) return "valid";
  std::ostringstream os;
  os << associativity_violations.size() << " associativity violation(s)";
  if (!associativity_violations.empty()) {
    const auto& v = associativity_violations.front();
    os << ", first at (i,j,k,l)=(" << v[0] << "," << v[1] << "," << v[2] << "," << v[3] << ")";
  }
  if (!unit_failures.empty()) os << "; unit law fails at " << unit_failures.size() << " index(es)";
  return os.str();
}

StructureAlgebra::StructureAlgebra(FieldSpec field, std::size_t dim, std::vector<MuEntry> mu,
                                   Vec unit, std::vector<std::string> labels)
    : field_(field), dim_(dim), labels_(std::move(labels)), mu_(std::move(mu)),
      unit_(std::move(unit)) {
  if (dim_ == 0) throw InvalidAlgebra("algebra dimension must be >= 1");
  if (unit_.size() != dim_) throw InvalidAlgebra("unit vector length != dim");
  std::set<std::array<std::size_t, 3>> seen;
  for (const auto& e : mu_) {
    if (e.i >= dim_ || e.j >= dim_ || e.k >= dim_)
      throw InvalidAlgebra("structure constant index out of range");
    if (!seen.insert({e.i, e.j, e.k}).second)
      throw InvalidAlgebra("duplicate (i,j,k) structure constant entry");
  }
  std::sort(mu_.begin(), mu_.end(), [](const MuEntry& a, const MuEntry& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  if (labels_.empty()) {
    labels_.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("a" + std::to_string(i));
  }
  if (labels_.size() != dim_) throw InvalidAlgebra("label count != dim");
  table_.assign(dim_ * dim_, {});
  for (const auto& e : mu_) {
    if (!e.c.is_zero()) table_[e.i * dim_ + e.j].emplace_back(e.k, e.c);
  }
}

Vec StructureAlgebra::multiply(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DimensionMismatch("multiply: element length != algebra dim");
  Vec out(dim_, field_.zero());
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const Scalar f = x[i] * y[j];
      for (const auto& [k, c] : basis_product(i, j)) out[k] += f * c;
    }
  }
  return out;
}

Matrix StructureAlgebra::left_mult_matrix(const Vec& x) const {
  if (x.size() != dim_) throw DimensionMismatch("element length != algebra dim");
  Matrix m(field_, dim_, dim_);
  for (const auto& e : mu_) {
    if (!x[e.i].is_zero()) m.at(e.k, e.j) += x[e.i] * e.c;
  }
  return m;
}

Matrix StructureAlgebra::right_mult_matrix(const Vec& x) const {
  if (x.size() != dim_) throw DimensionMismatch("element length != algebra dim");
  Matrix m(field_, dim_, dim_);
  for (const auto& e : mu_) {
    if (!x[e.j].is_zero()) m.at(e.k, e.i) += x[e.j] * e.c;
  }
  return m;
}

ValidationReport StructureAlgebra::validate() const {
  ValidationReport rep;
  // (a_i a_j) a_k vs a_i (a_j a_k), coordinate by coordinate
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        Vec lhs(dim_, field_.zero());
        for (const auto& [m, c] : basis_product(i, j))
          for (const auto& [l, d] : basis_product(m, k)) lhs[l] += c * d;
        Vec rhs(dim_, field_.zero());
        for (const auto& [m, c] : basis_product(j, k))
          for (const auto& [l, d] : basis_product(i, m)) rhs[l] += c * d;
        for (std::size_t l = 0; l < dim_; ++l)
          if (lhs[l] != rhs[l]) rep.associativity_violations.push_back({i, j, k, l});
      }
  for (std::size_t j = 0; j < dim_; ++j) {
    Vec ej = vec_unit(field_, dim_, j);
    if (multiply(unit_, ej) != ej || multiply(ej, unit_) != ej) rep.unit_failures.push_back(j);
  }
  return rep;
}

std::optional<Vec> StructureAlgebra::solve_unit(const FieldSpec& field, std::size_t dim,
                                                const std::vector<MuEntry>& mu) {
  // sum_i u_i mu_{i,j,k} = delta_{jk} and sum_i u_i mu_{j,i,k} = delta_{jk}
  Matrix sys(field, 2 * dim * dim, dim);
  Vec rhs(2 * dim * dim, field.zero());
  for (const auto& e : mu) {
    sys.at(e.j * dim + e.k, e.i) += e.c;                  // left unit rows
    sys.at(dim * dim + e.i * dim + e.k, e.j) += e.c;      // right unit rows
  }
  for (std::size_t j = 0; j < dim; ++j) {
    rhs[j * dim + j] = field.one();
    rhs[dim * dim + j * dim + j] = field.one();
  }
  return solve_linear(sys, rhs);
}

bool is_ideal(const StructureAlgebra& a, const Subspace& s, Side side) {
  if (s.ambient() != a.dim()) throw AmbientMismatch("ideal ambient != algebra dim");
  for (std::size_t v = 0; v < s.dim(); ++v) {
    const Vec x = s.basis_vector(v);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const Vec e = vec_unit(a.field(), a.dim(), i);
      if (side != Side::Right && !s.contains(a.multiply(e, x))) return false;
      if (side != Side::Left && !s.contains(a.multiply(x, e))) return false;
    }
  }
  return true;
}

IdealBasis make_ideal(const StructureAlgebra& a, Subspace s, Side side) {
  if (!is_ideal(a, s, side))
    throw NotAnIdeal("subspace is not closed under " + side_name(side) + " multiplication");
  return IdealBasis{std::move(s), side};
}

IdealBasis ideal_closure(const StructureAlgebra& a, const std::vector<Vec>& seed, Side side) {
  Subspace s = Subspace::span_of(a.field(), a.dim(), seed);
  for (;;) {
    std::vector<Vec> next;
    for (std::size_t v = 0; v < s.dim(); ++v) {
      const Vec x = s.basis_vector(v);
      next.push_back(x);
      for (std::size_t i = 0; i < a.dim(); ++i) {
        const Vec e = vec_unit(a.field(), a.dim(), i);
        if (side != Side::Right) next.push_back(a.multiply(e, x));
        if (side != Side::Left) next.push_back(a.multiply(x, e));
      }
    }
    Subspace grown = Subspace::span_of(a.field(), a.dim(), next);
    if (grown.dim() == s.dim()) break;
    s = std::move(grown);
  }
  return IdealBasis{std::move(s), side};
}

QuotientResult quotient(const StructureAlgebra& a, const IdealBasis& j) {
  if (j.side != Side::TwoSided) throw NotAnIdeal("quotient requires a two-sided ideal");
  if (!is_ideal(a, j.subspace, Side::TwoSided))
    throw NotAnIdeal("quotient: closure verification failed");
  const std::size_t n = a.dim(), d = j.subspace.dim();
  if (j.subspace.contains(a.unit())) throw NotUnital("unit would map to zero in the quotient");
  const std::size_t q = n - d;
  const auto comp = j.subspace.complement_coords();

  Matrix proj(a.field(), q, n);
  for (std::size_t cidx = 0; cidx < n; ++cidx) {
    // coordinates of e_cidx modulo the ideal, read off at the complement
    Vec red = j.subspace.reduce(vec_unit(a.field(), n, cidx));
    for (std::size_t r = 0; r < q; ++r) proj.at(r, cidx) = red[comp[r]];
  }
  Matrix sect(a.field(), n, q);
  for (std::size_t r = 0; r < q; ++r) sect.at(comp[r], r) = a.field().one();

  std::vector<MuEntry> mu;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t jj = 0; jj < q; ++jj) {
      Vec prod = a.multiply(sect.col(i), sect.col(jj));
      Vec down = proj.mul_vec(prod);
      for (std::size_t k = 0; k < q; ++k)
        if (!down[k].is_zero()) mu.push_back({i, jj, k, down[k]});
    }
  Vec qunit = proj.mul_vec(a.unit());
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < q; ++r) labels.push_back(a.labels()[comp[r]]);
  StructureAlgebra alg(a.field(), q, std::move(mu), std::move(qunit), std::move(labels));
  return QuotientResult{std::move(alg), std::move(proj), std::move(sect)};
}

GeneratedAlgebra construct_from_generators(const FieldSpec& field,
                                           const std::vector<Matrix>& gens) {
  std::size_t d = gens.empty() ? 1 : gens.front().rows();
  for (const auto& g : gens)
    if (g.rows() != d || g.cols() != d)
      throw DimensionMismatch("generators must be square matrices of one size");

  std::vector<Matrix> basis;
  Subspace span = Subspace::zero(field, d * d);
  auto try_add = [&](const Matrix& m) {
    Vec v = m.vectorize();
    if (span.contains(v)) return false;
    span = span.sum(Subspace::span_of(field, d * d, {v}));
    basis.push_back(m);
    return true;
  };

  try_add(Matrix::identity(field, d));
  for (const auto& g : gens) try_add(g);
  // close under products; newly found elements join the sweep
  for (std::size_t lo = 0;;) {
    const std::size_t hi = basis.size();
    if (lo == hi) break;
    for (std::size_t i = 0; i < hi; ++i)
      for (std::size_t j = (i < lo ? lo : 0); j < hi; ++j) try_add(basis[i] * basis[j]);
    lo = hi;
  }

  const std::size_t n = basis.size();
  Matrix coords(field, d * d, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec v = basis[j].vectorize();
    for (std::size_t i = 0; i < d * d; ++i) coords.at(i, j) = v[i];
  }
  Matrix rhs(field, d * d, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec v = (basis[i] * basis[j]).vectorize();
      for (std::size_t r = 0; r < d * d; ++r) rhs.at(r, i * n + j) = v[r];
    }
  auto sol = solve_linear_multi(coords, rhs);
  if (!sol) throw Error("generated subalgebra closure is inconsistent");
  std::vector<MuEntry> mu;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!sol->at(k, i * n + j).is_zero()) mu.push_back({i, j, k, sol->at(k, i * n + j)});
  Vec unit = vec_unit(field, n, 0);  // identity matrix is basis element 0
  StructureAlgebra alg(field, n, std::move(mu), std::move(unit));
  return GeneratedAlgebra{std::move(alg), std::move(basis)};
}

StructureAlgebra transform_algebra(const StructureAlgebra& a, const BasisChange& change) {
  if (change.dim() != a.dim()) throw DimensionMismatch("basis change dim != algebra dim");
  const std::size_t n = a.dim();
  std::vector<MuEntry> mu;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec bi = change.forward().col(i);
    for (std::size_t j = 0; j < n; ++j) {
      Vec prod = a.multiply(bi, change.forward().col(j));
      Vec coeffs = change.to_new(prod);
      for (std::size_t k = 0; k < n; ++k)
        if (!coeffs[k].is_zero()) mu.push_back({i, j, k, coeffs[k]});
    }
  }
  return StructureAlgebra(a.field(), n, std::move(mu), change.to_new(a.unit()));
}

StructureAlgebra opposite_algebra(const StructureAlgebra& a) {
  std::vector<MuEntry> mu;
  for (const auto& e : a.mu()) mu.push_back({e.j, e.i, e.k, e.c});
  return StructureAlgebra(a.field(), a.dim(), std::move(mu), a.unit(), a.labels());
}

bool same_multiplication(const StructureAlgebra& a, const StructureAlgebra& b) {
  if (!(a.field() == b.field()) || a.dim() != b.dim() || a.unit() != b.unit()) return false;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec pa(n, a.field().zero()), pb(n, a.field().zero());
      for (const auto& [k, c] : a.basis_product(i, j)) pa[k] += c;
      for (const auto& [k, c] : b.basis_product(i, j)) pb[k] += c;
      if (pa != pb) return false;
    }
  return true;
}

BasisChange random_basis_change(const FieldSpec& field, std::size_t n, Prng& rng) {
  for (;;) {
    Matrix m = rng.matrix(field, n, n, 2);
    if (mat_rank(m) == n) return BasisChange::from_forward(std::move(m));
  }
}

}  // namespace arreg
