#include "arreg/modules.hpp"

namespace arreg {

RModule::RModule(AlgebraPtr algebra, Side side, std::vector<Matrix> action)
    : algebra_(std::move(algebra)), side_(side), action_(std::move(action)) {
  if (side_ == Side::TwoSided) throw SideMismatch("a module is Left or Right, not TwoSided");
  if (action_.size() != algebra_->dim())
    throw InvalidModule("need one action matrix per algebra basis element");
  dim_ = action_.front().rows();
  for (const auto& m : action_)
    if (m.rows() != dim_ || m.cols() != dim_ || !(m.field() == algebra_->field()))
      throw InvalidModule("action matrices must be square, equal-sized, over the algebra field");
}

Matrix RModule::action_of(const Vec& r) const {
  if (r.size() != algebra_->dim()) throw DimensionMismatch("element length != algebra dim");
  Matrix out(algebra_->field(), dim_, dim_);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!r[i].is_zero()) out = out + action_[i] * r[i];
  return out;
}

ModuleValidationReport RModule::validate() const {
  ModuleValidationReport rep;
  const std::size_t n = algebra_->dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix lhs = action_[i] * action_[j];
      Matrix rhs(algebra_->field(), dim_, dim_);
      // left: a_i (a_j u) = (a_i a_j) u; right: (u a_i) a_j = u (a_i a_j) reversed
      const auto& prod = side_ == Side::Left ? algebra_->basis_product(i, j)
                                             : algebra_->basis_product(j, i);
      for (const auto& [k, c] : prod) rhs = rhs + action_[k] * c;
      if (!(lhs == rhs)) rep.representation_violations.emplace_back(i, j);
    }
  rep.unit_ok = action_of(algebra_->unit()).is_identity();
  return rep;
}

RModule regular_module(AlgebraPtr a, Side side) {
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Vec e = vec_unit(a->field(), a->dim(), i);
    action.push_back(side == Side::Left ? a->left_mult_matrix(e) : a->right_mult_matrix(e));
  }
  return RModule(std::move(a), side, std::move(action));
}

RModule power_module(const RModule& u, std::size_t k) {
  if (k == 0) throw InvalidModule("power_module: k must be >= 1");
  const std::size_t m = u.dim();
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < u.algebra().dim(); ++i) {
    Matrix big(u.algebra().field(), m * k, m * k);
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) big.at(t * m + r, t * m + c) = u.action(i).at(r, c);
    action.push_back(std::move(big));
  }
  return RModule(u.algebra_ptr(), u.side(), std::move(action));
}

std::vector<std::size_t> generating_basis_indices(const StructureAlgebra& a) {
  const std::size_t n = a.dim();
  Subspace span = Subspace::span_of(a.field(), n, {a.unit()});
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < n; ++i) {
    if (span.contains(vec_unit(a.field(), n, i))) continue;
    gens.push_back(i);
    span = span.sum(Subspace::span_of(a.field(), n, {vec_unit(a.field(), n, i)}));
    for (;;) {  // close under products
      std::vector<Vec> grown;
      for (std::size_t r = 0; r < span.dim(); ++r)
        for (std::size_t s = 0; s < span.dim(); ++s)
          grown.push_back(a.multiply(span.basis_vector(r), span.basis_vector(s)));
      Subspace next = span.sum(Subspace::span_of(a.field(), n, grown));
      if (next.dim() == span.dim()) break;
      span = std::move(next);
    }
    if (span.dim() == n) break;
  }
  return gens;
}

namespace {

// Kernel of F -> (F A_i - B_i F)_i over the given index set, unvectorized.
std::vector<Matrix> intertwiner_basis(const FieldSpec& field, const std::vector<Matrix>& a_ops,
                                      const std::vector<Matrix>& b_ops,
                                      const std::vector<std::size_t>& idx, std::size_t mu,
                                      std::size_t mv) {
  // unknowns: F (mv x mu), row-major
  Matrix sys(field, idx.size() * mv * mu, mv * mu);
  std::size_t row = 0;
  for (std::size_t t : idx) {
    const Matrix& a = a_ops[t];
    const Matrix& b = b_ops[t];
    for (std::size_t r = 0; r < mv; ++r)
      for (std::size_t c = 0; c < mu; ++c) {
        // (F a)[r][c] - (b F)[r][c] = 0
        for (std::size_t s = 0; s < mu; ++s)
          if (!a.at(s, c).is_zero()) sys.at(row, r * mu + s) += a.at(s, c);
        for (std::size_t s = 0; s < mv; ++s)
          if (!b.at(r, s).is_zero()) sys.at(row, s * mu + c) -= b.at(r, s);
        ++row;
      }
  }
  Subspace ker = mat_kernel(sys);
  std::vector<Matrix> maps;
  for (std::size_t i = 0; i < ker.dim(); ++i) {
    Matrix f(field, mv, mu);
    const Vec v = ker.basis_vector(i);
    for (std::size_t r = 0; r < mv; ++r)
      for (std::size_t c = 0; c < mu; ++c) f.at(r, c) = v[r * mu + c];
    maps.push_back(std::move(f));
  }
  return maps;
}

Subspace operator_span_of(const FieldSpec& field, const std::vector<Matrix>& ops,
                          std::size_t m) {
  std::vector<Vec> vecs;
  for (const auto& op : ops) vecs.push_back(op.vectorize());
  return Subspace::span_of(field, m * m, vecs);
}

EndoAlgebra endo_from_operators(const FieldSpec& field, std::vector<Matrix> ops, std::size_t m) {
  const std::size_t d = ops.size();
  Matrix coords(field, m * m, d);
  for (std::size_t j = 0; j < d; ++j) {
    Vec v = ops[j].vectorize();
    for (std::size_t i = 0; i < m * m; ++i) coords.at(i, j) = v[i];
  }
  // all products and the identity in one elimination; the recorded
  // convention: e_i * e_j acts as mat(e_j) mat(e_i)
  Matrix rhs(field, m * m, d * d + 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec v = (ops[j] * ops[i]).vectorize();
      for (std::size_t r = 0; r < m * m; ++r) rhs.at(r, i * d + j) = v[r];
    }
  for (std::size_t r = 0; r < m; ++r) rhs.at(r * m + r, d * d) = field.one();
  auto sol = solve_linear_multi(coords, rhs);
  if (!sol) throw Error("endomorphism span is not multiplicatively closed or lacks the identity");
  std::vector<MuEntry> mu;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (!sol->at(k, i * d + j).is_zero()) mu.push_back({i, j, k, sol->at(k, i * d + j)});
  Vec unit(d, field.zero());
  for (std::size_t k = 0; k < d; ++k) unit[k] = sol->at(k, d * d);
  Subspace span = operator_span_of(field, ops, m);
  StructureAlgebra carrier(field, d, std::move(mu), std::move(unit));
  return EndoAlgebra{std::move(carrier), std::move(ops), std::move(span)};
}

// Greedy generating subset of a list of operators, closed under matrix
// products: commuting with the returned subset implies commuting with all.
std::vector<std::size_t> generating_subset_of_operators(const FieldSpec& field,
                                                        const std::vector<Matrix>& ops,
                                                        std::size_t m) {
  Subspace span = Subspace::span_of(field, m * m, {Matrix::identity(field, m).vectorize()});
  std::vector<Matrix> closure{Matrix::identity(field, m)};
  std::vector<std::size_t> gens;
  auto try_add = [&](const Matrix& cand) {
    Vec v = cand.vectorize();
    if (span.contains(v)) return false;
    span = span.sum(Subspace::span_of(field, m * m, {v}));
    closure.push_back(cand);
    return true;
  };
  for (std::size_t t = 0; t < ops.size(); ++t) {
    if (span.contains(ops[t].vectorize())) continue;
    gens.push_back(t);
    try_add(ops[t]);
    for (std::size_t lo = 0;;) {
      const std::size_t hi = closure.size();
      if (lo == hi) break;
      for (std::size_t i = 0; i < hi; ++i)
        for (std::size_t j = (i < lo ? lo : 0); j < hi; ++j) try_add(closure[i] * closure[j]);
      lo = hi;
    }
    if (span.dim() == ops.size()) break;  // ops are independent: span caps at their count
  }
  return gens;
}

}  // namespace

bool HomBasis::spans(const Matrix& f) const {
  if (maps.empty()) return f.is_zero();
  std::vector<Vec> vecs;
  for (const auto& m : maps) vecs.push_back(m.vectorize());
  Subspace s = Subspace::span_of(f.field(), target_dim * source_dim, vecs);
  return s.contains(f.vectorize());
}

HomBasis hom_space(const RModule& u, const RModule& v) {
  if (u.side() != v.side()) throw SideMismatch("hom_space: modules on different sides");
  if (!same_multiplication(u.algebra(), v.algebra()))
    throw DimensionMismatch("hom_space: modules over different algebras");
  auto gens = generating_basis_indices(u.algebra());
  if (gens.empty()) gens.push_back(0);  // one-dimensional algebra: unit only
  auto maps = intertwiner_basis(u.algebra().field(), u.actions(), v.actions(), gens, u.dim(),
                                v.dim());
  return HomBasis{u.dim(), v.dim(), std::move(maps)};
}

EndoAlgebra commutant(const RModule& u) {
  HomBasis h = hom_space(u, u);
  return endo_from_operators(u.algebra().field(), std::move(h.maps), u.dim());
}

BicommutantResult bicommutant(const RModule& u) {
  const FieldSpec field = u.algebra().field();
  // operators commuting with every commutant element; a generating subset of
  // the commutant is enough, and the carrier table is not needed for that
  HomBasis h = hom_space(u, u);
  auto gens = generating_subset_of_operators(field, h.maps, u.dim());
  std::vector<Matrix> gen_ops;
  for (std::size_t t : gens) gen_ops.push_back(h.maps[t]);
  if (gen_ops.empty()) gen_ops.push_back(Matrix::identity(field, u.dim()));
  std::vector<std::size_t> idx(gen_ops.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto ops = intertwiner_basis(field, gen_ops, gen_ops, idx, u.dim(), u.dim());
  EndoAlgebra biend = endo_from_operators(field, std::move(ops), u.dim());
  Subspace image = operator_span_of(u.algebra().field(), u.actions(), u.dim());
  bool inside = biend.operator_span.contains(image);
  bool equal = inside && biend.operator_span.dim() == image.dim();
  return BicommutantResult{std::move(biend), std::move(image), equal, inside};
}

IdealBasis trace_ideal(const RModule& u) {
  if (u.side() != Side::Left) throw SideMismatch("trace_ideal: left modules only");
  RModule reg = regular_module(u.algebra_ptr(), Side::Left);
  HomBasis h = hom_space(u, reg);
  std::vector<Vec> values;
  for (const auto& f : h.maps)
    for (std::size_t j = 0; j < u.dim(); ++j) values.push_back(f.col(j));
  Subspace t = Subspace::span_of(u.algebra().field(), u.algebra().dim(), values);
  return make_ideal(u.algebra(), std::move(t), Side::TwoSided);
}

ModuleFlags classify(const RModule& u) {
  if (u.side() != Side::Left) throw SideMismatch("classify: left modules only");
  const FieldSpec field = u.algebra().field();
  const std::size_t n = u.algebra().dim(), m = u.dim();
  ModuleFlags flags;

  // faithful: joint kernel of the linearized action
  Matrix act(field, m * m, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = u.action(i).vectorize();
    for (std::size_t r = 0; r < m * m; ++r) act.at(r, i) = v[r];
  }
  flags.faithful = mat_kernel(act).dim() == 0;

  // torsionless: the maps into R separate points
  RModule reg = regular_module(u.algebra_ptr(), Side::Left);
  HomBasis h = hom_space(u, reg);
  Matrix stacked(field, h.maps.size() * n, m);
  for (std::size_t s = 0; s < h.maps.size(); ++s)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < m; ++c) stacked.at(s * n + r, c) = h.maps[s].at(r, c);
  flags.torsionless = mat_kernel(stacked).dim() == 0;

  // trace ideal: T-accessible and generator
  std::vector<Vec> values;
  for (const auto& f : h.maps)
    for (std::size_t j = 0; j < m; ++j) values.push_back(f.col(j));
  Subspace t = Subspace::span_of(field, n, values);
  flags.generator = t.dim() == n;
  std::vector<Vec> tu;
  for (std::size_t b = 0; b < t.dim(); ++b) {
    Matrix op = u.action_of(t.basis_vector(b));
    for (std::size_t j = 0; j < m; ++j) tu.push_back(op.col(j));
  }
  flags.t_accessible = Subspace::span_of(field, m, tu).dim() == m;

  // projective: split the canonical surjection R^m -> U through Hom(U, R)^m
  const std::size_t dh = h.maps.size();
  Matrix sys(field, m * m, m * dh);
  for (std::size_t t_idx = 0; t_idx < m; ++t_idx)
    for (std::size_t s = 0; s < dh; ++s) {
      // contribution of c_{t,s}: for each j, act(f_s e_j) e_t
      for (std::size_t j = 0; j < m; ++j) {
        Vec r = h.maps[s].col(j);
        Vec w = u.action_of(r).col(t_idx);
        for (std::size_t coord = 0; coord < m; ++coord)
          sys.at(j * m + coord, t_idx * dh + s) = w[coord];
      }
    }
  Vec rhs(m * m, field.zero());
  for (std::size_t j = 0; j < m; ++j) rhs[j * m + j] = field.one();
  flags.projective = solve_linear(sys, rhs).has_value();
  return flags;
}

std::optional<Vec> density_check(const RModule& u, const Matrix& b, const std::vector<Vec>& g) {
  return density_check(u, b, g, bicommutant(u).biend.operator_span);
}

std::optional<Vec> density_check(const RModule& u, const Matrix& b, const std::vector<Vec>& g,
                                 const Subspace& biend_span) {
  if (!biend_span.contains(b.vectorize()))
    throw InvalidModule("density_check: operator is not in the bicommutant");
  const FieldSpec field = u.algebra().field();
  const std::size_t n = u.algebra().dim(), m = u.dim();
  Matrix sys(field, g.size() * m, n);
  Vec rhs(g.size() * m, field.zero());
  for (std::size_t t = 0; t < g.size(); ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      Vec w = u.action(i).mul_vec(g[t]);
      for (std::size_t coord = 0; coord < m; ++coord) sys.at(t * m + coord, i) = w[coord];
    }
    Vec target = b.mul_vec(g[t]);
    for (std::size_t coord = 0; coord < m; ++coord) rhs[t * m + coord] = target[coord];
  }
  return solve_linear(sys, rhs);
}

}  // namespace arreg
