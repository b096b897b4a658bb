#include "arreg/regularity.hpp"

#include <algorithm>

#include "arreg/radical.hpp"

namespace arreg {

std::vector<Vec> sampler_functionals(const StructureAlgebra& a, const SamplerBudget& budget,
                                     std::size_t level) {
  const std::size_t n = a.dim();
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(vec_unit(a.field(), n, i));
  out.push_back(Vec(n, a.field().one()));
  Prng rng(budget.seed ^ static_cast<std::uint64_t>(level));
  for (std::size_t s = 0; s < budget.random_samples; ++s)
    out.push_back(rng.vector(a.field(), n));
  return out;
}

namespace {

// dim(R.rho) through the translate route: span of the functionals
// x -> rho(x a_i), evaluated with the sparse multiplication table.
std::size_t translate_span_dim(const StructureAlgebra& a, const Vec& rho) {
  const std::size_t n = a.dim();
  std::vector<Vec> translates;
  for (std::size_t i = 0; i < n; ++i) {
    Vec t(n, a.field().zero());
    for (std::size_t k = 0; k < n; ++k) {
      Vec prod = a.multiply(vec_unit(a.field(), n, k), vec_unit(a.field(), n, i));
      Scalar v = a.field().zero();
      for (std::size_t l = 0; l < n; ++l)
        if (!prod[l].is_zero() && !rho[l].is_zero()) v += prod[l] * rho[l];
      t[k] = v;
    }
    translates.push_back(std::move(t));
  }
  return Subspace::span_of(a.field(), n, translates).dim();
}

LevelRankRecord profile_level(const StructureAlgebra& alg, std::size_t level,
                              const SamplerBudget& budget) {
  LevelRankRecord rec;
  rec.level = level;
  rec.dim = alg.dim();
  bool have = false;
  for (const Vec& rho : sampler_functionals(alg, budget, level)) {
    std::size_t r = mat_rank(rank_map(alg, rho));
    if (!have || r > rec.max_rank_found ||
        (r == rec.max_rank_found && vec_cmp(rho, rec.witness) < 0)) {
      if (!have || r > rec.max_rank_found) {
        rec.max_rank_found = r;
        rec.witness = rho;
      } else {
        rec.witness = rho;
      }
      have = true;
    }
  }
  rec.translate_span_dim = translate_span_dim(alg, rec.witness);
  return rec;
}

}  // namespace

RankMapProfile rank_profile(const TruncationFamily& f, const std::vector<std::size_t>& levels,
                            const SamplerBudget& budget) {
  RankMapProfile prof;
  prof.family_name = f.name();
  prof.budget = budget;
  std::vector<std::size_t> sorted(levels);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t level : sorted)
    prof.records.push_back(profile_level(f.truncate(level), level, budget));
  return prof;
}

namespace {

// The three-basis bookkeeping of the extraction: the matrices
// [rho(b_i c_j)] = L * [rho(a_i a_j)] * R, where the b-basis consists of the
// rows of L and the c-basis of the columns of R.
struct CornerNormalizer {
  const StructureAlgebra& a;
  Matrix left, right;

  explicit CornerNormalizer(const StructureAlgebra& alg)
      : a(alg), left(Matrix::identity(alg.field(), alg.dim())),
        right(Matrix::identity(alg.field(), alg.dim())) {}

  Matrix current(const Vec& rho) const { return left * rank_map(a, rho) * right; }

  bool deep_is_zero(const Vec& rho, std::size_t h) const {
    Matrix m = current(rho);
    for (std::size_t i = h; i < a.dim(); ++i)
      for (std::size_t j = h; j < a.dim(); ++j)
        if (!m.at(i, j).is_zero()) return false;
    return true;
  }

  std::size_t deep_rank(const Vec& rho, std::size_t h) const {
    Matrix m = current(rho);
    return mat_rank(m.submatrix(h, h, a.dim() - h, a.dim() - h));
  }

  // Row/column operations on indices >= h putting the deep block of
  // current(rho) into the form diag(I_r, 0); returns r.
  std::size_t normalize_corner(const Vec& rho, std::size_t h) {
    const FieldSpec f = a.field();
    const std::size_t n = a.dim(), q = n - h;
    Matrix deep = current(rho).submatrix(h, h, q, q);
    Matrix rowops(f, 0, 0);
    EchelonForm e = rref_recorded(std::move(deep), rowops);
    const std::size_t r = e.rank;
    Matrix erow = Matrix::identity(f, n);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) erow.at(h + i, h + j) = rowops.at(i, j);
    left = erow * left;

    // permute pivot columns to the front, then clear the rest of the top rows
    Matrix perm(f, q, q);
    std::vector<bool> is_pivot(q, false);
    for (std::size_t t = 0; t < r; ++t) {
      perm.at(e.pivot_cols[t], t) = f.one();
      is_pivot[e.pivot_cols[t]] = true;
    }
    std::size_t pos = r;
    for (std::size_t c = 0; c < q; ++c)
      if (!is_pivot[c]) perm.at(c, pos++) = f.one();
    Matrix permuted = e.mat * perm;
    Matrix clear = Matrix::identity(f, q);
    for (std::size_t t = 0; t < r; ++t)
      for (std::size_t j = r; j < q; ++j) clear.at(t, j) = -permuted.at(t, j);
    Matrix ecol = Matrix::identity(f, n);
    Matrix g = perm * clear;
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) ecol.at(h + i, h + j) = g.at(i, j);
    right = right * ecol;
    return r;
  }
};

std::vector<Scalar> scan_values(const FieldSpec& f, std::size_t n0) {
  std::vector<Scalar> out;
  std::size_t count = 2 * n0 + 3;
  if (f.is_finite()) count = std::min<std::size_t>(count, f.modulus());
  for (std::size_t t = 0; t < count; ++t) out.push_back(f.from_int(static_cast<long long>(t)));
  return out;
}

bool span_square_zero(const StructureAlgebra& a, const Subspace& s) {
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j)
      if (!vec_is_zero(a.multiply(s.basis_vector(i), s.basis_vector(j)))) return false;
  return true;
}

Subspace span_products(const StructureAlgebra& a, const Subspace& s, const Subspace& t) {
  std::vector<Vec> prods;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      prods.push_back(a.multiply(s.basis_vector(i), t.basis_vector(j)));
  return Subspace::span_of(a.field(), a.dim(), prods);
}

// {x in parent : x*w = w*x = 0 for all w in each of the listed spans}
Subspace two_sided_annihilator_within(const StructureAlgebra& a, const Subspace& parent,
                                      const std::vector<const Subspace*>& spans) {
  const std::size_t n = a.dim(), d = parent.dim();
  std::size_t rows = 0;
  for (const Subspace* s : spans) rows += 2 * n * s->dim();
  Matrix sys(a.field(), rows, d);
  std::size_t row = 0;
  for (const Subspace* s : spans)
    for (std::size_t wi = 0; wi < s->dim(); ++wi) {
      const Vec w = s->basis_vector(wi);
      for (std::size_t b = 0; b < d; ++b) {
        Vec xw = a.multiply(parent.basis_vector(b), w);
        Vec wx = a.multiply(w, parent.basis_vector(b));
        for (std::size_t c = 0; c < n; ++c) {
          sys.at(row + c, b) = xw[c];
          sys.at(row + n + c, b) = wx[c];
        }
      }
      row += 2 * n;
    }
  Subspace ker = mat_kernel(sys);
  std::vector<Vec> vecs;
  for (std::size_t i = 0; i < ker.dim(); ++i) {
    Vec coeff = ker.basis_vector(i);
    Vec v = vec_zero(a.field(), n);
    for (std::size_t b = 0; b < d; ++b)
      if (!coeff[b].is_zero()) v = vec_add(v, vec_scale(coeff[b], parent.basis_vector(b)));
    vecs.push_back(std::move(v));
  }
  return Subspace::span_of(a.field(), n, vecs);
}

// Radical-guided sweeps: enlarge j by any direction whose two-sided closure
// keeps the square zero, until a fixpoint.  Every acceptance is re-verified,
// so the result is a valid certificate ideal regardless of sweep order.
Subspace enlarge_square_zero(const StructureAlgebra& a, Subspace j) {
  Subspace rad = radical(a);
  Subspace rad2 = span_products(a, rad, rad);
  for (;;) {
    bool changed = false;
    Subspace pool = two_sided_annihilator_within(a, rad, {&rad2, &j});
    for (std::size_t i = 0; i < pool.dim(); ++i) {
      Vec v = pool.basis_vector(i);
      if (j.contains(v)) continue;
      std::vector<Vec> seed;
      for (std::size_t b = 0; b < j.dim(); ++b) seed.push_back(j.basis_vector(b));
      seed.push_back(v);
      IdealBasis grown = ideal_closure(a, seed, Side::TwoSided);
      if (span_square_zero(a, grown.subspace)) {
        j = grown.subspace;
        changed = true;
      }
    }
    if (!changed) return j;
  }
}

// {s in inner : x*s in inner for every standard complement vector x} when
// on_left, symmetrically s*x otherwise.
Subspace multiplier_shrink(const StructureAlgebra& a, const Subspace& inner, bool on_left) {
  const std::size_t n = a.dim(), d = inner.dim();
  const auto comp = inner.complement_coords();
  Matrix sys(a.field(), comp.size() * comp.size(), d);
  for (std::size_t t = 0; t < comp.size(); ++t) {
    const Vec x = vec_unit(a.field(), n, comp[t]);
    for (std::size_t b = 0; b < d; ++b) {
      Vec prod = on_left ? a.multiply(x, inner.basis_vector(b))
                         : a.multiply(inner.basis_vector(b), x);
      Vec residual = inner.reduce(prod);
      for (std::size_t c = 0; c < comp.size(); ++c)
        sys.at(t * comp.size() + c, b) = residual[comp[c]];
    }
  }
  Subspace ker = mat_kernel(sys);
  std::vector<Vec> vecs;
  for (std::size_t i = 0; i < ker.dim(); ++i) {
    Vec coeff = ker.basis_vector(i);
    Vec v = vec_zero(a.field(), n);
    for (std::size_t b = 0; b < d; ++b)
      if (!coeff[b].is_zero()) v = vec_add(v, vec_scale(coeff[b], inner.basis_vector(b)));
    vecs.push_back(std::move(v));
  }
  return Subspace::span_of(a.field(), n, vecs);
}

}  // namespace

SquareZeroCertificate extract_square_zero_ideal(const StructureAlgebra& a, const Vec& witness,
                                                std::size_t n0, const SamplerBudget& budget) {
  const FieldSpec f = a.field();
  const std::size_t n = a.dim();
  if (witness.size() != n) throw DimensionMismatch("extract: witness length != algebra dim");
  if (mat_rank(rank_map(a, witness)) != n0)
    throw ExtractionFailed("claimed n0 does not equal the witness rank map rank");
  if (n0 == 0) throw ExtractionFailed("witness rank 0: pick a functional with nonzero rank map");

  std::vector<Vec> lambdas;
  for (std::size_t k = 0; k < n; ++k) lambdas.push_back(vec_unit(f, n, k));

  CornerNormalizer norm(a);
  std::size_t h = 0;
  std::size_t prev_rank = n + 1;
  Vec prev_witness = witness;
  Vec cur = witness;
  bool used_compression = false;

  for (;;) {
    const std::size_t r = norm.normalize_corner(cur, h);
    if (r >= prev_rank) {
      // the compression did not strictly decrease: the proof's contradiction
      // case; some combination of the two witnesses must beat n0
      for (const Scalar& al : scan_values(f, n0))
        for (const Scalar& be : scan_values(f, n0)) {
          if (al.is_zero() && be.is_zero()) continue;
          Vec cand = vec_add(vec_scale(al, prev_witness), vec_scale(be, cur));
          std::size_t rk = mat_rank(rank_map(a, cand));
          if (rk > n0) throw NotMaximalRank(cand, rk);
        }
      throw ExtractionFailed("compression rank failed to decrease with no violation found");
    }
    prev_rank = r;
    h += r;

    std::vector<std::size_t> bad;
    for (std::size_t k = 0; k < n; ++k)
      if (!norm.deep_is_zero(lambdas[k], h)) bad.push_back(k);
    if (bad.empty()) break;  // corners vanish beyond depth h

    // a true maximum forces rank(t*mu(witness) + mu(lambda_k)) <= n0 for all t
    for (std::size_t k : bad)
      for (const Scalar& t : scan_values(f, n0)) {
        Vec cand = vec_add(vec_scale(t, witness), lambdas[k]);
        std::size_t rk = mat_rank(rank_map(a, cand));
        if (rk > n0) throw NotMaximalRank(cand, rk);
      }
    if (f.is_rational())
      throw ExtractionFailed(
          "nonzero corner over Q without a rank violation; this contradicts the rank bound");

    // finite field: compress and search the sampler for the next witness
    std::vector<Vec> pool = sampler_functionals(a, budget, n);
    for (std::size_t k : bad) pool.push_back(lambdas[k]);
    bool have = false;
    std::size_t best_rank = 0;
    Vec best;
    for (const Vec& rho : pool) {
      std::size_t full = mat_rank(rank_map(a, rho));
      if (full > n0) throw NotMaximalRank(rho, full);
      std::size_t dr = norm.deep_rank(rho, h);
      if (dr == 0) continue;
      if (!have || dr > best_rank || (dr == best_rank && vec_cmp(rho, best) < 0)) {
        have = true;
        best_rank = dr;
        best = rho;
      }
    }
    if (!have) throw ExtractionFailed("corner nonzero but no functional sees it");
    used_compression = true;
    prev_witness = cur;
    cur = best;
  }

  // R1 = span{b_i : i >= h} (rows of L), R2 = span{c_j : j >= h} (columns of R)
  std::vector<Vec> r1v, r2v;
  for (std::size_t i = h; i < n; ++i) {
    r1v.push_back(norm.left.row(i));
    r2v.push_back(norm.right.col(i));
  }
  Subspace r1 = Subspace::span_of(f, n, r1v), r2 = Subspace::span_of(f, n, r2v);
  for (std::size_t i = 0; i < r1.dim(); ++i)
    for (std::size_t j = 0; j < r2.dim(); ++j)
      if (!vec_is_zero(a.multiply(r1.basis_vector(i), r2.basis_vector(j))))
        throw ExtractionFailed("R1 * R2 != 0 after corner vanishing");
  Subspace r0 = r1.intersect(r2);

  // S = {s in R0 : X s in R0}; L = R S is then a left ideal inside R0
  Subspace s = multiplier_shrink(a, r0, /*on_left=*/true);
  std::vector<Vec> lseed;
  for (std::size_t b = 0; b < s.dim(); ++b) {
    lseed.push_back(s.basis_vector(b));
    for (std::size_t i = 0; i < n; ++i)
      lseed.push_back(a.multiply(vec_unit(f, n, i), s.basis_vector(b)));
  }
  Subspace lideal = Subspace::span_of(f, n, lseed);
  // two-sided shrink inside L, then close
  Subspace s2 = multiplier_shrink(a, lideal, /*on_left=*/false);
  std::vector<Vec> jseed;
  for (std::size_t b = 0; b < s2.dim(); ++b) jseed.push_back(s2.basis_vector(b));
  Subspace j0 = jseed.empty() ? Subspace::zero(f, n)
                              : ideal_closure(a, jseed, Side::TwoSided).subspace;
  if (!span_square_zero(a, j0))
    throw ExtractionFailed("constructed two-sided ideal does not square to zero");

  Subspace j = enlarge_square_zero(a, j0);

  SquareZeroCertificate cert{
      n,
      IdealBasis{j, Side::TwoSided},
      n - j.dim(),
      {is_ideal(a, j, Side::TwoSided), span_square_zero(a, j), true},
      n0,
      witness,
      used_compression};
  if (!cert.verified.is_ideal || !cert.verified.square_zero)
    throw ExtractionFailed("final certificate failed verification");
  return cert;
}

bool verify_certificate(const StructureAlgebra& a, const SquareZeroCertificate& cert) {
  if (cert.ideal.side != Side::TwoSided) return false;
  if (cert.level != a.dim() || cert.ideal.subspace.ambient() != a.dim()) return false;
  if (!is_ideal(a, cert.ideal.subspace, Side::TwoSided)) return false;
  if (!span_square_zero(a, cert.ideal.subspace)) return false;
  return cert.codim == a.dim() - cert.ideal.subspace.dim();
}

namespace {

SquareZeroCertificate extract_with_retries(const StructureAlgebra& alg,
                                           const LevelRankRecord& rec,
                                           const SamplerBudget& budget) {
  Vec witness = rec.witness;
  std::size_t n0 = rec.max_rank_found;
  for (std::size_t attempt = 0; attempt <= alg.dim() + 1; ++attempt) {
    try {
      return extract_square_zero_ideal(alg, witness, n0, budget);
    } catch (const NotMaximalRank& better) {
      witness = better.witness;
      n0 = better.rank;
    }
  }
  throw ExtractionFailed("witness retries exceeded the dimension bound");
}

}  // namespace

SquareZeroCertificate extract_auto(const StructureAlgebra& a, const SamplerBudget& budget) {
  return extract_with_retries(a, profile_level(a, a.dim(), budget), budget);
}

RegularityVerdict decide_regularity(const TruncationFamily& f, const DecisionBudget& budget) {
  if (budget.levels.size() < 3)
    throw BadParams("decide_regularity: need at least 3 levels");
  RegularityVerdict verdict;
  SamplerBudget sb{budget.seed, budget.random_samples};
  verdict.profile = rank_profile(f, budget.levels, sb);
  const auto& recs = verdict.profile.records;

  bool strictly_increasing = true;
  for (std::size_t i = 1; i < recs.size(); ++i)
    if (recs[i].max_rank_found <= recs[i - 1].max_rank_found) strictly_increasing = false;
  if (strictly_increasing) {
    verdict.kind = RegularityVerdict::Kind::NotRegular;
    // soundness cross-check: the two rank routes must agree at each level
    for (const auto& r : recs)
      if (r.translate_span_dim != r.max_rank_found) {
        verdict.kind = RegularityVerdict::Kind::Inconclusive;
        verdict.note = "rank routes disagree";
      }
    return verdict;
  }

  const bool tail_stable =
      recs.size() >= 2 && recs[recs.size() - 2].max_rank_found == recs.back().max_rank_found;
  if (!tail_stable) {
    verdict.kind = RegularityVerdict::Kind::Inconclusive;
    verdict.note = "rank profile neither strictly increasing nor stabilized";
    return verdict;
  }

  for (const auto& rec : recs) {
    StructureAlgebra alg = f.truncate(rec.level);
    try {
      SquareZeroCertificate cert = extract_with_retries(alg, rec, sb);
      if (!verify_certificate(alg, cert)) {
        verdict.kind = RegularityVerdict::Kind::Inconclusive;
        verdict.note = "certificate failed independent verification at level " +
                       std::to_string(rec.level);
        return verdict;
      }
      verdict.certificates.push_back(std::move(cert));
    } catch (const ExtractionFailed& e) {
      verdict.kind = RegularityVerdict::Kind::Inconclusive;
      verdict.note = std::string("extraction failed at level ") + std::to_string(rec.level) +
                     ": " + e.what();
      return verdict;
    }
  }
  for (const auto& cert : verdict.certificates)
    if (cert.codim != verdict.certificates.front().codim) {
      verdict.kind = RegularityVerdict::Kind::Inconclusive;
      verdict.note = "certificate codimension varies across levels";
      return verdict;
    }
  // tower compatibility: the canonical projection carries each certificate
  // onto the one below it
  for (std::size_t i = 0; i + 1 < verdict.certificates.size(); ++i) {
    const auto& lo = verdict.certificates[i];
    const auto& hi = verdict.certificates[i + 1];
    std::vector<Vec> proj;
    for (std::size_t b = 0; b < hi.ideal.subspace.dim(); ++b) {
      Vec v = hi.ideal.subspace.basis_vector(b);
      proj.push_back(Vec(v.begin(), v.begin() + lo.level));
    }
    Subspace image = Subspace::span_of(f.field(), lo.level, proj);
    if (!(image == lo.ideal.subspace)) {
      verdict.kind = RegularityVerdict::Kind::Inconclusive;
      verdict.note = "certificates are not tower compatible";
      return verdict;
    }
  }
  verdict.kind = RegularityVerdict::Kind::Regular;
  verdict.codim = verdict.certificates.front().codim;
  return verdict;
}

SubalgebraReport subalgebra_check(const TruncationFamily& f, const GeneratorRule& rule,
                                  const DecisionBudget& budget) {
  SubalgebraReport rep;
  SamplerBudget sb{budget.seed, budget.random_samples};
  std::vector<std::size_t> sorted(budget.levels);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  for (std::size_t level : sorted) {
    StructureAlgebra alg = f.truncate(level);
    const std::size_t n = alg.dim();
    // rule elements, identical prefix coordinates at every level
    std::vector<Vec> gens;
    for (const auto& sv : rule.sparse) {
      Vec v = vec_zero(alg.field(), n);
      for (const auto& [idx, c] : sv) {
        if (idx >= n) throw BadParams("generator rule index exceeds the level dimension");
        v[idx] = c;
      }
      gens.push_back(std::move(v));
    }
    if (rule.seed) {
      if (rule.max_index > n) throw BadParams("generator rule max_index exceeds the dimension");
      Prng rng(*rule.seed ^ 0x5eedull);
      for (std::size_t g = 0; g < rule.count; ++g) {
        Vec v = vec_zero(alg.field(), n);
        for (std::size_t i = 0; i < rule.max_index; ++i) v[i] = rng.scalar(alg.field(), 3);
        gens.push_back(std::move(v));
      }
    }
    std::vector<Matrix> ops;
    for (const auto& g : gens) ops.push_back(alg.left_mult_matrix(g));
    GeneratedAlgebra sub = construct_from_generators(alg.field(), ops);

    SubalgebraLevelRecord rec;
    rec.level = level;
    rec.subalgebra_dim = sub.algebra.dim();
    rec.parent_max_rank = profile_level(alg, level, sb).max_rank_found;
    rec.subalgebra_max_rank = profile_level(sub.algebra, level, sb).max_rank_found;
    if (rec.subalgebra_max_rank > rec.parent_max_rank) rep.bounded_by_parent = false;
    rep.records.push_back(rec);
  }
  return rep;
}

}  // namespace arreg
