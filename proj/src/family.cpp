#include "arreg/family.hpp"

#include <algorithm>

#include "arreg/json_io.hpp"

namespace arreg {

namespace {

constexpr std::size_t kLevelScanBound = 4096;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  return z ^ (z >> 27);
}

void require_keys(const nlohmann::json& params, std::initializer_list<const char*> allowed) {
  if (params.is_null()) return;
  if (!params.is_object()) throw BadParams("family params must be a JSON object");
  for (auto it = params.begin(); it != params.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw BadParams("unknown family parameter: " + it.key());
  }
}

std::optional<std::uint64_t> scramble_of(const nlohmann::json& params) {
  if (params.is_object() && params.contains("scramble_seed"))
    return params.at("scramble_seed").get<std::uint64_t>();
  return std::nullopt;
}

}  // namespace

std::vector<std::size_t> TruncationFamily::admissible_up_to(std::size_t level) const {
  std::vector<std::size_t> out;
  for (std::size_t n = min_level(); n <= level; ++n)
    if (admissible(n)) out.push_back(n);
  return out;
}

Matrix TruncationFamily::scramble_matrix(std::size_t dim, std::size_t level) const {
  // Block lower triangular along the birth filtration: column group c has
  // support in row groups >= c, with invertible diagonal blocks.  Streams are
  // seeded per column group, so the matrix for a lower level is the upper-left
  // corner of the matrix for any higher one.
  const auto groups = admissible_up_to(level);
  std::vector<std::size_t> starts, sizes;
  std::size_t prev = 0;
  for (std::size_t g : groups) {
    starts.push_back(prev);
    sizes.push_back(dim_at(g) - prev);
    prev = dim_at(g);
  }
  Matrix s(field_, dim, dim);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    if (sizes[c] == 0) continue;
    Prng rng(mix_seed(*scramble_seed_, c));
    for (;;) {  // invertible diagonal block
      Matrix d = rng.matrix(field_, sizes[c], sizes[c], 2);
      if (mat_rank(d) == sizes[c]) {
        for (std::size_t i = 0; i < sizes[c]; ++i)
          for (std::size_t j = 0; j < sizes[c]; ++j)
            s.at(starts[c] + i, starts[c] + j) = d.at(i, j);
        break;
      }
    }
    for (std::size_t r = c + 1; r < groups.size(); ++r)
      for (std::size_t i = 0; i < sizes[r]; ++i)
        for (std::size_t j = 0; j < sizes[c]; ++j)
          s.at(starts[r] + i, starts[c] + j) = rng.scalar(field_, 2);
  }
  return s;
}

StructureAlgebra TruncationFamily::make(std::size_t level) const {
  if (!admissible(level))
    throw BadLevel("level " + std::to_string(level) + " not admissible for family " + name_);
  StructureAlgebra raw = make_raw(level);
  if (!scramble_seed_) return raw;
  return transform_algebra(raw,
                           BasisChange::from_forward(scramble_matrix(raw.dim(), level)));
}

void TruncationFamily::verify_coherence(const StructureAlgebra& upper, std::size_t upper_level,
                                        std::size_t lower_level) const {
  (void)upper_level;
  const std::size_t dlow = dim_at(lower_level);
  std::vector<Vec> tail;
  for (std::size_t k = dlow; k < upper.dim(); ++k)
    tail.push_back(vec_unit(field_, upper.dim(), k));
  Subspace tail_span = Subspace::span_of(field_, upper.dim(), tail);
  QuotientResult q = quotient(upper, IdealBasis{tail_span, Side::TwoSided});
  if (!same_multiplication(q.algebra, make(lower_level)))
    throw Error("tower coherence failed for family " + name_ + " between levels " +
                std::to_string(lower_level) + " and " + std::to_string(upper_level));
}

StructureAlgebra TruncationFamily::truncate(std::size_t level) const {
  StructureAlgebra alg = make(level);
  ValidationReport rep = alg.validate();
  if (!rep.valid())
    throw InvalidAlgebra("family " + name_ + " level " + std::to_string(level) + ": " +
                         rep.summary());
  for (std::size_t p = level; p-- > min_level();) {
    if (!admissible(p)) continue;
    if (dim_at(p) < alg.dim()) verify_coherence(alg, level, p);
    break;
  }
  return alg;
}

Matrix TruncationFamily::quotient_map(std::size_t upper, std::size_t lower) const {
  if (!admissible(upper) || !admissible(lower) || dim_at(lower) > dim_at(upper))
    throw BadLevel("bad level pair for quotient map");
  Matrix q(field_, dim_at(lower), dim_at(upper));
  for (std::size_t i = 0; i < dim_at(lower); ++i) q.at(i, i) = field_.one();
  return q;
}

namespace {

class UnitizationSquareZero final : public TruncationFamily {
 public:
  UnitizationSquareZero(FieldSpec field, std::optional<std::uint64_t> seed)
      : TruncationFamily("unitization_square_zero", field, seed) {}
  bool admissible(std::size_t level) const override { return level >= 2; }
  std::size_t dim_at(std::size_t level) const override { return level; }
  std::size_t min_level() const override { return 2; }

 protected:
  StructureAlgebra make_raw(std::size_t n) const override {
    std::vector<MuEntry> mu;
    const Scalar one = field().one();
    for (std::size_t j = 0; j < n; ++j) mu.push_back({0, j, j, one});
    for (std::size_t i = 1; i < n; ++i) mu.push_back({i, 0, i, one});
    std::vector<std::string> labels{"1"};
    for (std::size_t i = 1; i < n; ++i) labels.push_back("a" + std::to_string(i + 1));
    return StructureAlgebra(field(), n, std::move(mu), vec_unit(field(), n, 0),
                            std::move(labels));
  }
};

class TruncatedPolynomial final : public TruncationFamily {
 public:
  TruncatedPolynomial(FieldSpec field, std::optional<std::uint64_t> seed)
      : TruncationFamily("truncated_polynomial", field, seed) {}
  bool admissible(std::size_t level) const override { return level >= 1; }
  std::size_t dim_at(std::size_t level) const override { return level; }
  std::size_t min_level() const override { return 1; }

 protected:
  StructureAlgebra make_raw(std::size_t n) const override {
    std::vector<MuEntry> mu;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; i + j < n; ++j) mu.push_back({i, j, i + j, field().one()});
    std::vector<std::string> labels{"1"};
    for (std::size_t i = 1; i < n; ++i) labels.push_back("x^" + std::to_string(i));
    return StructureAlgebra(field(), n, std::move(mu), vec_unit(field(), n, 0),
                            std::move(labels));
  }
};

class MatrixTower final : public TruncationFamily {
 public:
  MatrixTower(FieldSpec field, std::size_t d, std::optional<std::uint64_t> seed)
      : TruncationFamily("matrix_tower", field, seed), d_(d) {
    if (d_ == 0) throw BadParams("matrix_tower: d must be >= 1");
  }
  bool admissible(std::size_t level) const override { return level >= 1; }
  std::size_t dim_at(std::size_t) const override { return d_ * d_; }
  std::size_t min_level() const override { return 1; }

 protected:
  StructureAlgebra make_raw(std::size_t) const override {
    std::vector<MuEntry> mu;
    const Scalar one = field().one();
    for (std::size_t a = 0; a < d_; ++a)
      for (std::size_t b = 0; b < d_; ++b)
        for (std::size_t c = 0; c < d_; ++c)
          mu.push_back({a * d_ + b, b * d_ + c, a * d_ + c, one});
    Vec unit = vec_zero(field(), d_ * d_);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < d_; ++a)
      for (std::size_t b = 0; b < d_; ++b) {
        labels.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
        if (a == b) unit[a * d_ + b] = one;
      }
    return StructureAlgebra(field(), d_ * d_, std::move(mu), std::move(unit),
                            std::move(labels));
  }

 private:
  std::size_t d_;
};

class DirectSum final : public TruncationFamily {
 public:
  DirectSum(FieldSpec field, std::unique_ptr<TruncationFamily> a,
            std::unique_ptr<TruncationFamily> b, std::optional<std::uint64_t> seed)
      : TruncationFamily("direct_sum", field, seed), a_(std::move(a)), b_(std::move(b)) {
    for (std::size_t n = std::max(a_->min_level(), b_->min_level()); n < kLevelScanBound; ++n)
      if (a_->admissible(n) && b_->admissible(n)) {
        min_ = n;
        return;
      }
    throw BadParams("direct_sum: children share no admissible level");
  }
  bool admissible(std::size_t level) const override {
    return a_->admissible(level) && b_->admissible(level);
  }
  std::size_t dim_at(std::size_t level) const override {
    return a_->dim_at(level) + b_->dim_at(level);
  }
  std::size_t min_level() const override { return min_; }

 protected:
  StructureAlgebra make_raw(std::size_t level) const override {
    StructureAlgebra a = a_->make(level), b = b_->make(level);
    // interleave bases by birth level so index tails stay ideals
    const auto groups = admissible_up_to(level);
    std::vector<std::size_t> map_a(a.dim()), map_b(b.dim());
    std::size_t pos = 0, pa = 0, pb = 0;
    for (std::size_t g : groups) {
      for (std::size_t v = pa; v < a_->dim_at(g); ++v) map_a[v] = pos++;
      for (std::size_t v = pb; v < b_->dim_at(g); ++v) map_b[v] = pos++;
      pa = a_->dim_at(g);
      pb = b_->dim_at(g);
    }
    const std::size_t n = a.dim() + b.dim();
    std::vector<MuEntry> mu;
    for (const auto& e : a.mu()) mu.push_back({map_a[e.i], map_a[e.j], map_a[e.k], e.c});
    for (const auto& e : b.mu()) mu.push_back({map_b[e.i], map_b[e.j], map_b[e.k], e.c});
    Vec unit = vec_zero(field(), n);
    for (std::size_t i = 0; i < a.dim(); ++i) unit[map_a[i]] = a.unit()[i];
    for (std::size_t i = 0; i < b.dim(); ++i) unit[map_b[i]] = b.unit()[i];
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < a.dim(); ++i) labels[map_a[i]] = "A:" + a.labels()[i];
    for (std::size_t i = 0; i < b.dim(); ++i) labels[map_b[i]] = "B:" + b.labels()[i];
    return StructureAlgebra(field(), n, std::move(mu), std::move(unit), std::move(labels));
  }

 private:
  std::unique_ptr<TruncationFamily> a_, b_;
  std::size_t min_ = 0;
};

// R = X (+) M with M squared zero: X is a unital matrix subalgebra, M a
// direct sum of copies of the full matrix bimodule it acts on.
class SquareZeroExtension final : public TruncationFamily {
 public:
  SquareZeroExtension(FieldSpec field, StructureAlgebra x, std::vector<Matrix> emb,
                      std::optional<std::uint64_t> seed)
      : TruncationFamily("square_zero_extension", field, seed), x_(std::move(x)),
        emb_(std::move(emb)) {
    e_ = emb_.front().rows();
  }
  bool admissible(std::size_t level) const override {
    return level > x_.dim() && (level - x_.dim()) % (e_ * e_) == 0;
  }
  std::size_t dim_at(std::size_t level) const override { return level; }
  std::size_t min_level() const override { return x_.dim() + e_ * e_; }

 protected:
  StructureAlgebra make_raw(std::size_t level) const override {
    const std::size_t nx = x_.dim(), copies = (level - nx) / (e_ * e_);
    auto idx = [&](std::size_t t, std::size_t a, std::size_t b) {
      return nx + t * e_ * e_ + a * e_ + b;
    };
    std::vector<MuEntry> mu(x_.mu());
    for (std::size_t i = 0; i < nx; ++i) {
      const Matrix& g = emb_[i];
      for (std::size_t t = 0; t < copies; ++t)
        for (std::size_t a = 0; a < e_; ++a)
          for (std::size_t b = 0; b < e_; ++b) {
            // x_i * E_ab = sum_r g[r][a] E_rb ; E_ab * x_i = sum_s g[b][s] E_as
            for (std::size_t r = 0; r < e_; ++r)
              if (!g.at(r, a).is_zero()) mu.push_back({i, idx(t, a, b), idx(t, r, b), g.at(r, a)});
            for (std::size_t s = 0; s < e_; ++s)
              if (!g.at(b, s).is_zero()) mu.push_back({idx(t, a, b), i, idx(t, a, s), g.at(b, s)});
          }
    }
    Vec unit = vec_zero(field(), level);
    for (std::size_t i = 0; i < nx; ++i) unit[i] = x_.unit()[i];
    std::vector<std::string> labels(x_.labels());
    for (std::size_t t = 0; t < copies; ++t)
      for (std::size_t a = 0; a < e_; ++a)
        for (std::size_t b = 0; b < e_; ++b)
          labels.push_back("m" + std::to_string(t + 1) + "_" + std::to_string(a + 1) +
                           std::to_string(b + 1));
    return StructureAlgebra(field(), level, std::move(mu), std::move(unit), std::move(labels));
  }

 private:
  StructureAlgebra x_;
  std::vector<Matrix> emb_;
  std::size_t e_;
};

class ExplicitTower final : public TruncationFamily {
 public:
  ExplicitTower(std::vector<StructureAlgebra> algs, std::vector<Matrix> quotients)
      : TruncationFamily("tower", algs.front().field(), std::nullopt), algs_(std::move(algs)),
        quotients_(std::move(quotients)) {
    for (std::size_t i = 0; i + 1 < algs_.size(); ++i)
      if (algs_[i].dim() >= algs_[i + 1].dim())
        throw BadParams("tower: dimensions must be strictly increasing");
    if (!quotients_.empty() && quotients_.size() != algs_.size() - 1)
      throw BadParams("tower: need one quotient map per consecutive pair");
  }
  bool admissible(std::size_t level) const override { return find(level) != algs_.size(); }
  std::size_t dim_at(std::size_t level) const override { return level; }
  std::size_t min_level() const override { return algs_.front().dim(); }

 protected:
  StructureAlgebra make_raw(std::size_t level) const override { return algs_[find(level)]; }

  void verify_coherence(const StructureAlgebra& upper, std::size_t upper_level,
                        std::size_t lower_level) const override {
    if (quotients_.empty()) {
      TruncationFamily::verify_coherence(upper, upper_level, lower_level);
      return;
    }
    const std::size_t iu = find(upper_level), il = find(lower_level);
    if (iu != il + 1)
      throw BadLevel("tower: explicit quotients only link consecutive levels");
    const Matrix& q = quotients_[il];
    const StructureAlgebra& lower = algs_[il];
    if (q.rows() != lower.dim() || q.cols() != upper.dim())
      throw BadParams("tower: quotient map shape mismatch");
    if (mat_rank(q) != lower.dim()) throw Error("tower: quotient map is not surjective");
    if (q.mul_vec(upper.unit()) != lower.unit())
      throw Error("tower: quotient map does not preserve the unit");
    for (std::size_t i = 0; i < upper.dim(); ++i)
      for (std::size_t j = 0; j < upper.dim(); ++j) {
        Vec ei = vec_unit(field(), upper.dim(), i), ej = vec_unit(field(), upper.dim(), j);
        if (q.mul_vec(upper.multiply(ei, ej)) != lower.multiply(q.mul_vec(ei), q.mul_vec(ej)))
          throw Error("tower: quotient map is not multiplicative");
      }
  }

 private:
  std::size_t find(std::size_t level) const {
    for (std::size_t i = 0; i < algs_.size(); ++i)
      if (algs_[i].dim() == level) return i;
    return algs_.size();
  }
  std::vector<StructureAlgebra> algs_;
  std::vector<Matrix> quotients_;
};

}  // namespace

std::unique_ptr<TruncationFamily> builtin_family(const std::string& name,
                                                 const nlohmann::json& params,
                                                 const FieldSpec& field) {
  const auto seed = scramble_of(params);
  if (name == "unitization_square_zero") {
    require_keys(params, {"scramble_seed"});
    return std::make_unique<UnitizationSquareZero>(field, seed);
  }
  if (name == "truncated_polynomial") {
    require_keys(params, {"scramble_seed"});
    return std::make_unique<TruncatedPolynomial>(field, seed);
  }
  if (name == "matrix_tower") {
    require_keys(params, {"d", "scramble_seed"});
    std::size_t d = params.is_object() && params.contains("d") ? params.at("d").get<std::size_t>()
                                                               : 2;
    return std::make_unique<MatrixTower>(field, d, seed);
  }
  if (name == "direct_sum") {
    require_keys(params, {"first", "second", "scramble_seed"});
    if (!params.is_object() || !params.contains("first") || !params.contains("second"))
      throw BadParams("direct_sum: needs \"first\" and \"second\" child specs");
    auto child = [&](const nlohmann::json& spec) {
      if (!spec.is_object() || !spec.contains("family"))
        throw BadParams("direct_sum child: needs a \"family\" name");
      return builtin_family(spec.at("family").get<std::string>(),
                            spec.contains("params") ? spec.at("params") : nlohmann::json(),
                            field);
    };
    return std::make_unique<DirectSum>(field, child(params.at("first")),
                                       child(params.at("second")), seed);
  }
  if (name == "square_zero_extension") {
    require_keys(params, {"matrix_size", "x_seed", "x_gens", "x", "scramble_seed"});
    if (params.is_object() && params.contains("x")) {
      StructureAlgebra x = algebra_from_json(params.at("x"));
      if (!(x.field() == field)) throw BadParams("square_zero_extension: x field mismatch");
      if (!x.validate().valid()) throw BadParams("square_zero_extension: x is not a valid algebra");
      std::vector<Matrix> emb;  // regular representation
      for (std::size_t i = 0; i < x.dim(); ++i)
        emb.push_back(x.left_mult_matrix(vec_unit(field, x.dim(), i)));
      return std::make_unique<SquareZeroExtension>(field, std::move(x), std::move(emb), seed);
    }
    std::size_t d = params.is_object() && params.contains("matrix_size")
                        ? params.at("matrix_size").get<std::size_t>()
                        : 2;
    std::uint64_t x_seed =
        params.is_object() && params.contains("x_seed") ? params.at("x_seed").get<std::uint64_t>()
                                                        : 1;
    std::size_t x_gens =
        params.is_object() && params.contains("x_gens") ? params.at("x_gens").get<std::size_t>()
                                                        : 1;
    if (d == 0 || d > 8) throw BadParams("square_zero_extension: matrix_size out of range");
    Prng rng(mix_seed(x_seed, 0xa11ce));
    std::vector<Matrix> gens;
    for (std::size_t g = 0; g < x_gens; ++g) gens.push_back(rng.matrix(field, d, d, 2));
    GeneratedAlgebra gen = construct_from_generators(field, gens);
    return std::make_unique<SquareZeroExtension>(field, std::move(gen.algebra),
                                                 std::move(gen.inclusion), seed);
  }
  throw UnknownFamily("unknown family: " + name);
}

const std::vector<FamilyInfo>& builtin_family_list() {
  static const std::vector<FamilyInfo> list{
      {"unitization_square_zero", "{scramble_seed?}",
       "F*1 + R0 with R0*R0 = 0; level N has dim N"},
      {"truncated_polynomial", "{scramble_seed?}", "F[x]/(x^N); level N has dim N"},
      {"matrix_tower", "{d?: 2, scramble_seed?}", "constant tower M_d(F) at every level"},
      {"direct_sum", "{first: {family, params?}, second: {...}, scramble_seed?}",
       "blockwise direct product of two families"},
      {"square_zero_extension",
       "{matrix_size?: 2, x_seed?: 1, x_gens?: 1, x?: <algebra>, scramble_seed?}",
       "X (+) M with M^2 = 0, M a sum of full matrix bimodules over X"},
  };
  return list;
}

std::unique_ptr<TruncationFamily> explicit_tower(std::vector<StructureAlgebra> algebras,
                                                 std::vector<Matrix> quotients) {
  if (algebras.empty()) throw BadParams("tower: needs at least one algebra");
  return std::make_unique<ExplicitTower>(std::move(algebras), std::move(quotients));
}

}  // namespace arreg
