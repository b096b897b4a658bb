#include "arreg/json_io.hpp"

#include <fstream>

namespace arreg {

FieldSpec field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("field: need {\"kind\": ...}");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational") return FieldSpec::rationals();
  if (kind == "prime") {
    if (!j.contains("p")) throw ParseError("prime field: missing \"p\"");
    return FieldSpec::prime(j.at("p").get<std::uint64_t>());
  }
  throw ParseError("field kind must be \"rational\" or \"prime\", got \"" + kind + "\"");
}

json field_to_json(const FieldSpec& f) {
  if (f.is_rational()) return json{{"kind", "rational"}};
  return json{{"kind", "prime"}, {"p", f.modulus()}};
}

Scalar scalar_from_json(const FieldSpec& field, const json& j) {
  if (j.is_string()) return field.parse(j.get<std::string>());
  if (j.is_number_integer()) return field.from_int(j.get<long long>());
  throw ParseError("scalar must be a string literal or an integer");
}

Vec vec_from_json(const FieldSpec& field, const json& j) {
  if (!j.is_array()) throw ParseError("vector must be a JSON array");
  Vec v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(scalar_from_json(field, x));
  return v;
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Matrix matrix_from_json(const FieldSpec& field, const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  std::vector<Vec> rows;
  for (const auto& r : j) rows.push_back(vec_from_json(field, r));
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw ParseError("matrix rows have unequal lengths");
  return Matrix::from_rows(field, rows, cols);
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_to_json(m.row(i)));
  return out;
}

StructureAlgebra algebra_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("algebra: expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "field" && k != "dim" && k != "basis" && k != "unit" && k != "mu")
      throw ParseError("algebra: unknown key \"" + k + "\"");
  }
  if (!j.contains("field") || !j.contains("dim") || !j.contains("mu"))
    throw ParseError("algebra: need \"field\", \"dim\" and \"mu\"");
  FieldSpec field = field_from_json(j.at("field"));
  const std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<MuEntry> mu;
  for (const auto& e : j.at("mu")) {
    if (!e.is_array() || e.size() != 4)
      throw ParseError("mu entry must be [i, j, k, scalar]");
    mu.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                  e.at(2).get<std::size_t>(), scalar_from_json(field, e.at(3))});
  }
  std::vector<std::string> labels;
  if (j.contains("basis")) labels = j.at("basis").get<std::vector<std::string>>();
  Vec unit(0, field.zero());
  if (j.contains("unit")) {
    unit = vec_from_json(field, j.at("unit"));
  } else {
    auto solved = StructureAlgebra::solve_unit(field, dim, mu);
    if (!solved) throw InvalidAlgebra("algebra has no two-sided unit (and none was given)");
    unit = std::move(*solved);
  }
  return StructureAlgebra(field, dim, std::move(mu), std::move(unit), std::move(labels));
}

json algebra_to_json(const StructureAlgebra& a) {
  json mu = json::array();
  for (const auto& e : a.mu()) {
    if (!e.c.is_zero()) mu.push_back(json::array({e.i, e.j, e.k, e.c.str()}));
  }
  return json{{"field", field_to_json(a.field())},
              {"dim", a.dim()},
              {"basis", a.labels()},
              {"unit", vec_to_json(a.unit())},
              {"mu", std::move(mu)}};
}

json subspace_to_json(const Subspace& s) {
  json basis = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) basis.push_back(vec_to_json(s.basis_vector(i)));
  return json{{"ambient_dim", s.ambient()}, {"dim", s.dim()}, {"basis", std::move(basis)}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  return base_dir + "/" + path;
}

}  // namespace

RModule module_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("dim") || !j.contains("side") ||
      !j.contains("action"))
    throw ParseError("module: need \"algebra\", \"dim\", \"side\" and \"action\"");
  json alg_json = j.at("algebra").is_string()
                      ? load_json_file(resolve(base_dir, j.at("algebra").get<std::string>()))
                      : j.at("algebra");
  auto algebra = std::make_shared<const StructureAlgebra>(algebra_from_json(alg_json));
  const std::string side_str = j.at("side").get<std::string>();
  Side side;
  if (side_str == "left") {
    side = Side::Left;
  } else if (side_str == "right") {
    side = Side::Right;
  } else {
    throw ParseError("module side must be \"left\" or \"right\"");
  }
  const std::size_t m = j.at("dim").get<std::size_t>();
  std::vector<Matrix> action;
  for (const auto& mj : j.at("action")) action.push_back(matrix_from_json(algebra->field(), mj));
  for (const auto& a : action)
    if (a.rows() != m || a.cols() != m) throw ParseError("module action matrices must be dim x dim");
  return RModule(std::move(algebra), side, std::move(action));
}

FamilySpec family_spec_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ParseError("family spec: expected a JSON object");
  FamilySpec spec;
  if (j.contains("levels")) spec.budget.levels = j.at("levels").get<std::vector<std::size_t>>();
  spec.budget.seed = j.value("seed", std::uint64_t{0});
  spec.budget.random_samples = j.value("samples", std::size_t{8});

  if (j.contains("tower")) {
    std::vector<StructureAlgebra> algs;
    for (const auto& e : j.at("tower")) {
      json aj = e.is_string() ? load_json_file(resolve(base_dir, e.get<std::string>())) : e;
      algs.push_back(algebra_from_json(aj));
    }
    std::vector<Matrix> quotients;
    if (j.contains("quotients")) {
      if (algs.empty()) throw ParseError("tower: quotients without algebras");
      for (std::size_t i = 0; i + 1 < algs.size(); ++i)
        quotients.push_back(matrix_from_json(algs.front().field(), j.at("quotients").at(i)));
    }
    spec.family = explicit_tower(std::move(algs), std::move(quotients));
    return spec;
  }
  if (!j.contains("family")) throw ParseError("family spec: need \"family\" or \"tower\"");
  FieldSpec field =
      j.contains("field") ? field_from_json(j.at("field")) : FieldSpec::rationals();
  json params = j.contains("params") ? j.at("params") : json();
  if (params.is_object() && params.contains("x") && params.at("x").is_string())
    params["x"] = load_json_file(resolve(base_dir, params.at("x").get<std::string>()));
  spec.family = builtin_family(j.at("family").get<std::string>(), params, field);
  return spec;
}

json certificate_to_json(const StructureAlgebra& a, const SquareZeroCertificate& cert) {
  json ideal = json::array();
  for (std::size_t i = 0; i < cert.ideal.subspace.dim(); ++i)
    ideal.push_back(vec_to_json(cert.ideal.subspace.basis_vector(i)));
  return json{{"schema_version", 1},
              {"algebra", algebra_to_json(a)},
              {"level", cert.level},
              {"codim", cert.codim},
              {"side", "two_sided"},
              {"ideal", std::move(ideal)},
              {"n0", cert.n0},
              {"witness", vec_to_json(cert.witness)},
              {"used_compression", cert.used_compression},
              {"verified",
               {{"is_ideal", cert.verified.is_ideal},
                {"square_zero", cert.verified.square_zero},
                {"codim_finite", cert.verified.codim_finite}}}};
}

SquareZeroCertificate certificate_from_json(const StructureAlgebra& a, const json& j) {
  if (!j.is_object() || !j.contains("ideal") || !j.contains("level"))
    throw ParseError("certificate: need \"level\" and \"ideal\"");
  std::vector<Vec> rows;
  for (const auto& r : j.at("ideal")) rows.push_back(vec_from_json(a.field(), r));
  Subspace s = Subspace::span_of(a.field(), a.dim(), rows);
  SquareZeroCertificate cert{j.at("level").get<std::size_t>(),
                             IdealBasis{std::move(s), Side::TwoSided},
                             j.value("codim", std::size_t{0}),
                             {false, false, false},
                             j.value("n0", std::size_t{0}),
                             j.contains("witness") ? vec_from_json(a.field(), j.at("witness"))
                                                   : Vec(a.dim(), a.field().zero()),
                             j.value("used_compression", false)};
  return cert;
}

std::pair<StructureAlgebra, SquareZeroCertificate> certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("algebra"))
    throw ParseError("certificate: no embedded \"algebra\" and none supplied");
  StructureAlgebra a = algebra_from_json(j.at("algebra"));
  SquareZeroCertificate cert = certificate_from_json(a, j);
  return {std::move(a), std::move(cert)};
}

json profile_to_json(const RankMapProfile& p) {
  json records = json::array();
  for (const auto& r : p.records)
    records.push_back(json{{"level", r.level},
                           {"dim", r.dim},
                           {"max_rank", r.max_rank_found},
                           {"witness", vec_to_json(r.witness)},
                           {"translate_span_dim", r.translate_span_dim}});
  return json{{"family", p.family_name},
              {"seed", p.budget.seed},
              {"samples", p.budget.random_samples},
              {"records", std::move(records)}};
}

json verdict_to_json(const RegularityVerdict& v) {
  json out{{"grade", v.grade}, {"profile", profile_to_json(v.profile)}};
  switch (v.kind) {
    case RegularityVerdict::Kind::Regular:
      out["verdict"] = "regular";
      break;
    case RegularityVerdict::Kind::NotRegular:
      out["verdict"] = "not_regular";
      break;
    default:
      out["verdict"] = "inconclusive";
  }
  if (v.codim) out["codim"] = *v.codim;
  if (!v.note.empty()) out["note"] = v.note;
  if (v.kind == RegularityVerdict::Kind::NotRegular) {
    json ranks = json::array();
    for (const auto& r : v.profile.records) ranks.push_back(r.max_rank_found);
    out["rank_sequence"] = std::move(ranks);
  }
  return out;
}

json flags_to_json(const ModuleFlags& f) {
  return json{{"faithful", f.faithful},
              {"torsionless", f.torsionless},
              {"t_accessible", f.t_accessible},
              {"generator", f.generator},
              {"projective", f.projective}};
}

json th3_to_json(const Th3Report& r) {
  return json{{"hypotheses", flags_to_json(r.hypotheses)},
              {"inclusion_i", inclusion_status_name(r.inclusion_i)},
              {"inclusion_ii", inclusion_status_name(r.inclusion_ii)},
              {"raw_inclusion_i", r.raw_i},
              {"raw_inclusion_ii", r.raw_ii},
              {"biend_dims", json::array({r.biend_dim, r.biend_dual_dim})}};
}

json biend_dual_to_json(const BiendDualReport& r) {
  return json{{"biend_dim", r.biend_dim},
              {"center_dim", r.center_dim},
              {"biend_equals_center_rmults", r.biend_equals_center_rmults},
              {"lend_dim", r.lend_dim},
              {"lend_equals_bidual_lmults", r.lend_equals_bidual_lmults}};
}

json validation_to_json(const ValidationReport& r) {
  json assoc = json::array();
  for (const auto& v : r.associativity_violations)
    assoc.push_back(json::array({v[0], v[1], v[2], v[3]}));
  return json{{"valid", r.valid()},
              {"associativity_violations", std::move(assoc)},
              {"unit_failures", r.unit_failures}};
}

}  // namespace arreg
