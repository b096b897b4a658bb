#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "arreg/json_io.hpp"

using namespace arreg;

namespace {

// exit codes: 0 success / Regular, 1 usage, 2 invalid input,
// 3 NotRegular / failed verification, 4 Inconclusive
constexpr int kOk = 0, kUsage = 1, kInvalidInput = 2, kNotRegular = 3, kInconclusive = 4;

struct OutputOptions {
  std::string format = "text";
  std::string out_path;
  bool no_timestamp = false;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", opts.out_path, "write the report to a file instead of stdout");
  cmd->add_flag("--no-timestamp", opts.no_timestamp, "omit the timestamp line in text reports");
}

std::string timestamp_line() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[64];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string("generated: ") + buf + "\n";
}

void emit(const OutputOptions& opts, const json& report, const std::string& text) {
  std::string payload;
  if (opts.format == "json") {
    payload = report.dump(2) + "\n";
  } else {
    payload = text;
    if (!opts.no_timestamp) payload += timestamp_line();
  }
  if (opts.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(opts.out_path);
    if (!out) throw Error("cannot write to " + opts.out_path);
    out << payload;
  }
}

std::string dir_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

std::string bool_word(bool b) { return b ? "yes" : "no"; }

json with_header(const std::string& verb, json body) {
  body["schema_version"] = 1;
  body["verb"] = verb;
  return body;
}

int run_check(const std::string& file, const OutputOptions& opts) {
  StructureAlgebra a = algebra_from_json(load_json_file(file));
  ValidationReport rep = a.validate();
  json out = with_header("check", json{{"dim", a.dim()},
                                       {"field", field_to_json(a.field())},
                                       {"report", validation_to_json(rep)}});
  std::ostringstream text;
  text << "algebra: dim " << a.dim() << " over " << a.field().name() << "\n"
       << "validation: " << rep.summary() << "\n";
  emit(opts, out, text.str());
  return rep.valid() ? kOk : kInvalidInput;
}

int run_module_verb(const std::string& verb, const std::string& file,
                    const OutputOptions& opts) {
  RModule u = module_from_json(load_json_file(file), dir_of(file));
  ModuleValidationReport mrep = u.validate();
  if (!mrep.valid()) {
    std::cerr << "module is not a representation ("
              << mrep.representation_violations.size() << " violations, unit "
              << (mrep.unit_ok ? "ok" : "broken") << ")\n";
    return kInvalidInput;
  }
  std::ostringstream text;
  json body;
  if (verb == "commutant" || verb == "bicommutant") {
    EndoAlgebra endo = verb == "commutant" ? commutant(u) : bicommutant(u).biend;
    json incl = json::array();
    for (const auto& m : endo.inclusion) incl.push_back(matrix_to_json(m));
    body = json{{"dim", endo.carrier.dim()},
                {"carrier", algebra_to_json(endo.carrier)},
                {"inclusion", std::move(incl)},
                {"composition", "reverse"}};
    text << verb << ": dimension " << endo.carrier.dim() << "\n";
    if (verb == "bicommutant") {
      BicommutantResult bi = bicommutant(u);
      body["image_dim"] = bi.algebra_image.dim();
      body["image_equals_biend"] = bi.image_equals_biend;
      body["image_inside_biend"] = bi.image_inside_biend;
      text << "image of the algebra: dim " << bi.algebra_image.dim() << ", "
           << (bi.image_equals_biend ? "equals" : "is strictly inside") << " the bicommutant\n";
    }
  } else if (verb == "trace-ideal") {
    IdealBasis t = trace_ideal(u);
    body = json{{"dim", t.subspace.dim()},
                {"side", "two_sided"},
                {"subspace", subspace_to_json(t.subspace)}};
    text << "trace ideal: dim " << t.subspace.dim() << " of " << u.algebra().dim() << "\n";
  } else if (verb == "classify") {
    ModuleFlags f = classify(u);
    body = json{{"flags", flags_to_json(f)}};
    text << "faithful: " << bool_word(f.faithful) << "\ntorsionless: " << bool_word(f.torsionless)
         << "\nT-accessible: " << bool_word(f.t_accessible)
         << "\ngenerator: " << bool_word(f.generator)
         << "\nprojective: " << bool_word(f.projective) << "\n";
  } else {  // dual-check
    Th3Report rep = check_biend_inclusion(u);
    body = th3_to_json(rep);
    text << "inclusion (i)  Biend(U)* in Biend(U*): " << inclusion_status_name(rep.inclusion_i)
         << "\ninclusion (ii) Biend(U*)* in Biend(U): "
         << inclusion_status_name(rep.inclusion_ii) << "\nbiend dims: " << rep.biend_dim << ", "
         << rep.biend_dual_dim << "\n";
  }
  emit(opts, with_header(verb, std::move(body)), text.str());
  return kOk;
}

int run_arens_verb(const std::string& verb, const std::string& file, const OutputOptions& opts) {
  StructureAlgebra a = algebra_from_json(load_json_file(file));
  ValidationReport rep = a.validate();
  if (!rep.valid()) {
    std::cerr << "invalid algebra: " << rep.summary() << "\n";
    return kInvalidInput;
  }
  std::ostringstream text;
  json body;
  if (verb == "arens-center") {
    Subspace z = topological_center(a);
    body = json{{"center_dim", z.dim()},
                {"algebra_dim", a.dim()},
                {"full", z.dim() == a.dim()},
                {"basis", subspace_to_json(z)["basis"]}};
    text << "left topological center: dim " << z.dim() << " of " << a.dim() << "\n";
  } else {  // arens-biend
    BiendDualReport r = biend_of_dual(a);
    body = biend_dual_to_json(r);
    text << "Biend(R*): dim " << r.biend_dim << "; topological center: dim " << r.center_dim
         << "\nright multiplications match: " << bool_word(r.biend_equals_center_rmults)
         << "\nEnd(R*) = left multiplications by R**: "
         << bool_word(r.lend_equals_bidual_lmults) << "\n";
  }
  emit(opts, with_header(verb, std::move(body)), text.str());
  return kOk;
}

int run_regularity(FamilySpec spec, const OutputOptions& opts) {
  RegularityVerdict v = decide_regularity(*spec.family, spec.budget);
  json body = verdict_to_json(v);
  body["levels"] = spec.budget.levels;
  body["seed"] = spec.budget.seed;
  body["samples"] = spec.budget.random_samples;
  if (v.kind == RegularityVerdict::Kind::Regular) {
    json certs = json::array();
    for (const auto& c : v.certificates)
      certs.push_back(certificate_to_json(spec.family->truncate(c.level), c));
    body["certificates"] = std::move(certs);
  }
  std::ostringstream text;
  text << "family: " << spec.family->name() << "\nverdict: " << body["verdict"].get<std::string>()
       << "  (grade: " << v.grade << ", finite levels only)\n";
  text << "max ranks by level:";
  for (const auto& r : v.profile.records) text << " " << r.max_rank_found;
  text << "\n";
  if (v.codim) text << "certificate codimension: " << *v.codim << "\n";
  if (!v.note.empty()) text << "note: " << v.note << "\n";
  emit(opts, with_header("regularity", std::move(body)), text.str());
  switch (v.kind) {
    case RegularityVerdict::Kind::Regular:
      return kOk;
    case RegularityVerdict::Kind::NotRegular:
      return kNotRegular;
    default:
      return kInconclusive;
  }
}

int run_extract(const std::string& file, std::uint64_t seed, std::size_t samples,
                const OutputOptions& opts) {
  StructureAlgebra a = algebra_from_json(load_json_file(file));
  ValidationReport rep = a.validate();
  if (!rep.valid()) {
    std::cerr << "invalid algebra: " << rep.summary() << "\n";
    return kInvalidInput;
  }
  try {
    SquareZeroCertificate cert = extract_auto(a, SamplerBudget{seed, samples});
    std::ostringstream text;
    text << "square-zero certificate: ideal dim " << cert.ideal.subspace.dim() << ", codim "
         << cert.codim << "\nwitness rank bound n0 = " << cert.n0
         << (cert.used_compression ? " (finite-field compression used)" : "") << "\n";
    emit(opts, with_header("extract", certificate_to_json(a, cert)), text.str());
    return kOk;
  } catch (const ExtractionFailed& e) {
    std::ostringstream text;
    text << "extraction failed: " << e.what() << "\n";
    emit(opts, with_header("extract", json{{"error", e.what()}}), text.str());
    return kInconclusive;
  }
}

int run_verify_cert(const std::string& cert_file, const std::string& algebra_file,
                    const OutputOptions& opts) {
  json cj = load_json_file(cert_file);
  StructureAlgebra a = algebra_file.empty()
                           ? certificate_from_json(cj).first
                           : algebra_from_json(load_json_file(algebra_file));
  SquareZeroCertificate cert = certificate_from_json(a, cj);
  bool ok = verify_certificate(a, cert);
  json body{{"verified", ok}, {"level", cert.level}, {"codim", cert.codim}};
  std::ostringstream text;
  text << "certificate " << (ok ? "verifies" : "FAILS verification") << " (codim " << cert.codim
       << ")\n";
  emit(opts, with_header("verify-cert", std::move(body)), text.str());
  return ok ? kOk : kNotRegular;
}

int run_family_list(const OutputOptions& opts) {
  json fams = json::array();
  std::ostringstream text;
  for (const auto& f : builtin_family_list()) {
    fams.push_back(json{{"name", f.name}, {"params", f.params_doc}, {"description", f.description}});
    text << f.name << "  " << f.params_doc << "\n    " << f.description << "\n";
  }
  emit(opts, with_header("family-list", json{{"families", std::move(fams)}}), text.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computational algebra for structure-constant algebras: commutants,"
               " Arens products and square-zero regularity certificates"};
  app.require_subcommand(1);
  OutputOptions opts;

  std::string in_file, in_file2, family_name, params_str, field_str = "rational";
  std::vector<std::size_t> levels;
  std::uint64_t seed = 0;
  std::size_t samples = 8;

  auto* check = app.add_subcommand("check", "validate a structure-constant algebra");
  check->add_option("algebra", in_file, "algebra JSON file")->required();
  add_output_flags(check, opts);

  for (const char* verb : {"commutant", "bicommutant", "trace-ideal", "classify", "dual-check"}) {
    auto* cmd = app.add_subcommand(verb, std::string("module computation: ") + verb);
    cmd->add_option("module", in_file, "module JSON file")->required();
    add_output_flags(cmd, opts);
  }
  for (const char* verb : {"arens-center", "arens-biend"}) {
    auto* cmd = app.add_subcommand(verb, std::string("bidual computation: ") + verb);
    cmd->add_option("algebra", in_file, "algebra JSON file")->required();
    add_output_flags(cmd, opts);
  }

  auto* reg = app.add_subcommand("regularity", "decide Arens regularity of a truncation family");
  reg->add_option("spec", in_file, "family spec JSON file");
  reg->add_option("--family", family_name, "builtin family name (alternative to a spec file)");
  reg->add_option("--params", params_str, "inline JSON params for --family");
  reg->add_option("--field", field_str, "rational or prime:<p> (with --family)");
  reg->add_option("--levels", levels, "levels to test")->delimiter(',');
  reg->add_option("--seed", seed, "sampler seed");
  reg->add_option("--samples", samples, "random functionals per level");
  add_output_flags(reg, opts);

  auto* ext = app.add_subcommand("extract", "extract a square-zero certificate from an algebra");
  ext->add_option("algebra", in_file, "algebra JSON file")->required();
  ext->add_option("--seed", seed, "sampler seed");
  ext->add_option("--samples", samples, "random functionals");
  add_output_flags(ext, opts);

  auto* ver = app.add_subcommand("verify-cert", "re-verify a square-zero certificate");
  ver->add_option("certificate", in_file, "certificate JSON file")->required();
  ver->add_option("--algebra", in_file2, "algebra JSON file (default: embedded in certificate)");
  add_output_flags(ver, opts);

  auto* fl = app.add_subcommand("family-list", "list the builtin truncation families");
  add_output_flags(fl, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }

  try {
    if (check->parsed()) return run_check(in_file, opts);
    for (const char* verb : {"commutant", "bicommutant", "trace-ideal", "classify", "dual-check"})
      if (app.get_subcommand(verb)->parsed()) return run_module_verb(verb, in_file, opts);
    for (const char* verb : {"arens-center", "arens-biend"})
      if (app.get_subcommand(verb)->parsed()) return run_arens_verb(verb, in_file, opts);
    if (reg->parsed()) {
      FamilySpec spec;
      if (!in_file.empty()) {
        spec = family_spec_from_json(load_json_file(in_file), dir_of(in_file));
      } else if (!family_name.empty()) {
        json params;
        if (!params_str.empty()) {
          try {
            params = json::parse(params_str);
          } catch (const json::parse_error& e) {
            throw ParseError(std::string("bad --params JSON: ") + e.what());
          }
        }
        FieldSpec field = FieldSpec::rationals();
        if (field_str.rfind("prime:", 0) == 0) {
          field = FieldSpec::prime(std::stoull(field_str.substr(6)));
        } else if (field_str != "rational") {
          throw ParseError("--field must be rational or prime:<p>");
        }
        spec.family = builtin_family(family_name, params, field);
      } else {
        std::cerr << "regularity: give a spec file or --family\n";
        return kUsage;
      }
      if (!levels.empty()) spec.budget.levels = levels;
      if (reg->count("--seed")) spec.budget.seed = seed;
      if (reg->count("--samples")) spec.budget.random_samples = samples;
      if (spec.budget.levels.empty()) {
        std::cerr << "regularity: no levels given\n";
        return kUsage;
      }
      return run_regularity(std::move(spec), opts);
    }
    if (ext->parsed()) return run_extract(in_file, seed, samples, opts);
    if (ver->parsed()) return run_verify_cert(in_file, in_file2, opts);
    if (fl->parsed()) return run_family_list(opts);
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}
