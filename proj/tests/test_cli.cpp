#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arreg/json_io.hpp"

using namespace arreg;
namespace fs = std::filesystem;

namespace {

const FieldSpec Q = FieldSpec::rationals();

int run_cli(const std::string& args) {
  std::string cmd = std::string(ARREG_CLI_PATH) + " " + args;
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path scratch() {
  fs::path p = fs::path("cli_scratch");
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path algebra_file(const std::string& name, const StructureAlgebra& a) {
  fs::path p = scratch() / name;
  write_file(p, algebra_to_json(a).dump(2));
  return p;
}

}  // namespace

TEST_CASE("cli check: valid, invalid and malformed inputs") {
  StructureAlgebra p4 = builtin_family("truncated_polynomial", {}, Q)->truncate(4);
  fs::path good = algebra_file("p4.json", p4);
  CHECK(run_cli("check " + good.string() + " --no-timestamp > /dev/null") == 0);

  json broken = {{"field", {{"kind", "rational"}}},
                 {"dim", 2},
                 {"unit", json::array({"1", "0"})},
                 {"mu", json::array({json::array({0, 0, 1, "1"}), json::array({1, 0, 0, "1"})})}};
  fs::path bad = scratch() / "broken.json";
  write_file(bad, broken.dump());
  CHECK(run_cli("check " + bad.string() + " --format json --out /dev/null") == 2);

  fs::path mal = scratch() / "malformed.json";
  write_file(mal, "{\"field\": ");
  CHECK(run_cli("check " + mal.string() + " 2> /dev/null") == 2);

  CHECK(run_cli("check 2> /dev/null") == 1);          // missing argument
  CHECK(run_cli("frobnicate 2> /dev/null") == 1);     // unknown verb
}

TEST_CASE("cli regularity verdict exit codes and reports") {
  fs::path out1 = scratch() / "reg_unit.json";
  int code = run_cli("regularity --family unitization_square_zero --levels 4,8,16 --seed 7 "
                     "--format json --out " + out1.string());
  CHECK(code == 0);
  json rep = json::parse(read_file(out1));
  CHECK(rep.at("schema_version") == 1);
  CHECK(rep.at("verdict") == "regular");
  CHECK(rep.at("codim") == 1);
  CHECK(rep.at("grade") == "EVIDENCE");

  fs::path out2 = scratch() / "reg_poly.json";
  code = run_cli("regularity --family truncated_polynomial --levels 4,8,16 --seed 7 "
                 "--format json --out " + out2.string());
  CHECK(code == 3);
  json rep2 = json::parse(read_file(out2));
  CHECK(rep2.at("verdict") == "not_regular");
  CHECK(rep2.at("rank_sequence") == json::array({4, 8, 16}));

  // inconclusive needs >= 3 levels: fewer is an input error
  CHECK(run_cli("regularity --family unitization_square_zero --levels 4,8 2> /dev/null") == 2);
  CHECK(run_cli("regularity 2> /dev/null") == 1);
}

TEST_CASE("cli regularity accepts a spec file with field and params") {
  json spec{{"family", "square_zero_extension"},
            {"field", {{"kind", "prime"}, {"p", 2}}},
            {"params", {{"matrix_size", 2}, {"x_seed", 5}, {"scramble_seed", 3}}},
            {"seed", 11},
            {"samples", 6}};
  fs::path sp = scratch() / "spec.json";
  write_file(sp, spec.dump());
  auto fam = builtin_family("square_zero_extension",
                            json{{"matrix_size", 2}, {"x_seed", 5}, {"scramble_seed", 3}},
                            FieldSpec::prime(2));
  std::size_t base = fam->min_level();
  std::ostringstream levels;
  levels << base << "," << base + 4 << "," << base + 8;
  fs::path out = scratch() / "spec_out.json";
  int code = run_cli("regularity " + sp.string() + " --levels " + levels.str() +
                     " --format json --out " + out.string());
  CHECK(code == 0);
  json rep = json::parse(read_file(out));
  CHECK(rep.at("verdict") == "regular");
}

TEST_CASE("cli extract and verify-cert round trip") {
  StructureAlgebra u8 = builtin_family("unitization_square_zero", {}, Q)->truncate(8);
  fs::path alg = algebra_file("u8.json", u8);
  fs::path cert = scratch() / "u8_cert.json";
  CHECK(run_cli("extract " + alg.string() + " --seed 7 --format json --out " + cert.string()) ==
        0);
  json cj = json::parse(read_file(cert));
  CHECK(cj.at("codim") == 1);
  CHECK(run_cli("verify-cert " + cert.string() + " --format json --out /dev/null") == 0);
  CHECK(run_cli("verify-cert " + cert.string() + " --algebra " + alg.string() +
                " > /dev/null") == 0);

  // tamper: put the unit into the ideal
  cj["ideal"].push_back(vec_to_json(u8.unit()));
  fs::path bad = scratch() / "u8_cert_bad.json";
  write_file(bad, cj.dump());
  CHECK(run_cli("verify-cert " + bad.string() + " > /dev/null") == 3);
}

TEST_CASE("cli module verbs") {
  auto dn = std::make_shared<const StructureAlgebra>(
      builtin_family("truncated_polynomial", {}, Q)->truncate(2));
  RModule reg = regular_module(dn, Side::Left);
  json mj{{"algebra", algebra_to_json(*dn)}, {"dim", 2}, {"side", "left"}};
  json action = json::array();
  for (std::size_t i = 0; i < 2; ++i) action.push_back(matrix_to_json(reg.action(i)));
  mj["action"] = std::move(action);
  fs::path mod = scratch() / "reg2.json";
  write_file(mod, mj.dump());

  fs::path out = scratch() / "classify.json";
  CHECK(run_cli("classify " + mod.string() + " --format json --out " + out.string()) == 0);
  json rep = json::parse(read_file(out));
  CHECK(rep.at("flags").at("faithful") == true);
  CHECK(rep.at("flags").at("projective") == true);

  CHECK(run_cli("commutant " + mod.string() + " --format json --out /dev/null") == 0);
  CHECK(run_cli("bicommutant " + mod.string() + " --no-timestamp > /dev/null") == 0);
  CHECK(run_cli("trace-ideal " + mod.string() + " --format json --out /dev/null") == 0);
  fs::path th3 = scratch() / "th3.json";
  CHECK(run_cli("dual-check " + mod.string() + " --format json --out " + th3.string()) == 0);
  json th3j = json::parse(read_file(th3));
  CHECK(th3j.at("inclusion_i") == "HOLDS");
  CHECK(th3j.at("inclusion_ii") == "HOLDS");
  CHECK(th3j.at("biend_dims") == json::array({2, 2}));
}

TEST_CASE("cli arens verbs") {
  StructureAlgebra m2 =
      builtin_family("matrix_tower", json{{"d", 2}}, FieldSpec::prime(5))->truncate(1);
  fs::path alg = algebra_file("m2f5.json", m2);
  fs::path out = scratch() / "center.json";
  CHECK(run_cli("arens-center " + alg.string() + " --format json --out " + out.string()) == 0);
  json rep = json::parse(read_file(out));
  CHECK(rep.at("center_dim") == 4);
  CHECK(rep.at("full") == true);

  fs::path out2 = scratch() / "biend.json";
  CHECK(run_cli("arens-biend " + alg.string() + " --format json --out " + out2.string()) == 0);
  json rep2 = json::parse(read_file(out2));
  CHECK(rep2.at("biend_equals_center_rmults") == true);
}

TEST_CASE("cli determinism: identical runs produce byte-identical json") {
  std::vector<std::string> commands{
      "regularity --family unitization_square_zero --levels 4,8,16 --seed 7 --samples 6",
      "regularity --family truncated_polynomial --levels 4,8,16 --seed 7",
      "family-list",
  };
  for (const auto& base : commands) {
    fs::path a = scratch() / "det_a.json", b = scratch() / "det_b.json";
    REQUIRE(run_cli(base + " --format json --out " + a.string() + " > /dev/null; true") ==
            run_cli(base + " --format json --out " + b.string() + " > /dev/null; true"));
    CHECK(read_file(a) == read_file(b));
    CHECK_FALSE(read_file(a).empty());
  }
  // text reports differ only in the timestamp line, which --no-timestamp drops
  fs::path t1 = scratch() / "t1.txt", t2 = scratch() / "t2.txt";
  run_cli("family-list --no-timestamp --out " + t1.string());
  run_cli("family-list --no-timestamp --out " + t2.string());
  CHECK(read_file(t1) == read_file(t2));
}
