#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "runner.hpp"

using namespace ssr;

namespace {

Json z2_group_spec() {
  Json spec;
  spec["format_version"] = 1;
  spec["name"] = "Zc2";
  spec["order"] = 2;
  spec["mult_table"] = Json::array({Json::array({0, 1}), Json::array({1, 0})});
  spec["inverse"] = Json::array({0, 1});
  spec["identity"] = 0;

  auto one = [](double v) { return Json::array({Json::array({v, 0.0})}); };
  Json irreps = Json::array();
  irreps.push_back(Json{{"label", "triv"},
                        {"dim", 1},
                        {"matrices", Json::array({one(1.0), one(1.0)})}});
  irreps.push_back(Json{{"label", "sign"},
                        {"dim", 1},
                        {"matrices", Json::array({one(1.0), one(-1.0)})}});
  spec["irreps"] = irreps;
  return spec;
}

std::string write_temp(const Json& j, const std::string& name) {
  const std::string path = "/tmp/ssr_test_" + name + ".json";
  std::ofstream out(path);
  out << j.dump(2);
  return path;
}

}  // namespace

TEST_CASE("group spec: parses, validates, defaults to the regular representation") {
  const GroupBundle bundle = parse_group_spec(z2_group_spec());
  CHECK(bundle.group->name == "Zc2");
  CHECK(bundle.group->order == 2);
  CHECK(bundle.rep.dim() == 2);
  CHECK(validate_representation(bundle.rep).ok());
}

TEST_CASE("group spec: explicit representation with split") {
  Json spec = z2_group_spec();
  // T(g) = diag(1, ±1) ⊗ 1 with a declared 2x1 split.
  auto flat = [](std::initializer_list<double> re) {
    Json arr = Json::array();
    for (double v : re) arr.push_back(Json::array({v, 0.0}));
    return arr;
  };
  spec["representation"] =
      Json{{"matrices", Json::array({flat({1, 0, 0, 1}), flat({1, 0, 0, -1})})},
           {"split",
            Json{{"dims_a", 2},
                 {"dims_b", 1},
                 {"matrices_a", Json::array({flat({1, 0, 0, 1}), flat({1, 0, 0, -1})})},
                 {"matrices_b", Json::array({flat({1}), flat({1})})}}}};
  const GroupBundle bundle = parse_group_spec(spec);
  REQUIRE(bundle.rep.split.has_value());
  CHECK(bundle.rep.split->dim_a == 2);
  CHECK(bundle.rep.split->dim_b == 1);
}

TEST_CASE("group spec: unknown fields and corrupted tables are rejected") {
  Json unknown = z2_group_spec();
  unknown["extra"] = 1;
  CHECK_THROWS_AS(parse_group_spec(unknown), ParseError);

  Json bad_version = z2_group_spec();
  bad_version["format_version"] = 2;
  CHECK_THROWS_AS(parse_group_spec(bad_version), ParseError);

  Json corrupt = z2_group_spec();
  corrupt["mult_table"] = Json::array({Json::array({0, 1}), Json::array({1, 1})});
  CHECK_THROWS_AS(parse_group_spec(corrupt), ValidationError);

  Json bad_irrep = z2_group_spec();
  bad_irrep["irreps"][1]["matrices"][1][0][0] = -0.5;  // not unitary
  CHECK_THROWS_AS(parse_group_spec(bad_irrep), ValidationError);
}

TEST_CASE("load_group: catalog names and spec files") {
  const GroupBundle s3 = load_group("S3");
  CHECK(s3.group->order == 6);
  CHECK(s3.rep.dim() == 6);

  const std::string path = write_temp(z2_group_spec(), "group");
  const GroupBundle file = load_group(path);
  CHECK(file.group->name == "Zc2");

  CHECK_THROWS_AS(load_group("/nonexistent/nope.json"), ParseError);
}

TEST_CASE("state spec: amplitudes, matrix, and validation failures") {
  Json amp;
  amp["format_version"] = 1;
  amp["dims"] = Json::array({2, 2});
  amp["kind"] = "amplitudes";
  const double h = 1.0 / std::sqrt(2.0);
  amp["payload"] = Json::array({Json::array({h, 0.0}), Json::array({0.0, 0.0}),
                                Json::array({0.0, 0.0}), Json::array({h, 0.0})});
  const StateBundle bell = parse_state_spec(amp, nullptr);
  CHECK(bell.pure.has_value());
  CHECK(bell.rho.dims == std::vector<int>{2, 2});

  Json bad_norm = amp;
  bad_norm["payload"][0][0] = 1.0;
  CHECK_THROWS_AS(parse_state_spec(bad_norm, nullptr), ValidationError);

  Json mat;
  mat["format_version"] = 1;
  mat["dims"] = Json::array({2});
  mat["kind"] = "matrix";
  mat["payload"] = Json::array({Json::array({0.5, 0.0}), Json::array({0.0, 0.0}),
                                Json::array({0.0, 0.0}), Json::array({0.5, 0.0})});
  const StateBundle mixed = parse_state_spec(mat, nullptr);
  CHECK(validate_density(mixed.rho).ok());

  Json unknown_kind = mat;
  unknown_kind["kind"] = "wavefunction";
  CHECK_THROWS_AS(parse_state_spec(unknown_kind, nullptr), ParseError);
}

TEST_CASE("state spec: builders resolve against the group") {
  const GroupBundle s3 = load_group("S3");

  Json sym;
  sym["format_version"] = 1;
  sym["kind"] = "builder";
  sym["payload"] = Json{{"name", "symmetric"},
                        {"beta", "triv"},
                        {"terms", Json::array({Json{{"mu", "std"},
                                                    {"m", 0},
                                                    {"mbar", 0},
                                                    {"d", Json::array({1.0, 0.0})}}})}};
  const StateBundle state = parse_state_spec(sym, &s3);
  REQUIRE(state.symmetric.has_value());
  CHECK(state.symmetric->sectors.size() == 1);
  CHECK(state.rho.dims == std::vector<int>{6, 6});

  CHECK_THROWS_AS(parse_state_spec(sym, nullptr), ValidationError);

  Json orbit;
  orbit["format_version"] = 1;
  orbit["kind"] = "builder";
  orbit["payload"] = Json{{"name", "orbit-reference"}};
  CHECK(parse_state_spec(orbit, &s3).rho.dim() == 6);

  Json rand;
  rand["format_version"] = 1;
  rand["dims"] = Json::array({3});
  rand["kind"] = "builder";
  rand["payload"] = Json{{"name", "random"}, {"purity", "mixed"}, {"seed", 5}};
  CHECK(validate_density(parse_state_spec(rand, nullptr).rho).ok());
}

TEST_CASE("state shorthands: refbit and spin-plus") {
  const StateBundle refbit = load_state("refbit", nullptr);
  CHECK(refbit.symmetric.has_value());
  CHECK(refbit.charges.size() == 2);

  const StateBundle spin2 = load_state("spin-plus-2", nullptr);
  CHECK(spin2.rho.dims == std::vector<int>{2, 2});
  CHECK(spin2.charges.size() == 2);
}

TEST_CASE("charges spec: diag and matrix forms, invalid spectra rejected") {
  Json spec;
  spec["format_version"] = 1;
  spec["sites"] = Json::array(
      {Json{{"dim", 2}, {"diag", Json::array({0.0, 1.0})}},
       Json{{"dim", 2},
            {"matrix", Json::array({Json::array({0.5, 0.0}), Json::array({0.0, 0.0}),
                                    Json::array({0.0, 0.0}), Json::array({-0.5, 0.0})})}}});
  const auto charges = parse_charges_spec(spec);
  REQUIRE(charges.size() == 2);
  CHECK(charges[0].matrix(1, 1).real() == doctest::Approx(1.0));

  Json bad = spec;
  bad["sites"][0]["diag"][1] = 0.3;  // doubling is not an integer
  CHECK_THROWS_AS(parse_charges_spec(bad), ValidationError);
}

TEST_CASE("round_sig15 and digest stability") {
  CHECK(round_sig15(0.1 + 0.2) == round_sig15(0.3));
  const DensityOperator rho = random_state({2, 2}, Purity::Mixed, 99);
  CHECK(state_digest(rho) == state_digest(rho));
  DensityOperator other = rho;
  other.matrix(0, 0) += Complex(1e-6, 0.0);
  CHECK(state_digest(rho) != state_digest(other));
}

TEST_CASE("run_command: resources on the refbit reports the paper values") {
  RunConfig config;
  config.command = "resources";
  config.state = "refbit";
  const RunResult result = run_command(config);
  REQUIRE(result.status == kStatusOk);
  const auto& q = result.report["resources"]["quantities"];
  CHECK(q["W"].get<double>() == doctest::Approx(2.0));
  CHECK(q["W_G"].get<double>() == doctest::Approx(2.0));
  CHECK(q["A_sh"].get<double>() == doctest::Approx(1.0));
  CHECK(q["E"].get<double>() == doctest::Approx(1.0));
  CHECK(q["E_GxG"].get<double>() == doctest::Approx(0.0));
  CHECK(q["W_GxG_L"].get<double>() == doctest::Approx(1.0));
  CHECK(result.report["checks"]["pass"].get<bool>());
}

TEST_CASE("run_command: spin-plus n=1 resources") {
  RunConfig config;
  config.command = "resources";
  config.state = "spin-plus";
  const RunResult result = run_command(config);
  REQUIRE(result.status == kStatusOk);
  const auto& q = result.report["resources"]["quantities"];
  CHECK(q["W"].get<double>() == doctest::Approx(1.0));
  CHECK(q["W_G"].get<double>() == doctest::Approx(0.0));
  CHECK(q["A_G"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("run_command: maximally mixed state has zero work quantities") {
  Json spec;
  spec["format_version"] = 1;
  spec["dims"] = Json::array({2, 2});
  spec["kind"] = "builder";
  spec["payload"] = Json{{"name", "maximally-mixed"}};
  const std::string path = write_temp(spec, "maxmixed");

  RunConfig config;
  config.command = "resources";
  config.state = path;
  config.group = "Z4";  // regular rep of Z4 acts on the 4-dim space
  const RunResult result = run_command(config);
  REQUIRE(result.status == kStatusOk);
  const auto& q = result.report["resources"]["quantities"];
  CHECK(q["W"].get<double>() == doctest::Approx(0.0));
  CHECK(q["W_G"].get<double>() == doctest::Approx(0.0));
  CHECK(q["A_G"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("run_command: exit-code contract") {
  RunConfig missing_state;
  missing_state.command = "resources";
  CHECK(run_command(missing_state).status == kStatusValidation);

  RunConfig bad_path;
  bad_path.command = "resources";
  bad_path.state = "/nonexistent/state.json";
  CHECK(run_command(bad_path).status == kStatusParse);

  RunConfig bad_command;
  bad_command.command = "meditate";
  CHECK(run_command(bad_command).status == kStatusValidation);

  RunConfig bad_suite;
  bad_suite.command = "verify";
  bad_suite.suite = "theorem9";
  CHECK(run_command(bad_suite).status == kStatusValidation);
}

TEST_CASE("run_command: decompose S3 reports blocks (1,1,2,2)") {
  RunConfig config;
  config.command = "decompose";
  config.group = "S3";
  const RunResult result = run_command(config);
  REQUIRE(result.status == kStatusOk);
  const auto& blocks = result.report["decomposition"]["blocks"];
  std::vector<int> dims;
  for (const auto& b : blocks) dims.push_back(b["dim"].get<int>());
  CHECK(dims == std::vector<int>{1, 1, 2, 2});
  CHECK(result.report["checks"]["pass"].get<bool>());
}

TEST_CASE("run_command: decompose Z4 lists mubar = (1 - mu) mod 4 for beta = chi1") {
  RunConfig config;
  config.command = "decompose";
  config.group = "Z4";
  const RunResult result = run_command(config);
  REQUIRE(result.status == kStatusOk);
  for (const auto& cp : result.report["decomposition"]["conjugate_couples"]) {
    if (cp["beta"].get<std::string>() != "chi1") continue;
    const int mu = std::stoi(cp["mu"].get<std::string>().substr(3));
    const int mu_bar = std::stoi(cp["mu_bar"].get<std::string>().substr(3));
    CHECK(mu_bar == ((1 - mu) % 4 + 4) % 4);
  }
}

TEST_CASE("run_command: determinism modulo timings") {
  RunConfig config;
  config.command = "verify";
  config.suite = "identities";
  config.group = "Z3";
  config.trials = 3;
  config.seed = 17;

  RunResult a = run_command(config);
  RunResult b = run_command(config);
  a.report.erase("timings");
  b.report.erase("timings");
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.status == kStatusOk);
}

TEST_CASE("run_command: tolerance override changes pass/fail, not margins") {
  RunConfig config;
  config.command = "verify";
  config.suite = "identities";
  config.group = "Z2";
  config.trials = 2;
  config.seed = 3;
  config.tol = 1e-30;  // absurdly tight: every equality with fp noise fails
  const RunResult result = run_command(config);
  CHECK(result.status == kStatusCheckFailed);
}

TEST_CASE("run_command: reproduce-paper passes with pinned tolerances") {
  RunConfig config;
  config.command = "reproduce-paper";
  config.tol = 1e30;  // must be ignored: tolerances are pinned
  const RunResult result = run_command(config);
  CHECK(result.status == kStatusOk);
  CHECK(result.report["checks"]["total"].get<int>() > 20);
  for (const auto& c : result.report["checks"]["results"])
    CHECK(c["tolerance"].get<double>() <= 1e-9);
}
