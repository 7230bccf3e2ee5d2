// ssr command-line tool.  Thin client of the shared library's C API: flags
// are packed into a config document, the library produces the JSON report,
// and this binary only renders and writes it.
//
// Exit codes: 0 success, 1 input validation, 2 check failure, 3 parse/I-O.

#include <ssr/ssr.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

struct CommonFlags {
  std::string group;
  std::string state;
  std::string charges;
  std::uint64_t seed = 1;
  int trials = 0;
  double tol = 0.0;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_state) {
  cmd->add_option("--group", flags.group, "Catalog group name or group spec file");
  if (with_state)
    cmd->add_option("--state", flags.state, "State builder name or state spec file");
  cmd->add_option("--charges", flags.charges, "Charge operators spec file");
  cmd->add_option("--seed", flags.seed, "Random seed");
  cmd->add_option("--trials", flags.trials, "Trial count (suite-dependent default)");
  cmd->add_option("--tol", flags.tol, "Tolerance override for suite checks");
  cmd->add_option("--out", flags.out, "Write the report to this path");
  cmd->add_option("--format", flags.format, "Output format: json or table")
      ->check(CLI::IsMember({"json", "table"}));
}

Json config_for(const std::string& command, const CommonFlags& flags,
                const std::string& suite = "") {
  Json config;
  config["command"] = command;
  if (!flags.group.empty()) config["group"] = flags.group;
  if (!flags.state.empty()) config["state"] = flags.state;
  if (!flags.charges.empty()) config["charges"] = flags.charges;
  if (!suite.empty()) config["suite"] = suite;
  config["seed"] = flags.seed;
  if (flags.trials > 0) config["trials"] = flags.trials;
  if (flags.tol > 0.0) config["tol"] = flags.tol;
  return config;
}

// Human-readable rendering of the report JSON.
std::string render_table(const Json& report) {
  std::string os;
  char line[256];
  auto append = [&os](const char* text) { os += text; };

  if (report.contains("tool")) {
    os += report["tool"]["name"].get<std::string>() + " " +
          report["tool"]["version"].get<std::string>() + "\n";
  }
  if (report.contains("error")) {
    os += "error: " + report["error"].get<std::string>() + "\n";
    return os;
  }
  if (report.contains("resources")) {
    const auto& res = report["resources"];
    os += "state:    " + res["state"].get<std::string>() + "\n";
    os += "symmetry: " + res["symmetry"].get<std::string>() + "\n";
    os += "digest:   " + res["inputs_digest"].get<std::string>() + "\n\n";
    append("  quantity        value (bits)\n");
    for (const auto& [name, value] : res["quantities"].items()) {
      std::snprintf(line, sizeof(line), "  %-14s %18.12f\n", name.c_str(), value.get<double>());
      append(line);
    }
    append("\n");
  }
  if (report.contains("decomposition")) {
    const auto& dec = report["decomposition"];
    std::snprintf(line, sizeof(line), "group %s (order %d), representation dim %d\n\n",
                  dec["group"].get<std::string>().c_str(), dec["order"].get<int>(),
                  dec["representation_dim"].get<int>());
    append(line);
    append("  irrep   dim  multiplicity\n");
    for (const auto& ir : dec["irreps"]) {
      std::snprintf(line, sizeof(line), "  %-7s %3d  %3d\n",
                    ir["label"].get<std::string>().c_str(), ir["dim"].get<int>(),
                    ir["multiplicity"].get<int>());
      append(line);
    }
    append("\n  conjugate couples:\n");
    for (const auto& cp : dec["conjugate_couples"]) {
      std::snprintf(line, sizeof(line), "  beta=%-6s %-6s <-> %-6s residual %.3g\n",
                    cp["beta"].get<std::string>().c_str(), cp["mu"].get<std::string>().c_str(),
                    cp["mu_bar"].get<std::string>().c_str(), cp["residual"].get<double>());
      append(line);
    }
    append("\n");
  }
  if (report.contains("checks")) {
    const auto& checks = report["checks"];
    for (const auto& c : checks["results"]) {
      std::snprintf(line, sizeof(line), "%s %-72s margin %.3e (tol %.1e)\n",
                    c["pass"].get<bool>() ? "PASS" : "FAIL",
                    c["name"].get<std::string>().c_str(), c["margin"].get<double>(),
                    c["tolerance"].get<double>());
      append(line);
    }
    std::snprintf(line, sizeof(line), "\n%d/%d checks passed\n", checks["passed"].get<int>(),
                  checks["total"].get<int>());
    append(line);
  }
  return os;
}

int run(const Json& config, const CommonFlags& flags) {
  char* report_text = nullptr;
  const int status = ssr_run_json(config.dump().c_str(), &report_text);

  std::string output;
  if (report_text) {
    if (flags.format == "table") {
      try {
        output = render_table(Json::parse(report_text));
      } catch (const std::exception&) {
        output = report_text;
      }
    } else {
      output = report_text;
      output += "\n";
    }
    ssr_free_string(report_text);
  } else {
    output = std::string("error: ") + ssr_last_error() + "\n";
  }

  if (!flags.out.empty()) {
    std::ofstream file(flags.out);
    if (!file) {
      std::cerr << "error: cannot write " << flags.out << "\n";
      return SSR_ERR_PARSE;
    }
    file << output;
    if (status != SSR_OK) std::cerr << "error: " << ssr_last_error() << "\n";
  } else {
    std::cout << output;
    if (status != SSR_OK && *ssr_last_error()) std::cerr << "error: " << ssr_last_error() << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"superselection-rule resource calculations (library version " +
               std::string(ssr_version()) + ")"};
  app.require_subcommand(1);

  CommonFlags flags;

  CLI::App* resources =
      app.add_subcommand("resources", "Resource quantities and identity checks for a state");
  add_common(resources, flags, true);

  CLI::App* decompose =
      app.add_subcommand("decompose", "Irrep decomposition and conjugate couples of a group");
  add_common(decompose, flags, false);

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite = "all";
  bool achievability = false;
  verify->add_option("suite", suite,
                     "theorem1 | theorem2 | theorem3 | identities | appendix | all");
  verify->add_flag("--achievability", achievability,
                   "theorem2/theorem3: run only the achievability (equality) trials");
  add_common(verify, flags, true);

  CLI::App* reproduce =
      app.add_subcommand("reproduce-paper", "Recompute every paper-quoted value");
  add_common(reproduce, flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : SSR_ERR_VALIDATION;
  }

  if (resources->parsed()) return run(config_for("resources", flags), flags);
  if (decompose->parsed()) return run(config_for("decompose", flags), flags);
  if (verify->parsed()) {
    Json config = config_for("verify", flags, suite);
    if (achievability) config["achievability"] = true;
    return run(config, flags);
  }
  return run(config_for("reproduce-paper", flags), flags);
}
