// gptc: validate, foliate and evaluate circuit files, run the counting
// calculus, and run the randomized self-check suites.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "gptc/checks.hpp"
#include "gptc/counting.hpp"
#include "gptc/dsl.hpp"
#include "gptc/engine.hpp"
#include "gptc/error.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gptc::Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void print_diagnostics(const std::string& path,
                       const std::vector<gptc::Diagnostic>& diags) {
  for (const auto& d : diags)
    std::cerr << path << ":" << d.str() << "\n";
}

gptc::LoadResult load_or_exit(const std::string& path, int* exit_code) {
  gptc::LoadResult load;
  try {
    load = gptc::load_circuit(read_file(path), has_suffix(path, ".json"));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    *exit_code = kExitUsage;
    return load;
  }
  if (!load.document) {
    print_diagnostics(path, load.diagnostics);
    *exit_code = kExitUsage;
    return load;
  }
  if (!load.theory) {
    // The file parses but does not describe a valid circuit.
    print_diagnostics(path, load.diagnostics);
    *exit_code = kExitCheckFailed;
  }
  return load;
}

gptc::OutcomeAssignment parse_outcomes(const std::string& text) {
  gptc::OutcomeAssignment out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw gptc::Error("bad outcome binding '" + item +
                        "' (expected op=token)");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

ordered_json checks_to_json(const std::vector<gptc::CheckResult>& checks,
                            bool timings) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json j;
    j["name"] = c.name;
    j["status"] = c.status;
    j["measured"] = c.measured;
    j["tolerance"] = c.tolerance;
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (timings) j["runtime_ms"] = c.runtime_ms;
    arr.push_back(std::move(j));
  }
  return arr;
}

void print_check_table(const std::vector<gptc::CheckResult>& checks) {
  for (const auto& c : checks) {
    std::printf("%-36s %-6s measured=%-12.4g tol=%-8.3g %7.1f ms", //
                c.name.c_str(), c.status.c_str(), c.measured, c.tolerance,
                c.runtime_ms);
    if (!c.detail.empty()) std::printf("  %s", c.detail.c_str());
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circuit engine for operational probabilistic theories"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON output");

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "check a circuit file");
  validate_cmd->add_option("file", file)->required();

  auto* foliate_cmd =
      app.add_subcommand("foliate", "list complete foliations");
  bool foliate_all = false;
  std::size_t foliate_limit = 100;
  foliate_cmd->add_option("file", file)->required();
  foliate_cmd->add_flag("--all", foliate_all, "enumerate all foliations");
  foliate_cmd->add_option("--limit", foliate_limit, "enumeration cap");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate circuit probability");
  std::string outcomes_text;
  int foliation_index = -1;
  eval_cmd->add_option("file", file)->required();
  eval_cmd->add_option("--outcomes", outcomes_text,
                       "comma list of op=token bindings");
  eval_cmd->add_option("--foliation", foliation_index,
                       "evaluate along the k-th enumerated foliation");

  auto* counting_cmd =
      app.add_subcommand("counting", "composite fiducial counting");
  std::string model_name;
  int n_a = 2, n_b = 2;
  counting_cmd->add_option("--model", model_name)->required();
  counting_cmd->add_option("--n-a", n_a, "distinguishable states of part a");
  counting_cmd->add_option("--n-b", n_b, "distinguishable states of part b");

  auto* check_cmd = app.add_subcommand("check", "run a self-check suite");
  std::string suite = "all";
  unsigned long seed = 20260810;
  int size = 1;
  bool timings = false;
  check_cmd->add_option("--suite", suite,
                        "foliation | theorems | oracles | all");
  check_cmd->add_option("--seed", seed, "random seed");
  check_cmd->add_option("--size", size, "budget multiplier");
  check_cmd->add_flag("--timings", timings,
                      "include runtimes in the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate_cmd) {
      int exit_code = kExitOk;
      auto load = load_or_exit(file, &exit_code);
      if (!load.document) return kExitUsage;
      ordered_json report;
      report["schema"] = 1;
      report["command"] = "validate";
      report["file"] = file;
      report["valid"] = load.ok();
      ordered_json diags = ordered_json::array();
      for (const auto& d : load.diagnostics)
        diags.push_back({{"line", d.line}, {"col", d.col},
                         {"message", d.message}});
      report["diagnostics"] = std::move(diags);
      if (as_json)
        std::cout << report.dump(2) << "\n";
      else if (load.ok())
        std::cout << "valid: " << load.bound.circuit.operations().size()
                  << " operations, " << load.bound.circuit.wires().size()
                  << " wires\n";
      return exit_code;
    }

    if (*foliate_cmd) {
      int exit_code = kExitOk;
      auto load = load_or_exit(file, &exit_code);
      if (exit_code != kExitOk) return exit_code;
      std::vector<gptc::Foliation> foliations;
      if (foliate_all)
        foliations = gptc::enumerate_complete_foliations(load.bound.circuit,
                                                         foliate_limit);
      else
        foliations = {gptc::complete_foliation(load.bound.circuit)};
      if (as_json) {
        ordered_json report;
        report["schema"] = 1;
        report["command"] = "foliate";
        report["count"] = foliations.size();
        ordered_json arr = ordered_json::array();
        for (const auto& f : foliations) arr.push_back(f.hypersurfaces);
        report["foliations"] = std::move(arr);
        std::cout << report.dump(2) << "\n";
      } else {
        std::cout << foliations.size() << " complete foliation(s)\n";
        for (std::size_t i = 0; i < foliations.size(); ++i) {
          std::cout << "foliation " << i << ":\n";
          for (std::size_t t = 0; t < foliations[i].hypersurfaces.size();
               ++t) {
            std::cout << "  H" << (t + 1) << ":";
            for (const auto& w : foliations[i].hypersurfaces[t])
              std::cout << " " << w;
            std::cout << "\n";
          }
        }
      }
      return kExitOk;
    }

    if (*eval_cmd) {
      int exit_code = kExitOk;
      auto load = load_or_exit(file, &exit_code);
      if (exit_code != kExitOk) return exit_code;
      const auto assignment = parse_outcomes(outcomes_text);
      std::optional<gptc::Foliation> foliation;
      if (foliation_index >= 0) {
        auto all = gptc::enumerate_complete_foliations(
            load.bound.circuit, static_cast<std::size_t>(foliation_index) + 1);
        if (foliation_index >= static_cast<int>(all.size()))
          throw gptc::Error("circuit has fewer foliations than requested");
        foliation = all[foliation_index];
      }
      const double p = gptc::evaluate_circuit(load.bound, assignment,
                                              *load.theory, foliation);
      if (as_json) {
        ordered_json report;
        report["schema"] = 1;
        report["command"] = "eval";
        report["probability"] = p;
        std::cout << report.dump(2) << "\n";
      } else {
        std::printf("%.12g\n", p);
      }
      return kExitOk;
    }

    if (*counting_cmd) {
      const auto model = gptc::counting_model_from_name(model_name);
      const auto rep = gptc::composite_counting_check(model, n_a, n_b);
      if (as_json) {
        ordered_json report;
        report["schema"] = 1;
        report["command"] = "counting";
        report["model"] = gptc::to_string(rep.model);
        report["n_a"] = rep.n_a;
        report["n_b"] = rep.n_b;
        report["k_a"] = rep.k_a;
        report["k_b"] = rep.k_b;
        report["k_ab"] = rep.k_ab;
        report["relation"] = std::string(1, rep.relation);
        report["bound_satisfied"] = rep.bound_satisfied;
        report["locally_tomographic"] = rep.locally_tomographic;
        std::cout << report.dump(2) << "\n";
      } else {
        std::printf("%s N_a=%d N_b=%d: K_ab=%lld %c K_a*K_b=%lld", //
                    gptc::to_string(rep.model), rep.n_a, rep.n_b,
                    static_cast<long long>(rep.k_ab), rep.relation,
                    static_cast<long long>(rep.k_a * rep.k_b));
        if (!rep.bound_satisfied)
          std::printf("  VIOLATES the composite counting bound "
                      "(K_ab >= K_a*K_b)");
        else if (rep.locally_tomographic)
          std::printf("  locally tomographic");
        std::printf("\n");
      }
      return rep.bound_satisfied ? kExitOk : kExitCheckFailed;
    }

    if (*check_cmd) {
      gptc::SuiteOptions opts;
      opts.seed = seed;
      opts.size = std::max(1, size);
      std::vector<gptc::CheckResult> checks;
      auto append = [&checks](std::vector<gptc::CheckResult> more) {
        for (auto& c : more) checks.push_back(std::move(c));
      };
      if (suite == "foliation" || suite == "all")
        append(gptc::run_foliation_suite(opts));
      if (suite == "theorems" || suite == "all")
        append(gptc::run_theorems_suite(opts));
      if (suite == "oracles" || suite == "all")
        append(gptc::run_oracles_suite(opts));
      if (checks.empty()) throw gptc::Error("unknown suite: " + suite);

      bool all_pass = true;
      for (const auto& c : checks) all_pass = all_pass && c.passed();

      if (as_json) {
        ordered_json report;
        report["schema"] = 1;
        report["command"] = "check";
        report["suite"] = suite;
        report["seed"] = opts.seed;
        report["size"] = opts.size;
        report["checks"] = checks_to_json(checks, timings);
        report["all_pass"] = all_pass;
        std::cout << report.dump(2) << "\n";
      } else {
        std::printf("suite=%s seed=%lu size=%d\n", suite.c_str(), opts.seed,
                    opts.size);
        print_check_table(checks);
        std::printf("%s\n", all_pass ? "ALL PASS" : "FAILURES PRESENT");
      }
      return all_pass ? kExitOk : kExitCheckFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
