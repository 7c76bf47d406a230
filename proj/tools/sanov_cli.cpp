// Command-line front door. Parses flags, reads the problem document, and
// drives everything through the shared-library C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "sanov.h"

namespace {

struct Options {
  std::string spec_path;
  std::string out_path;
  std::optional<int64_t> budget;
  std::optional<uint64_t> seed;
  std::optional<int64_t> trials;
  bool subset = false;
};

int fail_with_error_body(const Options& opts, sanov_status status) {
  const char* body = sanov_last_error_json();
  if (body[0] == '\0') body = "{\"error\":{\"code\":1,\"kind\":\"internal\",\"message\":\"\"}}";
  std::cout << body << "\n";
  (void)opts;
  return static_cast<int>(status);
}

int write_output(const Options& opts, const char* text) {
  std::string s(text);
  if (s.empty() || s.back() != '\n') s += '\n';
  if (opts.out_path.empty() || opts.out_path == "-") {
    std::cout << s;
    return 0;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) {
    std::cout << "{\"error\":{\"code\":2,\"kind\":\"validation\",\"message\":\"cannot open "
                 "output file\"}}\n";
    return 2;
  }
  out << s;
  return 0;
}

int run(const std::string& command, const Options& opts) {
  std::string spec_text;
  if (opts.spec_path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    spec_text = buf.str();
  } else {
    std::ifstream in(opts.spec_path, std::ios::binary);
    if (!in) {
      std::cout << "{\"error\":{\"code\":2,\"kind\":\"validation\",\"message\":\"cannot read "
                   "spec file: "
                << opts.spec_path << "\"}}\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    spec_text = buf.str();
  }

  sanov_problem* problem = nullptr;
  sanov_status status = sanov_problem_from_json(spec_text.c_str(), &problem);
  if (status != SANOV_OK) return fail_with_error_body(opts, status);

  if (opts.budget.has_value()) {
    status = sanov_problem_set_budget(problem, *opts.budget);
    if (status != SANOV_OK) {
      sanov_problem_free(problem);
      return fail_with_error_body(opts, status);
    }
  }
  if (opts.seed.has_value()) sanov_problem_set_seed(problem, *opts.seed);
  if (opts.trials.has_value()) {
    status = sanov_problem_set_trials(problem, *opts.trials);
    if (status != SANOV_OK) {
      sanov_problem_free(problem);
      return fail_with_error_body(opts, status);
    }
  }

  sanov_report* report = nullptr;
  if (command == "exact") {
    status = sanov_run_exact(problem, &report);
  } else if (command == "bounds") {
    status = sanov_run_bounds(problem, opts.subset ? 1 : 0, &report);
  } else if (command == "iproject") {
    status = sanov_run_iproject(problem, &report);
  } else if (command == "sweep") {
    status = sanov_run_sweep(problem, &report);
  } else if (command == "verify") {
    status = sanov_run_verify(problem, &report);
  } else if (command == "mc") {
    status = sanov_run_mc(problem, &report);
  } else {
    sanov_problem_free(problem);
    std::cout << "{\"error\":{\"code\":2,\"kind\":\"validation\",\"message\":\"unknown "
                 "command\"}}\n";
    return 2;
  }

  int exit_code;
  if (status != SANOV_OK) {
    exit_code = fail_with_error_body(opts, status);
  } else {
    exit_code = write_output(opts, sanov_report_text(report));
  }
  sanov_report_free(report);
  sanov_problem_free(problem);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite-sample tail probabilities of empirical distributions"};
  app.require_subcommand(1);

  Options opts;
  const char* descriptions[][2] = {
      {"exact", "Event probability, conditional marginal and total correlation"},
      {"bounds", "Exact rate with all upper/lower bounds and slack terms"},
      {"iproject", "I-projection onto the constraint set, duals and diagnostics"},
      {"sweep", "Bounds across sample sizes as CSV"},
      {"verify", "Run the identity suite and report pass/fail per check"},
      {"mc", "Monte Carlo estimate with a Wilson 95% interval"},
  };

  for (const auto& d : descriptions) {
    CLI::App* sub = app.add_subcommand(d[0], d[1]);
    sub->add_option("--spec", opts.spec_path, "Problem spec JSON file ('-' for stdin)")
        ->required();
    sub->add_option("--out", opts.out_path, "Write the report here instead of stdout");
    sub->add_option("--budget", opts.budget, "Type enumeration budget override");
    sub->add_option("--seed", opts.seed, "Monte Carlo seed override");
    sub->add_option("--trials", opts.trials, "Monte Carlo trial count override");
    if (std::string(d[0]) == "bounds") {
      sub->add_flag("--subset", opts.subset,
                    "Include the subset bound (B = subset_constraints, or A itself)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  return run(app.get_subcommands().front()->get_name(), opts);
}
