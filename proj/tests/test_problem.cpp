#include <cmath>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "core/errors.hpp"
#include "core/json_writer.hpp"
#include "core/problem.hpp"

using namespace sanov;
using nlohmann::json;

namespace {

const char* kE1 = R"({
  "p": [0.5, 0.5],
  "n": 4,
  "constraints": [{"f": [0, 1], "relation": "ge", "alpha": 0.75}]
})";

std::string error_message(const std::string& spec_text) {
  try {
    parse_problem(spec_text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE_BEGIN("problem");

TEST_CASE("parses the flagship instance") {
  ProblemSpec spec = parse_problem(kE1);
  CHECK(spec.p.size() == 2);
  CHECK(*spec.n == 4);
  CHECK(spec.constraints->constraints().size() == 1);
  CHECK(spec.constraints->constraints()[0].relation == Relation::ge);
}

TEST_CASE("field-precise validation messages") {
  CHECK(error_message("{") .find("spec JSON") != std::string::npos);
  CHECK(error_message(R"({"n": 4})").find("p") != std::string::npos);
  CHECK(error_message(R"({"p": [0.5, 0.6], "n": 4})").find("p:") != std::string::npos);
  CHECK(error_message(R"({"p": [0.5, 0.5], "n": -1})").find("n") != std::string::npos);
  CHECK(error_message(R"({"p": [0.5, 0.5], "bogus": 1})").find("bogus") != std::string::npos);
  std::string msg = error_message(
      R"({"p": [0.5, 0.5], "constraints": [{"f": [0, 1, 2], "relation": "ge", "alpha": 1}]})");
  CHECK(msg.find("constraints[0].f") != std::string::npos);
  msg = error_message(
      R"({"p": [0.5, 0.5], "constraints": [{"f": [0, 1], "relation": "gte", "alpha": 1}]})");
  CHECK(msg.find("relation") != std::string::npos);
}

TEST_CASE("exact report fields and round-trip") {
  std::string text = run_exact(parse_problem(kE1));
  json r = json::parse(text);  // must re-parse
  CHECK(r["command"] == "exact");
  CHECK(r["n"] == 4);
  CHECK(std::abs(r["prob"].get<double>() - 0.3125) <= 1e-12);
  CHECK(std::abs(r["omega"][1].get<double>() - 0.8) <= 1e-10);
  CHECK(r["identity_residual"].get<double>() <= 1e-10);
  CHECK(r["member_types"] == 2);
}

TEST_CASE("error bodies stay valid JSON when messages carry quotes") {
  try {
    parse_problem(
        R"({"p": [0.5, 0.5], "constraints": [{"f": [0, 1], "relation": "gte", "alpha": 1}]})");
    FAIL("expected validation error");
  } catch (const Error& e) {
    // the message quotes the bad relation; the body must still re-parse
    json body = json::parse(error_body_json(e));
    CHECK(body["error"]["message"].get<std::string>().find("gte") != std::string::npos);
  }
}

TEST_CASE("overflowing numbers in the spec are a validation error, not internal") {
  CHECK(error_message(R"({"p": [1e999, 0.5], "n": 4})").find("spec JSON") !=
        std::string::npos);
  CHECK(error_message(
            R"({"p": [0.5, 0.5], "n": 4,
                "constraints": [{"f": [0, 1e999], "relation": "ge", "alpha": 1}]})")
            .find("spec JSON") != std::string::npos);
}

TEST_CASE("17-significant-digit float rendering") {
  CHECK(format_double(0.3125) == "0.3125");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  double third = std::strtod(format_double(1.0 / 3.0).c_str(), nullptr);
  CHECK(third == 1.0 / 3.0);  // exact round trip
}

TEST_CASE("byte-stable reports") {
  ProblemSpec spec = parse_problem(kE1);
  CHECK(run_exact(spec) == run_exact(spec));
  CHECK(run_bounds(spec, true) == run_bounds(spec, true));
  CHECK(run_mc(spec) == run_mc(spec));
}

TEST_CASE("bounds report carries the full chain and subset block") {
  std::string text = run_bounds(parse_problem(kE1), true);
  json r = json::parse(text);
  CHECK(r["command"] == "bounds");
  double exact_rate = r["exact_rate"].get<double>();
  double ub_marginal = r["ub_marginal"].get<double>();
  double ub_iproj = r["ub_iproj"].get<double>();
  double lb_cross = r["lb_cross"].get<double>();
  CHECK(lb_cross <= exact_rate + 1e-9);
  CHECK(exact_rate <= ub_marginal + 1e-9);
  CHECK(ub_marginal <= ub_iproj + 1e-9);
  CHECK(std::abs(r["rate_decomposition_residual"].get<double>()) <= 1e-10);
  CHECK(r.contains("subset"));
  CHECK(r["subset"]["residual"].get<double>() <= 1e-9);
  CHECK(r["iprojection"]["q_star"][1].get<double>() == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("iproject report evaluates caller test points") {
  std::string spec_text = R"({
    "p": [0.3333333333333333, 0.3333333333333334, 0.3333333333333333],
    "n": 4,
    "constraints": [{"f": [0, 1, 2], "relation": "eq", "alpha": 1.5}],
    "test_points": [[0.1, 0.3, 0.6], [0.25, 0.0, 0.75], [0.5, 0.3, 0.2]]
  })";
  std::string text = run_iproject(parse_problem(spec_text));
  json r = json::parse(text);
  CHECK(r["command"] == "iproject");
  CHECK(r["q_star"].size() == 3);
  REQUIRE(r["pythagorean"].size() == 3);
  // feasible points: |residual| tiny on the linear family
  CHECK(r["pythagorean"][0]["in_family"] == true);
  CHECK(std::abs(r["pythagorean"][0]["residual"].get<double>()) <= 1e-9);
  CHECK(r["pythagorean"][1]["in_family"] == true);
  CHECK(std::abs(r["pythagorean"][1]["residual"].get<double>()) <= 1e-9);
  // infeasible point is reported, not an error
  CHECK(r["pythagorean"][2]["in_family"] == false);
  CHECK(r["pythagorean"][2]["residual"].is_null());
}

TEST_CASE("sweep CSV shape") {
  std::string spec_text = R"({
    "p": [0.5, 0.5],
    "n_values": [2, 3, 4],
    "constraints": [{"f": [0, 1], "relation": "eq", "alpha": 0.5}]
  })";
  std::string csv = run_sweep_csv(parse_problem(spec_text));
  CHECK(csv.find("n,status,exact_rate,ub_marginal,ub_iproj,lb_cross,lb_maxcross,tc_slack,"
                 "ratio_diag,gap_to_asymptote\n") == 0);
  CHECK(csv.find("\n3,empty,") != std::string::npos);
  CHECK(csv.find("\n2,ok,") != std::string::npos);
  CHECK(csv.find("\n4,ok,") != std::string::npos);
}

TEST_CASE("verify passes on healthy instances") {
  std::string text = run_verify(parse_problem(kE1));
  json r = json::parse(text);
  CHECK(r["all_pass"] == true);
  for (const auto& check : r["checks"]) {
    CHECK(check["pass"] == true);
  }
  // the full-simplex instance: residuals essentially zero
  std::string vac = R"({
    "p": [0.4, 0.6],
    "n": 5,
    "constraints": [{"f": [0, 1], "relation": "ge", "alpha": 0}]
  })";
  json rv = json::parse(run_verify(parse_problem(vac)));
  CHECK(rv["all_pass"] == true);
  for (const auto& check : rv["checks"]) {
    if (!check["residual"].is_null()) {
      CHECK(check["residual"].get<double>() <= 1e-12);
    }
  }
}

TEST_CASE("verify negative control: corrupted omega breaks the identity") {
  std::string spec_text = R"({
    "p": [0.3, 0.7],
    "n": 4,
    "constraints": [{"f": [0, 1], "relation": "ge", "alpha": 0.75}]
  })";
  ProblemSpec spec = parse_problem(spec_text);
  json healthy = json::parse(run_verify(spec));
  CHECK(healthy["all_pass"] == true);

  json corrupted = json::parse(run_verify_with_omega(spec, Dist({0.5, 0.5})));
  CHECK(corrupted["all_pass"] == false);
  bool rate_identity_failed = false;
  for (const auto& check : corrupted["checks"]) {
    if (check["name"] == "rate_identity") rate_identity_failed = !check["pass"].get<bool>();
  }
  CHECK(rate_identity_failed);
}

TEST_CASE("error bodies carry code, kind and certificates") {
  ProblemSpec spec = parse_problem(R"({
    "p": [0.5, 0.5],
    "n": 3,
    "constraints": [{"f": [0, 1], "relation": "eq", "alpha": 0.5}]
  })");
  try {
    run_exact(spec);
    FAIL("expected empty event");
  } catch (const Error& e) {
    json body = json::parse(error_body_json(e));
    CHECK(body["error"]["code"] == 4);
    CHECK(body["error"]["kind"] == "empty_event");
  }
  ProblemSpec infeasible = parse_problem(R"({
    "p": [0.5, 0.5],
    "n": 4,
    "constraints": [{"f": [0, 1], "relation": "eq", "alpha": 1.5}]
  })");
  try {
    run_bounds(infeasible, false);
    FAIL("expected infeasible");
  } catch (const Error& e) {
    json body = json::parse(error_body_json(e));
    CHECK(body["error"]["code"] == 5);
    CHECK(body["error"]["constraint_index"] == 0);
  }
}

TEST_CASE("budget: spec field and environment variable") {
  std::string big = R"({
    "p": [0.25, 0.25, 0.25, 0.25],
    "n": 500,
    "constraints": [{"f": [0, 0, 0, 1], "relation": "ge", "alpha": 0.5}],
    "budget": 1000
  })";
  try {
    run_exact(parse_problem(big));
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::capacity);
  }

  // env fallback applies only when the document has no budget
  setenv("SANOV_BUDGET", "1000", 1);
  std::string no_budget = R"({
    "p": [0.25, 0.25, 0.25, 0.25],
    "n": 500,
    "constraints": [{"f": [0, 0, 0, 1], "relation": "ge", "alpha": 0.5}]
  })";
  ProblemSpec spec = parse_problem(no_budget);
  CHECK(spec.budget == 1000);
  unsetenv("SANOV_BUDGET");
  ProblemSpec spec2 = parse_problem(no_budget);
  CHECK(spec2.budget == kDefaultTypeBudget);
}

TEST_CASE("mc reports the exact value as unavailable beyond budget") {
  std::string spec_text = R"({
    "p": [0.5, 0.5],
    "n": 4,
    "constraints": [{"f": [0, 1], "relation": "ge", "alpha": 0.75}],
    "trials": 100,
    "budget": 2
  })";
  json r = json::parse(run_mc(parse_problem(spec_text)));
  CHECK(r["exact"]["available"] == false);
  CHECK(r["exact"]["reason"].get<std::string>().find("budget") != std::string::npos);
  CHECK(r["hits"].get<int64_t>() >= 0);  // the estimate itself still ran
}

TEST_CASE("mc report includes exact agreement when in budget") {
  std::string spec_text = R"({
    "p": [0.5, 0.5],
    "n": 4,
    "constraints": [{"f": [0, 1], "relation": "ge", "alpha": 0.75}],
    "seed": 42,
    "trials": 100000
  })";
  json r = json::parse(run_mc(parse_problem(spec_text)));
  CHECK(r["generator"] == "splitmix64-counter");
  CHECK(r["partitions"] == 1);
  CHECK(r["exact"]["available"] == true);
  CHECK(std::abs(r["exact"]["prob"].get<double>() - 0.3125) <= 1e-12);
  CHECK(r["exact"]["in_ci"] == true);
}

TEST_SUITE_END();
