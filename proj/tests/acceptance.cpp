// Acceptance suite: one check per shipped criterion. Each prints a single
// PASS/FAIL line with the measured numbers; the process exits with the number
// of failed criteria. `--criterion N` runs one of them (used by ctest).

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "core/bounds.hpp"
#include "core/conditional.hpp"
#include "core/errors.hpp"
#include "core/iprojection.hpp"
#include "core/montecarlo.hpp"
#include "core/typespace.hpp"
#include "oracles.hpp"

using namespace sanov;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return std::string(buf);
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// ---- shared grid ----------------------------------------------------------

struct GridInstance {
  int64_t k;
  int64_t n;
  Dist p;
  std::string shape;
  ConstraintSet a;
};

std::vector<GridInstance> verification_grid() {
  std::vector<GridInstance> grid;
  for (int64_t k = 2; k <= 4; ++k) {
    testing::TestRng rng(1000 + static_cast<uint64_t>(k));
    std::vector<Dist> ps;
    for (int i = 0; i < 10; ++i) ps.push_back(testing::random_dist(rng, k));
    auto shapes = testing::grid_constraint_shapes(k);
    for (int64_t n = 2; n <= 12; ++n) {
      for (const Dist& p : ps) {
        for (auto& [name, a] : shapes) {
          grid.push_back(GridInstance{k, n, p, name, a});
        }
      }
    }
  }
  return grid;
}

// ---- CLI helpers ----------------------------------------------------------

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/sanov_acceptance_" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  std::string out_path = "/tmp/sanov_acceptance_stdout";
  std::string cmd = std::string(SANOV_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  int raw = std::system(cmd.c_str());
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return CliResult{WEXITSTATUS(raw), buf.str()};
}

// ---- criteria -------------------------------------------------------------

// 1: the exact rate identity across the grid, under 60 s
Outcome criterion_exact_identity() {
  double start = now_seconds();
  size_t evaluated = 0, skipped = 0;
  double worst = 0.0;
  for (const GridInstance& g : verification_grid()) {
    ConditionalSummary s;
    try {
      s = summarize(g.p, g.n, g.a);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::empty_event) {
        ++skipped;
        continue;
      }
      return Outcome{false, std::string("unexpected error: ") + e.what()};
    }
    double nd = static_cast<double>(g.n);
    double rate = s.log_prob_event / nd;
    double residual =
        std::abs(rate + s.kl_omega_p.nats() + s.total_correlation.nats() / nd);
    double rel = residual / std::max(1.0, std::abs(rate));
    worst = std::max(worst, rel);
    ++evaluated;
    if (rel > 1e-9) {
      return Outcome{false, fmt("residual %.3e > 1e-9 at k=%lld n=%lld shape=%s",
                                rel, (long long)g.k, (long long)g.n, g.shape.c_str())};
    }
  }
  double elapsed = now_seconds() - start;
  bool in_time = elapsed < 60.0;
  return Outcome{in_time,
                 fmt("%zu instances (%zu empty skipped), max relative residual %.3e, %.2f s",
                     evaluated, skipped, worst, elapsed)};
}

// 2: type-level aggregation equals the sequence-level oracle where k^n <= 1e5
Outcome criterion_oracle_equivalence() {
  // flagship instance first
  {
    ConstraintSet a({{{0.0, 1.0}, Relation::ge, 0.75}});
    ConditionalSummary s = summarize(Dist({0.5, 0.5}), 4, a);
    if (std::abs(std::exp(s.log_prob_event) - 0.3125) > 1e-9 ||
        std::abs(s.omega[0] - 0.2) > 1e-9 || std::abs(s.omega[1] - 0.8) > 1e-9) {
      return Outcome{false, "flagship binary n=4 instance disagrees with 0.3125 / (0.2, 0.8)"};
    }
  }
  size_t evaluated = 0;
  double worst = 0.0;
  for (const GridInstance& g : verification_grid()) {
    double seq_count = std::pow(static_cast<double>(g.k), static_cast<double>(g.n));
    if (seq_count > 1e5) continue;
    ConditionalSummary s;
    try {
      s = summarize(g.p, g.n, g.a);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::empty_event) continue;
      return Outcome{false, std::string("unexpected error: ") + e.what()};
    }
    testing::SequenceSummary oracle = testing::sequence_oracle(g.p, g.n, g.a);
    double diff = std::abs(std::exp(s.log_prob_event) - oracle.prob);
    for (int64_t u = 0; u < g.k; ++u) {
      diff = std::max(diff, std::abs(s.omega[u] - oracle.omega[static_cast<size_t>(u)]));
    }
    diff = std::max(diff, std::abs(s.entropy_mu.nats() - oracle.entropy_mu));
    diff = std::max(diff, std::abs(s.total_correlation.nats() - oracle.total_correlation));
    worst = std::max(worst, diff);
    ++evaluated;
    if (diff > 1e-9) {
      return Outcome{false, fmt("disagreement %.3e > 1e-9 at k=%lld n=%lld shape=%s", diff,
                                (long long)g.k, (long long)g.n, g.shape.c_str())};
    }
  }
  return Outcome{true, fmt("%zu oracle comparisons, max disagreement %.3e", evaluated, worst)};
}

// 3: rate/bound ordering chain everywhere, plus the flagship chain values
Outcome criterion_bound_ordering() {
  {
    ConstraintSet a({{{0.0, 1.0}, Relation::ge, 0.75}});
    BoundsReport r = full_report(Dist({0.5, 0.5}), 4, a);
    struct Spot {
      double got, want;
    } spots[] = {{r.lb_cross, -0.693147},
                 {r.exact_rate, -0.290788},
                 {r.ub_marginal, -0.192745},
                 {r.ub_iproj, -0.130812}};
    for (const Spot& s : spots) {
      if (std::abs(s.got - s.want) > 1e-5) {
        return Outcome{false, fmt("flagship chain value %.8f != %.6f", s.got, s.want)};
      }
    }
    if (std::abs(r.lb_maxcross() - r.lb_cross) > 1e-12) {
      return Outcome{false, "uniform p should collapse both lower bounds to -ln 2"};
    }
  }
  size_t evaluated = 0, skipped = 0;
  double worst = 0.0;
  for (const GridInstance& g : verification_grid()) {
    BoundsReport r;
    try {
      r = full_report(g.p, g.n, g.a);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::empty_event) {
        ++skipped;
        continue;
      }
      return Outcome{false, std::string("unexpected error: ") + e.what()};
    }
    double violation = 0.0;
    violation = std::max(violation, r.lb_maxcross() - r.lb_cross);
    violation = std::max(violation, r.lb_cross - r.exact_rate);
    violation = std::max(violation, r.exact_rate - r.ub_marginal);
    violation = std::max(violation, r.ub_marginal - r.ub_iproj);
    worst = std::max(worst, violation);
    ++evaluated;
    if (violation > 1e-9) {
      return Outcome{false, fmt("chain violated by %.3e at k=%lld n=%lld shape=%s", violation,
                                (long long)g.k, (long long)g.n, g.shape.c_str())};
    }
  }
  return Outcome{true, fmt("%zu instances (%zu empty skipped), worst chain violation %.3e",
                           evaluated, skipped, worst)};
}

// 4: subset-bound equality on the balanced linear family at even n
Outcome criterion_subset_bound_equality() {
  Dist p({0.5, 0.5});
  ConstraintSet family({{{0.0, 1.0}, Relation::eq, 0.5}});
  double worst = 0.0;
  for (int64_t n = 2; n <= 12; n += 2) {
    SubsetBound sb = subset_report(p, n, family, family);
    worst = std::max(worst, std::abs(sb.residual));
    if (std::abs(sb.residual) > 1e-9) {
      return Outcome{false, fmt("residual %.3e > 1e-9 at n=%lld", sb.residual, (long long)n)};
    }
  }
  // the n=2 decomposition: -ln 0.5 = ln 2 with D(P*||P) = 0 and D(mu||P*^2) = ln 2
  IProjection proj = project(p, family);
  ConditionalSummary s = summarize(p, 2, family);
  double d_mu_pstar2 = s.total_correlation.nats() +
                       2.0 * relative_entropy(s.omega, proj.q_star).nats();
  if (proj.divergence.nats() > 1e-12 ||
      std::abs(d_mu_pstar2 - std::log(2.0)) > 1e-12 ||
      std::abs(-s.log_prob_event - std::log(2.0)) > 1e-12) {
    return Outcome{false, fmt("n=2 decomposition off: D(P*||P)=%.3e, D(mu||P*^2)=%.12f",
                              proj.divergence.nats(), d_mu_pstar2)};
  }
  return Outcome{true, fmt("even n in [2,12], max |residual| %.3e; n=2 splits into 0 + ln 2",
                           worst)};
}

// 5: Pythagorean identity on the three-symbol tilt family, inequality one-sided
Outcome criterion_pythagorean() {
  // oracle: tilt parameter solves t^2 - t - 3 = 0
  double t = testing::bisect_root([](double x) { return x * x - x - 3.0; }, 1.0, 3.0);
  double z = 1.0 + t + t * t;
  double q_expected[3] = {1.0 / z, t / z, t * t / z};
  double d_expected = 0.0;
  for (int u = 0; u < 3; ++u) d_expected += q_expected[u] * std::log(3.0 * q_expected[u]);

  Dist p = Dist::uniform(3);
  ConstraintSet family({{{0.0, 1.0, 2.0}, Relation::eq, 1.5}});
  IProjection proj = project(p, family);
  for (int u = 0; u < 3; ++u) {
    if (std::abs(proj.q_star[u] - q_expected[u]) > 1e-9) {
      return Outcome{false, fmt("q*[%d] = %.12f, oracle %.12f", u, proj.q_star[u],
                                q_expected[u])};
    }
  }
  if (std::abs(proj.divergence.nats() - d_expected) > 1e-9) {
    return Outcome{false, fmt("divergence %.12f, oracle %.12f", proj.divergence.nats(),
                              d_expected)};
  }
  double spot[4] = {0.116204, 0.267590, 0.616206, 0.197380};
  if (std::abs(proj.q_star[0] - spot[0]) > 1e-4 || std::abs(proj.q_star[1] - spot[1]) > 1e-4 ||
      std::abs(proj.q_star[2] - spot[2]) > 1e-4 ||
      std::abs(proj.divergence.nats() - spot[3]) > 1e-4) {
    return Outcome{false, "solution strayed from the quoted six-decimal values"};
  }

  // equality at 20 feasible grid points: q = (s - 0.5, 1.5 - 2s, s), s in [0.5, 0.75]
  double worst_eq = 0.0;
  for (int i = 0; i <= 19; ++i) {
    double s = 0.5 + 0.25 * (static_cast<double>(i) + 0.5) / 20.0;
    Dist q({s - 0.5, 1.5 - 2.0 * s, s});
    PythagoreanResult r = pythagorean_residual(p, family, q);
    if (r.kind != PythagoreanKind::finite) return Outcome{false, "unexpected infinity"};
    worst_eq = std::max(worst_eq, std::abs(r.residual));
    if (std::abs(r.residual) > 1e-9) {
      return Outcome{false, fmt("equality residual %.3e > 1e-9 at grid point %d", r.residual, i)};
    }
  }

  // one-sided residual on half-space instances
  double worst_ge = 0.0;
  ConstraintSet half({{{0.0, 1.0}, Relation::ge, 0.75}});
  Dist pb({0.5, 0.5});
  for (double mass : {0.75, 0.8, 0.9, 1.0}) {
    PythagoreanResult r = pythagorean_residual(pb, half, Dist({1.0 - mass, mass}));
    if (r.kind != PythagoreanKind::finite) return Outcome{false, "unexpected infinity (ge)"};
    if (r.residual < -1e-9) {
      return Outcome{false, fmt("inequality residual %.3e < -1e-9", r.residual)};
    }
    worst_ge = std::min(worst_ge, r.residual);
  }
  ConstraintSet half3({{{0.0, 1.0, 2.0}, Relation::ge, 1.2}});
  Dist p3({0.5, 0.3, 0.2});
  for (double s : {0.45, 0.55, 0.65}) {
    Dist q({s - 0.4, 1.4 - 2.0 * s, s});  // mean pinned at 1.4 >= 1.2, coordinates valid here
    if (!half3.contains(q)) continue;
    PythagoreanResult r = pythagorean_residual(p3, half3, q);
    if (r.kind == PythagoreanKind::finite && r.residual < -1e-9) {
      return Outcome{false, fmt("inequality residual %.3e < -1e-9 (k=3)", r.residual)};
    }
    if (r.kind == PythagoreanKind::finite) worst_ge = std::min(worst_ge, r.residual);
  }
  return Outcome{true, fmt("projection matches the root oracle; max |equality residual| "
                           "%.3e; inequality residuals >= %.3e",
                           worst_eq, worst_ge)};
}

// 6: dual gradient vs finite differences, KKT signs, rescaling invariance
Outcome criterion_solver_checks() {
  testing::TestRng rng(2024);
  double worst_fd = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    int64_t k = 2 + static_cast<int64_t>(rng.uniform() * 3);
    int64_t m = 1 + static_cast<int64_t>(rng.uniform() * 2);
    Dist p = testing::random_dist(rng, k);
    Dist anchor = testing::random_dist(rng, k);
    std::vector<LinearConstraint> cs;
    for (int64_t i = 0; i < m; ++i) {
      std::vector<double> f(static_cast<size_t>(k));
      for (auto& v : f) v = 2.0 * rng.uniform() - 1.0;
      double alpha = 0.0;
      for (int64_t u = 0; u < k; ++u) alpha += f[static_cast<size_t>(u)] * anchor[u];
      cs.push_back({std::move(f), Relation::eq, alpha});
    }
    ConstraintSet a(std::move(cs));
    std::vector<double> lambda(static_cast<size_t>(m));
    for (auto& l : lambda) l = 2.0 * rng.uniform() - 1.0;
    DualEval ev = dual_value_and_gradient(p, a, lambda);
    const double h = 1e-5;
    for (int64_t i = 0; i < m; ++i) {
      std::vector<double> up = lambda, down = lambda;
      up[static_cast<size_t>(i)] += h;
      down[static_cast<size_t>(i)] -= h;
      double fd = (dual_value_and_gradient(p, a, up).value -
                   dual_value_and_gradient(p, a, down).value) /
                  (2.0 * h);
      double diff = std::abs(fd - ev.gradient[static_cast<size_t>(i)]);
      worst_fd = std::max(worst_fd, diff);
      if (diff > 1e-6) {
        return Outcome{false, fmt("finite-difference gap %.3e > 1e-6 on trial %d", diff, trial)};
      }
    }
  }

  // KKT conditions on random mixed-inequality instances
  int kkt_checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int64_t k = 2 + static_cast<int64_t>(rng.uniform() * 3);
    Dist p = testing::random_dist(rng, k);
    std::vector<LinearConstraint> cs;
    int64_t m = 1 + static_cast<int64_t>(rng.uniform() * 2);
    for (int64_t i = 0; i < m; ++i) {
      std::vector<double> f(static_cast<size_t>(k));
      for (auto& v : f) v = rng.uniform();
      double fmin = 1e300, fmax = -1e300;
      for (double v : f) {
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
      }
      double alpha = fmin + (0.2 + 0.6 * rng.uniform()) * (fmax - fmin);
      cs.push_back({std::move(f), rng.uniform() < 0.5 ? Relation::ge : Relation::le, alpha});
    }
    ConstraintSet a(std::move(cs));
    IProjection r;
    try {
      r = project(p, a);
    } catch (const Error&) {
      continue;  // jointly infeasible draws are legitimately skipped
    }
    ++kkt_checked;
    for (size_t i = 0; i < r.duals.size(); ++i) {
      double l = r.duals[i];
      if (!r.active[i] && std::abs(l) > 1e-10) {
        return Outcome{false, fmt("inactive dual %.3e != 0", l)};
      }
      if (r.active[i]) {
        Relation rel = a.constraints()[i].relation;
        bool ok = rel == Relation::ge ? l >= -1e-10 : rel == Relation::le ? l <= 1e-10 : true;
        if (!ok) return Outcome{false, fmt("KKT sign violated on trial %d: %.3e", trial, l)};
      }
    }
    if (r.dual_gradient_max > 1e-10) {
      return Outcome{false, fmt("dual gradient %.3e > 1e-10", r.dual_gradient_max)};
    }
  }

  // rescaling invariance of q*
  Dist p3({0.5, 0.3, 0.2});
  std::vector<double> f{0.0, 1.0, 2.0};
  ConstraintSet mixed({{f, Relation::ge, 1.1}, {{1.0, 0.0, 0.0}, Relation::le, 0.6}});
  IProjection base = project(p3, mixed);
  double worst_rescale = 0.0;
  for (double c : {0.01, 3.0, 250.0}) {
    std::vector<double> fc(f);
    for (auto& v : fc) v *= c;
    ConstraintSet scaled({{fc, Relation::ge, 1.1 * c}, {{1.0, 0.0, 0.0}, Relation::le, 0.6}});
    IProjection r = project(p3, scaled);
    for (int64_t u = 0; u < 3; ++u) {
      worst_rescale = std::max(worst_rescale, std::abs(r.q_star[u] - base.q_star[u]));
    }
  }
  if (worst_rescale > 1e-9) {
    return Outcome{false, fmt("rescaling moved q* by %.3e > 1e-9", worst_rescale)};
  }
  return Outcome{true, fmt("50 finite-difference trials (max gap %.3e), %d KKT instances, "
                           "rescaling drift %.3e",
                           worst_fd, kkt_checked, worst_rescale)};
}

// 7: convergence toward the asymptotic rate, and speed at n = 10^4
Outcome criterion_asymptotics() {
  Dist p({0.5, 0.5});
  ConstraintSet a({{{0.0, 1.0}, Relation::ge, 0.75}});
  double d_star = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);

  double start = now_seconds();
  summarize(p, 10000, a);
  double elapsed = now_seconds() - start;
  if (elapsed >= 5.0) {
    return Outcome{false, fmt("n=10^4 enumeration took %.2f s >= 5 s", elapsed)};
  }

  std::vector<int64_t> ns{10, 100, 1000, 10000};
  double prev_gap = 1e300;
  std::string gaps;
  for (int64_t n : ns) {
    ConditionalSummary s = summarize(p, n, a);
    double rate = s.log_prob_event / static_cast<double>(n);
    if (!(rate < -d_star)) {
      return Outcome{false, fmt("exact rate %.9f not strictly below %.9f at n=%lld", rate,
                                -d_star, (long long)n)};
    }
    double gap = -d_star - rate;  // positive distance to the asymptote
    if (!(gap < prev_gap)) {
      return Outcome{false, fmt("gap did not shrink at n=%lld (%.3e -> %.3e)", (long long)n,
                                prev_gap, gap)};
    }
    gaps += fmt("%s%.3e", gaps.empty() ? "" : " > ", gap);
    prev_gap = gap;
  }
  return Outcome{true, fmt("gaps %s; n=10^4 pass in %.2f s", gaps.c_str(), elapsed)};
}

// 8: Monte Carlo brackets the exact value; byte-identical reruns
Outcome criterion_monte_carlo() {
  std::string spec = write_temp("mc.json", R"({
    "p": [0.5, 0.5],
    "n": 4,
    "constraints": [{"f": [0, 1], "relation": "ge", "alpha": 0.75}],
    "seed": 42,
    "trials": 1000000
  })");
  CliResult a = run_cli("mc --spec " + spec);
  CliResult b = run_cli("mc --spec " + spec);
  if (a.exit_code != 0 || b.exit_code != 0) {
    return Outcome{false, fmt("mc exited with %d / %d", a.exit_code, b.exit_code)};
  }
  if (a.output != b.output) {
    return Outcome{false, "two runs with the same seed differ byte-for-byte"};
  }
  json doc = json::parse(a.output);
  double lo = doc["ci_low"].get<double>();
  double hi = doc["ci_high"].get<double>();
  if (!(lo <= 0.3125 && 0.3125 <= hi)) {
    return Outcome{false, fmt("0.3125 outside the Wilson interval [%.6f, %.6f]", lo, hi)};
  }
  if (doc["exact"]["in_ci"] != true) {
    return Outcome{false, "report's own agreement verdict is negative"};
  }
  return Outcome{true, fmt("p_hat %.6f, interval [%.6f, %.6f] covers 0.3125; reruns identical",
                           doc["p_hat"].get<double>(), lo, hi)};
}

// 9: negative controls through the CLI, with exit codes and certificates
Outcome criterion_negative_controls() {
  std::string odd = write_temp("odd.json", R"({
    "p": [0.5, 0.5],
    "n": 3,
    "constraints": [{"f": [0, 1], "relation": "eq", "alpha": 0.5}]
  })");
  CliResult r1 = run_cli("exact --spec " + odd);
  if (r1.exit_code != 4) {
    return Outcome{false, fmt("odd-n empty event exited %d, expected 4", r1.exit_code)};
  }
  json body1 = json::parse(r1.output);
  if (body1["error"]["kind"] != "empty_event") {
    return Outcome{false, "error body does not name the empty event"};
  }

  std::string infeasible = write_temp("infeasible.json", R"({
    "p": [0.5, 0.5],
    "n": 4,
    "constraints": [{"f": [0, 1], "relation": "ge", "alpha": 1.5}]
  })");
  CliResult r2 = run_cli("bounds --spec " + infeasible);
  if (r2.exit_code != 5) {
    return Outcome{false, fmt("infeasible alpha exited %d, expected 5", r2.exit_code)};
  }
  json body2 = json::parse(r2.output);
  if (!body2["error"].contains("constraint_index") ||
      body2["error"]["constraint_index"] != 0) {
    return Outcome{false, "missing or wrong certificate index"};
  }
  return Outcome{true, "exit 4 with empty_event body; exit 5 with certificate index 0"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc - 1; ++i) {
    if (std::string(argv[i]) == "--criterion") only = std::atoi(argv[i + 1]);
  }

  std::vector<Criterion> criteria = {
      {1, "exact-identity-suite", criterion_exact_identity},
      {2, "oracle-equivalence", criterion_oracle_equivalence},
      {3, "bound-ordering", criterion_bound_ordering},
      {4, "subset-bound-equality", criterion_subset_bound_equality},
      {5, "pythagorean", criterion_pythagorean},
      {6, "solver-checks", criterion_solver_checks},
      {7, "asymptotic-convergence", criterion_asymptotics},
      {8, "monte-carlo-agreement", criterion_monte_carlo},
      {9, "negative-controls", criterion_negative_controls},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d %-24s %s  (%s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    if (!o.pass) ++failures;
  }
  return failures;
}
