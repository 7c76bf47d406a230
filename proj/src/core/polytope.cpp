#include "core/polytope.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/linalg.hpp"
#include "core/numeric.hpp"

namespace sanov {

namespace {

constexpr uint64_t kBasisCap = 2'000'000;

double constraint_scale(const LinearConstraint& c) {
  double s = std::max(1.0, std::abs(c.alpha));
  for (double v : c.f) s = std::max(s, std::abs(v));
  return s;
}

bool satisfies_all(const std::vector<double>& q, const ConstraintSet& a,
                   const std::vector<bool>& support) {
  const int64_t k = a.alphabet_size();
  for (int64_t u = 0; u < k; ++u) {
    double v = q[static_cast<size_t>(u)];
    if (v < -1e-9) return false;
    if (!support[static_cast<size_t>(u)] && std::abs(v) > 1e-9) return false;
  }
  for (const LinearConstraint& c : a.constraints()) {
    KahanSum dot;
    for (int64_t u = 0; u < k; ++u) dot.add(c.f[static_cast<size_t>(u)] * q[static_cast<size_t>(u)]);
    double v = dot.value();
    double tol = 1e-9 * constraint_scale(c);
    switch (c.relation) {
      case Relation::eq:
        if (std::abs(v - c.alpha) > tol) return false;
        break;
      case Relation::ge:
        if (v < c.alpha - tol) return false;
        break;
      case Relation::le:
        if (v > c.alpha + tol) return false;
        break;
    }
  }
  return true;
}

// number of d-subsets of a pool, saturating
uint64_t binomial_saturating(uint64_t pool, uint64_t d) {
  if (d > pool) return 0;
  d = std::min(d, pool - d);
  uint64_t result = 1;
  for (uint64_t i = 1; i <= d; ++i) {
    uint64_t factor = pool - d + i;
    if (result > kBasisCap * 16 / std::max<uint64_t>(factor, 1)) return kBasisCap + 1;
    result = result * factor / i;
  }
  return result;
}

}  // namespace

std::vector<std::vector<double>> feasible_vertices_on_support(const ConstraintSet& a,
                                                              const std::vector<bool>& support) {
  const int64_t k = a.alphabet_size();
  if (static_cast<int64_t>(support.size()) != k) {
    throw Error(ErrorKind::internal, "feasible_vertices_on_support: support mask size mismatch");
  }

  // equality block: simplex sum, EQ constraints, forced zeros off support
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  {
    eq_rows.emplace_back(static_cast<size_t>(k), 1.0);
    eq_rhs.push_back(1.0);
    for (const LinearConstraint& c : a.constraints()) {
      if (c.relation != Relation::eq) continue;
      eq_rows.push_back(c.f);
      eq_rhs.push_back(c.alpha);
    }
    for (int64_t u = 0; u < k; ++u) {
      if (support[static_cast<size_t>(u)]) continue;
      std::vector<double> row(static_cast<size_t>(k), 0.0);
      row[static_cast<size_t>(u)] = 1.0;
      eq_rows.push_back(std::move(row));
      eq_rhs.push_back(0.0);
    }
  }

  // tight-candidate pool: inequality facets and the nonnegativity facets
  std::vector<std::vector<double>> pool_rows;
  std::vector<double> pool_rhs;
  for (const LinearConstraint& c : a.constraints()) {
    if (c.relation == Relation::eq) continue;
    pool_rows.push_back(c.f);
    pool_rhs.push_back(c.alpha);
  }
  for (int64_t u = 0; u < k; ++u) {
    std::vector<double> row(static_cast<size_t>(k), 0.0);
    row[static_cast<size_t>(u)] = 1.0;
    pool_rows.push_back(std::move(row));
    pool_rhs.push_back(0.0);
  }

  auto solve_with = [&](const std::vector<size_t>& chosen) -> std::optional<std::vector<double>> {
    int64_t rows = static_cast<int64_t>(eq_rows.size() + chosen.size());
    Matrix m(rows, k);
    std::vector<double> rhs(static_cast<size_t>(rows));
    int64_t r = 0;
    for (size_t i = 0; i < eq_rows.size(); ++i, ++r) {
      for (int64_t c = 0; c < k; ++c) m.at(r, c) = eq_rows[i][static_cast<size_t>(c)];
      rhs[static_cast<size_t>(r)] = eq_rhs[i];
    }
    for (size_t i = 0; i < chosen.size(); ++i, ++r) {
      for (int64_t c = 0; c < k; ++c) m.at(r, c) = pool_rows[chosen[i]][static_cast<size_t>(c)];
      rhs[static_cast<size_t>(r)] = pool_rhs[chosen[i]];
    }
    LinSolveResult res = solve_linear_system(m, rhs);
    if (res.status != LinSolveStatus::unique) return std::nullopt;
    return std::move(res.x);
  };

  // rank of the equality block alone fixes how many tight facets a basis needs
  int64_t eq_rank;
  {
    Matrix m(static_cast<int64_t>(eq_rows.size()), k);
    for (size_t i = 0; i < eq_rows.size(); ++i) {
      for (int64_t c = 0; c < k; ++c) m.at(static_cast<int64_t>(i), c) = eq_rows[i][static_cast<size_t>(c)];
    }
    LinSolveResult res = solve_linear_system(m, eq_rhs);
    if (res.status == LinSolveStatus::inconsistent) return {};
    eq_rank = res.rank;
    if (res.status == LinSolveStatus::unique) {
      std::vector<std::vector<double>> out;
      if (satisfies_all(res.x, a, support)) out.push_back(std::move(res.x));
      return out;
    }
  }
  const int64_t d = k - eq_rank;

  uint64_t bases = binomial_saturating(pool_rows.size(), static_cast<uint64_t>(d));
  if (bases > kBasisCap) {
    throw Error(ErrorKind::capacity,
                "vertex enumeration needs " + std::to_string(bases) +
                    " candidate bases; alphabet/constraint count too large for exact enumeration")
        .with_required_count(bases);
  }

  std::vector<std::vector<double>> vertices;
  auto push_unique = [&](std::vector<double> q) {
    for (const std::vector<double>& v : vertices) {
      double diff = 0.0;
      for (int64_t u = 0; u < k; ++u) {
        diff = std::max(diff, std::abs(v[static_cast<size_t>(u)] - q[static_cast<size_t>(u)]));
      }
      if (diff < 1e-8) return;
    }
    vertices.push_back(std::move(q));
  };

  // iterate d-subsets of the pool in lexicographic index order
  std::vector<size_t> idx(static_cast<size_t>(d));
  for (int64_t i = 0; i < d; ++i) idx[static_cast<size_t>(i)] = static_cast<size_t>(i);
  const size_t pool = pool_rows.size();
  if (static_cast<size_t>(d) > pool) return {};
  while (true) {
    if (auto q = solve_with(idx)) {
      // clip solver dust on the zero boundary
      for (double& v : *q) {
        if (v < 0.0 && v > -1e-9) v = 0.0;
      }
      if (satisfies_all(*q, a, support)) push_unique(std::move(*q));
    }
    // next combination
    int64_t pos = d - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == pool - static_cast<size_t>(d - pos)) --pos;
    if (pos < 0) break;
    ++idx[static_cast<size_t>(pos)];
    for (int64_t j = pos + 1; j < d; ++j) {
      idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return vertices;
}

std::vector<std::vector<double>> feasible_vertices(const ConstraintSet& a) {
  std::vector<bool> support(static_cast<size_t>(a.alphabet_size()), true);
  return feasible_vertices_on_support(a, support);
}

}  // namespace sanov
