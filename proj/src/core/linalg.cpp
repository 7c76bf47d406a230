#include "core/linalg.hpp"

#include <cmath>

namespace sanov {

LinSolveResult solve_linear_system(const Matrix& a, const std::vector<double>& b, double tol) {
  const int64_t m = a.rows;
  const int64_t n = a.cols;
  // augmented working copy, rows normalized to unit max magnitude
  Matrix w(m, n + 1);
  for (int64_t r = 0; r < m; ++r) {
    double scale = std::abs(b[static_cast<size_t>(r)]);
    for (int64_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(a.at(r, c)));
    if (scale == 0.0) scale = 1.0;
    for (int64_t c = 0; c < n; ++c) w.at(r, c) = a.at(r, c) / scale;
    w.at(r, n) = b[static_cast<size_t>(r)] / scale;
  }

  std::vector<int64_t> pivot_col_of_row;
  int64_t row = 0;
  for (int64_t col = 0; col < n && row < m; ++col) {
    int64_t best = -1;
    double best_abs = tol;
    for (int64_t r = row; r < m; ++r) {
      double v = std::abs(w.at(r, col));
      if (v > best_abs) {
        best_abs = v;
        best = r;
      }
    }
    if (best < 0) continue;
    if (best != row) {
      for (int64_t c = 0; c <= n; ++c) std::swap(w.at(best, c), w.at(row, c));
    }
    double piv = w.at(row, col);
    for (int64_t c = col; c <= n; ++c) w.at(row, c) /= piv;
    for (int64_t r = 0; r < m; ++r) {
      if (r == row) continue;
      double factor = w.at(r, col);
      if (factor == 0.0) continue;
      for (int64_t c = col; c <= n; ++c) w.at(r, c) -= factor * w.at(row, c);
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }

  const int64_t rank = row;
  // inconsistent iff a zero row has a nonzero right-hand side
  for (int64_t r = rank; r < m; ++r) {
    if (std::abs(w.at(r, n)) > tol * 10.0) {
      return LinSolveResult{LinSolveStatus::inconsistent, {}, rank};
    }
  }
  if (rank < n) {
    return LinSolveResult{LinSolveStatus::underdetermined, {}, rank};
  }
  std::vector<double> x(static_cast<size_t>(n), 0.0);
  for (int64_t r = 0; r < rank; ++r) {
    x[static_cast<size_t>(pivot_col_of_row[static_cast<size_t>(r)])] = w.at(r, n);
  }
  return LinSolveResult{LinSolveStatus::unique, std::move(x), rank};
}

std::optional<std::vector<double>> solve_spd_ridged(const Matrix& a, const std::vector<double>& b,
                                                    double ridge) {
  const int64_t n = a.rows;
  Matrix w(n, n + 1);
  for (int64_t r = 0; r < n; ++r) {
    for (int64_t c = 0; c < n; ++c) w.at(r, c) = a.at(r, c) + (r == c ? ridge : 0.0);
    w.at(r, n) = b[static_cast<size_t>(r)];
  }
  for (int64_t col = 0; col < n; ++col) {
    int64_t best = col;
    for (int64_t r = col + 1; r < n; ++r) {
      if (std::abs(w.at(r, col)) > std::abs(w.at(best, col))) best = r;
    }
    if (std::abs(w.at(best, col)) < 1e-300) return std::nullopt;
    if (best != col) {
      for (int64_t c = 0; c <= n; ++c) std::swap(w.at(best, c), w.at(col, c));
    }
    double piv = w.at(col, col);
    for (int64_t c = col; c <= n; ++c) w.at(col, c) /= piv;
    for (int64_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double factor = w.at(r, col);
      if (factor == 0.0) continue;
      for (int64_t c = col; c <= n; ++c) w.at(r, c) -= factor * w.at(col, c);
    }
  }
  std::vector<double> x(static_cast<size_t>(n));
  for (int64_t r = 0; r < n; ++r) x[static_cast<size_t>(r)] = w.at(r, n);
  for (double v : x) {
    if (!std::isfinite(v)) return std::nullopt;
  }
  return x;
}

}  // namespace sanov
