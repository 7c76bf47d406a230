#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace sanov {

// Row-major dense matrix; small systems only (constraint counts and alphabet
// sizes in this project are single digits to low tens).
struct Matrix {
  int64_t rows = 0;
  int64_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int64_t r, int64_t c) : rows(r), cols(c), data(static_cast<size_t>(r * c), 0.0) {}
  double& at(int64_t r, int64_t c) { return data[static_cast<size_t>(r * cols + c)]; }
  double at(int64_t r, int64_t c) const { return data[static_cast<size_t>(r * cols + c)]; }
};

enum class LinSolveStatus { unique, underdetermined, inconsistent };

struct LinSolveResult {
  LinSolveStatus status;
  std::vector<double> x;  // populated when status == unique
  int64_t rank = 0;
};

// Gaussian elimination with partial pivoting on a general (possibly
// rectangular) system A x = b. Rows are scale-normalized before rank
// decisions; `tol` is the relative pivot threshold.
LinSolveResult solve_linear_system(const Matrix& a, const std::vector<double>& b,
                                   double tol = 1e-11);

// Symmetric positive semidefinite solve with a ridge fallback:
// (A + ridge*I) x = b. Returns nullopt if even the ridged system fails.
std::optional<std::vector<double>> solve_spd_ridged(const Matrix& a, const std::vector<double>& b,
                                                    double ridge);

}  // namespace sanov
