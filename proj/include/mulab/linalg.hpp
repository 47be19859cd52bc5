#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mulab/corpus.hpp"
#include "mulab/errors.hpp"

namespace mulab::linalg {

class ZeroVariance : public Error {
 public:
  explicit ZeroVariance(const std::string& msg) : Error("zero_variance", msg) {}
};

class NonPositiveEigenvalue : public Error {
 public:
  explicit NonPositiveEigenvalue(const std::string& msg)
      : Error("non_positive_eigenvalue", msg) {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(const std::string& msg) : Error("no_convergence", msg) {}
};

// Minimal dense row-major matrix; all the numerics here are small and dense.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  static Matrix identity(std::size_t n);

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

// Symmetric within 1e-12, unit diagonal, entries in [-1, 1].
struct CorrelationMatrix {
  std::vector<std::string> labels;
  Matrix r;

  std::size_t size() const noexcept { return labels.size(); }
};

enum class ZeroVariancePolicy { Drop, Abort };

struct CorrelationResult {
  CorrelationMatrix corr;
  std::vector<std::string> dropped;  // zero-variance columns removed (Drop policy)
};

// Pearson correlation between variable columns (counts as reals).
// Drop: zero-variance columns are removed and reported; Abort: ZeroVariance.
// Throws Error("too_few_documents") for fewer than 2 documents and
// ZeroVariance when no column survives.
// correlation() runs the pair loop under OpenMP when available;
// correlation_serial() is the reference path. Outputs are identical: each
// entry is computed independently with the same operation order.
CorrelationResult correlation(const corpus::DocMatrix& m,
                              ZeroVariancePolicy policy = ZeroVariancePolicy::Drop);
CorrelationResult correlation_serial(const corpus::DocMatrix& m,
                                     ZeroVariancePolicy policy = ZeroVariancePolicy::Drop);

struct EighResult {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // columns, orthonormal
  int sweeps = 0;
};

// Cyclic Jacobi for symmetric matrices. Eigenvalues sorted descending (stable
// for ties); each eigenvector's largest-magnitude entry is made positive.
// Throws NoConvergence after the sweep cap (64).
EighResult eigh(const Matrix& symmetric);

struct LoadingsMatrix {
  std::vector<std::string> labels;
  Matrix loadings;  // variables x k
  bool rotated = false;

  std::size_t n_vars() const noexcept { return labels.size(); }
  std::size_t k() const noexcept { return loadings.cols(); }
  double communality(std::size_t var) const;

  // CSV, variables as rows: header variable,f1,f2,...
  std::string to_csv() const;
};

// Unrotated loadings L_ij = v_ij * sqrt(lambda_j) for the top k components.
// Columns ordered by descending eigenvalue; sign flipped so the
// largest-magnitude loading per column is positive.
// Throws NonPositiveEigenvalue when any of the top k eigenvalues is <= 0
// (tolerance 1e-12 relative to the largest).
LoadingsMatrix principal_components(const CorrelationMatrix& corr, std::size_t k = 3);

struct VarimaxResult {
  LoadingsMatrix loadings;
  Matrix rotation;  // orthogonal; loadings_out = loadings_in * rotation
  int sweeps = 0;
  bool converged = false;
  std::vector<double> criterion_history;  // value before sweep 1, then per sweep
};

// Varimax with Kaiser row normalization via pairwise planar rotations.
// Stops when the criterion gain over a sweep drops below tol; after max_iter
// sweeps returns the best found with converged = false. Zero-communality rows
// are left untouched. Output columns ordered by descending sum of squared
// loadings, signs fixed as in principal_components; both adjustments are
// folded into the returned rotation.
VarimaxResult varimax(const LoadingsMatrix& loadings, double tol = 1e-10,
                      int max_iter = 1000);

}  // namespace mulab::linalg
