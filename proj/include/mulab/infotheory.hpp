#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "mulab/errors.hpp"

namespace mulab::infotheory {

class NotNormalized : public Error {
 public:
  explicit NotNormalized(const std::string& msg) : Error("not_normalized", msg) {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(const std::string& msg) : Error("ipf_no_convergence", msg) {}
};

inline constexpr double kNormTol = 1e-9;

// Dense trivariate probability table over finite categorical alphabets.
// Immutable after construction; all cells >= 0 and sum to 1 within 1e-9.
class Distribution3 {
 public:
  Distribution3(std::size_t nx, std::size_t ny, std::size_t nz,
                std::vector<double> cells);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t nz() const noexcept { return nz_; }
  std::size_t size() const noexcept { return p_.size(); }

  double at(std::size_t i, std::size_t j, std::size_t k) const {
    return p_[(i * ny_ + j) * nz_ + k];
  }
  std::span<const double> cells() const noexcept { return p_; }

  std::vector<double> marginal_x() const;
  std::vector<double> marginal_y() const;
  std::vector<double> marginal_z() const;
  std::vector<double> marginal_xy() const;  // nx*ny, row-major
  std::vector<double> marginal_xz() const;  // nx*nz
  std::vector<double> marginal_yz() const;  // ny*nz

  // Axes permuted so that output.at(i,j,k) = input.at(axes-reordered); for
  // perm = {2,0,1} the new x is the old z, etc.
  Distribution3 permuted(int axis_x, int axis_y, int axis_z) const;

 private:
  std::size_t nx_, ny_, nz_;
  std::vector<double> p_;
};

// Raw counts with categorical labels; normalizes to a Distribution3.
struct ContingencyTable {
  std::vector<std::string> labels_x, labels_y, labels_z;
  std::vector<std::uint64_t> counts;  // (i*ny + j)*nz + k

  std::size_t nx() const noexcept { return labels_x.size(); }
  std::size_t ny() const noexcept { return labels_y.size(); }
  std::size_t nz() const noexcept { return labels_z.size(); }

  std::uint64_t total() const noexcept;
  Distribution3 normalized() const;  // throws Error("empty_table") on total 0

  // CSV with header x,y,z,count. Duplicate label triples accumulate. Axis
  // labels are the sorted distinct strings seen per column.
  static ContingencyTable read_csv(std::istream& in);
  std::string to_csv() const;
};

// Shannon entropy in bits, -sum p log2 p with 0 log 0 = 0.
// Throws NotNormalized unless the cells are >= 0 and sum to 1 within 1e-9.
double entropy(std::span<const double> p);

enum class Pair { XY, XZ, YZ };

// Two-dimensional transmission T = H_a + H_b - H_ab; >= 0, 0 iff independent.
double transmission(const Distribution3& dist, Pair pair);

// Signed three-way term H_x+H_y+H_z - H_xy-H_xz-H_yz + H_xyz.
double mu_star(const Distribution3& dist);

struct IpfResult {
  Distribution3 table;
  int iterations = 0;    // full XY->XZ->YZ cycles performed
  bool converged = false;
  double residual = 0.0;  // final L-inf marginal residual
};

// Maximum-entropy table preserving all three bivariate marginals, by iterative
// proportional fitting from the uniform table, cycling XY -> XZ -> YZ.
// Convergence metric: L-inf distance over all bivariate marginal cells.
// Cells forced to zero by a zero bivariate marginal stay exactly zero.
// Non-convergence is reported via the flag; the best estimate is returned.
IpfResult ipf_maxent(const Distribution3& dist, double tol = 1e-10,
                     int max_iter = 10000);

// H(ipf_maxent(dist)) - H_xyz(dist); tiny negatives (>= -tol) clamp to 0.
// Throws NoConvergence when IPF does not reach tol.
double interaction_information(const Distribution3& dist, double tol = 1e-10,
                               int max_iter = 10000);

// mu_star + interaction_information. Throws NoConvergence as above.
double redundancy(const Distribution3& dist, double tol = 1e-10,
                  int max_iter = 10000);

// Every constituent term of the decomposition, in bits; millibit views are
// bits * 1000.
struct EntropyReport {
  double h_x = 0, h_y = 0, h_z = 0;
  double h_xy = 0, h_xz = 0, h_yz = 0;
  double h_xyz = 0;
  double mu_star = 0;           // signed
  double interaction_info = 0;  // >= 0 after clamp
  double redundancy = 0;        // mu_star + interaction_info
  int ipf_iterations = 0;
  bool ipf_converged = true;

  std::string to_json(int indent = 2) const;
};

EntropyReport analyze(const Distribution3& dist, double tol = 1e-10,
                      int max_iter = 10000);

}  // namespace mulab::infotheory
