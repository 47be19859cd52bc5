#pragma once

// Independent oracles used by the tests. Everything here deliberately avoids
// the library's marginalization/entropy code paths so cross-checks stay honest.

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mulab/infotheory.hpp"

namespace oracles {

// Tiny LCG for test input generation, separate from the library RNG.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed * 2862933555777941757ull + 1) {}
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return state_ >> 1;
  }
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-52;
    return lo + (hi - lo) * u;
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

inline double plogp_sum(const std::map<std::vector<std::size_t>, double>& cells) {
  double h = 0.0;
  for (const auto& [_, p] : cells)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

// Brute-force seven-entropy alternating sum straight off the raw table.
inline double mu_star_bruteforce(const mulab::infotheory::Distribution3& d) {
  std::map<std::vector<std::size_t>, double> mx, my, mz, mxy, mxz, myz, mxyz;
  for (std::size_t i = 0; i < d.nx(); ++i)
    for (std::size_t j = 0; j < d.ny(); ++j)
      for (std::size_t k = 0; k < d.nz(); ++k) {
        const double p = d.at(i, j, k);
        mx[{i}] += p;
        my[{j}] += p;
        mz[{k}] += p;
        mxy[{i, j}] += p;
        mxz[{i, k}] += p;
        myz[{j, k}] += p;
        mxyz[{i, j, k}] += p;
      }
  return plogp_sum(mx) + plogp_sum(my) + plogp_sum(mz) - plogp_sum(mxy) -
         plogp_sum(mxz) - plogp_sum(myz) + plogp_sum(mxyz);
}

// Fixed point of x = 1 - cbrt(x) by bisection on f(x) = x - 1 + cbrt(x);
// f(0) = -1 < 0, f(1) = 1 > 0, f strictly increasing.
inline double self_organization_fixed_point(double tol = 1e-12) {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid - 1.0 + std::cbrt(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Random strictly positive normalized table (cells bounded away from zero so
// IPF behaves well for property sweeps).
inline mulab::infotheory::Distribution3 random_distribution(TestRng& rng,
                                                            std::size_t nx,
                                                            std::size_t ny,
                                                            std::size_t nz) {
  std::vector<double> cells(nx * ny * nz);
  double sum = 0.0;
  for (double& c : cells) {
    c = rng.uniform(0.05, 1.0);
    sum += c;
  }
  for (double& c : cells) c /= sum;
  return {nx, ny, nz, std::move(cells)};
}

// 2x2x2 with z = x XOR y, x and y uniform independent.
inline mulab::infotheory::Distribution3 xor_distribution() {
  std::vector<double> cells(8, 0.0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) cells[(i * 2 + j) * 2 + (i ^ j)] = 0.25;
  return {2, 2, 2, std::move(cells)};
}

// 2x2x2 with x = y = z uniform binary.
inline mulab::infotheory::Distribution3 copy_distribution() {
  std::vector<double> cells(8, 0.0);
  cells[0] = 0.5;
  cells[7] = 0.5;
  return {2, 2, 2, std::move(cells)};
}

// Three independent uniform binaries.
inline mulab::infotheory::Distribution3 independent_distribution() {
  return {2, 2, 2, std::vector<double>(8, 0.125)};
}

}  // namespace oracles
