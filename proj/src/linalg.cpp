#include "mulab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mulab/csv.hpp"

namespace mulab::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

namespace {

CorrelationResult correlation_impl(const corpus::DocMatrix& m,
                                   ZeroVariancePolicy policy, bool parallel) {
  const std::size_t n_docs = m.n_docs();
  if (n_docs < 2) throw Error("too_few_documents", "correlation needs >= 2 documents");

  // Standardize columns; constant columns are dropped or abort per policy.
  CorrelationResult result;
  std::vector<std::size_t> kept;
  std::vector<std::vector<double>> z;
  for (std::size_t v = 0; v < m.n_vars(); ++v) {
    double mean = 0.0;
    for (std::size_t d = 0; d < n_docs; ++d) mean += m.at(d, v);
    mean /= static_cast<double>(n_docs);
    double ss = 0.0;
    std::vector<double> col(n_docs);
    for (std::size_t d = 0; d < n_docs; ++d) {
      col[d] = static_cast<double>(m.at(d, v)) - mean;
      ss += col[d] * col[d];
    }
    if (ss == 0.0) {
      if (policy == ZeroVariancePolicy::Abort)
        throw ZeroVariance("zero-variance column: " + m.variables[v]);
      result.dropped.push_back(m.variables[v]);
      continue;
    }
    const double inv_sd = 1.0 / std::sqrt(ss);
    for (double& x : col) x *= inv_sd;
    kept.push_back(v);
    z.push_back(std::move(col));
  }
  if (kept.empty())
    throw ZeroVariance("all columns have zero variance");

  const std::size_t n = kept.size();
  result.corr.labels.reserve(n);
  for (std::size_t idx : kept) result.corr.labels.push_back(m.variables[idx]);
  result.corr.r = Matrix(n, n, 0.0);
  Matrix& r = result.corr.r;

  const auto sn = static_cast<std::ptrdiff_t>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    r(ui, ui) = 1.0;
    for (std::size_t j = ui + 1; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < n_docs; ++d) dot += z[ui][d] * z[j][d];
      dot = std::clamp(dot, -1.0, 1.0);
      r(ui, j) = dot;
      r(j, ui) = dot;
    }
  }
  (void)parallel;
  return result;
}

}  // namespace

CorrelationResult correlation(const corpus::DocMatrix& m, ZeroVariancePolicy policy) {
  return correlation_impl(m, policy, true);
}

CorrelationResult correlation_serial(const corpus::DocMatrix& m,
                                     ZeroVariancePolicy policy) {
  return correlation_impl(m, policy, false);
}

EighResult eigh(const Matrix& symmetric) {
  const std::size_t n = symmetric.rows();
  if (n != symmetric.cols()) throw std::invalid_argument("eigh needs a square matrix");

  Matrix a = symmetric;
  Matrix v = Matrix::identity(n);

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  if (scale == 0.0) scale = 1.0;
  const double off_tol = 1e-13 * scale;

  constexpr int kMaxSweeps = 64;
  int sweeps = 0;
  for (; sweeps < kMaxSweeps; ++sweeps) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= off_tol) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= off_tol * 1e-2) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p), arq = a(r, q);
            a(r, p) = arp - s * (arq + tau * arp);
            a(p, r) = a(r, p);
            a(r, q) = arq + s * (arp - tau * arq);
            a(q, r) = a(r, q);
          }
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (sweeps == kMaxSweeps)
    throw NoConvergence("Jacobi did not converge in " + std::to_string(kMaxSweeps) +
                        " sweeps");

  // Sort descending, stable for ties; largest-magnitude eigenvector entry positive.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EighResult out;
  out.sweeps = sweeps;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.eigenvalues[col] = a(src, src);
    std::size_t imax = 0;
    double vmax = 0.0;
    for (std::size_t rrow = 0; rrow < n; ++rrow) {
      if (std::abs(v(rrow, src)) > vmax) {
        vmax = std::abs(v(rrow, src));
        imax = rrow;
      }
    }
    const double flip = v(imax, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t rrow = 0; rrow < n; ++rrow)
      out.eigenvectors(rrow, col) = flip * v(rrow, src);
  }
  return out;
}

double LoadingsMatrix::communality(std::size_t var) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < k(); ++j) sum += loadings(var, j) * loadings(var, j);
  return sum;
}

std::string LoadingsMatrix::to_csv() const {
  std::ostringstream os;
  os << "variable";
  for (std::size_t j = 0; j < k(); ++j) os << ",f" << (j + 1);
  os << '\n';
  for (std::size_t i = 0; i < n_vars(); ++i) {
    os << csv::quote(labels[i]);
    for (std::size_t j = 0; j < k(); ++j)
      os << ',' << csv::format_double(loadings(i, j));
    os << '\n';
  }
  return os.str();
}

LoadingsMatrix principal_components(const CorrelationMatrix& corr, std::size_t k) {
  const std::size_t n = corr.size();
  if (k < 1 || k > n)
    throw std::invalid_argument("component count must lie in [1, n]");
  const EighResult eig = eigh(corr.r);

  const double floor = 1e-12 * std::max(1.0, eig.eigenvalues.front());
  for (std::size_t j = 0; j < k; ++j)
    if (eig.eigenvalues[j] <= floor)
      throw NonPositiveEigenvalue("eigenvalue " + std::to_string(j + 1) + " is " +
                                  csv::format_double(eig.eigenvalues[j]));

  LoadingsMatrix out;
  out.labels = corr.labels;
  out.rotated = false;
  out.loadings = Matrix(n, k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    const double root = std::sqrt(eig.eigenvalues[j]);
    for (std::size_t i = 0; i < n; ++i)
      out.loadings(i, j) = eig.eigenvectors(i, j) * root;
  }
  // eigh already turned the largest-magnitude entry positive; sqrt keeps signs.
  return out;
}

namespace {

// Raw varimax criterion on (normalized) loadings: per-factor variance of
// squared loadings, summed over factors.
double varimax_criterion(const Matrix& L) {
  const std::size_t p = L.rows(), k = L.cols();
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double s2 = 0.0, s4 = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const double sq = L(i, j) * L(i, j);
      s2 += sq;
      s4 += sq * sq;
    }
    const double mean2 = s2 / static_cast<double>(p);
    total += s4 / static_cast<double>(p) - mean2 * mean2;
  }
  return total;
}

void rotate_pair(Matrix& L, Matrix& R, std::size_t a, std::size_t b, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  for (std::size_t i = 0; i < L.rows(); ++i) {
    const double la = L(i, a), lb = L(i, b);
    L(i, a) = c * la + s * lb;
    L(i, b) = -s * la + c * lb;
  }
  for (std::size_t i = 0; i < R.rows(); ++i) {
    const double ra = R(i, a), rb = R(i, b);
    R(i, a) = c * ra + s * rb;
    R(i, b) = -s * ra + c * rb;
  }
}

}  // namespace

VarimaxResult varimax(const LoadingsMatrix& loadings, double tol, int max_iter) {
  const std::size_t p = loadings.n_vars();
  const std::size_t k = loadings.k();
  if (k < 2) throw std::invalid_argument("varimax needs k >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  // Kaiser normalization; zero-communality rows stay zero throughout.
  std::vector<double> norms(p, 1.0);
  Matrix L = loadings.loadings;
  for (std::size_t i = 0; i < p; ++i) {
    const double h = std::sqrt(loadings.communality(i));
    if (h > 1e-12) {
      norms[i] = h;
      for (std::size_t j = 0; j < k; ++j) L(i, j) /= h;
    }
  }

  Matrix R = Matrix::identity(k);
  VarimaxResult result;
  result.criterion_history.push_back(varimax_criterion(L));

  const auto pn = static_cast<double>(p);
  bool converged = false;
  int sweeps = 0;
  while (sweeps < max_iter) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
          const double x = L(i, a), y = L(i, b);
          const double u = x * x - y * y;
          const double v = 2.0 * x * y;
          A += u;
          B += v;
          C += u * u - v * v;
          D += 2.0 * u * v;
        }
        const double num = D - 2.0 * A * B / pn;
        const double den = C - (A * A - B * B) / pn;
        if (num == 0.0 && den == 0.0) continue;  // criterion flat in this plane
        const double phi = 0.25 * std::atan2(num, den);
        if (std::abs(phi) < 1e-14) continue;
        rotate_pair(L, R, a, b, phi);
      }
    }
    ++sweeps;
    const double cur = varimax_criterion(L);
    const double gain = cur - result.criterion_history.back();
    result.criterion_history.push_back(cur);
    if (gain < tol) {
      converged = true;
      break;
    }
  }

  // Undo Kaiser normalization.
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < k; ++j) L(i, j) *= norms[i];

  // Deterministic presentation: columns by descending sum of squares, then the
  // sign convention; both folded into R so L_out == L_in * R holds.
  std::vector<double> ssq(k, 0.0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < p; ++i) ssq[j] += L(i, j) * L(i, j);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return ssq[x] > ssq[y]; });

  Matrix L_final(p, k, 0.0);
  Matrix R_final(k, k, 0.0);
  for (std::size_t col = 0; col < k; ++col) {
    const std::size_t src = order[col];
    std::size_t imax = 0;
    double vmax = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      if (std::abs(L(i, src)) > vmax) {
        vmax = std::abs(L(i, src));
        imax = i;
      }
    }
    const double flip = L(imax, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < p; ++i) L_final(i, col) = flip * L(i, src);
    for (std::size_t i = 0; i < k; ++i) R_final(i, col) = flip * R(i, src);
  }

  result.loadings.labels = loadings.labels;
  result.loadings.loadings = std::move(L_final);
  result.loadings.rotated = true;
  result.rotation = std::move(R_final);
  result.sweeps = sweeps;
  result.converged = converged;
  return result;
}

}  // namespace mulab::linalg
