#include "mulab/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mulab/csv.hpp"

namespace mulab::infotheory {

Distribution3::Distribution3(std::size_t nx, std::size_t ny, std::size_t nz,
                             std::vector<double> cells)
    : nx_(nx), ny_(ny), nz_(nz), p_(std::move(cells)) {
  if (nx_ == 0 || ny_ == 0 || nz_ == 0)
    throw std::invalid_argument("distribution dimensions must be positive");
  if (p_.size() != nx_ * ny_ * nz_)
    throw std::invalid_argument("cell count does not match dimensions");
  double sum = 0.0;
  for (double v : p_) {
    if (v < 0.0) throw NotNormalized("negative probability cell");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTol)
    throw NotNormalized("cells sum to " + csv::format_double(sum));
}

std::vector<double> Distribution3::marginal_x() const {
  std::vector<double> m(nx_, 0.0);
  for (std::size_t i = 0; i < nx_; ++i)
    for (std::size_t j = 0; j < ny_; ++j)
      for (std::size_t k = 0; k < nz_; ++k) m[i] += at(i, j, k);
  return m;
}

std::vector<double> Distribution3::marginal_y() const {
  std::vector<double> m(ny_, 0.0);
  for (std::size_t i = 0; i < nx_; ++i)
    for (std::size_t j = 0; j < ny_; ++j)
      for (std::size_t k = 0; k < nz_; ++k) m[j] += at(i, j, k);
  return m;
}

std::vector<double> Distribution3::marginal_z() const {
  std::vector<double> m(nz_, 0.0);
  for (std::size_t i = 0; i < nx_; ++i)
    for (std::size_t j = 0; j < ny_; ++j)
      for (std::size_t k = 0; k < nz_; ++k) m[k] += at(i, j, k);
  return m;
}

std::vector<double> Distribution3::marginal_xy() const {
  std::vector<double> m(nx_ * ny_, 0.0);
  for (std::size_t i = 0; i < nx_; ++i)
    for (std::size_t j = 0; j < ny_; ++j)
      for (std::size_t k = 0; k < nz_; ++k) m[i * ny_ + j] += at(i, j, k);
  return m;
}

std::vector<double> Distribution3::marginal_xz() const {
  std::vector<double> m(nx_ * nz_, 0.0);
  for (std::size_t i = 0; i < nx_; ++i)
    for (std::size_t j = 0; j < ny_; ++j)
      for (std::size_t k = 0; k < nz_; ++k) m[i * nz_ + k] += at(i, j, k);
  return m;
}

std::vector<double> Distribution3::marginal_yz() const {
  std::vector<double> m(ny_ * nz_, 0.0);
  for (std::size_t i = 0; i < nx_; ++i)
    for (std::size_t j = 0; j < ny_; ++j)
      for (std::size_t k = 0; k < nz_; ++k) m[j * nz_ + k] += at(i, j, k);
  return m;
}

Distribution3 Distribution3::permuted(int axis_x, int axis_y, int axis_z) const {
  const int axes[3] = {axis_x, axis_y, axis_z};
  const std::size_t dims[3] = {nx_, ny_, nz_};
  bool seen[3] = {false, false, false};
  for (int a : axes) {
    if (a < 0 || a > 2 || seen[a]) throw std::invalid_argument("bad axis permutation");
    seen[a] = true;
  }
  const std::size_t mx = dims[axes[0]], my = dims[axes[1]], mz = dims[axes[2]];
  std::vector<double> cells(mx * my * mz, 0.0);
  std::size_t idx_old[3];
  for (idx_old[0] = 0; idx_old[0] < nx_; ++idx_old[0])
    for (idx_old[1] = 0; idx_old[1] < ny_; ++idx_old[1])
      for (idx_old[2] = 0; idx_old[2] < nz_; ++idx_old[2]) {
        const std::size_t i = idx_old[axes[0]];
        const std::size_t j = idx_old[axes[1]];
        const std::size_t k = idx_old[axes[2]];
        cells[(i * my + j) * mz + k] = at(idx_old[0], idx_old[1], idx_old[2]);
      }
  return Distribution3(mx, my, mz, std::move(cells));
}

std::uint64_t ContingencyTable::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

Distribution3 ContingencyTable::normalized() const {
  const std::uint64_t sum = total();
  if (sum == 0) throw Error("empty_table", "contingency table has zero total count");
  std::vector<double> cells(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    cells[i] = static_cast<double>(counts[i]) / static_cast<double>(sum);
  return Distribution3(nx(), ny(), nz(), std::move(cells));
}

ContingencyTable ContingencyTable::read_csv(std::istream& in) {
  const auto rows = csv::parse(in);
  if (rows.empty()) throw Error("csv_format", "empty contingency CSV");
  const auto& header = rows.front();
  if (header.size() != 4 || header[0] != "x" || header[1] != "y" ||
      header[2] != "z" || header[3] != "count")
    throw Error("csv_format", "expected header x,y,z,count");

  std::map<std::string, std::size_t> lx, ly, lz;
  struct Row { std::string x, y, z; std::uint64_t count; };
  std::vector<Row> parsed;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 4)
      throw Error("csv_format", "row " + std::to_string(r) + " has " +
                                    std::to_string(row.size()) + " fields");
    std::uint64_t count = 0;
    try {
      count = std::stoull(row[3]);
    } catch (const std::exception&) {
      throw Error("csv_format", "bad count in row " + std::to_string(r));
    }
    lx.emplace(row[0], 0);
    ly.emplace(row[1], 0);
    lz.emplace(row[2], 0);
    parsed.push_back({row[0], row[1], row[2], count});
  }
  if (parsed.empty()) throw Error("csv_format", "contingency CSV has no data rows");

  auto index = [](std::map<std::string, std::size_t>& labels) {
    std::size_t i = 0;
    for (auto& [_, idx] : labels) idx = i++;
  };
  index(lx);
  index(ly);
  index(lz);

  ContingencyTable table;
  for (const auto& [label, _] : lx) table.labels_x.push_back(label);
  for (const auto& [label, _] : ly) table.labels_y.push_back(label);
  for (const auto& [label, _] : lz) table.labels_z.push_back(label);
  table.counts.assign(table.nx() * table.ny() * table.nz(), 0);
  for (const auto& row : parsed) {
    const std::size_t i = lx[row.x], j = ly[row.y], k = lz[row.z];
    table.counts[(i * table.ny() + j) * table.nz() + k] += row.count;
  }
  return table;
}

std::string ContingencyTable::to_csv() const {
  std::ostringstream os;
  os << "x,y,z,count\n";
  for (std::size_t i = 0; i < nx(); ++i)
    for (std::size_t j = 0; j < ny(); ++j)
      for (std::size_t k = 0; k < nz(); ++k) {
        const std::uint64_t c = counts[(i * ny() + j) * nz() + k];
        if (c == 0) continue;
        os << csv::quote(labels_x[i]) << ',' << csv::quote(labels_y[j]) << ','
           << csv::quote(labels_z[k]) << ',' << c << '\n';
      }
  return os.str();
}

double entropy(std::span<const double> p) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) throw NotNormalized("negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTol)
    throw NotNormalized("probabilities sum to " + csv::format_double(sum));
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

double transmission(const Distribution3& dist, Pair pair) {
  double t = 0.0;
  switch (pair) {
    case Pair::XY:
      t = entropy(dist.marginal_x()) + entropy(dist.marginal_y()) -
          entropy(dist.marginal_xy());
      break;
    case Pair::XZ:
      t = entropy(dist.marginal_x()) + entropy(dist.marginal_z()) -
          entropy(dist.marginal_xz());
      break;
    case Pair::YZ:
      t = entropy(dist.marginal_y()) + entropy(dist.marginal_z()) -
          entropy(dist.marginal_yz());
      break;
  }
  // Transmissions are non-negative; round-off can leave a tiny negative.
  return t < 0.0 && t > -1e-12 ? 0.0 : t;
}

double mu_star(const Distribution3& dist) {
  const double h_x = entropy(dist.marginal_x());
  const double h_y = entropy(dist.marginal_y());
  const double h_z = entropy(dist.marginal_z());
  const double h_xy = entropy(dist.marginal_xy());
  const double h_xz = entropy(dist.marginal_xz());
  const double h_yz = entropy(dist.marginal_yz());
  const double h_xyz = entropy(dist.cells());
  return h_x + h_y + h_z - h_xy - h_xz - h_yz + h_xyz;
}

IpfResult ipf_maxent(const Distribution3& dist, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  const std::size_t nx = dist.nx(), ny = dist.ny(), nz = dist.nz();
  const auto target_xy = dist.marginal_xy();
  const auto target_xz = dist.marginal_xz();
  const auto target_yz = dist.marginal_yz();

  std::vector<double> t(nx * ny * nz, 1.0 / static_cast<double>(nx * ny * nz));
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> double& {
    return t[(i * ny + j) * nz + k];
  };

  std::vector<double> cur_xy(nx * ny), cur_xz(nx * nz), cur_yz(ny * nz);
  auto fit_xy = [&] {
    std::fill(cur_xy.begin(), cur_xy.end(), 0.0);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t k = 0; k < nz; ++k) cur_xy[i * ny + j] += at(i, j, k);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) {
        const double target = target_xy[i * ny + j];
        const double cur = cur_xy[i * ny + j];
        const double f = (target > 0.0 && cur > 0.0) ? target / cur : 0.0;
        for (std::size_t k = 0; k < nz; ++k) at(i, j, k) *= f;
      }
  };
  auto fit_xz = [&] {
    std::fill(cur_xz.begin(), cur_xz.end(), 0.0);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t k = 0; k < nz; ++k) cur_xz[i * nz + k] += at(i, j, k);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t k = 0; k < nz; ++k) {
        const double target = target_xz[i * nz + k];
        const double cur = cur_xz[i * nz + k];
        const double f = (target > 0.0 && cur > 0.0) ? target / cur : 0.0;
        for (std::size_t j = 0; j < ny; ++j) at(i, j, k) *= f;
      }
  };
  auto fit_yz = [&] {
    std::fill(cur_yz.begin(), cur_yz.end(), 0.0);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t k = 0; k < nz; ++k) cur_yz[j * nz + k] += at(i, j, k);
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t k = 0; k < nz; ++k) {
        const double target = target_yz[j * nz + k];
        const double cur = cur_yz[j * nz + k];
        const double f = (target > 0.0 && cur > 0.0) ? target / cur : 0.0;
        for (std::size_t i = 0; i < nx; ++i) at(i, j, k) *= f;
      }
  };

  auto residual = [&] {
    double r = 0.0;
    std::fill(cur_xy.begin(), cur_xy.end(), 0.0);
    std::fill(cur_xz.begin(), cur_xz.end(), 0.0);
    std::fill(cur_yz.begin(), cur_yz.end(), 0.0);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t k = 0; k < nz; ++k) {
          const double v = at(i, j, k);
          cur_xy[i * ny + j] += v;
          cur_xz[i * nz + k] += v;
          cur_yz[j * nz + k] += v;
        }
    for (std::size_t m = 0; m < cur_xy.size(); ++m)
      r = std::max(r, std::abs(cur_xy[m] - target_xy[m]));
    for (std::size_t m = 0; m < cur_xz.size(); ++m)
      r = std::max(r, std::abs(cur_xz[m] - target_xz[m]));
    for (std::size_t m = 0; m < cur_yz.size(); ++m)
      r = std::max(r, std::abs(cur_yz[m] - target_yz[m]));
    return r;
  };

  int cycles = 0;
  double res = 0.0;
  bool converged = false;
  while (cycles < max_iter) {
    fit_xy();
    fit_xz();
    fit_yz();
    ++cycles;
    res = residual();
    if (res <= tol) {
      converged = true;
      break;
    }
  }

  // The YZ pass leaves the table summing to the YZ marginal total = 1 up to
  // round-off; tidy the total so Distribution3 validation stays honest.
  double sum = 0.0;
  for (double v : t) sum += v;
  if (sum > 0.0 && std::abs(sum - 1.0) > 1e-15)
    for (double& v : t) v /= sum;

  return IpfResult{Distribution3(nx, ny, nz, std::move(t)), cycles, converged, res};
}

double interaction_information(const Distribution3& dist, double tol, int max_iter) {
  const IpfResult ipf = ipf_maxent(dist, tol, max_iter);
  if (!ipf.converged)
    throw NoConvergence("IPF residual " + csv::format_double(ipf.residual) +
                        " after " + std::to_string(ipf.iterations) + " cycles");
  const double gap = entropy(ipf.table.cells()) - entropy(dist.cells());
  return gap < 0.0 && gap >= -tol ? 0.0 : gap;
}

double redundancy(const Distribution3& dist, double tol, int max_iter) {
  return mu_star(dist) + interaction_information(dist, tol, max_iter);
}

EntropyReport analyze(const Distribution3& dist, double tol, int max_iter) {
  EntropyReport r;
  r.h_x = entropy(dist.marginal_x());
  r.h_y = entropy(dist.marginal_y());
  r.h_z = entropy(dist.marginal_z());
  r.h_xy = entropy(dist.marginal_xy());
  r.h_xz = entropy(dist.marginal_xz());
  r.h_yz = entropy(dist.marginal_yz());
  r.h_xyz = entropy(dist.cells());
  r.mu_star = r.h_x + r.h_y + r.h_z - r.h_xy - r.h_xz - r.h_yz + r.h_xyz;

  const IpfResult ipf = ipf_maxent(dist, tol, max_iter);
  r.ipf_iterations = ipf.iterations;
  r.ipf_converged = ipf.converged;
  const double gap = entropy(ipf.table.cells()) - r.h_xyz;
  r.interaction_info = gap < 0.0 && gap >= -tol ? 0.0 : gap;
  r.redundancy = r.mu_star + r.interaction_info;
  return r;
}

std::string EntropyReport::to_json(int indent) const {
  nlohmann::json j;
  j["h_x"] = h_x;
  j["h_y"] = h_y;
  j["h_z"] = h_z;
  j["h_xy"] = h_xy;
  j["h_xz"] = h_xz;
  j["h_yz"] = h_yz;
  j["h_xyz"] = h_xyz;
  j["mu_star"] = mu_star;
  j["interaction_info"] = interaction_info;
  j["redundancy"] = redundancy;
  j["ipf_iterations"] = ipf_iterations;
  j["ipf_converged"] = ipf_converged;
  j["mbits"] = {{"h_x", h_x * 1000.0},
                {"h_y", h_y * 1000.0},
                {"h_z", h_z * 1000.0},
                {"h_xy", h_xy * 1000.0},
                {"h_xz", h_xz * 1000.0},
                {"h_yz", h_yz * 1000.0},
                {"h_xyz", h_xyz * 1000.0},
                {"mu_star", mu_star * 1000.0},
                {"interaction_info", interaction_info * 1000.0},
                {"redundancy", redundancy * 1000.0}};
  return j.dump(indent);
}

}  // namespace mulab::infotheory
