#include "mulab/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "mulab/cli.hpp"

namespace mulab::pipeline {

BinningPolicy BinningPolicy::sign_ternary(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  return BinningPolicy{tau};
}

BinnedDistribution loadings_to_distribution(const linalg::LoadingsMatrix& loadings,
                                            const BinningPolicy& policy) {
  if (loadings.k() != 3)
    throw std::invalid_argument("sign-ternary binning needs exactly 3 components");
  if (!(policy.tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  const std::size_t n = loadings.n_vars();
  if (n == 0) throw std::invalid_argument("no variables to bin");

  auto bin = [&](double value) -> std::size_t {
    if (value < -policy.tau) return 0;
    if (value > policy.tau) return 2;
    return 1;
  };

  std::vector<double> cells(27, 0.0);
  const double weight = 1.0 / static_cast<double>(n);
  std::size_t occupied_cell = 0;
  bool first = true;
  bool degenerate = true;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bx = bin(loadings.loadings(i, 0));
    const std::size_t by = bin(loadings.loadings(i, 1));
    const std::size_t bz = bin(loadings.loadings(i, 2));
    const std::size_t idx = (bx * 3 + by) * 3 + bz;
    cells[idx] += weight;
    if (first) {
      occupied_cell = idx;
      first = false;
    } else if (idx != occupied_cell) {
      degenerate = false;
    }
  }
  return BinnedDistribution{infotheory::Distribution3(3, 3, 3, std::move(cells)),
                            degenerate};
}

namespace {

std::string interpretation_of(double mu) {
  if (mu < 0.0) return "uncertainty reduced by next-order organization";
  if (mu > 0.0) return "historical uncertainty generation prevails";
  return "no net three-way effect";
}

VariableSetReport analyze_set(const std::string& name, const corpus::DocMatrix& m,
                              const MeasureConfig& config) {
  try {
    const linalg::CorrelationResult corr =
        linalg::correlation(m, linalg::ZeroVariancePolicy::Drop);
    const linalg::LoadingsMatrix pc =
        linalg::principal_components(corr.corr, config.k);
    const linalg::VarimaxResult rotated = linalg::varimax(pc);
    const BinnedDistribution binned =
        loadings_to_distribution(rotated.loadings, config.binning);

    VariableSetReport report;
    report.name = name;
    report.n_variables = corr.corr.size();
    report.dropped_zero_variance = corr.dropped;
    report.degenerate_distribution = binned.degenerate;
    report.entropy =
        infotheory::analyze(binned.dist, config.ipf_tol, config.ipf_max_iter);
    report.interpretation = interpretation_of(report.entropy.mu_star);
    return report;
  } catch (const Error& e) {
    throw PipelineError(e.code(), name, e.what());
  } catch (const std::invalid_argument& e) {
    throw PipelineError("invalid_argument", name, e.what());
  }
}

nlohmann::json set_json(const VariableSetReport& r) {
  nlohmann::json j = nlohmann::json::parse(r.entropy.to_json());
  j["n_variables"] = r.n_variables;
  j["dropped_zero_variance"] = r.dropped_zero_variance;
  j["degenerate_distribution"] = r.degenerate_distribution;
  j["interpretation"] = r.interpretation;
  return j;
}

}  // namespace

StructurationReport measure(const std::vector<corpus::Document>& docs,
                            const MeasureConfig& config) {
  corpus::DocMatrix words, authors, combined;
  try {
    words = corpus::build_matrix(docs, corpus::MatrixKind::Words,
                                 config.word_threshold, config.build);
  } catch (const Error& e) {
    throw PipelineError(e.code(), "words", e.what());
  }
  try {
    authors = corpus::build_matrix(docs, corpus::MatrixKind::Authors,
                                   config.author_threshold, config.build);
  } catch (const Error& e) {
    throw PipelineError(e.code(), "authors", e.what());
  }
  try {
    combined = corpus::combine(words, authors);
  } catch (const Error& e) {
    throw PipelineError(e.code(), "combined", e.what());
  }

  StructurationReport report;
  report.word_threshold = config.word_threshold;
  report.author_threshold = config.author_threshold;
  report.k = config.k;
  report.tau = config.binning.tau;
  report.ipf_tol = config.ipf_tol;
  report.ipf_max_iter = config.ipf_max_iter;
  report.words = analyze_set("words", words, config);
  report.authors = analyze_set("authors", authors, config);
  report.combined = analyze_set("combined", combined, config);
  return report;
}

std::string StructurationReport::to_json(int indent) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["provenance"] = {{"tool", "mulab"},
                     {"version", cli::kVersion},
                     {"word_threshold", word_threshold},
                     {"author_threshold", author_threshold},
                     {"components", k},
                     {"rotation", "varimax_kaiser"},
                     {"correlation", "pearson_counts"},
                     {"binning", {{"scheme", "sign_ternary"}, {"tau", tau}}},
                     {"ipf", {{"tol", ipf_tol}, {"max_iter", ipf_max_iter}}}};
  j["variable_sets"] = {{"words", set_json(words)},
                        {"authors", set_json(authors)},
                        {"combined", set_json(combined)}};
  return j.dump(indent);
}

}  // namespace mulab::pipeline
