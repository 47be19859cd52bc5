#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mulab/corpus.hpp"
#include "mulab/errors.hpp"
#include "mulab/infotheory.hpp"
#include "mulab/linalg.hpp"

namespace mulab::pipeline {

// Upstream failure with the variable-set context attached; code() carries the
// original error code.
class PipelineError : public Error {
 public:
  PipelineError(const std::string& code, const std::string& context,
                const std::string& msg)
      : Error(code, context + ": " + msg), context_(context) {}

  const std::string& context() const noexcept { return context_; }

 private:
  std::string context_;
};

// Sign-ternary binning of rotated loadings: bins {< -tau, [-tau, tau], > tau}.
struct BinningPolicy {
  double tau = 0.1;  // > 0

  static BinningPolicy sign_ternary(double tau = 0.1);
};

struct BinnedDistribution {
  infotheory::Distribution3 dist;  // 3 x 3 x 3 over bin triples
  bool degenerate = false;         // all variables in a single cell
};

// Maps each variable to the cell (bin(L_i1), bin(L_i2), bin(L_i3)) and
// normalizes cell counts over variables. Requires k == 3.
// A fully degenerate distribution is flagged, not an error: entropies are 0.
BinnedDistribution loadings_to_distribution(const linalg::LoadingsMatrix& loadings,
                                            const BinningPolicy& policy);

struct MeasureConfig {
  std::uint32_t word_threshold = 2;    // keep words with total count > 2
  std::uint32_t author_threshold = 1;  // keep authors with total count > 1
  std::size_t k = 3;
  BinningPolicy binning{};
  double ipf_tol = 1e-10;
  int ipf_max_iter = 10000;
  corpus::BuildOptions build{};
};

struct VariableSetReport {
  std::string name;  // "words" | "authors" | "combined"
  std::size_t n_variables = 0;
  std::vector<std::string> dropped_zero_variance;
  bool degenerate_distribution = false;
  infotheory::EntropyReport entropy;
  std::string interpretation;  // sign-of-mu-star reading
};

// Everything needed to reproduce each number is in the metadata fields.
struct StructurationReport {
  VariableSetReport words, authors, combined;
  std::uint32_t word_threshold = 2;
  std::uint32_t author_threshold = 1;
  std::size_t k = 3;
  double tau = 0.1;
  double ipf_tol = 1e-10;
  int ipf_max_iter = 10000;

  std::string to_json(int indent = 2) const;
};

// matrices -> correlation -> k rotated components -> sign-ternary bins ->
// entropy decomposition, once per variable set (words, authors, combined).
StructurationReport measure(const std::vector<corpus::Document>& docs,
                            const MeasureConfig& config = {});

}  // namespace mulab::pipeline
