#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mulab/errors.hpp"

namespace mulab::corpus {

class EmptyAfterThreshold : public Error {
 public:
  explicit EmptyAfterThreshold(const std::string& msg)
      : Error("empty_after_threshold", msg) {}
};

class DocMismatch : public Error {
 public:
  explicit DocMismatch(const std::string& msg) : Error("doc_mismatch", msg) {}
};

class CsvFormat : public Error {
 public:
  explicit CsvFormat(const std::string& msg) : Error("csv_format", msg) {}
};

struct Document {
  std::string id;
  std::string title;
  std::vector<std::string> authors;  // raw strings; normalized at matrix build
  std::optional<int> year;
};

// The shipped default stopword list (documented in the README).
const std::unordered_set<std::string>& default_stopwords();

// Lowercases, strips ASCII punctuation except in-word hyphens, splits on
// whitespace, drops stopwords. Bytes >= 0x80 pass through untouched.
std::vector<std::string> tokenize_title(std::string_view title);
std::vector<std::string> tokenize_title(std::string_view title,
                                        const std::unordered_set<std::string>& stopwords);

// Canonical "last, f." author form: trims, case-folds, reduces the given
// name to an initial. "Wouter de Nooy" -> "nooy, w."; "De Nooy, W." -> "de nooy, w.".
std::string normalize_author(std::string_view name);

enum class MatrixKind { Words, Authors, Combined };

std::string to_string(MatrixKind kind);

// Documents x variables occurrence counts. Variables are ordered by
// descending corpus-wide total, ties alphabetical, so exports are stable.
struct DocMatrix {
  std::vector<std::string> doc_ids;
  std::vector<std::string> variables;
  MatrixKind kind = MatrixKind::Words;
  std::vector<std::uint32_t> cells;  // doc-major: cells[d * variables.size() + v]

  std::uint32_t at(std::size_t doc, std::size_t var) const {
    return cells[doc * variables.size() + var];
  }
  std::size_t n_docs() const noexcept { return doc_ids.size(); }
  std::size_t n_vars() const noexcept { return variables.size(); }

  // CSV with doc rows and variable columns; first row/column carry labels.
  std::string to_csv() const;
};

struct BuildOptions {
  const std::unordered_set<std::string>* stopwords = nullptr;  // null = default list
  bool canonicalize_authors = true;
};

// Counts word (title tokens) or author occurrences per document and drops
// variables whose corpus-wide total is <= threshold.
// Throws EmptyAfterThreshold when nothing survives.
DocMatrix build_matrix(const std::vector<Document>& docs, MatrixKind kind,
                       std::uint32_t threshold, const BuildOptions& options = {});

// Column-wise concatenation with labels prefixed by source kind
// ("word:", "author:"); doc id lists must match exactly.
DocMatrix combine(const DocMatrix& first, const DocMatrix& second);

// CSV with header id,title,authors,year; authors ";"-separated, year optional.
std::vector<Document> read_corpus_csv(std::istream& in);
std::string corpus_csv(const std::vector<Document>& docs);

}  // namespace mulab::corpus
