#include "mulab/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "mulab/csv.hpp"

namespace mulab::corpus {

const std::unordered_set<std::string>& default_stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",    "an",   "and",  "are",   "as",   "at",   "be",   "but", "by",
      "for",  "from", "has",  "have",  "in",   "into", "is",   "it",  "its",
      "of",   "on",   "or",   "that",  "the",  "their", "this", "to",  "was",
      "were", "which", "with"};
  return words;
}

std::vector<std::string> tokenize_title(std::string_view title) {
  return tokenize_title(title, default_stopwords());
}

std::vector<std::string> tokenize_title(std::string_view title,
                                        const std::unordered_set<std::string>& stopwords) {
  std::string cleaned;
  cleaned.reserve(title.size());
  for (unsigned char c : title) {
    if (c >= 0x80) {
      cleaned += static_cast<char>(c);  // non-ASCII bytes pass through
    } else if (std::isalnum(c)) {
      cleaned += static_cast<char>(std::tolower(c));
    } else if (c == '-') {
      cleaned += '-';
    } else {
      cleaned += ' ';
    }
  }

  std::vector<std::string> tokens;
  std::istringstream ss(cleaned);
  std::string token;
  while (ss >> token) {
    // in-word hyphens survive; dangling ones do not
    const auto first = token.find_first_not_of('-');
    if (first == std::string::npos) continue;
    const auto last = token.find_last_not_of('-');
    token = token.substr(first, last - first + 1);
    if (stopwords.contains(token)) continue;
    tokens.push_back(std::move(token));
  }
  return tokens;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (char& c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string normalize_author(std::string_view name) {
  const std::string t = trim(name);
  if (t.empty()) return {};

  std::string last, first;
  const auto comma = t.find(',');
  if (comma != std::string::npos) {
    last = trim(t.substr(0, comma));
    first = trim(t.substr(comma + 1));
  } else {
    std::istringstream ss(t);
    std::vector<std::string> parts;
    std::string p;
    while (ss >> p) parts.push_back(p);
    if (parts.size() == 1) {
      last = parts[0];
    } else {
      last = parts.back();
      first = parts.front();
    }
  }
  last = lower(last);
  if (first.empty()) return last;
  const char initial =
      static_cast<char>(std::tolower(static_cast<unsigned char>(first[0])));
  return last + ", " + std::string(1, initial) + ".";
}

std::string to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::Words: return "words";
    case MatrixKind::Authors: return "authors";
    case MatrixKind::Combined: return "combined";
  }
  return "?";
}

std::string DocMatrix::to_csv() const {
  std::ostringstream os;
  os << "doc_id";
  for (const auto& v : variables) os << ',' << csv::quote(v);
  os << '\n';
  for (std::size_t d = 0; d < n_docs(); ++d) {
    os << csv::quote(doc_ids[d]);
    for (std::size_t v = 0; v < n_vars(); ++v) os << ',' << at(d, v);
    os << '\n';
  }
  return os.str();
}

DocMatrix build_matrix(const std::vector<Document>& docs, MatrixKind kind,
                       std::uint32_t threshold, const BuildOptions& options) {
  if (docs.empty()) throw Error("empty_corpus", "corpus has no documents");
  if (kind == MatrixKind::Combined)
    throw std::invalid_argument("build Combined via combine()");

  const auto& stopwords =
      options.stopwords ? *options.stopwords : default_stopwords();

  // Per-document occurrence counts keyed by variable label.
  std::vector<std::map<std::string, std::uint32_t>> per_doc(docs.size());
  std::map<std::string, std::uint64_t> totals;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (kind == MatrixKind::Words) {
      for (auto& token : tokenize_title(docs[d].title, stopwords)) {
        ++per_doc[d][token];
        ++totals[token];
      }
    } else {
      for (const auto& raw : docs[d].authors) {
        std::string name =
            options.canonicalize_authors ? normalize_author(raw) : trim(raw);
        if (name.empty()) continue;
        ++per_doc[d][name];
        ++totals[name];
      }
    }
  }

  // Keep variables with corpus-wide total > threshold; order by descending
  // total, ties alphabetical.
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (const auto& [label, total] : totals)
    if (total > threshold) kept.emplace_back(label, total);
  if (kept.empty())
    throw EmptyAfterThreshold("no " + to_string(kind) +
                              " variable exceeds total count " +
                              std::to_string(threshold));
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  DocMatrix m;
  m.kind = kind;
  m.doc_ids.reserve(docs.size());
  for (const auto& doc : docs) m.doc_ids.push_back(doc.id);
  m.variables.reserve(kept.size());
  for (const auto& [label, _] : kept) m.variables.push_back(label);
  m.cells.assign(docs.size() * kept.size(), 0);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t v = 0; v < kept.size(); ++v) {
      const auto it = per_doc[d].find(kept[v].first);
      if (it != per_doc[d].end())
        m.cells[d * kept.size() + v] = it->second;
    }
  }
  return m;
}

DocMatrix combine(const DocMatrix& first, const DocMatrix& second) {
  if (first.doc_ids != second.doc_ids)
    throw DocMismatch("matrices cover different documents");

  auto prefix = [](MatrixKind kind) {
    switch (kind) {
      case MatrixKind::Words: return "word:";
      case MatrixKind::Authors: return "author:";
      case MatrixKind::Combined: return "combined:";
    }
    return "?:";
  };

  DocMatrix m;
  m.kind = MatrixKind::Combined;
  m.doc_ids = first.doc_ids;
  m.variables.reserve(first.n_vars() + second.n_vars());
  for (const auto& v : first.variables) m.variables.push_back(prefix(first.kind) + v);
  for (const auto& v : second.variables) m.variables.push_back(prefix(second.kind) + v);
  m.cells.assign(m.doc_ids.size() * m.variables.size(), 0);
  for (std::size_t d = 0; d < m.doc_ids.size(); ++d) {
    for (std::size_t v = 0; v < first.n_vars(); ++v)
      m.cells[d * m.n_vars() + v] = first.at(d, v);
    for (std::size_t v = 0; v < second.n_vars(); ++v)
      m.cells[d * m.n_vars() + first.n_vars() + v] = second.at(d, v);
  }
  return m;
}

std::vector<Document> read_corpus_csv(std::istream& in) {
  const auto rows = csv::parse(in);
  if (rows.empty()) throw CsvFormat("empty corpus CSV");
  const auto& header = rows.front();
  if (header.size() != 4 || header[0] != "id" || header[1] != "title" ||
      header[2] != "authors" || header[3] != "year")
    throw CsvFormat("expected header id,title,authors,year");

  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 4)
      throw CsvFormat("row " + std::to_string(r) + " has " +
                      std::to_string(row.size()) + " fields");
    Document doc;
    doc.id = row[0];
    if (doc.id.empty()) throw CsvFormat("row " + std::to_string(r) + " has empty id");
    if (!seen.insert(doc.id).second)
      throw CsvFormat("duplicate document id: " + doc.id);
    doc.title = row[1];
    std::istringstream authors(row[2]);
    std::string author;
    while (std::getline(authors, author, ';')) {
      const std::string trimmed = trim(author);
      if (!trimmed.empty()) doc.authors.push_back(trimmed);
    }
    if (!row[3].empty()) {
      try {
        doc.year = std::stoi(row[3]);
      } catch (const std::exception&) {
        throw CsvFormat("bad year in row " + std::to_string(r));
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::string corpus_csv(const std::vector<Document>& docs) {
  std::ostringstream os;
  os << "id,title,authors,year\n";
  for (const auto& doc : docs) {
    std::string authors;
    for (std::size_t i = 0; i < doc.authors.size(); ++i) {
      if (i) authors += "; ";
      authors += doc.authors[i];
    }
    os << csv::quote(doc.id) << ',' << csv::quote(doc.title) << ','
       << csv::quote(authors) << ',';
    if (doc.year) os << *doc.year;
    os << '\n';
  }
  return os.str();
}

}  // namespace mulab::corpus
