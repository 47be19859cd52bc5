#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fixtures {

using mulab::corpus::Document;

std::vector<std::vector<int>> hadamard16() {
  std::vector<std::vector<int>> h = {{1}};
  while (h.size() < 16) {
    const std::size_t n = h.size();
    std::vector<std::vector<int>> next(2 * n, std::vector<int>(2 * n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        next[i][j] = h[i][j];
        next[i][j + n] = h[i][j];
        next[i + n][j] = h[i][j];
        next[i + n][j + n] = -h[i][j];
      }
    h = std::move(next);
  }
  return h;
}

namespace {

std::string repeat_words(const std::vector<std::pair<std::string, int>>& counts) {
  std::string title;
  for (const auto& [word, count] : counts) {
    for (int i = 0; i < count; ++i) {
      if (!title.empty()) title += ' ';
      title += word;
    }
  }
  return title;
}

// Three authors riding the first three factor columns so the author and
// combined matrices stay analyzable (no zero variance, positive eigenvalues).
std::vector<std::string> authors_for(const std::vector<std::vector<int>>& h,
                                     std::size_t doc) {
  static const std::vector<std::string> pool = {"Adams, P.", "Baker, Q.",
                                                "Clark, R."};
  std::vector<std::string> authors;
  for (std::size_t a = 0; a < pool.size(); ++a)
    if (h[doc][a + 1] > 0) authors.push_back(pool[a]);
  return authors;
}

}  // namespace

std::vector<Document> redundant_corpus() {
  const auto h = hadamard16();
  // Factor columns 1..3; one noise column per word from 4..15.
  const int base = 10;
  struct WordSpec {
    std::string word;
    int f1, f2, f3;  // factor weights
    int noise_col;
  };
  const std::vector<WordSpec> structure = {
      {"animus", 6, 1, 1, 4},  {"branch", 1, 6, 1, 5},  {"cobalt", 1, 1, 6, 6},
      {"dorsal", -6, -1, -1, 7}, {"ember", -1, -6, -1, 8}, {"floral", -1, -1, -6, 9},
  };
  const std::vector<std::pair<std::string, int>> fillers = {
      {"gravel", 10}, {"hollow", 11}, {"indigo", 12},
      {"jasper", 13}, {"kettle", 14}, {"lumen", 15},
  };

  std::vector<Document> docs;
  for (std::size_t d = 0; d < 16; ++d) {
    std::vector<std::pair<std::string, int>> counts;
    for (const auto& w : structure) {
      const int c = base + w.f1 * h[d][1] + w.f2 * h[d][2] + w.f3 * h[d][3] +
                    2 * h[d][w.noise_col];
      counts.emplace_back(w.word, c);
    }
    for (const auto& [word, col] : fillers)
      counts.emplace_back(word, 3 + 2 * h[d][col]);

    Document doc;
    doc.id = "r" + std::string(d < 9 ? "0" : "") + std::to_string(d + 1);
    doc.title = repeat_words(counts);
    doc.authors = authors_for(h, d);
    doc.year = 2006 + static_cast<int>(d % 3);
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> synergy_corpus() {
  const auto h = hadamard16();
  const int base = 10;
  struct WordSpec {
    std::string word;
    int f1, f2, f3;
    int noise_col;
  };
  // Anchors: one word per signed axis. Corners: even-parity sign patterns.
  const std::vector<WordSpec> words = {
      {"planet", 6, 0, 0, 4},   {"quartz", -6, 0, 0, 5},
      {"ribbon", 0, 6, 0, 6},   {"sierra", 0, -6, 0, 7},
      {"timber", 0, 0, 6, 8},   {"umbral", 0, 0, -6, 9},
      {"violet", 2, 2, -2, 10}, {"walnut", 2, -2, 2, 11},
      {"xenial", -2, 2, 2, 12}, {"yonder", -2, -2, -2, 13},
  };

  std::vector<Document> docs;
  for (std::size_t d = 0; d < 16; ++d) {
    std::vector<std::pair<std::string, int>> counts;
    for (const auto& w : words) {
      const int c = base + w.f1 * h[d][1] + w.f2 * h[d][2] + w.f3 * h[d][3] +
                    2 * h[d][w.noise_col];
      counts.emplace_back(w.word, c);
    }
    Document doc;
    doc.id = "s" + std::string(d < 9 ? "0" : "") + std::to_string(d + 1);
    doc.title = repeat_words(counts);
    doc.authors = authors_for(h, d);
    doc.year = 2006 + static_cast<int>(d % 3);
    docs.push_back(std::move(doc));
  }
  return docs;
}

mulab::infotheory::ContingencyTable xor_table() {
  mulab::infotheory::ContingencyTable t;
  t.labels_x = {"0", "1"};
  t.labels_y = {"0", "1"};
  t.labels_z = {"0", "1"};
  t.counts.assign(8, 0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) t.counts[(i * 2 + j) * 2 + (i ^ j)] = 1;
  return t;
}

mulab::infotheory::ContingencyTable copy_table() {
  mulab::infotheory::ContingencyTable t;
  t.labels_x = {"0", "1"};
  t.labels_y = {"0", "1"};
  t.labels_z = {"0", "1"};
  t.counts.assign(8, 0);
  t.counts[0] = 1;
  t.counts[7] = 1;
  return t;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fixtures
