#pragma once

// Engineered corpora with known rotated-component structure, plus small
// contingency tables, shared by unit tests, CLI tests, and the acceptance
// suite. Construction notes live next to each builder.

#include <string>
#include <vector>

#include "mulab/corpus.hpp"
#include "mulab/infotheory.hpp"

namespace fixtures {

// 16 rows of mutually orthogonal +-1 columns (Sylvester construction);
// column 0 is all ones, columns 1..15 are mean-zero.
std::vector<std::vector<int>> hadamard16();

// Word groups on an h-l-l loading cone around the positive diagonal and its
// mirror, plus zero-communality filler words. After rotation the cone words
// bin to (+,+,+) / (-,-,-) and the fillers to (0,0,0): every axis carries the
// same three-way classification, so mu* = H(1/4,1/4,1/2) = +1.5 bits.
std::vector<mulab::corpus::Document> redundant_corpus();

// Per-axis anchor words pin the rotation; four corner words carry an
// XOR-parity sign pattern across all three components. The mixed anchor/corner
// cell distribution has mu* ~= -1.33 bits.
std::vector<mulab::corpus::Document> synergy_corpus();

// z = x XOR y over uniform independent binaries, as labeled counts.
mulab::infotheory::ContingencyTable xor_table();

// x = y = z uniform binary.
mulab::infotheory::ContingencyTable copy_table();

// Writes content to path, replacing any existing file.
void write_file(const std::string& path, const std::string& content);

// Reads a whole file.
std::string read_file(const std::string& path);

}  // namespace fixtures
