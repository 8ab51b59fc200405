// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_IO_H_
#define GRAPHBPE_IO_H_

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphbpe/mol_graph.h"

namespace graphbpe {

// Malformed artifact files. kVersion means the header is missing or names a
// different format or version.
class FormatError : public std::runtime_error {
 public:
  enum class Kind { kVersion, kParse };

  FormatError(Kind kind, std::size_t line, const std::string& message);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

struct CorpusEntry {
  std::size_t line = 0;  // 1-based line number in the source file
  std::string id;        // second tab-separated column, or the SMILES itself
  std::string smiles;
};

// One SMILES per line with an optional tab-separated id. Blank lines and
// lines starting with '#' are skipped.
std::vector<CorpusEntry> read_corpus(std::istream& in);
std::vector<CorpusEntry> read_corpus_file(const std::string& path);

// Input molecule that failed to parse, with its line number.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parses every entry; throws CorpusError on the first failure.
std::vector<MolGraph> parse_corpus(const std::vector<CorpusEntry>& entries);

}  // namespace graphbpe

#endif  // GRAPHBPE_IO_H_
