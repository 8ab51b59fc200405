// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/io.h"

#include <fstream>
#include <istream>

#include "graphbpe/smiles.h"

namespace graphbpe {

FormatError::FormatError(Kind kind, std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      kind_(kind),
      line_(line) {}

CorpusError::CorpusError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::vector<CorpusEntry> read_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    CorpusEntry entry;
    entry.line = number;
    const std::size_t tab = line.find('\t');
    entry.smiles = line.substr(0, tab);
    entry.id = tab == std::string::npos ? entry.smiles : line.substr(tab + 1);
    if (entry.smiles.empty()) continue;
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<CorpusEntry> read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_corpus(in);
}

std::vector<MolGraph> parse_corpus(const std::vector<CorpusEntry>& entries) {
  std::vector<MolGraph> mols;
  mols.reserve(entries.size());
  for (const CorpusEntry& e : entries) {
    try {
      mols.push_back(parse_smiles(e.smiles));
    } catch (const SmilesError& err) {
      throw CorpusError(e.line, e.smiles + ": " + err.what());
    }
  }
  return mols;
}

}  // namespace graphbpe
