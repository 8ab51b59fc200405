// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/ops.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "graphbpe/io.h"

namespace graphbpe {

namespace {

constexpr std::string_view kHeaderPrefix = "graphbpe-ops v1 K=";

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

OpsList::OpsList(std::vector<MergeOperation> ops) {
  for (MergeOperation& op : ops) push_back(std::move(op));
}

void OpsList::push_back(MergeOperation op) {
  op.rank = static_cast<int>(ops_.size());
  ranks_[op.pattern].push_back(op.rank);
  ops_.push_back(std::move(op));
}

const std::vector<int>& OpsList::ranks_of(const std::string& pattern) const {
  static const std::vector<int> kNone;
  auto it = ranks_.find(pattern);
  return it == ranks_.end() ? kNone : it->second;
}

int OpsList::next_rank(const std::string& pattern, int from) const {
  const std::vector<int>& ranks = ranks_of(pattern);
  auto it = std::lower_bound(ranks.begin(), ranks.end(), from);
  return it == ranks.end() ? -1 : *it;
}

void write_ops(std::ostream& out, const OpsList& ops) {
  out << kHeaderPrefix << ops.size() << '\n';
  for (const MergeOperation& op : ops) {
    out << op.rank << '\t' << op.pattern << '\t' << op.count << '\n';
  }
}

OpsList read_ops(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kHeaderPrefix, 0) != 0) {
    throw FormatError(FormatError::Kind::kVersion, 1, "expected header 'graphbpe-ops v1 K=<n>'");
  }
  std::size_t declared = 0;
  if (!parse_number(std::string_view(line).substr(kHeaderPrefix.size()), declared)) {
    throw FormatError(FormatError::Kind::kVersion, 1, "malformed operation count in header");
  }
  OpsList ops;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw FormatError(FormatError::Kind::kParse, number, "expected '<rank>\\t<pattern>\\t<count>'");
    }
    MergeOperation op;
    int rank = -1;
    if (!parse_number(std::string_view(line).substr(0, t1), rank) ||
        rank != static_cast<int>(ops.size())) {
      throw FormatError(FormatError::Kind::kParse, number, "ranks must be contiguous from 0");
    }
    op.pattern = line.substr(t1 + 1, t2 - t1 - 1);
    if (op.pattern.empty() || !parse_number(std::string_view(line).substr(t2 + 1), op.count)) {
      throw FormatError(FormatError::Kind::kParse, number, "malformed operation line");
    }
    ops.push_back(std::move(op));
  }
  if (ops.size() != declared) {
    throw FormatError(FormatError::Kind::kParse, number,
                      "header declares " + std::to_string(declared) + " operations, found " +
                          std::to_string(ops.size()));
  }
  return ops;
}

void write_ops_file(const std::string& path, const OpsList& ops) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_ops(out, ops);
}

OpsList read_ops_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_ops(in);
}

}  // namespace graphbpe
