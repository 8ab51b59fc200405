// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_OPS_H_
#define GRAPHBPE_OPS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace graphbpe {

struct MergeOperation {
  int rank = 0;
  std::string pattern;
  std::int64_t count = 0;  // frequency when the operation was learned

  friend bool operator==(const MergeOperation&, const MergeOperation&) = default;
};

// Ordered merge operations M(0..K-1). A pattern may in principle be learned
// at more than one rank, so lookups return every rank.
class OpsList {
 public:
  OpsList() = default;
  explicit OpsList(std::vector<MergeOperation> ops);

  void push_back(MergeOperation op);

  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  const MergeOperation& operator[](std::size_t i) const { return ops_[i]; }
  auto begin() const { return ops_.begin(); }
  auto end() const { return ops_.end(); }

  // Ranks at which `pattern` was learned, ascending; empty if never.
  const std::vector<int>& ranks_of(const std::string& pattern) const;
  // Smallest rank >= from for `pattern`, or -1.
  int next_rank(const std::string& pattern, int from) const;

  friend bool operator==(const OpsList& a, const OpsList& b) { return a.ops_ == b.ops_; }

 private:
  std::vector<MergeOperation> ops_;
  std::unordered_map<std::string, std::vector<int>> ranks_;
};

// "graphbpe-ops v1 K=<n>" followed by "<rank>\t<pattern>\t<count>" lines.
void write_ops(std::ostream& out, const OpsList& ops);
OpsList read_ops(std::istream& in);  // throws FormatError

void write_ops_file(const std::string& path, const OpsList& ops);
OpsList read_ops_file(const std::string& path);

}  // namespace graphbpe

#endif  // GRAPHBPE_OPS_H_
