// Multi-indices over base directions: commutative multisets of d/dx^i.
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace bvjet {

/// sigma in D_sigma: counts[i] = multiplicity of base direction i (0-based).
/// Trailing zeros are trimmed so that equal multisets compare equal.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> counts) : counts_(std::move(counts)) { trim(); }

  static MultiIndex single(int dir, int times = 1) {
    std::vector<int> c(dir + 1, 0);
    c[dir] = times;
    return MultiIndex(std::move(c));
  }

  int order() const {
    int n = 0;
    for (int c : counts_) n += c;
    return n;
  }
  bool empty() const { return counts_.empty(); }
  int count(int dir) const {
    return dir < static_cast<int>(counts_.size()) ? counts_[dir] : 0;
  }
  int maxDir() const { return static_cast<int>(counts_.size()); }

  MultiIndex plus(int dir) const {
    std::vector<int> c = counts_;
    if (dir >= static_cast<int>(c.size())) c.resize(dir + 1, 0);
    ++c[dir];
    return MultiIndex(std::move(c));
  }
  MultiIndex plus(const MultiIndex& o) const {
    std::vector<int> c = counts_;
    if (o.counts_.size() > c.size()) c.resize(o.counts_.size(), 0);
    for (size_t i = 0; i < o.counts_.size(); ++i) c[i] += o.counts_[i];
    return MultiIndex(std::move(c));
  }

  /// Graded-lexicographic order: first by |sigma|, then by counts.
  std::strong_ordering operator<=>(const MultiIndex& o) const {
    if (int a = order(), b = o.order(); a != b) return a <=> b;
    return counts_ <=> o.counts_;
  }
  bool operator==(const MultiIndex& o) const { return counts_ == o.counts_; }

  const std::vector<int>& counts() const { return counts_; }

  /// Suffix form for printing in dimensions <= 3, e.g. "xxy".
  std::string suffix() const;

 private:
  void trim() {
    while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
  }
  std::vector<int> counts_;
};

}  // namespace bvjet
