#include "bvjet/multi_index.hpp"

namespace bvjet {

std::string MultiIndex::suffix() const {
  static const char names[3] = {'x', 'y', 'z'};
  std::string s;
  for (size_t i = 0; i < counts_.size(); ++i) {
    char c = i < 3 ? names[i] : '?';
    s.append(static_cast<size_t>(counts_[i]), c);
  }
  return s;
}

}  // namespace bvjet
