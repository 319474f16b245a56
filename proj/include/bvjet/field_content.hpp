// Declaration of the BV fibre coordinates: canonically conjugate pairs
// q^a <-> q†_a with Z2 ghost parities.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvjet {

enum class CoordKind : uint8_t { Field, Antifield };

struct CoordDecl {
  std::string name;
  CoordKind kind = CoordKind::Field;
  int pair = 0;      // index of the conjugate pair this coordinate belongs to
  int parity = 0;    // Z2 ghost parity, authoritative for all Koszul signs
  int ghostNumber = 0;  // integer gh(.) kept as metadata only
};

class FieldContent {
 public:
  FieldContent(int baseDim, std::vector<CoordDecl> coords)
      : baseDim_(baseDim), coords_(std::move(coords)) {
    validate();
  }

  int baseDim() const { return baseDim_; }
  int size() const { return static_cast<int>(coords_.size()); }
  const CoordDecl& coord(int i) const { return coords_[i]; }
  const std::vector<CoordDecl>& coords() const { return coords_; }
  int parity(int i) const { return coords_[i].parity; }
  int pairCount() const { return pairCount_; }

  /// Index of the conjugate coordinate (field <-> antifield of the same pair).
  int conjugate(int i) const {
    const CoordDecl& c = coords_[i];
    return c.kind == CoordKind::Field ? antifieldOfPair_[c.pair] : fieldOfPair_[c.pair];
  }
  int fieldOfPair(int p) const { return fieldOfPair_[p]; }
  int antifieldOfPair(int p) const { return antifieldOfPair_[p]; }

  int indexOf(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (coords_[i].name == name) return i;
    return -1;
  }

  /// Base with one even field q and its odd antifield (named p by default).
  static std::shared_ptr<const FieldContent> scalarPair(int baseDim = 1,
                                                        const std::string& field = "q",
                                                        const std::string& anti = "p");

 private:
  void validate();

  int baseDim_;
  std::vector<CoordDecl> coords_;
  std::vector<int> fieldOfPair_, antifieldOfPair_;
  int pairCount_ = 0;
};

using ContentPtr = std::shared_ptr<const FieldContent>;

}  // namespace bvjet
