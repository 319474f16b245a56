#include "bvjet/field_content.hpp"

namespace bvjet {

void FieldContent::validate() {
  if (baseDim_ < 1) throw std::invalid_argument("base dimension must be positive");
  int maxPair = -1;
  for (const auto& c : coords_) maxPair = std::max(maxPair, c.pair);
  pairCount_ = maxPair + 1;
  fieldOfPair_.assign(pairCount_, -1);
  antifieldOfPair_.assign(pairCount_, -1);
  for (int i = 0; i < size(); ++i) {
    const CoordDecl& c = coords_[i];
    if (c.pair < 0) throw std::invalid_argument("negative pair index");
    auto& slot = c.kind == CoordKind::Field ? fieldOfPair_[c.pair] : antifieldOfPair_[c.pair];
    if (slot != -1)
      throw std::invalid_argument("pair " + std::to_string(c.pair) +
                                  " declared twice on the same side");
    slot = i;
  }
  for (int p = 0; p < pairCount_; ++p) {
    if (fieldOfPair_[p] < 0 || antifieldOfPair_[p] < 0)
      throw std::invalid_argument("pair " + std::to_string(p) + " is incomplete");
    if ((coords_[fieldOfPair_[p]].parity + coords_[antifieldOfPair_[p]].parity) % 2 != 1)
      throw std::invalid_argument("conjugate coordinates must have opposite parities");
  }
}

std::shared_ptr<const FieldContent> FieldContent::scalarPair(int baseDim,
                                                             const std::string& field,
                                                             const std::string& anti) {
  std::vector<CoordDecl> coords;
  coords.push_back({field, CoordKind::Field, 0, 0, 0});
  coords.push_back({anti, CoordKind::Antifield, 0, 1, 1});
  return std::make_shared<FieldContent>(baseDim, std::move(coords));
}

}  // namespace bvjet
