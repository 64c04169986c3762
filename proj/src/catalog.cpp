#include <unordered_set>

#include "dicmine/dic.hpp"

namespace dicmine {

std::string_view shape_name(Shape shape) noexcept {
  switch (shape) {
    case Shape::DashedCircle: return "DashedCircle";
    case Shape::DashedBox: return "DashedBox";
    case Shape::SolidCircle: return "SolidCircle";
    case Shape::SolidBox: return "SolidBox";
    case Shape::Nil: return "Nil";
  }
  return "?";
}

bool is_legal_transition(Shape from, Shape to) noexcept {
  switch (from) {
    case Shape::DashedCircle:
      return to == Shape::DashedBox || to == Shape::SolidCircle || to == Shape::Nil;
    case Shape::DashedBox:
      return to == Shape::SolidBox || to == Shape::Nil;
    default:
      return false;
  }
}

bool canonical_less(Mask64 a, Mask64 b) noexcept {
  const int ka = cardinality(a);
  const int kb = cardinality(b);
  return ka != kb ? ka < kb : a < b;
}

bool ItemsetCatalog::insert_candidate(Mask64 mask) {
  if (!known_masks.insert(mask).second) return false;
  dashed.push_back(CountedItemset{mask, cardinality(mask), 0, 0, Shape::DashedCircle});
  return true;
}

void ItemsetCatalog::add_solid(const CountedItemset& itemset) {
  known_masks.insert(itemset.mask);
  if (itemset.shape == Shape::SolidBox) box_masks.insert(itemset.mask);
  solid.push_back(itemset);
}

bool ItemsetCatalog::well_formed() const {
  std::unordered_set<Mask64> seen;
  for (const auto& i : dashed) {
    if (!(is_dashed(i.shape) || i.shape == Shape::Nil)) return false;
    if (i.k != cardinality(i.mask) || i.k < 1) return false;
    if (!seen.insert(i.mask).second || !known_masks.contains(i.mask)) return false;
  }
  for (const auto& i : solid) {
    if (!is_solid(i.shape)) return false;
    if (i.k != cardinality(i.mask) || i.k < 1) return false;
    if (!seen.insert(i.mask).second || !known_masks.contains(i.mask)) return false;
  }
  return true;
}

}  // namespace dicmine
