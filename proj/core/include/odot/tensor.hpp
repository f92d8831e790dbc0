#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "odot/maps.hpp"
#include "odot/og_poset.hpp"

namespace odot {

/// P ⊗ Q. Result elements of each grade are ordered row-major by the flat
/// indices of their factors.
struct GrayProduct {
  OgPoset result;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_index;  // flat result -> (flat x, flat y)
  std::vector<std::uint32_t> index_of;                               // x * |Q| + y -> flat result
  std::size_t right_size = 0;

  std::uint32_t at(std::size_t x, std::size_t y) const { return index_of[x * right_size + y]; }
};

GrayProduct gray(const OgPoset& p, const OgPoset& q);
RdcMap gray_map(const RdcMap& f, const RdcMap& g);

/// Adjoins a least element at grade 0, shifting every grade up by one. Each
/// former vertex gets the new element as an output face.
OgPoset augment(const OgPoset& p);
/// Inverse of augment. Throws Error(no_least_element).
OgPoset diminish(const OgPoset& p);

OgPoset join(const OgPoset& p, const OgPoset& q);
RdcMap join_map(const RdcMap& f, const RdcMap& g);

struct Cylinder {
  GrayProduct product;  // arrow ⊗ u
  RdcMap iota_minus;
  RdcMap iota_plus;
  RdcMap sigma;
};

Cylinder cylinder(PosetRef u);

/// (X ⊗ Y') ∪ (Y ⊗ X') inside Y ⊗ Y' for inclusions m: X -> Y, m': X' -> Y'.
struct PushoutProduct {
  GrayProduct ambient;
  ElementSet image;
  RdcMap inclusion;
};

/// Throws Error(precondition) unless both maps are injective.
PushoutProduct pushout_product(const RdcMap& m, const RdcMap& m2);

}  // namespace odot
