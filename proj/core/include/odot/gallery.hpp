#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "odot/shapes.hpp"

namespace odot {

/// The whisker diagram: a 2-cell γ: f ⇒ g between parallel arrows x -> y,
/// followed by h: y -> z. Grade 0 is x, y, z; grade 1 is f, g, h; grade 2 is γ.
Molecule intro_example();

struct GalleryConfig {
  std::size_t element_budget = 15;
  int dimension_budget = 4;
};

struct GalleryEntry {
  std::string name;
  Molecule molecule;
  bool atom = false;
};

/// One representative per isomorphism class of the molecules reachable from
/// the point by pasting and cells, within the budgets. Ordered by size, then
/// by discovery.
std::vector<GalleryEntry> molecule_gallery(const GalleryConfig& config = {});
std::vector<GalleryEntry> atom_gallery(const GalleryConfig& config = {});

struct NamedShape {
  std::string name;
  OgPoset poset;
};

/// Globes, simplices, cubes and Gray products of small atoms with at most
/// `element_budget` elements.
std::vector<NamedShape> standard_shapes(std::size_t element_budget);

}  // namespace odot
