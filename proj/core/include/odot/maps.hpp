#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "odot/core.hpp"
#include "odot/og_poset.hpp"

namespace odot {

enum class Tri : std::uint8_t { unchecked, yes, no };

using PosetRef = std::shared_ptr<const OgPoset>;

inline PosetRef share(OgPoset p) { return std::make_shared<const OgPoset>(std::move(p)); }

/// A function between the elements of two oriented graded posets, stored as a
/// flat-index assignment. The flags record the outcome of checks that have
/// been run on it; constructing a map does not check anything.
struct RdcMap {
  PosetRef source;
  PosetRef target;
  std::vector<std::uint32_t> assignment;  // flat source index -> flat target index

  Tri is_map = Tri::unchecked;
  Tri is_cartesian = Tri::unchecked;
  Tri is_inclusion = Tri::unchecked;
  Tri is_collapse = Tri::unchecked;

  std::uint32_t operator[](std::size_t x) const { return assignment[x]; }
  ElementId operator()(ElementId x) const { return target->id(assignment[source->flat(x)]); }
};

/// Throws Error(invalid_element) if the assignment is out of range or has the
/// wrong length.
RdcMap make_map(PosetRef source, PosetRef target, std::vector<std::uint32_t> assignment);
RdcMap identity_map(PosetRef p);
/// g . f
RdcMap compose(const RdcMap& g, const RdcMap& f);
/// Inclusion of the closed subset `u` (relabelled by restriction) into `owner`.
RdcMap subset_inclusion(PosetRef owner, const ElementSet& u);
/// The unique map to the point.
RdcMap terminal_map(PosetRef p);

/// Same underlying data: equal posets and equal assignments. Flags ignored.
bool same_map(const RdcMap& f, const RdcMap& g);

ElementSet image(const RdcMap& f);
bool is_injective(const RdcMap& f);
bool is_surjective(const RdcMap& f);

// ---------------------------------------------------------------------------
// Checks

struct MapReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Closedness, boundary preservation f(∂ᵅₙx) = ∂ᵅₙf(x) and finality of every
/// restriction to ∂ᵅₙx. Sets `f.is_map`, and the inclusion/collapse flags
/// when it is a map.
MapReport validate_map(RdcMap& f);
MapReport check_map(const RdcMap& f);

struct CartesianReport {
  bool cartesian = false;
  /// First pair (x, y) with y <= f(x) that has no cartesian lift under x.
  std::optional<std::pair<ElementId, ElementId>> counterexample;
};

CartesianReport is_cartesian(RdcMap& f);
CartesianReport check_cartesian(const RdcMap& f);

// ---------------------------------------------------------------------------
// Factorization and fibres

struct Factorization {
  RdcMap collapse;   // onto the image, canonically relabelled
  RdcMap inclusion;  // image into the target
};

/// f = inclusion . collapse. Throws Error(precondition) unless f is a
/// cartesian map.
Factorization factorize(const RdcMap& f);
/// For maps out of an atom; the inclusion part is the non-degenerate cell.
Factorization ez_decompose(const RdcMap& f);

ElementSet fibre(const RdcMap& p, std::size_t y);
std::optional<std::size_t> greatest_in(const OgPoset& p, const ElementSet& s);
ElementSet minimal_in(const OgPoset& p, const ElementSet& s);

/// One section per minimal element of the fibre over the greatest element of
/// the target. Throws Error(precondition) unless p is a surjective map of
/// atoms.
std::vector<RdcMap> sections(const RdcMap& p);

// ---------------------------------------------------------------------------
// Enumeration

struct MapEnumeration {
  std::vector<RdcMap> maps;  // lexicographic by assignment
  bool complete = true;
};

/// All maps u -> p (only the cartesian ones if requested), by backtracking
/// over u in closure order. `budget` bounds search nodes.
MapEnumeration enumerate_maps(PosetRef u, PosetRef p, bool cartesian_only, std::size_t budget = 5000000);

// ---------------------------------------------------------------------------
// Fixtures

/// Coconnection I ⊗ I -> I. Valid, not cartesian.
RdcMap coconnection();

}  // namespace odot
