#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "odot/element_set.hpp"
#include "odot/og_poset.hpp"

namespace odot {

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string kind;  // "overlapping signs", "dangling face", "ungraded", ...
  ElementId where;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const OgPoset& p);

// ---------------------------------------------------------------------------
// Closed subsets

/// A downward-closed subset of an OgPoset. Holds a non-owning reference to the
/// owner, which must outlive it.
class ClosedSubset {
public:
  /// Wraps `mask`, which must already be closed in `owner`; throws otherwise.
  ClosedSubset(const OgPoset& owner, ElementSet mask);

  const OgPoset& owner() const { return *owner_; }
  const ElementSet& elements() const { return mask_; }
  bool contains(ElementId id) const { return mask_.test(owner_->flat(id)); }
  std::size_t size() const { return mask_.count(); }
  bool empty() const { return mask_.empty(); }
  int dim() const;
  std::vector<ElementId> ids() const;

  friend bool operator==(const ClosedSubset& a, const ClosedSubset& b) {
    return a.owner_ == b.owner_ && a.mask_ == b.mask_;
  }

private:
  const OgPoset* owner_;
  ElementSet mask_;
};

/// Smallest closed subset containing `seed`. Throws Error(invalid_element).
ClosedSubset closure(const OgPoset& p, std::span<const ElementId> seed);
ElementSet closure_of(const OgPoset& p, ElementSet seed);
bool is_closed(const OgPoset& p, const ElementSet& u);

/// Largest dimension of an element of `u`, -1 when empty.
int dim_of(const OgPoset& p, const ElementSet& u);
ElementSet maximal_elements(const OgPoset& p, const ElementSet& u);

enum class Side { minus, plus, both };

constexpr Side side_of(Sign s) { return s == Sign::minus ? Side::minus : Side::plus; }

/// Boundary of the closed subset `u`, computed relative to `u`. Negative `n`
/// yields the empty set.
ElementSet boundary(const OgPoset& p, const ElementSet& u, Side side, int n);
/// Boundary at the default index dim(u) - 1.
ElementSet boundary(const OgPoset& p, const ElementSet& u, Side side);

ClosedSubset boundary(const ClosedSubset& u, Side side, int n);
ClosedSubset boundary(const ClosedSubset& u, Side side);

// ---------------------------------------------------------------------------
// Order

bool leq(const OgPoset& p, ElementId a, ElementId b);
std::vector<ElementId> interval(const OgPoset& p, ElementId a, ElementId b);

// ---------------------------------------------------------------------------
// Sub-posets

/// The closed subset `u` relabelled as a standalone OgPoset. Grade-internal
/// order is preserved; `embedding[k]` is the flat index in `p` of the k-th
/// flat element of `poset`.
struct Restriction {
  OgPoset poset;
  std::vector<std::uint32_t> embedding;
};

Restriction restrict_to(const OgPoset& p, const ElementSet& u);

// ---------------------------------------------------------------------------
// Isomorphism

/// Grade-indexed bijection preserving input and output faces.
struct OgIso {
  std::vector<std::vector<std::uint32_t>> forward;

  /// As a flat-index map.
  std::vector<std::uint32_t> flat(const OgPoset& source, const OgPoset& target) const;
  bool is_identity() const;
  friend bool operator==(const OgIso&, const OgIso&) = default;
};

std::optional<OgIso> find_isomorphism(const OgPoset& p, const OgPoset& q);

/// Number of isomorphisms p -> q, stopping once `limit` have been found.
std::size_t count_isomorphisms(const OgPoset& p, const OgPoset& q, std::size_t limit);

/// Isomorphism between two closed subsets, as a flat map from `u`'s members to
/// `v`'s members (indexed by flat ids of the owners).
std::optional<std::vector<std::uint32_t>> find_subset_isomorphism(const OgPoset& p, const ElementSet& u,
                                                                  const OgPoset& q, const ElementSet& v);

// ---------------------------------------------------------------------------
// Shape predicates on closed subsets (all boundaries relative to the subset)

bool is_globular(const OgPoset& p, const ElementSet& u);
bool is_round(const OgPoset& p, const ElementSet& u);
bool is_globular(const OgPoset& p);
bool is_round(const OgPoset& p);
/// Greatest element of `u`, if any.
std::optional<std::size_t> greatest_element(const OgPoset& p, const ElementSet& u);

struct ThinnessViolation {
  ElementId bottom;
  ElementId top;
  std::string detail;
};

struct ThinnessReport {
  std::vector<ThinnessViolation> violations;
  bool ok() const { return violations.empty(); }
};

ThinnessReport check_oriented_thinness(const OgPoset& p);

}  // namespace odot
