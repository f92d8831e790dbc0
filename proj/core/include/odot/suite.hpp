#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "odot/gallery.hpp"
#include "odot/maps.hpp"
#include "odot/shapes.hpp"

namespace odot {

struct SuiteConfig {
  std::size_t element_budget = 15;  // single-shape checks
  int dimension_budget = 4;
  std::size_t pair_budget = 7;      // checks over pairs and triples of atoms
  std::size_t horn_budget = 10;     // atoms whose horns are enumerated
  std::size_t search_budget = kDefaultSearchBudget;
  std::uint64_t seed = 1;
  std::size_t pastings = 200;
  unsigned threads = 1;
  std::string corrupt;  // name of a built-in fixture to damage, for fault injection

  /// Throws Error(precondition) on a zero budget or an unknown fixture name.
  void validate() const;
};

enum class Verdict { pass, fail, skip };

const char* to_string(Verdict v);

struct CheckResult {
  std::string id;
  std::string instance;
  Verdict verdict = Verdict::pass;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> results;  // sorted by id, then instance
  bool exhausted = false;            // some check ran out of search budget

  bool ok() const;
  std::size_t count(Verdict v) const;
  /// One `check <id> <instance> PASS|FAIL|SKIP` line per result.
  std::string to_string() const;
};

SuiteReport run_suite(const SuiteConfig& config = {});

/// Fixture names accepted by SuiteConfig::corrupt.
std::vector<std::string> fixture_names();

/// Witness string without spaces, used as an instance label.
std::string instance_label(const std::string& name);

// ---------------------------------------------------------------------------
// Shared verification helpers. Each returns an empty string on success.

/// Checks the four boundary formulas of u #_k v inside the pasting, up to
/// unique isomorphism.
std::string check_pasting_boundaries(const Molecule& u, const Molecule& v, int k);

struct PastingSample {
  std::size_t left = 0;
  std::size_t right = 0;
  int k = 0;
};

/// Seeded random pastings of gallery molecules whose result stays within
/// `element_budget`. May return fewer than `count` if few pastings exist.
std::vector<PastingSample> random_pastings(const std::vector<GalleryEntry>& gallery, std::size_t count,
                                           std::uint64_t seed, std::size_t element_budget);

/// Per-map Eilenberg-Zilber conditions for a cartesian map out of an atom:
/// the factorisation recomposes to f, its middle object is the closure of the
/// image of the top element, and degrees move strictly along non-identity
/// factors.
std::string check_ez_map(const RdcMap& f);

struct EzFailure {
  std::size_t source = 0;  // index into the atom list
  std::string detail;
};

struct EzReport {
  std::size_t maps = 0;
  std::size_t collapses = 0;
  std::size_t inclusions = 0;
  bool complete = true;
  std::vector<EzFailure> failures;
};

/// Enumerates the cartesian maps between every ordered pair of `atoms`, which
/// must be pairwise non-isomorphic, and checks the Eilenberg-Zilber axioms:
/// per-map conditions, existence of the collapse factor among the enumerated
/// collapses, sections counted independently as the inclusions splitting each
/// collapse, and collapses determined by their sections.
EzReport verify_ez(const std::vector<PosetRef>& atoms, std::size_t map_budget = 5000000);

/// Non-invertible collapses between atoms: `by_source[i]` lists pairs
/// (target atom index, assignment).
struct CollapseTable {
  std::vector<PosetRef> atoms;
  std::vector<std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>>> by_source;
  bool complete = true;
};

CollapseTable collapse_table(std::vector<PosetRef> atoms, std::size_t map_budget = 5000000);

/// For every cartesian map from one of the table's atoms into `p`: it is
/// degenerate (factors through a non-invertible collapse followed by a
/// cartesian map) exactly when it is not injective. Returns one line per
/// violation.
std::vector<std::string> verify_regular_cells(const CollapseTable& table, const PosetRef& p,
                                              std::size_t map_budget = 5000000);

}  // namespace odot
