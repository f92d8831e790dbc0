#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odot/core.hpp"
#include "odot/og_poset.hpp"

namespace odot {

// ---------------------------------------------------------------------------
// Construction witnesses

struct WitnessNode;
using Witness = std::shared_ptr<const WitnessNode>;

struct WitnessNode {
  enum class Kind { point, paste, cell };
  Kind kind = Kind::point;
  int k = 0;  // pasting index, paste nodes only
  Witness left;
  Witness right;
};

Witness point_witness();
Witness paste_witness(int k, Witness left, Witness right);
Witness cell_witness(Witness lower, Witness upper);

/// s-expression form: `point`, `paste(k, A, B)`, `cell(A, B)`.
std::string to_string(const Witness& w);
Witness parse_witness(std::string_view text);

// ---------------------------------------------------------------------------
// Molecules

struct Molecule {
  OgPoset poset;
  Witness witness;

  int dim() const { return poset.dim(); }
  std::size_t size() const { return poset.size(); }
};

Molecule point();
Molecule arrow();

struct PasteResult {
  Molecule molecule;
  /// Flat indices of the images of u and v in the pasting.
  std::vector<std::uint32_t> left_embedding;
  std::vector<std::uint32_t> right_embedding;
};

/// u #_k v. Throws Error(boundary_mismatch) if the k-boundaries differ.
PasteResult paste_with_embeddings(const Molecule& u, const Molecule& v, int k);
Molecule paste(const Molecule& u, const Molecule& v, int k);

/// u => v. Throws not_round, dimension_mismatch or boundary_mismatch.
Molecule cell(const Molecule& u, const Molecule& v);

/// Rebuilds a poset from its construction tree.
OgPoset replay(const Witness& w);

bool is_round(const Molecule& u);
bool is_atom(const Molecule& u);

// ---------------------------------------------------------------------------
// Recognition

enum class Recognition { molecule, not_molecule, unknown };

const char* to_string(Recognition r);

struct RecognitionResult {
  Recognition status = Recognition::unknown;
  Witness witness;        // set when status == molecule
  std::size_t nodes = 0;  // search nodes expended
};

inline constexpr std::size_t kDefaultSearchBudget = 200000;

/// Memoised molecule recognition over closed subsets of one poset. Results are
/// shared between queries, so reuse an instance for related subsets.
class Recognizer {
public:
  explicit Recognizer(const OgPoset& p, std::size_t budget = kDefaultSearchBudget);
  ~Recognizer();
  Recognizer(const Recognizer&) = delete;
  Recognizer& operator=(const Recognizer&) = delete;

  /// Null when `u` is not a molecule. Throws BudgetExceeded once the node
  /// count passes the budget.
  Witness molecule(const ElementSet& u);
  std::size_t nodes() const;
  void reset_nodes();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

RecognitionResult recognize_molecule(const OgPoset& p, std::size_t budget = kDefaultSearchBudget);
/// Recognition of a closed subset of `p`.
RecognitionResult recognize_molecule(const OgPoset& p, const ElementSet& u,
                                     std::size_t budget = kDefaultSearchBudget);

/// Wraps `p` with a recognised witness; nullopt if `p` is not a molecule.
/// Throws BudgetExceeded when recognition runs out of budget.
std::optional<Molecule> as_molecule(OgPoset p, std::size_t budget = kDefaultSearchBudget);

/// A decomposition u #_k v of a closed subset into two closed subsets, with
/// u ∪ v = U and u ∩ v = ∂⁺_k u = ∂⁻_k v. The parts are not checked to be
/// molecules.
struct Split {
  int k = 0;
  ElementSet left;
  ElementSet right;
};

/// Candidate splits of `u`, all k from dim u - 1 down to 0, in the order the
/// recogniser tries them. `nodes`, if given, is incremented per candidate.
std::vector<Split> enumerate_splits(const OgPoset& p, const ElementSet& u, std::size_t* nodes = nullptr);

/// Lazy form: `fn` returns true to stop. Throws BudgetExceeded once `*nodes`
/// passes `budget`.
void for_each_split(const OgPoset& p, const ElementSet& u, const std::function<bool(const Split&)>& fn,
                    std::size_t* nodes = nullptr, std::size_t budget = SIZE_MAX);

// ---------------------------------------------------------------------------
// Standard shapes

/// Iterated cell of points; 2n + 1 elements.
Molecule globe(int n);
/// Join of n + 1 points.
OgPoset simplex(int n);
/// n-fold Gray power of the arrow.
OgPoset cube(int n);

// ---------------------------------------------------------------------------
// Regularity

struct RegularityReport {
  bool regular = false;
  bool exhausted = false;               // some lower set could not be decided
  std::vector<ElementId> failures;      // elements whose lower set is not an atom
  std::vector<Witness> certificates;    // per flat element, when regular
};

RegularityReport check_regular(const OgPoset& p, std::size_t budget = kDefaultSearchBudget);

}  // namespace odot
