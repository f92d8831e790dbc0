#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odot/og_poset.hpp"

namespace odot {

using Chain = std::vector<std::uint32_t>;

/// Simplicial set given by its non-degenerate simplices. Vertex v is the
/// 0-simplex {v}; `labels[v]` is its display label. Simplices of each
/// dimension are strictly increasing vertex chains in lexicographic order.
struct SimplicialSet {
  std::vector<std::string> labels;
  std::vector<std::vector<Chain>> simplices;

  int dim() const { return static_cast<int>(simplices.size()) - 1; }
  std::size_t count(std::size_t k) const { return k < simplices.size() ? simplices[k].size() : 0; }
  std::size_t total() const;
  /// Index of `c` among the simplices of its dimension, if present.
  std::optional<std::size_t> find(const Chain& c) const;
  friend bool operator==(const SimplicialSet&, const SimplicialSet&) = default;
};

inline constexpr std::size_t kDefaultSimplexBudget = 2000000;

/// Nerve of the underlying poset of `p` (restricted to `u` if given): strict
/// chains, labelled by the ambient element ids. Throws BudgetExceeded past
/// `budget` simplices.
SimplicialSet subdivide(const OgPoset& p, std::size_t budget = kDefaultSimplexBudget);
SimplicialSet subdivide(const OgPoset& p, const ElementSet& u, std::size_t budget = kDefaultSimplexBudget);

/// Every face of every stored simplex is stored.
bool is_face_closed(const SimplicialSet& s);

/// Augmented simplicial chain complex. `boundaries[k]` is the matrix of
/// ∂_k: C_k -> C_{k-1} as sparse columns (row, coefficient); k = 0 maps onto
/// the augmentation C_{-1} = Z.
struct ChainComplex {
  struct Entry {
    std::uint32_t row;
    int value;
  };
  using Column = std::vector<Entry>;

  std::vector<std::size_t> ranks;               // ranks[k] = |C_k|, k >= 0
  std::vector<std::vector<Column>> boundaries;  // boundaries[k][column]
};

ChainComplex chain_complex(const SimplicialSet& s);
/// ∂_k ∘ ∂_{k+1} = 0 for every k, checked as integer matrix products.
bool boundary_squares_zero(const ChainComplex& c);

struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<std::string> torsion;  // invariant factors > 1, decimal
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Reduced integer homology in degrees -1 .. max_dim.
struct Homology {
  std::vector<HomologyGroup> groups;  // groups[k + 1] is degree k

  const HomologyGroup& reduced(int k) const { return groups[static_cast<std::size_t>(k + 1)]; }
  int max_dim() const { return static_cast<int>(groups.size()) - 2; }
  bool is_trivial() const;
  /// Reduced homology of the (n)-sphere: Z in degree n, zero elsewhere.
  bool is_sphere(int n) const;
  std::string to_string() const;
};

/// Smith normal form over arbitrary-precision integers. Throws
/// BudgetExceeded when the complex has more than `budget` simplices.
Homology homology(const SimplicialSet& s, int max_dim, std::size_t budget = kDefaultSimplexBudget);

/// Invariant factors of an integer matrix given by sparse columns.
std::vector<std::string> smith_invariants(std::size_t rows, const std::vector<ChainComplex::Column>& columns);

struct ProductComparison {
  bool isomorphic = false;
  std::vector<std::size_t> left_counts;   // simplices of Sd(U ⊗ V) per dimension
  std::vector<std::size_t> right_counts;  // non-degenerate simplices of Sd U × Sd V
  std::string detail;
};

/// Sd(U ⊗ V) against Sd U × Sd V, matched through the pair indexing of the
/// Gray product.
ProductComparison compare_product(const OgPoset& u, const OgPoset& v, std::size_t budget = kDefaultSimplexBudget);

}  // namespace odot
