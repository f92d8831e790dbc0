#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "odot/element_set.hpp"

namespace odot {

enum class Sign : std::uint8_t { minus = 0, plus = 1 };

constexpr Sign operator-(Sign s) { return s == Sign::minus ? Sign::plus : Sign::minus; }
constexpr int to_int(Sign s) { return s == Sign::minus ? -1 : 1; }
constexpr char to_char(Sign s) { return s == Sign::minus ? '-' : '+'; }
constexpr Sign sign_product(Sign a, Sign b) { return a == b ? Sign::plus : Sign::minus; }

/// An element addressed by dimension and position within that dimension.
struct ElementId {
  std::size_t grade = 0;
  std::size_t index = 0;
  auto operator<=>(const ElementId&) const = default;
};

/// Rendered as `n.i`.
std::string to_string(ElementId id);

struct ElementFaces {
  std::vector<std::uint32_t> input;   // indices into grade n-1
  std::vector<std::uint32_t> output;  // indices into grade n-1
  friend bool operator==(const ElementFaces&, const ElementFaces&) = default;
};

/// Oriented graded poset stored as per-grade face tables.
///
/// Elements are also addressed by a flat index (grade-major, then index); all
/// derived tables (cofaces, lower and upper sets) use flat indices. The value
/// is immutable once constructed. Face lists are normalised to ascending order.
/// A table with dangling face indices can still be constructed so that
/// `validate` can report it, but `well_formed()` is then false and the order
/// tables are left empty.
class OgPoset {
public:
  using Grade = std::vector<ElementFaces>;

  OgPoset() = default;
  explicit OgPoset(std::vector<Grade> grades);

  /// -1 for the empty poset.
  int dim() const { return static_cast<int>(grades_.size()) - 1; }
  std::size_t size() const { return dims_.size(); }
  bool empty() const { return dims_.empty(); }
  std::size_t num_grades() const { return grades_.size(); }
  std::size_t grade_size(std::size_t n) const { return n < grades_.size() ? grades_[n].size() : 0; }
  std::vector<std::size_t> grade_sizes() const;
  const std::vector<Grade>& grades() const { return grades_; }
  bool well_formed() const { return well_formed_; }

  const ElementFaces& element(ElementId id) const { return grades_[id.grade][id.index]; }
  bool contains(ElementId id) const { return id.grade < grades_.size() && id.index < grades_[id.grade].size(); }

  std::size_t flat(ElementId id) const { return offsets_[id.grade] + id.index; }
  ElementId id(std::size_t flat) const;
  std::size_t offset(std::size_t grade) const { return offsets_[grade]; }
  int dim_of(std::size_t flat) const { return dims_[flat]; }

  std::span<const std::uint32_t> faces(std::size_t x, Sign s) const {
    return faces_[x][static_cast<int>(s)];
  }
  std::span<const std::uint32_t> cofaces(std::size_t x, Sign s) const {
    return cofaces_[x][static_cast<int>(s)];
  }
  std::size_t num_faces(std::size_t x) const { return faces(x, Sign::minus).size() + faces(x, Sign::plus).size(); }
  std::size_t num_cofaces(std::size_t x) const {
    return cofaces(x, Sign::minus).size() + cofaces(x, Sign::plus).size();
  }

  /// cl{x}
  const ElementSet& lower_set(std::size_t x) const { return lower_[x]; }
  /// {y : x <= y}
  const ElementSet& upper_set(std::size_t x) const { return upper_[x]; }
  bool leq(std::size_t a, std::size_t b) const { return lower_[b].test(a); }

  ElementSet none() const { return ElementSet(size()); }
  ElementSet all() const;

  friend bool operator==(const OgPoset& a, const OgPoset& b) { return a.grades_ == b.grades_; }

private:
  std::vector<Grade> grades_;
  std::vector<std::size_t> offsets_;
  std::vector<int> dims_;
  std::vector<std::array<std::vector<std::uint32_t>, 2>> faces_;
  std::vector<std::array<std::vector<std::uint32_t>, 2>> cofaces_;
  std::vector<ElementSet> lower_;
  std::vector<ElementSet> upper_;
  bool well_formed_ = true;
};

/// Small builder used by constructors: appends elements grade by grade.
class OgPosetBuilder {
public:
  std::size_t add(std::size_t grade, std::vector<std::uint32_t> input, std::vector<std::uint32_t> output);
  OgPoset build() &&;

private:
  std::vector<OgPoset::Grade> grades_;
};

}  // namespace odot
