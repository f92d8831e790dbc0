#include "odot/og_poset.hpp"

#include <algorithm>

#include "odot/error.hpp"

namespace odot {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_element: return "invalid element";
    case ErrorKind::boundary_mismatch: return "boundary mismatch";
    case ErrorKind::not_round: return "not round";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::not_rewritable: return "not rewritable (certificate invalid)";
    case ErrorKind::wrong_dimension: return "wrong dimension";
    case ErrorKind::precondition: return "precondition violation";
    case ErrorKind::no_least_element: return "no least element";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::budget_exhausted: return "budget exhausted";
    case ErrorKind::io: return "I/O error";
  }
  return "error";
}

std::string to_string(ElementId id) { return std::to_string(id.grade) + "." + std::to_string(id.index); }

namespace {

void normalise(std::vector<std::uint32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

OgPoset::OgPoset(std::vector<Grade> grades) : grades_(std::move(grades)) {
  while (!grades_.empty() && grades_.back().empty()) grades_.pop_back();

  offsets_.resize(grades_.size() + 1, 0);
  for (std::size_t n = 0; n < grades_.size(); ++n) offsets_[n + 1] = offsets_[n] + grades_[n].size();
  const std::size_t total = offsets_.back();

  dims_.resize(total);
  faces_.resize(total);
  cofaces_.resize(total);
  for (std::size_t n = 0; n < grades_.size(); ++n) {
    for (std::size_t i = 0; i < grades_[n].size(); ++i) {
      auto& e = grades_[n][i];
      normalise(e.input);
      normalise(e.output);
      const std::size_t x = offsets_[n] + i;
      dims_[x] = static_cast<int>(n);
      for (int s = 0; s < 2; ++s) {
        const auto& src = s == 0 ? e.input : e.output;
        for (auto j : src) {
          if (n == 0 || j >= grades_[n - 1].size()) {
            well_formed_ = false;
            continue;
          }
          const auto y = static_cast<std::uint32_t>(offsets_[n - 1] + j);
          faces_[x][s].push_back(y);
          cofaces_[y][s].push_back(static_cast<std::uint32_t>(x));
        }
      }
    }
  }
  if (!well_formed_) return;

  lower_.assign(total, ElementSet(total));
  for (std::size_t x = 0; x < total; ++x) {
    lower_[x].set(x);
    for (int s = 0; s < 2; ++s)
      for (auto y : faces_[x][s]) lower_[x] |= lower_[y];
  }
  upper_.assign(total, ElementSet(total));
  for (std::size_t x = total; x-- > 0;) {
    upper_[x].set(x);
    for (int s = 0; s < 2; ++s)
      for (auto y : cofaces_[x][s]) upper_[x] |= upper_[y];
  }
}

std::vector<std::size_t> OgPoset::grade_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& g : grades_) out.push_back(g.size());
  return out;
}

ElementId OgPoset::id(std::size_t flat) const {
  const auto grade = static_cast<std::size_t>(dims_[flat]);
  return {grade, flat - offsets_[grade]};
}

ElementSet OgPoset::all() const {
  ElementSet s(size());
  for (std::size_t i = 0; i < size(); ++i) s.set(i);
  return s;
}

std::size_t OgPosetBuilder::add(std::size_t grade, std::vector<std::uint32_t> input,
                                std::vector<std::uint32_t> output) {
  if (grades_.size() <= grade) grades_.resize(grade + 1);
  grades_[grade].push_back(ElementFaces{std::move(input), std::move(output)});
  return grades_[grade].size() - 1;
}

OgPoset OgPosetBuilder::build() && { return OgPoset(std::move(grades_)); }

}  // namespace odot
