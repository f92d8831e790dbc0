#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "odot/core.hpp"
#include "odot/gallery.hpp"
#include "oracle.hpp"

namespace testing {

struct Cell {
  std::size_t grade;
  std::vector<std::uint32_t> input;
  std::vector<std::uint32_t> output;
};

/// Poset from (grade, inputs, outputs) rows; no validation.
inline odot::OgPoset build(const std::vector<Cell>& cells) {
  odot::OgPosetBuilder b;
  for (const auto& c : cells) b.add(c.grade, c.input, c.output);
  return std::move(b).build();
}

/// Elements by label, e.g. {"0.0", "1.2"}.
inline odot::ElementSet set_of(const odot::OgPoset& p, const std::vector<std::string>& labels) {
  odot::ElementSet s = p.none();
  for (const auto& l : labels) {
    const auto dot = l.find('.');
    s.set(p.flat({std::stoul(l.substr(0, dot)), std::stoul(l.substr(dot + 1))}));
  }
  return s;
}

inline std::vector<std::string> labels_of(const odot::OgPoset& p, const odot::ElementSet& s) {
  std::vector<std::string> out;
  s.for_each([&](std::size_t x) { out.push_back(odot::to_string(p.id(x))); });
  return out;
}

inline oracle::Mask to_mask(const odot::ElementSet& s) {
  oracle::Mask m(s.universe(), 0);
  s.for_each([&](std::size_t x) { m[x] = 1; });
  return m;
}

inline odot::ElementSet from_mask(const oracle::Mask& m) {
  odot::ElementSet s(m.size());
  for (std::size_t x = 0; x < m.size(); ++x)
    if (m[x]) s.set(x);
  return s;
}

/// All closed subsets of a small poset, by brute force over all subsets.
inline std::vector<odot::ElementSet> closed_subsets(const odot::OgPoset& p) {
  std::vector<odot::ElementSet> out;
  const std::size_t n = p.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    odot::ElementSet s = p.none();
    for (std::size_t x = 0; x < n; ++x)
      if ((bits >> x) & 1U) s.set(x);
    bool closed = true;
    s.for_each([&](std::size_t x) {
      if (!p.lower_set(x).is_subset_of(s)) closed = false;
    });
    if (closed) out.push_back(s);
  }
  return out;
}

/// Gallery shared across tests, built once per budget.
inline const std::vector<odot::GalleryEntry>& gallery(std::size_t budget) {
  static std::vector<std::vector<odot::GalleryEntry>> cache(32);
  auto& g = cache.at(budget);
  if (g.empty()) g = odot::molecule_gallery({budget, 4});
  return g;
}

inline std::vector<odot::GalleryEntry> atoms(std::size_t budget) {
  std::vector<odot::GalleryEntry> out;
  for (const auto& e : gallery(budget))
    if (e.atom) out.push_back(e);
  return out;
}

/// Seeded random relabelling within each grade.
inline odot::OgPoset shuffled(const odot::OgPoset& p, std::mt19937_64& rng) {
  std::vector<std::vector<std::uint32_t>> perm;
  for (const auto& g : p.grades()) {
    std::vector<std::uint32_t> q(g.size());
    for (std::uint32_t i = 0; i < q.size(); ++i) q[i] = i;
    std::shuffle(q.begin(), q.end(), rng);
    perm.push_back(q);
  }
  std::vector<odot::OgPoset::Grade> grades(p.grades().size());
  for (std::size_t k = 0; k < grades.size(); ++k) {
    grades[k].resize(p.grades()[k].size());
    for (std::size_t i = 0; i < grades[k].size(); ++i) {
      auto e = p.grades()[k][i];
      for (auto* list : {&e.input, &e.output})
        for (auto& f : *list) f = perm[k - 1][f];
      grades[k][perm[k][i]] = e;
    }
  }
  return odot::OgPoset(std::move(grades));
}

}  // namespace testing
