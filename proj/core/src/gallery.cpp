#include "odot/gallery.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "odot/error.hpp"
#include "odot/tensor.hpp"

namespace odot {

Molecule intro_example() {
  OgPosetBuilder b;
  for (int i = 0; i < 3; ++i) b.add(0, {}, {});
  b.add(1, {0}, {1});  // f
  b.add(1, {0}, {1});  // g
  b.add(1, {1}, {2});  // h
  b.add(2, {0}, {1});  // γ
  const auto arrow_w = cell_witness(point_witness(), point_witness());
  return {std::move(b).build(), paste_witness(0, cell_witness(arrow_w, arrow_w), arrow_w)};
}

namespace {

struct Info {
  std::vector<std::vector<std::size_t>> minus_sizes;  // per k
  std::vector<std::vector<std::size_t>> plus_sizes;
  std::size_t boundary_size = 0;
  bool round = false;
};

Info describe(const Molecule& m) {
  Info info;
  const auto& p = m.poset;
  for (int k = 0; k < m.dim(); ++k) {
    info.minus_sizes.push_back(restrict_to(p, boundary(p, p.all(), Side::minus, k)).poset.grade_sizes());
    info.plus_sizes.push_back(restrict_to(p, boundary(p, p.all(), Side::plus, k)).poset.grade_sizes());
  }
  info.boundary_size = boundary(p, p.all(), Side::both).count();
  info.round = is_round(p);
  return info;
}

std::size_t total(const std::vector<std::size_t>& v) {
  std::size_t n = 0;
  for (auto x : v) n += x;
  return n;
}

}  // namespace

std::vector<GalleryEntry> molecule_gallery(const GalleryConfig& config) {
  std::deque<GalleryEntry> entries;  // stable references while growing
  std::deque<Info> infos;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;

  auto add = [&](Molecule m) {
    if (m.size() > config.element_budget || m.dim() > config.dimension_budget) return;
    auto& bucket = buckets[m.poset.grade_sizes()];
    for (auto idx : bucket)
      if (find_isomorphism(entries[idx].molecule.poset, m.poset)) return;
    bucket.push_back(entries.size());
    const bool atom = is_atom(m);
    auto name = to_string(m.witness);
    infos.push_back(describe(m));
    entries.push_back({std::move(name), std::move(m), atom});
  };

  add(point());
  std::size_t done = 0;
  for (;;) {
    const std::size_t n = entries.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i < done && j < done) continue;
        const auto& u = entries[i].molecule;
        const auto& v = entries[j].molecule;
        const int lo = std::min(u.dim(), v.dim());
        for (int k = 0; k < lo; ++k) {
          const auto& shared = infos[i].plus_sizes[static_cast<std::size_t>(k)];
          if (shared != infos[j].minus_sizes[static_cast<std::size_t>(k)]) continue;
          if (u.size() + v.size() - total(shared) > config.element_budget) continue;
          try {
            add(paste(u, v, k));
          } catch (const Error&) {
          }
        }
        if (u.dim() == v.dim() && u.dim() + 1 <= config.dimension_budget && infos[i].round && infos[j].round &&
            u.size() + v.size() - infos[i].boundary_size + 1 <= config.element_budget &&
            infos[i].boundary_size == infos[j].boundary_size) {
          try {
            add(cell(u, v));
          } catch (const Error&) {
          }
        }
      }
    }
    done = n;
    if (entries.size() == n) break;
  }
  std::vector<GalleryEntry> out(std::make_move_iterator(entries.begin()), std::make_move_iterator(entries.end()));
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.molecule.size() < b.molecule.size(); });
  return out;
}

std::vector<GalleryEntry> atom_gallery(const GalleryConfig& config) {
  auto all = molecule_gallery(config);
  std::vector<GalleryEntry> out;
  for (auto& e : all)
    if (e.atom) out.push_back(std::move(e));
  return out;
}

std::vector<NamedShape> standard_shapes(std::size_t element_budget) {
  std::vector<NamedShape> out;
  for (int n = 0; static_cast<std::size_t>(2 * n + 1) <= element_budget && n <= 6; ++n)
    out.push_back({"globe" + std::to_string(n), globe(n).poset});
  for (int n = 0; (std::size_t{1} << (n + 1)) - 1 <= element_budget && n <= 6; ++n)
    out.push_back({"simplex" + std::to_string(n), simplex(n)});
  std::size_t pow3 = 1;
  for (int n = 0; pow3 <= element_budget && n <= 6; ++n, pow3 *= 3)
    out.push_back({"cube" + std::to_string(n), cube(n)});
  const std::vector<NamedShape> factors{
      {"arrow", arrow().poset}, {"globe2", globe(2).poset}, {"simplex2", simplex(2)}};
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = 0; j < factors.size(); ++j) {
      if (i == 0 && j == 0) continue;  // cube2
      if (factors[i].poset.size() * factors[j].poset.size() > element_budget) continue;
      out.push_back({factors[i].name + "*" + factors[j].name, gray(factors[i].poset, factors[j].poset).result});
    }
  if (3 * 3 + 3 + 3 <= element_budget) out.push_back({"arrow^arrow", join(arrow().poset, arrow().poset)});
  return out;
}

}  // namespace odot
