// Runs the acceptance criteria and prints one `criterion N PASS|FAIL` line
// each. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "odot/core.hpp"
#include "odot/error.hpp"
#include "odot/gallery.hpp"
#include "odot/horns.hpp"
#include "odot/maps.hpp"
#include "odot/nerve.hpp"
#include "odot/shapes.hpp"
#include "odot/suite.hpp"
#include "odot/tensor.hpp"

using namespace odot;

namespace {

// Pinned budgets.
constexpr std::size_t kGalleryElements = 15;  // every atom and molecule up to this size
constexpr int kGalleryDimension = 7;          // the largest dimension reachable in 15 elements
constexpr std::size_t kPastings = 200;
constexpr std::uint64_t kPastingSeed = 1;
constexpr std::size_t kPastingElements = 24;
constexpr std::size_t kTripleAtoms = 7;
constexpr std::size_t kHornAtoms = 10;
constexpr std::size_t kHornPartners = 7;
constexpr std::size_t kHomologyAtoms = 20;
constexpr std::size_t kProductAtoms = 10;
constexpr std::size_t kCellShapes = 11;
constexpr std::size_t kStandardShapes = 64;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string what) {
    pass = false;
    if (failures.size() < 10) failures.push_back(std::move(what));
  }
};

const std::vector<GalleryEntry>& gallery() {
  static const auto g = molecule_gallery({kGalleryElements, kGalleryDimension});
  return g;
}

std::vector<PosetRef> atoms_up_to(std::size_t n) {
  std::vector<PosetRef> out;
  for (const auto& e : gallery())
    if (e.atom && e.molecule.size() <= n) out.push_back(share(e.molecule.poset));
  return out;
}

std::vector<std::pair<std::string, PosetRef>> named_atoms_up_to(std::size_t n) {
  std::vector<std::pair<std::string, PosetRef>> out;
  for (const auto& e : gallery())
    if (e.atom && e.molecule.size() <= n) out.emplace_back(e.name, share(e.molecule.poset));
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Bijective and preserves signed faces.
bool preserves_faces(const OgPoset& p, const OgPoset& q, const std::vector<std::uint32_t>& m) {
  if (p.size() != q.size() || m.size() != p.size()) return false;
  std::vector<char> hit(q.size(), 0);
  for (auto y : m) {
    if (y >= q.size() || hit[y]) return false;
    hit[y] = 1;
  }
  for (std::size_t x = 0; x < p.size(); ++x)
    for (auto s : {Sign::minus, Sign::plus}) {
      std::set<std::uint32_t> image;
      for (auto a : p.faces(x, s)) image.insert(m[a]);
      const auto f = q.faces(m[x], s);
      if (image != std::set<std::uint32_t>(f.begin(), f.end())) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

Outcome intro_fidelity() {
  Outcome o;
  const auto m = intro_example();
  const auto& p = m.poset;
  const std::map<std::string, ElementId> name{{"x", {0, 0}}, {"y", {0, 1}}, {"z", {0, 2}},
                                              {"f", {1, 0}}, {"g", {1, 1}}, {"h", {1, 2}}};
  auto set_of = [&](std::initializer_list<const char*> names) {
    ElementSet s = p.none();
    for (const auto* n : names) s.set(p.flat(name.at(n)));
    return s;
  };
  if (boundary(p, p.all(), Side::minus, 1) != set_of({"x", "y", "z", "f", "h"})) o.fail("input 1-boundary");
  if (boundary(p, p.all(), Side::plus, 1) != set_of({"x", "y", "z", "g", "h"})) o.fail("output 1-boundary");
  o.detail = "whisker diagram with " + std::to_string(p.size()) + " elements";
  return o;
}

Outcome pasting_calculus() {
  Outcome o;
  const auto& g = gallery();
  const auto samples = random_pastings(g, kPastings, kPastingSeed, kPastingElements);
  if (samples.size() < kPastings) o.fail("only " + std::to_string(samples.size()) + " pastings generated");
  std::set<int> ks;
  for (const auto& s : samples) {
    ks.insert(s.k);
    const auto err = check_pasting_boundaries(g[s.left].molecule, g[s.right].molecule, s.k);
    if (!err.empty()) o.fail(g[s.left].name + " #" + std::to_string(s.k) + " " + g[s.right].name + ": " + err);
  }
  o.detail = std::to_string(samples.size()) + " pastings, seed " + std::to_string(kPastingSeed) + ", " +
             std::to_string(ks.size()) + " distinct k";
  return o;
}

Outcome molecule_sanity() {
  Outcome o;
  std::size_t molecules = 0, atoms = 0;
  for (const auto& e : gallery()) {
    const auto& p = e.molecule.poset;
    ++molecules;
    if (!is_globular(p)) o.fail(e.name + " is not globular");
    if (count_isomorphisms(p, p, 2) != 1) o.fail(e.name + " has a non-trivial automorphism");
    const auto r = check_regular(p);
    if (!r.regular) o.fail(e.name + (r.exhausted ? " regularity undecided" : " is not regular"));
    if (!check_oriented_thinness(p).ok()) o.fail(e.name + " is not oriented thin");
    if (e.atom) {
      ++atoms;
      if (!is_round(p)) o.fail(e.name + " is an atom that is not round");
    }
  }
  const auto standard = standard_shapes(kStandardShapes);
  for (const auto& s : standard) {
    if (!check_oriented_thinness(s.poset).ok()) o.fail(s.name + " is not oriented thin");
    if (!check_regular(s.poset).regular) o.fail(s.name + " is not regular");
  }
  o.detail = std::to_string(molecules) + " molecules, " + std::to_string(atoms) + " atoms, " +
             std::to_string(standard.size()) + " standard shapes";
  return o;
}

Outcome ez_axioms() {
  Outcome o;
  const auto atoms = atoms_up_to(kGalleryElements);
  const auto r = verify_ez(atoms);
  if (!r.complete) o.fail("enumeration hit its budget");
  for (const auto& f : r.failures) o.fail("atom " + std::to_string(f.source) + ": " + f.detail);
  o.detail = std::to_string(r.maps) + " cartesian maps between " + std::to_string(atoms.size()) + " atoms, " +
             std::to_string(r.collapses) + " collapses, " + std::to_string(r.inclusions) + " inclusions";
  return o;
}

Outcome coconnection_counterexample() {
  Outcome o;
  auto f = coconnection();
  const auto m = validate_map(f);
  if (!m.ok()) o.fail("not a map: " + m.problems.front());
  const auto c = is_cartesian(f);
  if (c.cartesian) o.fail("unexpectedly cartesian");
  if (!c.counterexample) {
    o.fail("no counterexample pair");
  } else {
    const auto [x, y] = *c.counterexample;
    if (!leq(*f.target, y, f(x))) o.fail("counterexample is not below the image");
    o.detail = "no cartesian lift of " + to_string(y) + " under " + to_string(x);
  }
  return o;
}

Outcome monoidal_structure() {
  Outcome o;
  const auto atoms = named_atoms_up_to(kTripleAtoms);
  const auto pt = point().poset;
  const OgPoset empty;
  std::size_t triples = 0;
  for (const auto& [lu, u] : atoms) {
    if (!find_isomorphism(gray(pt, *u).result, *u) || !find_isomorphism(gray(*u, pt).result, *u))
      o.fail("Gray unit fails for " + lu);
    if (!find_isomorphism(join(empty, *u), *u) || !find_isomorphism(join(*u, empty), *u))
      o.fail("join unit fails for " + lu);
    for (const auto& [lv, v] : atoms) {
      const auto uv = gray(*u, *v);
      for (const auto& [lw, w] : atoms) {
        ++triples;
        const auto left = gray(uv.result, *w);
        const auto vw = gray(*v, *w);
        const auto right = gray(*u, vw.result);
        std::vector<std::uint32_t> assoc(left.result.size());
        for (std::size_t z = 0; z < assoc.size(); ++z) {
          const auto [xy, c] = left.pair_index[z];
          const auto [a, b] = uv.pair_index[xy];
          assoc[z] = right.at(a, vw.at(b, c));
        }
        if (!preserves_faces(left.result, right.result, assoc)) o.fail("Gray associator fails: " + lu + lv + lw);
        if (!find_isomorphism(join(join(*u, *v), *w), join(*u, join(*v, *w))))
          o.fail("join associator missing: " + lu + lv + lw);
      }
    }
  }
  OgPoset j;
  for (int n = 0; n <= 5; ++n) {
    j = join(j, pt);
    const auto sizes = j.grade_sizes();
    for (int k = 0; k <= n; ++k) {
      const auto want = binomial(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(k + 1));
      if (sizes.size() != static_cast<std::size_t>(n + 1) || sizes[static_cast<std::size_t>(k)] != want)
        o.fail("join of " + std::to_string(n + 1) + " points has the wrong grade " + std::to_string(k));
    }
    if (!find_isomorphism(j, simplex(n))) o.fail("join of points is not simplex(" + std::to_string(n) + ")");
  }
  std::size_t pow3 = 1;
  for (int n = 0; n <= 6; ++n, pow3 *= 3)
    if (cube(n).size() != pow3) o.fail("cube(" + std::to_string(n) + ") has the wrong size");
  o.detail = std::to_string(triples) + " triples of " + std::to_string(atoms.size()) + " atoms";
  return o;
}

Outcome horn_identities() {
  Outcome o;
  const auto horn_atoms = named_atoms_up_to(kHornAtoms);
  const auto partners = named_atoms_up_to(kHornPartners);
  std::size_t checks = 0, horns = 0;
  for (const auto& [lw, w] : horn_atoms) {
    const auto e = enumerate_horns(w);
    if (!e.complete) o.fail("horn enumeration of " + lw + " hit its budget");
    horns += e.horns.size();
    for (const auto& h : e.horns)
      for (const auto& [lu, u] : partners)
        for (bool dual : {false, true}) {
          ++checks;
          const auto r = check_horn_gray_identity(h, u, dual);
          if (!r.holds) o.fail(lw + " with " + lu + (dual ? " (dual): " : ": ") + r.detail);
        }
  }
  o.detail = std::to_string(horns) + " horns of " + std::to_string(horn_atoms.size()) + " atoms against " +
             std::to_string(partners.size()) + " atoms, " + std::to_string(checks) + " identities";
  return o;
}

Outcome simplicial_horns() {
  Outcome o;
  std::size_t total = 0;
  for (int n = 1; n <= 4; ++n) {
    const auto s = share(simplex(n));
    const auto& p = *s;
    const std::size_t top = p.size() - 1;
    auto vertices = [&](std::size_t y) {
      std::set<std::size_t> out;
      p.lower_set(y).for_each([&](std::size_t z) {
        if (p.dim_of(z) == 0) out.insert(z);
      });
      return out;
    };
    const auto e = enumerate_horns(s);
    if (!e.complete) o.fail("horn enumeration of simplex(" + std::to_string(n) + ") hit its budget");
    std::map<std::size_t, std::size_t> by_vertex;  // omitted vertex -> horns
    for (const auto& h : e.horns) {
      std::optional<std::size_t> face;
      for (auto a : {Sign::minus, Sign::plus})
        for (auto x : p.faces(top, a))
          if (h.sub == p.lower_set(x)) face = x;
      if (!face) continue;
      const auto vs = vertices(*face);
      std::size_t k = 0;
      while (vs.count(k)) ++k;
      ++by_vertex[k];
      // Classical horn: proper faces whose vertices together with k miss some vertex.
      ElementSet want = p.none();
      for (std::size_t y = 0; y < top; ++y) {
        auto v = vertices(y);
        v.insert(k);
        if (v.size() <= static_cast<std::size_t>(n)) want.set(y);
      }
      if (h.complex != want)
        o.fail("horn of simplex(" + std::to_string(n) + ") at " + std::to_string(k) + " is not the classical horn");
    }
    if (by_vertex.size() != static_cast<std::size_t>(n + 1))
      o.fail("simplex(" + std::to_string(n) + ") has " + std::to_string(by_vertex.size()) + " single-face horns");
    for (const auto& [k, c] : by_vertex)
      if (c != 1) o.fail("vertex " + std::to_string(k) + " of simplex(" + std::to_string(n) + ") has " +
                         std::to_string(c) + " horns");
    total += by_vertex.size();
  }
  o.detail = std::to_string(total) + " single-face horns for n = 1..4";
  return o;
}

/// Gallery atoms, cells of gallery molecules and standard atoms, up to
/// isomorphism, with at most `budget` elements.
std::vector<std::pair<std::string, PosetRef>> extended_atoms(std::size_t budget) {
  std::vector<std::pair<std::string, PosetRef>> out;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
  auto add = [&](std::string name, OgPoset p) {
    if (p.size() > budget || !greatest_element(p, p.all())) return;
    auto& b = buckets[p.grade_sizes()];
    for (auto i : b)
      if (find_isomorphism(p, *out[i].second)) return;
    b.push_back(out.size());
    out.emplace_back(std::move(name), share(std::move(p)));
  };
  for (const auto& e : gallery())
    if (e.atom) add(e.name, e.molecule.poset);

  // Round molecules grouped by dimension and the shape of both boundaries.
  using Key = std::tuple<int, std::vector<std::size_t>, std::vector<std::size_t>>;
  std::map<Key, std::vector<const GalleryEntry*>> round;
  for (const auto& e : gallery()) {
    const auto& p = e.molecule.poset;
    if (p.dim() < 1 || !is_round(p)) continue;
    const auto in = restrict_to(p, boundary(p, p.all(), Side::minus)).poset.grade_sizes();
    const auto out_sizes = restrict_to(p, boundary(p, p.all(), Side::plus)).poset.grade_sizes();
    round[{p.dim(), in, out_sizes}].push_back(&e);
  }
  for (const auto& [key, group] : round) {
    const auto shared = boundary(group.front()->molecule.poset, group.front()->molecule.poset.all(), Side::both).count();
    for (const auto* a : group)
      for (const auto* b : group) {
        if (a->molecule.size() + b->molecule.size() - shared + 1 > budget) continue;
        try {
          const auto c = cell(a->molecule, b->molecule);
          add("cell(" + a->name + ", " + b->name + ")", c.poset);
        } catch (const Error&) {
        }
      }
  }
  for (auto& s : standard_shapes(budget)) add(s.name, std::move(s.poset));
  return out;
}

Outcome homological_contractibility() {
  Outcome o;
  const auto atoms = extended_atoms(kHomologyAtoms);
  std::size_t largest = 0;
  for (const auto& [name, u] : atoms) {
    largest = std::max(largest, u->size());
    const int n = u->dim();
    if (!homology(subdivide(*u), n).is_trivial()) o.fail(name + ": Sd U is not acyclic");
    const auto b = boundary(*u, u->all(), Side::both);
    if (!homology(subdivide(*u, b), n).is_sphere(n - 1)) o.fail(name + ": Sd of the boundary is not a sphere");
  }
  std::size_t horns = 0;
  for (const auto& [name, u] : named_atoms_up_to(kHornAtoms)) {
    const auto e = enumerate_horns(u);
    if (!e.complete) o.fail("horn enumeration of " + name + " hit its budget");
    for (const auto& h : e.horns) {
      ++horns;
      if (!homology(subdivide(*u, h.complex), u->dim()).is_trivial()) o.fail(name + ": horn is not acyclic");
    }
  }
  o.detail = std::to_string(atoms.size()) + " atoms up to " + std::to_string(largest) + " elements, " +
             std::to_string(horns) + " horns";
  return o;
}

Outcome nerve_products() {
  Outcome o;
  const auto atoms = named_atoms_up_to(kProductAtoms);
  std::size_t pairs = 0;
  for (const auto& [lu, u] : atoms)
    for (const auto& [lv, v] : atoms) {
      ++pairs;
      const auto r = compare_product(*u, *v);
      if (!r.isomorphic || r.left_counts != r.right_counts) o.fail(lu + " x " + lv + ": " + r.detail);
    }
  o.detail = std::to_string(pairs) + " pairs of " + std::to_string(atoms.size()) + " atoms";
  return o;
}

Outcome regular_cells() {
  Outcome o;
  const auto table = collapse_table(atoms_up_to(kCellShapes));
  if (!table.complete) o.fail("collapse enumeration hit its budget");
  std::size_t shapes = 0;
  auto run = [&](const std::string& name, const OgPoset& p) {
    ++shapes;
    for (const auto& v : verify_regular_cells(table, share(p))) o.fail(name + ": " + v);
  };
  for (const auto& e : gallery())
    if (e.molecule.size() <= kCellShapes) run(e.name, e.molecule.poset);
  for (const auto& s : standard_shapes(kCellShapes)) run(s.name, s.poset);
  o.detail = std::to_string(shapes) + " shapes against " + std::to_string(table.atoms.size()) + " atoms";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, intro_fidelity},         {2, pasting_calculus},  {3, molecule_sanity},
      {4, ez_axioms},              {5, coconnection_counterexample},
      {6, monoidal_structure},     {7, horn_identities},   {8, simplicial_horns},
      {9, homological_contractibility}, {10, nerve_products}, {11, regular_cells},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    try {
      selected.insert(std::stoi(argv[i]));
    } catch (const std::exception&) {
      std::cerr << "usage: " << argv[0] << " [criterion ...]\n";
      return 2;
    }
  }

  bool all = true;
  for (const auto& [id, run] : criteria) {
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    char time[32];
    std::snprintf(time, sizeof time, "%.1f s", secs);
    std::cout << "criterion " << id << (o.pass ? " PASS " : " FAIL ") << o.detail << " (" << time << ")\n";
    for (const auto& f : o.failures) std::cout << "  " << f << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
