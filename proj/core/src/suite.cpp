#include "odot/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "odot/error.hpp"
#include "odot/horns.hpp"
#include "odot/io.hpp"
#include "odot/nerve.hpp"
#include "odot/tensor.hpp"

namespace odot {

namespace {

constexpr std::size_t kStandardLimit = 64;

struct AssignmentHash {
  std::size_t operator()(const std::vector<std::uint32_t>& a) const {
    std::size_t h = a.size();
    for (auto x : a) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

using AssignmentSet = std::unordered_set<std::vector<std::uint32_t>, AssignmentHash>;

std::string describe(const std::vector<std::uint32_t>& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? " " : "") + std::to_string(a[i]);
  return out + "]";
}

}  // namespace

void SuiteConfig::validate() const {
  if (element_budget == 0 || pair_budget == 0 || horn_budget == 0 || search_budget == 0 || dimension_budget <= 0)
    throw Error(ErrorKind::precondition, "suite budgets must be positive");
  if (threads == 0) throw Error(ErrorKind::precondition, "suite needs at least one thread");
  if (!corrupt.empty()) {
    const auto names = fixture_names();
    if (std::find(names.begin(), names.end(), corrupt) == names.end())
      throw Error(ErrorKind::precondition, "unknown fixture '" + corrupt + "'");
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::skip: return "SKIP";
  }
  return "?";
}

bool SuiteReport::ok() const { return count(Verdict::fail) == 0; }

std::size_t SuiteReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [v](const CheckResult& r) { return r.verdict == v; }));
}

std::string SuiteReport::to_string() const {
  std::string out;
  for (const auto& r : results) out += "check " + r.id + " " + r.instance + " " + odot::to_string(r.verdict) + "\n";
  return out;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out{"coconnection", "intro"};
  for (const auto& s : standard_shapes(kStandardLimit)) out.push_back(s.name);
  return out;
}

std::string instance_label(const std::string& name) {
  std::string out;
  for (char c : name)
    if (c != ' ') out += c;
  return out;
}

// ---------------------------------------------------------------------------
// Pasting boundaries

std::string check_pasting_boundaries(const Molecule& u, const Molecule& v, int k) {
  PasteResult r;
  try {
    r = paste_with_embeddings(u, v, k);
  } catch (const Error& e) {
    return std::string("pasting failed: ") + e.what();
  }
  const auto& w = r.molecule.poset;
  auto push = [&](const ElementSet& s, const std::vector<std::uint32_t>& emb) {
    ElementSet out = w.none();
    s.for_each([&](std::size_t x) { out.set(emb[x]); });
    return out;
  };
  const int top = std::max(u.dim(), v.dim());
  for (int n = 0; n < top; ++n) {
    for (auto side : {Side::minus, Side::plus}) {
      const std::string where = " (n=" + std::to_string(n) + (side == Side::minus ? ", -)" : ", +)");
      const auto bw = boundary(w, w.all(), side, n);
      const auto su = boundary(u.poset, u.poset.all(), side, n);
      const auto sv = boundary(v.poset, v.poset.all(), side, n);
      const auto bu = push(su, r.left_embedding);
      const auto bv = push(sv, r.right_embedding);
      const auto restricted = restrict_to(w, bw).poset;
      if (count_isomorphisms(restricted, restricted, 2) != 1) return "boundary is not rigid" + where;
      if (n < k) {
        if (bw != bu || bw != bv) return "low boundary differs from a factor's" + where;
      } else if (n == k) {
        if (bw != (side == Side::minus ? bu : bv)) return "boundary at the pasting dimension is wrong" + where;
      } else {
        if (bw != (bu | bv)) return "high boundary is not the union of the factors' boundaries" + where;
        const auto mu = as_molecule(restrict_to(u.poset, su).poset);
        const auto mv = as_molecule(restrict_to(v.poset, sv).poset);
        if (!mu || !mv) return "boundary of a factor is not a molecule" + where;
        const auto pasted = paste(*mu, *mv, k);
        if (count_isomorphisms(restricted, pasted.poset, 2) != 1)
          return "high boundary is not uniquely isomorphic to the pasting of boundaries" + where;
      }
    }
  }
  return {};
}

std::vector<PastingSample> random_pastings(const std::vector<GalleryEntry>& gallery, std::size_t count,
                                           std::uint64_t seed, std::size_t element_budget) {
  std::vector<PastingSample> out;
  // (k, grade sizes of the input k-boundary) -> molecules
  std::map<std::pair<int, std::vector<std::size_t>>, std::vector<std::size_t>> by_input;
  std::vector<std::vector<std::vector<std::size_t>>> output_sizes(gallery.size());
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < gallery.size(); ++i) {
    const auto& p = gallery[i].molecule.poset;
    for (int k = 0; k < p.dim(); ++k) {
      by_input[{k, restrict_to(p, boundary(p, p.all(), Side::minus, k)).poset.grade_sizes()}].push_back(i);
      output_sizes[i].push_back(restrict_to(p, boundary(p, p.all(), Side::plus, k)).poset.grade_sizes());
    }
    if (p.dim() > 0) candidates.push_back(i);
  }
  if (candidates.empty()) return out;

  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::size_t attempts = 200 * count + 1000;
  for (std::size_t a = 0; a < attempts && out.size() < count; ++a) {
    const auto i = candidates[pick(candidates.size())];
    const int k = static_cast<int>(pick(output_sizes[i].size()));
    const auto it = by_input.find({k, output_sizes[i][static_cast<std::size_t>(k)]});
    if (it == by_input.end()) continue;
    const auto j = it->second[pick(it->second.size())];
    try {
      const auto w = paste(gallery[i].molecule, gallery[j].molecule, k);
      if (w.size() <= element_budget) out.push_back({i, j, k});
    } catch (const Error&) {
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Eilenberg-Zilber

std::string check_ez_map(const RdcMap& f) {
  const auto& p = *f.source;
  const auto& q = *f.target;
  const auto top = greatest_element(p, p.all());
  if (!top) return "source is not an atom";
  Factorization fac;
  try {
    fac = factorize(f);
  } catch (const Error& e) {
    return e.what();
  }
  if (compose(fac.inclusion, fac.collapse).assignment != f.assignment) return "factors do not recompose to the map";
  if (image(f) != q.lower_set(f[*top])) return "image is not the closure of the image of the top element";
  const auto& mid = *fac.collapse.target;
  if (!greatest_element(mid, mid.all())) return "middle object is not an atom";
  if (!is_surjective(fac.collapse)) return "collapse factor is not surjective";
  if (!is_injective(fac.inclusion)) return "inclusion factor is not injective";
  if (!is_surjective(fac.inclusion) && mid.dim() >= q.dim()) return "non-identity inclusion does not raise dimension";
  if (p.dim() == mid.dim() && !is_injective(fac.collapse)) return "same-dimension collapse is not an isomorphism";
  if (!is_injective(fac.collapse) && p.dim() <= mid.dim()) return "non-identity collapse does not lower dimension";
  return {};
}

namespace {

/// Locates closures of single elements among a list of pairwise
/// non-isomorphic atoms.
class AtomIndex {
public:
  explicit AtomIndex(const std::vector<PosetRef>& atoms) : atoms_(atoms) {
    for (std::size_t i = 0; i < atoms.size(); ++i) buckets_[atoms[i]->grade_sizes()].push_back(i);
  }

  struct Hit {
    std::size_t atom = 0;
    std::vector<std::uint32_t> iso;  // flat index in the restriction -> flat index in the atom
  };

  /// Class of cl{y} in `atoms[owner]`.
  const std::optional<Hit>& closure_class(std::size_t owner, std::size_t y) {
    const auto key = std::make_pair(owner, y);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const auto r = restrict_to(*atoms_[owner], atoms_[owner]->lower_set(y)).poset;
    std::optional<Hit> hit;
    if (auto b = buckets_.find(r.grade_sizes()); b != buckets_.end())
      for (auto c : b->second)
        if (auto iso = find_isomorphism(r, *atoms_[c])) {
          hit = Hit{c, iso->flat(r, *atoms_[c])};
          break;
        }
    return cache_.emplace(key, std::move(hit)).first->second;
  }

private:
  const std::vector<PosetRef>& atoms_;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets_;
  std::map<std::pair<std::size_t, std::size_t>, std::optional<Hit>> cache_;
};

}  // namespace

EzReport verify_ez(const std::vector<PosetRef>& atoms, std::size_t map_budget) {
  EzReport report;
  AtomIndex index(atoms);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<std::uint32_t>>> inclusion_cache;
  auto inclusions = [&](std::size_t from, std::size_t to) -> const std::vector<std::vector<std::uint32_t>>& {
    const auto key = std::make_pair(from, to);
    if (auto it = inclusion_cache.find(key); it != inclusion_cache.end()) return it->second;
    std::vector<std::vector<std::uint32_t>> out;
    auto e = enumerate_maps(atoms[from], atoms[to], true, map_budget);
    if (!e.complete) report.complete = false;
    for (auto& m : e.maps)
      if (is_injective(m)) out.push_back(std::move(m.assignment));
    return inclusion_cache.emplace(key, std::move(out)).first->second;
  };

  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& u = *atoms[i];
    const auto top = *greatest_element(u, u.all());
    auto fail = [&](std::string detail) { report.failures.push_back({i, std::move(detail)}); };
    std::map<std::size_t, AssignmentSet> collapses;  // target atom -> surjections
    std::set<std::pair<std::size_t, std::vector<std::uint32_t>>> needed;

    for (std::size_t j = 0; j < atoms.size(); ++j) {
      auto e = enumerate_maps(atoms[i], atoms[j], true, map_budget);
      if (!e.complete) report.complete = false;
      for (const auto& f : e.maps) {
        ++report.maps;
        if (auto why = check_ez_map(f); !why.empty()) {
          fail(why + " for " + describe(f.assignment) + " into atom " + std::to_string(j));
          continue;
        }
        if (is_surjective(f)) collapses[j].insert(f.assignment);
        if (is_injective(f)) ++report.inclusions;
        // The collapse factor, transported to the representative atom.
        const auto& hit = index.closure_class(j, f[top]);
        if (!hit) {
          fail("closure of an image element is not in the atom list");
          continue;
        }
        const auto emb = restrict_to(*atoms[j], atoms[j]->lower_set(f[top])).embedding;
        std::vector<std::uint32_t> local(atoms[j]->size(), 0);
        for (std::uint32_t k = 0; k < emb.size(); ++k) local[emb[k]] = k;
        std::vector<std::uint32_t> a(u.size());
        for (std::size_t x = 0; x < u.size(); ++x) a[x] = hit->iso[local[f[x]]];
        needed.emplace(hit->atom, std::move(a));
      }
    }
    for (const auto& [c, a] : needed)
      if (!collapses[c].count(a)) fail("collapse factor " + describe(a) + " onto atom " + std::to_string(c) +
                                       " is not an enumerated collapse");

    for (const auto& [j, set] : collapses) {
      report.collapses += set.size();
      std::vector<std::vector<std::uint32_t>> ordered(set.begin(), set.end());
      std::sort(ordered.begin(), ordered.end());
      std::set<std::vector<std::vector<std::uint32_t>>> section_sets;
      for (const auto& a : ordered) {
        const auto p = make_map(atoms[i], atoms[j], a);
        // Sections found independently: inclusions s with p . s = id.
        std::vector<std::vector<std::uint32_t>> oracle;
        for (const auto& s : inclusions(j, i)) {
          bool split = true;
          for (std::size_t y = 0; y < s.size() && split; ++y) split = a[s[y]] == y;
          if (split) oracle.push_back(s);
        }
        std::sort(oracle.begin(), oracle.end());
        const auto jtop = *greatest_element(*atoms[j], atoms[j]->all());
        const auto minimal = minimal_in(u, fibre(p, jtop)).count();
        if (oracle.size() != minimal)
          fail("collapse " + describe(a) + " has " + std::to_string(oracle.size()) + " sections but " +
               std::to_string(minimal) + " minimal elements in its top fibre");
        std::vector<std::vector<std::uint32_t>> library;
        try {
          for (const auto& s : sections(p)) library.push_back(s.assignment);
        } catch (const Error& e) {
          fail(std::string("sections: ") + e.what());
        }
        std::sort(library.begin(), library.end());
        if (library != oracle) fail("library sections of " + describe(a) + " differ from the splitting inclusions");
        if (!section_sets.insert(oracle).second)
          fail("two collapses onto atom " + std::to_string(j) + " share their sections");
      }
    }
  }
  return report;
}

CollapseTable collapse_table(std::vector<PosetRef> atoms, std::size_t map_budget) {
  CollapseTable t;
  t.by_source.resize(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (atoms[j]->size() >= atoms[i]->size()) continue;
      auto e = enumerate_maps(atoms[i], atoms[j], true, map_budget);
      if (!e.complete) t.complete = false;
      for (auto& m : e.maps)
        if (is_surjective(m)) t.by_source[i].emplace_back(j, std::move(m.assignment));
    }
  t.atoms = std::move(atoms);
  return t;
}

std::vector<std::string> verify_regular_cells(const CollapseTable& table, const PosetRef& p, std::size_t map_budget) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < table.atoms.size(); ++i) {
    auto e = enumerate_maps(table.atoms[i], p, true, map_budget);
    if (!e.complete) out.push_back("map enumeration from atom " + std::to_string(i) + " is incomplete");
    for (const auto& f : e.maps) {
      bool degenerate = false;
      for (const auto& [j, c] : table.by_source[i]) {
        std::vector<std::uint32_t> g(table.atoms[j]->size(), ~std::uint32_t{0});
        bool factors = true;
        for (std::size_t x = 0; x < c.size() && factors; ++x) {
          if (g[c[x]] == ~std::uint32_t{0}) g[c[x]] = f[x];
          factors = g[c[x]] == f[x];
        }
        if (!factors) continue;
        const auto gm = make_map(table.atoms[j], p, std::move(g));
        if (check_map(gm).ok() && check_cartesian(gm).cartesian) {
          degenerate = true;
          break;
        }
      }
      if (degenerate == is_injective(f))
        out.push_back("cell " + describe(f.assignment) + " from atom " + std::to_string(i) +
                      (degenerate ? " is degenerate but injective" : " is non-degenerate but not injective"));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite runner

namespace {

/// Explicit map check: a bijection on elements preserving signed faces.
bool is_isomorphism(const OgPoset& p, const OgPoset& q, const std::vector<std::uint32_t>& m) {
  if (p.size() != q.size() || m.size() != p.size()) return false;
  std::vector<char> hit(q.size(), 0);
  for (auto t : m) {
    if (t >= q.size() || hit[t]) return false;
    hit[t] = 1;
  }
  for (std::size_t x = 0; x < p.size(); ++x)
    for (auto sign : {Sign::minus, Sign::plus}) {
      std::vector<std::uint32_t> image;
      for (auto y : p.faces(x, sign)) image.push_back(m[y]);
      std::sort(image.begin(), image.end());
      const auto f = q.faces(m[x], sign);
      if (!std::equal(image.begin(), image.end(), f.begin(), f.end())) return false;
    }
  return true;
}

OgPoset damaged(const OgPoset& p) {
  auto grades = p.grades();
  auto& top = grades.back().back();
  if (!top.input.empty())
    top.input.erase(top.input.begin());
  else
    grades.push_back({ElementFaces{}});
  return OgPoset(std::move(grades));
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Strict chains of length k+1 of nonempty subsets of an m-element set.
std::vector<std::size_t> subset_chain_counts(std::size_t m) {
  const std::size_t full = (std::size_t{1} << m) - 1;
  // ways[s][len]: chains ending at subset s with len elements
  std::vector<std::vector<std::size_t>> ways(full + 1, std::vector<std::size_t>(m + 1, 0));
  std::vector<std::size_t> totals(m, 0);
  for (std::size_t s = 1; s <= full; ++s) {
    ways[s][1] = 1;
    for (std::size_t t = (s - 1) & s; t > 0; t = (t - 1) & s)
      for (std::size_t len = 1; len < m; ++len) ways[s][len + 1] += ways[t][len];
    for (std::size_t len = 1; len <= m; ++len) totals[len - 1] += ways[s][len];
  }
  return totals;
}

std::string expect_labels(const OgPoset& p, const ElementSet& s, const std::vector<std::string>& want) {
  std::vector<std::string> got;
  s.for_each([&](std::size_t x) { got.push_back(to_string(p.id(x))); });
  if (got == want) return {};
  std::string g;
  for (const auto& x : got) g += " " + x;
  return "got {" + g + " }";
}

class Runner {
public:
  explicit Runner(const SuiteConfig& config) : config_(config) {}

  SuiteReport run() {
    build_inputs();
    register_fixtures();
    register_molecules();
    register_pastings();
    register_maps();
    register_tensor();
    register_horns();
    register_nerve();
    execute();
    SuiteReport report;
    report.results = std::move(results_);
    std::sort(report.results.begin(), report.results.end(), [](const CheckResult& a, const CheckResult& b) {
      return std::tie(a.id, a.instance) < std::tie(b.id, b.instance);
    });
    report.exhausted = exhausted_;
    return report;
  }

private:
  using Body = std::function<std::string()>;

  void add(std::string id, std::string instance, Body body) {
    tasks_.push_back([this, id = std::move(id), instance = std::move(instance), body = std::move(body)] {
      CheckResult r{id, instance, Verdict::pass, {}};
      try {
        r.detail = body();
        if (!r.detail.empty()) r.verdict = Verdict::fail;
      } catch (const BudgetExceeded& e) {
        exhausted_ = true;
        r.verdict = Verdict::fail;
        r.detail = std::string("budget exhausted: ") + e.what();
      } catch (const std::exception& e) {
        r.verdict = Verdict::fail;
        r.detail = e.what();
      }
      std::lock_guard lock(mutex_);
      results_.push_back(std::move(r));
    });
  }

  void skip(std::string id, std::string instance, std::string why) {
    results_.push_back({std::move(id), std::move(instance), Verdict::skip, std::move(why)});
  }

  bool fits(std::size_t size) const { return size <= config_.element_budget; }

  void build_inputs() {
    gallery_ = molecule_gallery({config_.element_budget, config_.dimension_budget});
    for (const auto& e : gallery_) {
      const auto label = instance_label(e.name);
      if (!e.atom) continue;
      auto ref = share(e.molecule.poset);
      atoms_.push_back({label, ref});
      if (e.molecule.size() <= config_.pair_budget) small_atoms_.push_back({label, ref});
      if (e.molecule.size() <= config_.horn_budget) horn_atoms_.push_back({label, ref});
    }
  }

  void register_fixtures() {
    {
      auto m = intro_example();
      if (config_.corrupt == "intro") {
        auto grades = m.poset.grades();
        std::swap(grades[2][0].input, grades[2][0].output);
        m.poset = OgPoset(std::move(grades));
      }
      if (!fits(m.size())) {
        skip("fixture.intro", "intro", "larger than the element budget");
      } else {
        add("fixture.intro", "intro", [p = m.poset]() -> std::string {
          if (auto e = expect_labels(p, boundary(p, p.all(), Side::minus, 1), {"0.0", "0.1", "0.2", "1.0", "1.2"});
              !e.empty())
            return "input 1-boundary: " + e;
          if (auto e = expect_labels(p, boundary(p, p.all(), Side::plus, 1), {"0.0", "0.1", "0.2", "1.1", "1.2"});
              !e.empty())
            return "output 1-boundary: " + e;
          return {};
        });
      }
    }
    {
      auto f = coconnection();
      if (config_.corrupt == "coconnection") f.assignment.back() = 0;
      if (!fits(f.source->size())) {
        skip("fixture.coconnection", "coconnection", "larger than the element budget");
      } else {
        add("fixture.coconnection", "coconnection", [f]() -> std::string {
          if (auto r = check_map(f); !r.ok()) return "not a map: " + r.problems.front();
          if (check_cartesian(f).cartesian) return "unexpectedly cartesian";
          return {};
        });
      }
    }
    for (auto& s : standard_shapes(kStandardLimit)) {
      if (!fits(s.poset.size())) {
        skip("fixture.standard", s.name, "larger than the element budget");
        continue;
      }
      auto p = config_.corrupt == s.name ? damaged(s.poset) : s.poset;
      add("fixture.standard", s.name, [p = std::move(p), budget = config_.search_budget]() -> std::string {
        if (!validate(p).ok()) return "not an oriented graded poset";
        const auto r = recognize_molecule(p, budget);
        if (r.status == Recognition::unknown) throw BudgetExceeded("recognition");
        if (r.status != Recognition::molecule) return "not a molecule";
        const auto reg = check_regular(p, budget);
        if (reg.exhausted) throw BudgetExceeded("regularity");
        if (!reg.regular) return "not regular";
        if (!check_oriented_thinness(p).ok()) return "not oriented thin";
        return {};
      });
    }
  }

  void register_molecules() {
    for (const auto& e : gallery_) {
      const auto label = instance_label(e.name);
      const auto* m = &e.molecule;
      const bool atom = e.atom;
      const auto budget = config_.search_budget;
      add("shape.globular", label, [m] { return is_globular(m->poset) ? "" : std::string("not globular"); });
      add("shape.rigid", label, [m] {
        return count_isomorphisms(m->poset, m->poset, 2) == 1 ? "" : std::string("has a non-trivial automorphism");
      });
      add("shape.regular", label, [m, budget]() -> std::string {
        const auto reg = check_regular(m->poset, budget);
        if (reg.exhausted) throw BudgetExceeded("regularity");
        return reg.regular ? "" : "lower set of " + to_string(reg.failures.front()) + " is not an atom";
      });
      add("shape.thin", label, [m]() -> std::string {
        const auto r = check_oriented_thinness(m->poset);
        return r.ok() ? "" : r.violations.front().detail;
      });
      add("shape.witness", label, [m] {
        return replay(m->witness) == m->poset ? "" : std::string("witness does not rebuild the shape");
      });
      if (atom) add("shape.round", label, [m] { return is_round(m->poset) ? "" : std::string("atom is not round"); });
      add("io.ogp", label, [m]() -> std::string {
        const auto text = to_ogp(m->poset);
        const auto back = parse_ogp(text);
        if (!(back == m->poset) || to_ogp(back) != text) return "OGP round trip changed the shape";
        return {};
      });
    }
  }

  void register_pastings() {
    const auto samples = random_pastings(gallery_, config_.pastings, config_.seed, config_.element_budget);
    if (samples.empty()) {
      skip("paste.boundaries", "none", "no pasting fits the element budget");
      return;
    }
    for (std::size_t s = 0; s < samples.size(); ++s) {
      char label[32];
      std::snprintf(label, sizeof label, "pasting-%03zu", s);
      const auto sample = samples[s];
      add("paste.boundaries", label, [this, sample] {
        return check_pasting_boundaries(gallery_[sample.left].molecule, gallery_[sample.right].molecule, sample.k);
      });
    }
  }

  void register_maps() {
    if (small_atoms_.empty()) return;
    std::vector<PosetRef> atoms;
    for (const auto& [label, ref] : small_atoms_) atoms.push_back(ref);
    tasks_.push_back([this, atoms] {
      const auto report = verify_ez(atoms);
      std::lock_guard lock(mutex_);
      if (!report.complete) exhausted_ = true;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        CheckResult r{"maps.ez", small_atoms_[i].first, Verdict::pass, {}};
        for (const auto& f : report.failures)
          if (f.source == i) {
            r.verdict = Verdict::fail;
            r.detail = f.detail;
            break;
          }
        if (!report.complete && r.verdict == Verdict::pass) {
          r.verdict = Verdict::fail;
          r.detail = "map enumeration incomplete";
        }
        results_.push_back(std::move(r));
      }
    });

    auto table = std::make_shared<CollapseTable>();
    auto table_once = std::make_shared<std::once_flag>();
    auto get_table = [table, table_once, atoms] {
      std::call_once(*table_once, [&] { *table = collapse_table(atoms); });
      return table;
    };
    std::vector<std::pair<std::string, PosetRef>> targets;
    for (const auto& e : gallery_)
      if (e.molecule.size() <= config_.pair_budget) targets.push_back({instance_label(e.name), share(e.molecule.poset)});
    for (const auto& s : standard_shapes(config_.element_budget)) targets.push_back({s.name, share(s.poset)});
    for (const auto& [label, p] : targets)
      add("maps.regular-cells", label, [get_table, p]() -> std::string {
        const auto t = get_table();
        if (!t->complete) throw BudgetExceeded("collapse enumeration");
        const auto v = verify_regular_cells(*t, p);
        return v.empty() ? "" : v.front();
      });
  }

  void register_tensor() {
    for (const auto& [label, u] : small_atoms_) {
      add("tensor.monoidal", label, [this, u]() -> std::string {
        const auto pt = point().poset;
        if (!find_isomorphism(gray(pt, *u).result, *u) || !find_isomorphism(gray(*u, pt).result, *u))
          return "point is not a unit for the Gray product";
        const OgPoset empty;
        if (!find_isomorphism(join(empty, *u), *u) || !find_isomorphism(join(*u, empty), *u))
          return "empty poset is not a unit for the join";
        for (const auto& [lv, v] : small_atoms_) {
          const auto uv = gray(*u, *v);
          for (const auto& [lw, w] : small_atoms_) {
            const auto left = gray(uv.result, *w);
            const auto vw = gray(*v, *w);
            const auto right = gray(*u, vw.result);
            std::vector<std::uint32_t> assoc(left.result.size());
            for (std::size_t z = 0; z < assoc.size(); ++z) {
              const auto [xy, c] = left.pair_index[z];
              const auto [a, b] = uv.pair_index[xy];
              assoc[z] = right.at(a, vw.at(b, c));
            }
            if (!is_isomorphism(left.result, right.result, assoc))
              return "Gray associator fails with " + lv + " and " + lw;
            if (!find_isomorphism(join(join(*u, *v), *w), join(*u, join(*v, *w))))
              return "join is not associative with " + lv + " and " + lw;
          }
        }
        return {};
      });
    }
    for (int n = 0; n <= 5; ++n) {
      const auto label = "simplex" + std::to_string(n);
      if (!fits((std::size_t{1} << (n + 1)) - 1)) {
        skip("tensor.join-simplex", label, "larger than the element budget");
        continue;
      }
      add("tensor.join-simplex", label, [n]() -> std::string {
        OgPoset j;
        for (int i = 0; i <= n; ++i) j = join(j, point().poset);
        const auto sizes = j.grade_sizes();
        for (int k = 0; k <= n; ++k)
          if (sizes.size() <= static_cast<std::size_t>(k) ||
              sizes[static_cast<std::size_t>(k)] != binomial(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(k + 1)))
            return "grade " + std::to_string(k) + " has the wrong size";
        if (!find_isomorphism(j, simplex(n))) return "join of points is not the simplex";
        return {};
      });
    }
    std::size_t pow3 = 1;
    for (int n = 0; n <= 6; ++n, pow3 *= 3) {
      const auto label = "cube" + std::to_string(n);
      if (!fits(pow3)) {
        skip("tensor.cube", label, "larger than the element budget");
        continue;
      }
      add("tensor.cube", label, [n, pow3]() -> std::string {
        return cube(n).size() == pow3 ? "" : "cube has " + std::to_string(cube(n).size()) + " elements";
      });
    }
  }

  void register_horns() {
    const auto budget = config_.search_budget;
    for (const auto& [label, u] : horn_atoms_) {
      add("horns.enumerate", label, [u, budget]() -> std::string {
        const auto e = enumerate_horns(u, budget);
        if (!e.complete) throw BudgetExceeded("horn enumeration");
        if (u->dim() > 0) {
          const bool minus = std::any_of(e.horns.begin(), e.horns.end(), [](const Horn& h) { return h.sign == Sign::minus; });
          const bool plus = std::any_of(e.horns.begin(), e.horns.end(), [](const Horn& h) { return h.sign == Sign::plus; });
          if (!minus || !plus) return "a boundary side has no horn";
        }
        for (const auto& h : e.horns) {
          if (!check_certificate(*u, h.sign, h.sub, h.certificate, budget).valid) return "invalid certificate";
          const auto lambda = restrict_to(*u, h.complex).poset;
          const auto reg = check_regular(lambda, budget);
          if (reg.exhausted) throw BudgetExceeded("regularity");
          if (!reg.regular) return "horn is not a regular directed complex";
          if (!check_map(h.inclusion).ok() || !is_injective(h.inclusion) || !check_cartesian(h.inclusion).cartesian)
            return "horn inclusion is not a cartesian inclusion";
          const auto s = subdivide(*u, h.complex);
          if (!homology(s, s.dim()).is_trivial()) return "horn has non-trivial reduced homology";
        }
        return {};
      });
    }
    for (int n = 1; n <= 4; ++n) {
      const auto label = "simplex" + std::to_string(n);
      if (!fits((std::size_t{1} << (n + 1)) - 1)) {
        skip("horns.simplex", label, "larger than the element budget");
        continue;
      }
      add("horns.simplex", label, [n, budget]() -> std::string {
        const auto u = share(simplex(n));
        const auto e = enumerate_horns(u, budget);
        if (!e.complete) throw BudgetExceeded("horn enumeration");
        std::vector<int> hits(static_cast<std::size_t>(n + 1), 0);
        const auto faces = u->grade_size(static_cast<std::size_t>(n - 1));
        for (const auto& h : e.horns) {
          if (maximal_elements(*u, h.sub).count() != 1) continue;
          const auto top = maximal_elements(*u, h.sub).to_vector().front();
          ++hits[u->id(top).index];
        }
        if (faces != static_cast<std::size_t>(n + 1)) return "simplex has the wrong number of facets";
        for (auto c : hits)
          if (c != 1) return "single-face horns do not biject with the facets";
        return {};
      });
    }
    for (const auto& [label, u] : small_atoms_) {
      add("horns.gray-identity", label, [this, u, budget]() -> std::string {
        const auto e = enumerate_horns(u, budget);
        if (!e.complete) throw BudgetExceeded("horn enumeration");
        for (const auto& h : e.horns)
          for (const auto& [lw, w] : small_atoms_)
            for (bool dual : {false, true}) {
              const auto r = check_horn_gray_identity(h, w, dual, budget);
              if (!r.holds) return (dual ? "dual identity with " : "identity with ") + lw + ": " + r.detail;
            }
        return {};
      });
    }
  }

  void register_nerve() {
    for (const auto& [label, u] : atoms_) {
      add("nerve.atom", label, [u]() -> std::string {
        const auto s = subdivide(*u);
        if (!is_face_closed(s)) return "subdivision is not closed under faces";
        if (!boundary_squares_zero(chain_complex(s))) return "boundary does not square to zero";
        if (!homology(s, s.dim()).is_trivial()) return "atom has non-trivial reduced homology";
        const auto b = subdivide(*u, boundary(*u, u->all(), Side::both));
        if (!homology(b, std::max(b.dim(), u->dim() - 1)).is_sphere(u->dim() - 1))
          return "boundary does not have the homology of a sphere";
        if (!(parse_smp(to_smp(s)) == s)) return "SMP round trip changed the subdivision";
        return {};
      });
    }
    for (const auto& [label, u] : small_atoms_) {
      add("nerve.product", label, [this, u]() -> std::string {
        for (const auto& [lv, v] : small_atoms_) {
          const auto c = compare_product(*u, *v);
          if (!c.isomorphic) return "with " + lv + ": " + c.detail;
        }
        return {};
      });
    }
    for (int n = 0; n <= 4; ++n) {
      const auto label = "simplex" + std::to_string(n);
      if (!fits((std::size_t{1} << (n + 1)) - 1)) {
        skip("nerve.simplex", label, "larger than the element budget");
        continue;
      }
      add("nerve.simplex", label, [n]() -> std::string {
        const auto s = subdivide(simplex(n));
        const auto want = subset_chain_counts(static_cast<std::size_t>(n + 1));
        for (std::size_t k = 0; k < want.size(); ++k)
          if (s.count(k) != want[k]) return "dimension " + std::to_string(k) + " has the wrong simplex count";
        if (s.count(want.size()) != 0) return "subdivision is too large";
        return {};
      });
    }
  }

  void execute() {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < tasks_.size(); i = next++) tasks_[i]();
    };
    const unsigned n = std::max(1U, config_.threads);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }

  const SuiteConfig& config_;
  std::vector<GalleryEntry> gallery_;
  std::vector<std::pair<std::string, PosetRef>> atoms_, small_atoms_, horn_atoms_;
  std::vector<std::function<void()>> tasks_;
  std::vector<CheckResult> results_;
  std::mutex mutex_;
  std::atomic<bool> exhausted_{false};
};

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  return Runner(config).run();
}

}  // namespace odot
