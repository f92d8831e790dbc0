#include "odot/core.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "odot/error.hpp"

namespace odot {

ValidationReport validate(const OgPoset& p) {
  ValidationReport report;
  const auto& grades = p.grades();
  for (std::size_t n = 0; n < grades.size(); ++n) {
    for (std::size_t i = 0; i < grades[n].size(); ++i) {
      const ElementId id{n, i};
      const auto& e = grades[n][i];
      if (n == 0) {
        if (!e.input.empty() || !e.output.empty())
          report.violations.push_back({"dangling face", id, "grade-0 element with faces"});
        continue;
      }
      const auto below = grades[n - 1].size();
      for (const auto* side : {&e.input, &e.output})
        for (auto j : *side)
          if (j >= below)
            report.violations.push_back({"dangling face", id, "face index " + std::to_string(j) + " out of range"});
      std::vector<std::uint32_t> common;
      std::set_intersection(e.input.begin(), e.input.end(), e.output.begin(), e.output.end(),
                            std::back_inserter(common));
      for (auto j : common)
        report.violations.push_back(
            {"overlapping signs", id, "face " + to_string(ElementId{n - 1, j}) + " is both input and output"});
      if (e.input.empty() && e.output.empty())
        report.violations.push_back({"ungraded", id, "element of positive grade without faces"});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

ClosedSubset::ClosedSubset(const OgPoset& owner, ElementSet mask) : owner_(&owner), mask_(std::move(mask)) {
  if (mask_.universe() != owner.size()) throw Error(ErrorKind::precondition, "subset universe does not match owner");
  if (!is_closed(owner, mask_)) throw Error(ErrorKind::precondition, "subset is not closed");
}

int ClosedSubset::dim() const { return dim_of(*owner_, mask_); }

std::vector<ElementId> ClosedSubset::ids() const {
  std::vector<ElementId> out;
  mask_.for_each([&](std::size_t x) { out.push_back(owner_->id(x)); });
  return out;
}

ElementSet closure_of(const OgPoset& p, ElementSet seed) {
  for (std::size_t x = p.size(); x-- > 0;) {
    if (!seed.test(x)) continue;
    for (auto s : {Sign::minus, Sign::plus})
      for (auto y : p.faces(x, s)) seed.set(y);
  }
  return seed;
}

ClosedSubset closure(const OgPoset& p, std::span<const ElementId> seed) {
  ElementSet s = p.none();
  for (const auto& id : seed) {
    if (!p.contains(id)) throw Error(ErrorKind::invalid_element, to_string(id));
    s.set(p.flat(id));
  }
  return ClosedSubset(p, closure_of(p, std::move(s)));
}

bool is_closed(const OgPoset& p, const ElementSet& u) {
  bool closed = true;
  u.for_each([&](std::size_t x) {
    for (auto s : {Sign::minus, Sign::plus})
      for (auto y : p.faces(x, s))
        if (!u.test(y)) closed = false;
  });
  return closed;
}

int dim_of(const OgPoset& p, const ElementSet& u) {
  int d = -1;
  u.for_each([&](std::size_t x) { d = std::max(d, p.dim_of(x)); });
  return d;
}

namespace {

bool is_maximal_in(const OgPoset& p, const ElementSet& u, std::size_t x) {
  for (auto s : {Sign::minus, Sign::plus})
    for (auto y : p.cofaces(x, s))
      if (u.test(y)) return false;
  return true;
}

}  // namespace

ElementSet maximal_elements(const OgPoset& p, const ElementSet& u) {
  ElementSet out = p.none();
  u.for_each([&](std::size_t x) {
    if (is_maximal_in(p, u, x)) out.set(x);
  });
  return out;
}

ElementSet boundary(const OgPoset& p, const ElementSet& u, Side side, int n) {
  if (side == Side::both) return boundary(p, u, Side::minus, n) | boundary(p, u, Side::plus, n);
  if (n < 0) return p.none();
  // x is in the alpha-boundary seed when no (n+1)-element of u has x as a (-alpha)-face.
  const Sign opposite = side == Side::minus ? Sign::plus : Sign::minus;
  ElementSet seed = p.none();
  u.for_each([&](std::size_t x) {
    const int d = p.dim_of(x);
    if (d == n) {
      bool free = true;
      for (auto y : p.cofaces(x, opposite))
        if (u.test(y)) free = false;
      if (free) seed.set(x);
    } else if (d < n && is_maximal_in(p, u, x)) {
      seed.set(x);
    }
  });
  return closure_of(p, std::move(seed));
}

ElementSet boundary(const OgPoset& p, const ElementSet& u, Side side) {
  return boundary(p, u, side, dim_of(p, u) - 1);
}

ClosedSubset boundary(const ClosedSubset& u, Side side, int n) {
  return ClosedSubset(u.owner(), boundary(u.owner(), u.elements(), side, n));
}

ClosedSubset boundary(const ClosedSubset& u, Side side) {
  return ClosedSubset(u.owner(), boundary(u.owner(), u.elements(), side));
}

// ---------------------------------------------------------------------------

bool leq(const OgPoset& p, ElementId a, ElementId b) {
  if (!p.contains(a)) throw Error(ErrorKind::invalid_element, to_string(a));
  if (!p.contains(b)) throw Error(ErrorKind::invalid_element, to_string(b));
  return p.leq(p.flat(a), p.flat(b));
}

std::vector<ElementId> interval(const OgPoset& p, ElementId a, ElementId b) {
  if (!p.contains(a)) throw Error(ErrorKind::invalid_element, to_string(a));
  if (!p.contains(b)) throw Error(ErrorKind::invalid_element, to_string(b));
  std::vector<ElementId> out;
  (p.upper_set(p.flat(a)) & p.lower_set(p.flat(b))).for_each([&](std::size_t x) { out.push_back(p.id(x)); });
  return out;
}

// ---------------------------------------------------------------------------

Restriction restrict_to(const OgPoset& p, const ElementSet& u) {
  std::vector<std::uint32_t> local(p.size(), 0);
  std::vector<std::uint32_t> counter(p.num_grades(), 0);
  Restriction r;
  u.for_each([&](std::size_t x) {
    local[x] = counter[static_cast<std::size_t>(p.dim_of(x))]++;
    r.embedding.push_back(static_cast<std::uint32_t>(x));
  });
  std::vector<OgPoset::Grade> grades(p.num_grades());
  u.for_each([&](std::size_t x) {
    ElementFaces e;
    for (auto s : {Sign::minus, Sign::plus}) {
      auto& dst = s == Sign::minus ? e.input : e.output;
      for (auto y : p.faces(x, s)) {
        if (!u.test(y)) throw Error(ErrorKind::precondition, "restriction to a subset that is not closed");
        dst.push_back(local[y]);
      }
    }
    grades[static_cast<std::size_t>(p.dim_of(x))].push_back(std::move(e));
  });
  r.poset = OgPoset(std::move(grades));
  return r;
}

// ---------------------------------------------------------------------------
// Isomorphism search: orientation-constrained backtracking. Source elements
// are visited in breadth-first order over the covering diagram so that every
// element after the first of its component is anchored to an already mapped
// neighbour, which restricts its candidates to a face or coface list.

namespace {

using Signature = std::tuple<int, std::size_t, std::size_t, std::size_t, std::size_t>;

Signature signature(const OgPoset& p, std::size_t x) {
  return {p.dim_of(x), p.faces(x, Sign::minus).size(), p.faces(x, Sign::plus).size(),
          p.cofaces(x, Sign::minus).size(), p.cofaces(x, Sign::plus).size()};
}

bool contains_sorted(std::span<const std::uint32_t> v, std::uint32_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

class IsoSearch {
public:
  IsoSearch(const OgPoset& p, const OgPoset& q, std::size_t limit) : p_(p), q_(q), limit_(limit) {}

  void run() {
    if (p_.grade_sizes() != q_.grade_sizes()) return;
    const std::size_t n = p_.size();
    p_sig_.resize(n);
    q_sig_.resize(n);
    std::map<Signature, std::size_t> count_p, count_q;
    for (std::size_t x = 0; x < n; ++x) {
      p_sig_[x] = signature(p_, x);
      q_sig_[x] = signature(q_, x);
      ++count_p[p_sig_[x]];
      ++count_q[q_sig_[x]];
    }
    if (count_p != count_q) return;
    build_order(count_p);
    forward_.assign(n, kUnset);
    used_.assign(n, false);
    search(0);
  }

  std::size_t found() const { return found_; }
  const std::optional<std::vector<std::uint32_t>>& first() const { return first_; }

private:
  static constexpr std::uint32_t kUnset = ~std::uint32_t{0};

  struct Step {
    std::uint32_t element;
    std::uint32_t anchor;  // kUnset for component roots
    bool anchor_is_coface; // element is a face of anchor
    Sign sign;
  };

  void build_order(const std::map<Signature, std::size_t>& counts) {
    const std::size_t n = p_.size();
    std::vector<bool> seen(n, false);
    std::size_t visited = 0;
    while (visited < n) {
      std::size_t root = n;
      for (std::size_t x = 0; x < n; ++x) {
        if (seen[x]) continue;
        if (root == n || counts.at(p_sig_[x]) < counts.at(p_sig_[root])) root = x;
      }
      seen[root] = true;
      ++visited;
      const std::size_t start = order_.size();
      order_.push_back({static_cast<std::uint32_t>(root), kUnset, false, Sign::minus});
      for (std::size_t head = start; head < order_.size(); ++head) {
        const auto w = order_[head].element;
        for (auto s : {Sign::minus, Sign::plus}) {
          for (auto y : p_.faces(w, s)) {
            if (seen[y]) continue;
            seen[y] = true;
            ++visited;
            order_.push_back({y, w, true, s});
          }
          for (auto y : p_.cofaces(w, s)) {
            if (seen[y]) continue;
            seen[y] = true;
            ++visited;
            order_.push_back({y, w, false, s});
          }
        }
      }
    }
  }

  bool consistent(std::uint32_t x, std::uint32_t t) const {
    if (used_[t] || p_sig_[x] != q_sig_[t]) return false;
    for (auto s : {Sign::minus, Sign::plus}) {
      for (auto y : p_.faces(x, s))
        if (forward_[y] != kUnset && !contains_sorted(q_.faces(t, s), forward_[y])) return false;
      for (auto y : p_.cofaces(x, s))
        if (forward_[y] != kUnset && !contains_sorted(q_.cofaces(t, s), forward_[y])) return false;
    }
    return true;
  }

  bool search(std::size_t pos) {
    if (pos == order_.size()) {
      if (found_++ == 0) first_ = forward_;
      return found_ >= limit_;
    }
    const Step& step = order_[pos];
    auto try_candidate = [&](std::uint32_t t) {
      if (!consistent(step.element, t)) return false;
      forward_[step.element] = t;
      used_[t] = true;
      const bool stop = search(pos + 1);
      forward_[step.element] = kUnset;
      used_[t] = false;
      return stop;
    };
    if (step.anchor == kUnset) {
      for (std::uint32_t t = 0; t < q_.size(); ++t)
        if (try_candidate(t)) return true;
      return false;
    }
    const auto image = forward_[step.anchor];
    const auto candidates = step.anchor_is_coface ? q_.faces(image, step.sign) : q_.cofaces(image, step.sign);
    for (auto t : candidates)
      if (try_candidate(t)) return true;
    return false;
  }

  const OgPoset& p_;
  const OgPoset& q_;
  std::size_t limit_;
  std::vector<Signature> p_sig_, q_sig_;
  std::vector<Step> order_;
  std::vector<std::uint32_t> forward_;
  std::vector<bool> used_;
  std::size_t found_ = 0;
  std::optional<std::vector<std::uint32_t>> first_;
};

}  // namespace

std::vector<std::uint32_t> OgIso::flat(const OgPoset& source, const OgPoset& target) const {
  std::vector<std::uint32_t> out(source.size());
  for (std::size_t n = 0; n < forward.size(); ++n)
    for (std::size_t i = 0; i < forward[n].size(); ++i)
      out[source.flat({n, i})] = static_cast<std::uint32_t>(target.flat({n, forward[n][i]}));
  return out;
}

bool OgIso::is_identity() const {
  for (const auto& g : forward)
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] != i) return false;
  return true;
}

std::optional<OgIso> find_isomorphism(const OgPoset& p, const OgPoset& q) {
  if (!p.well_formed() || !q.well_formed()) return std::nullopt;
  IsoSearch search(p, q, 1);
  search.run();
  if (!search.first()) {
    if (p.empty() && q.empty()) return OgIso{};
    return std::nullopt;
  }
  OgIso iso;
  iso.forward.resize(p.num_grades());
  const auto& flat = *search.first();
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto id = p.id(x);
    iso.forward[id.grade].push_back(static_cast<std::uint32_t>(q.id(flat[x]).index));
  }
  return iso;
}

std::size_t count_isomorphisms(const OgPoset& p, const OgPoset& q, std::size_t limit) {
  if (!p.well_formed() || !q.well_formed()) return 0;
  if (p.empty() && q.empty()) return 1;
  IsoSearch search(p, q, limit);
  search.run();
  return search.found();
}

std::optional<std::vector<std::uint32_t>> find_subset_isomorphism(const OgPoset& p, const ElementSet& u,
                                                                  const OgPoset& q, const ElementSet& v) {
  const auto ru = restrict_to(p, u);
  const auto rv = restrict_to(q, v);
  const auto iso = find_isomorphism(ru.poset, rv.poset);
  if (!iso) return std::nullopt;
  const auto local = iso->flat(ru.poset, rv.poset);
  std::vector<std::uint32_t> out(p.size(), ~std::uint32_t{0});
  for (std::size_t k = 0; k < local.size(); ++k) out[ru.embedding[k]] = rv.embedding[local[k]];
  return out;
}

// ---------------------------------------------------------------------------

bool is_globular(const OgPoset& p, const ElementSet& u) {
  const int d = dim_of(p, u);
  for (int n = 1; n < d; ++n) {
    for (auto beta : {Side::minus, Side::plus}) {
      const auto outer = boundary(p, u, beta, n);
      for (int k = 0; k < n; ++k)
        for (auto alpha : {Side::minus, Side::plus})
          if (boundary(p, outer, alpha, k) != boundary(p, u, alpha, k)) return false;
    }
  }
  return true;
}

bool is_round(const OgPoset& p, const ElementSet& u) {
  if (!is_globular(p, u)) return false;
  const int d = dim_of(p, u);
  for (int k = 0; k < d; ++k) {
    const auto meet = boundary(p, u, Side::minus, k) & boundary(p, u, Side::plus, k);
    if (meet != boundary(p, u, Side::both, k - 1)) return false;
  }
  return true;
}

bool is_globular(const OgPoset& p) { return is_globular(p, p.all()); }
bool is_round(const OgPoset& p) { return is_round(p, p.all()); }

std::optional<std::size_t> greatest_element(const OgPoset& p, const ElementSet& u) {
  const auto maxima = maximal_elements(p, u);
  if (maxima.count() != 1) return std::nullopt;
  return maxima.to_vector().front();
}

ThinnessReport check_oriented_thinness(const OgPoset& p) {
  ThinnessReport report;
  for (std::size_t y = 0; y < p.size(); ++y) {
    const int d = p.dim_of(y);
    if (d < 2) continue;
    p.lower_set(y).for_each([&](std::size_t x) {
      if (p.dim_of(x) != d - 2) return;
      // (sign of t in y, sign of x in t) for each intermediate t
      std::vector<std::pair<Sign, Sign>> paths;
      for (auto a : {Sign::minus, Sign::plus})
        for (auto t : p.faces(y, a))
          for (auto b : {Sign::minus, Sign::plus})
            if (contains_sorted(p.faces(t, b), static_cast<std::uint32_t>(x))) paths.emplace_back(a, b);
      if (paths.size() != 2) {
        report.violations.push_back(
            {p.id(x), p.id(y), "interval has " + std::to_string(paths.size()) + " intermediate elements"});
        return;
      }
      const int lhs = to_int(paths[0].first) * to_int(paths[0].second);
      const int rhs = to_int(paths[1].first) * to_int(paths[1].second);
      if (lhs != -rhs) report.violations.push_back({p.id(x), p.id(y), "orientation signs do not alternate"});
    });
  }
  return report;
}

}  // namespace odot
