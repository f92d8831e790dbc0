#include "odot/maps.hpp"

#include <algorithm>
#include <functional>

#include "odot/error.hpp"
#include "odot/shapes.hpp"
#include "odot/tensor.hpp"

namespace odot {

RdcMap make_map(PosetRef source, PosetRef target, std::vector<std::uint32_t> assignment) {
  if (!source || !target) throw Error(ErrorKind::precondition, "map with a missing source or target");
  if (assignment.size() != source->size())
    throw Error(ErrorKind::invalid_element, "assignment has " + std::to_string(assignment.size()) +
                                                " entries for " + std::to_string(source->size()) + " elements");
  for (auto t : assignment)
    if (t >= target->size()) throw Error(ErrorKind::invalid_element, "assignment leaves the target");
  RdcMap f;
  f.source = std::move(source);
  f.target = std::move(target);
  f.assignment = std::move(assignment);
  return f;
}

RdcMap identity_map(PosetRef p) {
  std::vector<std::uint32_t> a(p->size());
  for (std::uint32_t i = 0; i < a.size(); ++i) a[i] = i;
  auto f = make_map(p, p, std::move(a));
  f.is_map = f.is_cartesian = f.is_inclusion = f.is_collapse = Tri::yes;
  return f;
}

RdcMap compose(const RdcMap& g, const RdcMap& f) {
  if (f.target != g.source && *f.target != *g.source)
    throw Error(ErrorKind::precondition, "composing maps whose target and source differ");
  std::vector<std::uint32_t> a(f.assignment.size());
  for (std::size_t x = 0; x < a.size(); ++x) a[x] = g[f[x]];
  return make_map(f.source, g.target, std::move(a));
}

RdcMap subset_inclusion(PosetRef owner, const ElementSet& u) {
  auto r = restrict_to(*owner, u);
  auto f = make_map(share(std::move(r.poset)), std::move(owner), std::move(r.embedding));
  f.is_inclusion = Tri::yes;
  return f;
}

RdcMap terminal_map(PosetRef p) {
  std::vector<std::uint32_t> a(p->size(), 0);
  return make_map(std::move(p), share(point().poset), std::move(a));
}

bool same_map(const RdcMap& f, const RdcMap& g) {
  return f.assignment == g.assignment && *f.source == *g.source && *f.target == *g.target;
}

ElementSet image(const RdcMap& f) {
  ElementSet s = f.target->none();
  for (auto t : f.assignment) s.set(t);
  return s;
}

bool is_injective(const RdcMap& f) { return image(f).count() == f.assignment.size(); }

bool is_surjective(const RdcMap& f) { return image(f).count() == f.target->size(); }

// ---------------------------------------------------------------------------
// Local conditions

namespace {

ElementSet image_of(const OgPoset& q, const std::vector<std::uint32_t>& a, const ElementSet& s) {
  ElementSet out = q.none();
  s.for_each([&](std::size_t x) { out.set(a[x]); });
  return out;
}

/// Zig-zag connectivity of each fibre of f restricted to `s`.
bool final_on(const OgPoset& p, const OgPoset& q, const std::vector<std::uint32_t>& a, const ElementSet& s,
              const ElementSet& t_set) {
  thread_local std::vector<std::size_t> queue;
  bool ok = true;
  t_set.for_each([&](std::size_t t) {
    if (!ok) return;
    ElementSet above = p.none();
    ElementSet fib = p.none();
    std::size_t members = 0, first = 0;
    s.for_each([&](std::size_t z) {
      if (q.leq(t, a[z])) above.set(z);
      if (a[z] == t) {
        if (members++ == 0) first = z;
        fib.set(z);
      }
    });
    if (members <= 1) return;
    ElementSet seen = p.none();
    std::size_t reached = 0;
    queue.assign(1, first);
    seen.set(first);
    while (!queue.empty()) {
      const auto z = queue.back();
      queue.pop_back();
      if (fib.test(z)) ++reached;
      for (auto sign : {Sign::minus, Sign::plus}) {
        for (auto w : p.faces(z, sign))
          if (above.test(w) && !seen.test(w)) {
            seen.set(w);
            queue.push_back(w);
          }
        for (auto w : p.cofaces(z, sign))
          if (above.test(w) && !seen.test(w)) {
            seen.set(w);
            queue.push_back(w);
          }
      }
    }
    if (reached != members) ok = false;
  });
  return ok;
}

/// ∂ᵅₙ cl{x} for every element x and n < dim x; larger n give cl{x}.
class BoundaryTable {
public:
  explicit BoundaryTable(const OgPoset& p) : p_(p), sets_(p.size()) {
    for (std::size_t x = 0; x < p.size(); ++x)
      for (int n = 0; n < p.dim_of(x); ++n)
        for (auto side : {Side::minus, Side::plus}) sets_[x].push_back(boundary(p, p.lower_set(x), side, n));
  }

  const ElementSet& get(std::size_t x, int n, Side side) const {
    if (n >= p_.dim_of(x)) return p_.lower_set(x);
    return sets_[x][static_cast<std::size_t>(2 * n + (side == Side::plus ? 1 : 0))];
  }

private:
  const OgPoset& p_;
  std::vector<std::vector<ElementSet>> sets_;
};

/// Map conditions at x, assuming the assignment is known on cl{x}.
bool map_condition_at(const OgPoset& p, const OgPoset& q, const BoundaryTable& bp, const BoundaryTable& bq,
                      const std::vector<std::uint32_t>& a, std::size_t x, std::string* why) {
  const auto t = a[x];
  if (q.dim_of(t) > p.dim_of(x)) {
    if (why) *why = "dimension increases at " + to_string(p.id(x));
    return false;
  }
  for (int n = p.dim_of(x); n >= 0; --n) {
    for (auto side : {Side::minus, Side::plus}) {
      if (n == p.dim_of(x) && side == Side::plus) continue;
      const auto& s = bp.get(x, n, side);
      const auto& bt = bq.get(t, n, side);
      if (image_of(q, a, s) != bt) {
        if (why)
          *why = "boundary preservation fails at " + to_string(p.id(x)) + " (n=" + std::to_string(n) + ", " +
                 (side == Side::minus ? "-" : "+") + ")";
        return false;
      }
      if (!final_on(p, q, a, s, bt)) {
        if (why)
          *why = "finality fails at " + to_string(p.id(x)) + " (n=" + std::to_string(n) + ", " +
                 (side == Side::minus ? "-" : "+") + ")";
        return false;
      }
    }
  }
  return true;
}

/// Cartesian lifts under x; returns the first y <= f(x) without one.
std::optional<std::size_t> cartesian_failure_at(const OgPoset& p, const OgPoset& q,
                                                 const std::vector<std::uint32_t>& a, std::size_t x) {
  const auto& cx = p.lower_set(x);
  std::optional<std::size_t> failure;
  q.lower_set(a[x]).for_each([&](std::size_t y) {
    if (failure) return;
    ElementSet l = p.none();
    cx.for_each([&](std::size_t z) {
      if (q.leq(a[z], y)) l.set(z);
    });
    const auto g = greatest_in(p, l);
    if (!g || a[*g] != y) failure = y;
  });
  return failure;
}

}  // namespace

MapReport check_map(const RdcMap& f) {
  MapReport r;
  const auto& p = *f.source;
  const auto& q = *f.target;
  if (!p.well_formed() || !q.well_formed()) {
    r.problems.push_back("ill-formed source or target");
    return r;
  }
  const BoundaryTable bp(p), bq(q);
  for (std::size_t x = 0; x < p.size(); ++x) {
    std::string why;
    if (!map_condition_at(p, q, bp, bq, f.assignment, x, &why)) r.problems.push_back(why);
  }
  return r;
}

MapReport validate_map(RdcMap& f) {
  auto r = check_map(f);
  f.is_map = r.ok() ? Tri::yes : Tri::no;
  if (r.ok()) {
    f.is_inclusion = is_injective(f) ? Tri::yes : Tri::no;
    if (f.is_cartesian != Tri::unchecked)
      f.is_collapse = f.is_cartesian == Tri::yes && is_surjective(f) ? Tri::yes : Tri::no;
  } else {
    f.is_inclusion = f.is_collapse = Tri::no;
  }
  return r;
}

CartesianReport check_cartesian(const RdcMap& f) {
  CartesianReport r;
  const auto& p = *f.source;
  const auto& q = *f.target;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (auto y = cartesian_failure_at(p, q, f.assignment, x)) {
      r.counterexample = std::make_pair(p.id(x), q.id(*y));
      return r;
    }
  }
  r.cartesian = true;
  return r;
}

CartesianReport is_cartesian(RdcMap& f) {
  auto r = check_cartesian(f);
  f.is_cartesian = r.cartesian ? Tri::yes : Tri::no;
  if (f.is_map == Tri::yes) f.is_collapse = r.cartesian && is_surjective(f) ? Tri::yes : Tri::no;
  return r;
}

// ---------------------------------------------------------------------------
// Factorization

Factorization factorize(const RdcMap& f) {
  if (f.is_map == Tri::no || (f.is_map == Tri::unchecked && !check_map(f).ok()))
    throw Error(ErrorKind::precondition, "factorize needs a map");
  if (f.is_cartesian == Tri::no || (f.is_cartesian == Tri::unchecked && !check_cartesian(f).cartesian))
    throw Error(ErrorKind::precondition, "factorize needs a cartesian map");
  auto inc = subset_inclusion(f.target, image(f));
  inc.is_map = inc.is_cartesian = Tri::yes;
  inc.is_collapse = is_surjective(inc) ? Tri::yes : Tri::no;

  std::vector<std::uint32_t> local(f.target->size(), 0);
  for (std::uint32_t i = 0; i < inc.assignment.size(); ++i) local[inc[i]] = i;
  std::vector<std::uint32_t> a(f.assignment.size());
  for (std::size_t x = 0; x < a.size(); ++x) a[x] = local[f[x]];
  auto col = make_map(f.source, inc.source, std::move(a));
  col.is_map = col.is_cartesian = col.is_collapse = Tri::yes;
  col.is_inclusion = is_injective(col) ? Tri::yes : Tri::no;
  return {std::move(col), std::move(inc)};
}

Factorization ez_decompose(const RdcMap& f) {
  if (!greatest_in(*f.source, f.source->all()))
    throw Error(ErrorKind::precondition, "EZ decomposition of a map whose source is not an atom");
  return factorize(f);
}

ElementSet fibre(const RdcMap& p, std::size_t y) {
  ElementSet s = p.source->none();
  for (std::size_t x = 0; x < p.assignment.size(); ++x)
    if (p[x] == y) s.set(x);
  return s;
}

std::optional<std::size_t> greatest_in(const OgPoset& p, const ElementSet& s) {
  std::optional<std::size_t> g;
  s.for_each([&](std::size_t x) {
    if (!g && s.is_subset_of(p.lower_set(x))) g = x;
  });
  return g;
}

ElementSet minimal_in(const OgPoset& p, const ElementSet& s) {
  ElementSet out = p.none();
  s.for_each([&](std::size_t x) {
    if ((p.lower_set(x) & s).count() == 1) out.set(x);
  });
  return out;
}

std::vector<RdcMap> sections(const RdcMap& p) {
  const auto top = greatest_in(*p.target, p.target->all());
  if (!top || !greatest_in(*p.source, p.source->all()))
    throw Error(ErrorKind::precondition, "sections of a map between non-atoms");
  if (!is_surjective(p)) throw Error(ErrorKind::precondition, "sections of a map that is not surjective");
  std::vector<RdcMap> out;
  minimal_in(*p.source, fibre(p, *top)).for_each([&](std::size_t z) {
    std::vector<std::uint32_t> s(p.target->size(), ~std::uint32_t{0});
    bool ok = true;
    p.source->lower_set(z).for_each([&](std::size_t w) {
      if (s[p[w]] != ~std::uint32_t{0}) ok = false;
      s[p[w]] = static_cast<std::uint32_t>(w);
    });
    if (!ok || std::count(s.begin(), s.end(), ~std::uint32_t{0}) != 0)
      throw Error(ErrorKind::precondition, "collapse is not bijective on the lower set of " +
                                               to_string(p.source->id(z)));
    auto m = make_map(p.target, p.source, std::move(s));
    m.is_map = m.is_cartesian = m.is_inclusion = Tri::yes;
    out.push_back(std::move(m));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

MapEnumeration enumerate_maps(PosetRef u, PosetRef p, bool cartesian_only, std::size_t budget) {
  MapEnumeration result;
  const auto& src = *u;
  const auto& tgt = *p;
  if (!src.well_formed() || !tgt.well_formed()) return result;
  const std::size_t n = src.size();
  std::vector<std::uint32_t> a(n, 0);
  std::size_t nodes = 0;
  const BoundaryTable bsrc(src), btgt(tgt);

  std::vector<std::uint32_t> vertices;
  for (std::uint32_t t = 0; t < tgt.grade_size(0); ++t) vertices.push_back(t);

  // Faces come right before the elements above them, so vertex choices are pruned early.
  std::vector<std::size_t> order;
  {
    std::vector<char> placed(n, 0);
    std::function<void(std::size_t)> place = [&](std::size_t x) {
      if (placed[x]) return;
      placed[x] = 1;
      for (auto sign : {Sign::minus, Sign::plus})
        for (auto y : src.faces(x, sign)) place(y);
      order.push_back(x);
    };
    for (std::size_t x = n; x-- > 0;) place(x);
  }

  std::function<bool(std::size_t)> descend = [&](std::size_t i) -> bool {
    if (i == n) {
      auto f = make_map(u, p, a);
      f.is_map = Tri::yes;
      f.is_inclusion = is_injective(f) ? Tri::yes : Tri::no;
      if (cartesian_only) {
        f.is_cartesian = Tri::yes;
        f.is_collapse = is_surjective(f) ? Tri::yes : Tri::no;
      }
      result.maps.push_back(std::move(f));
      return false;
    }
    const auto x = order[i];
    std::vector<std::uint32_t> candidates;
    if (src.dim_of(x) == 0) {
      candidates = vertices;
    } else {
      ElementSet s = tgt.none();
      for (auto sign : {Sign::minus, Sign::plus})
        for (auto y : src.faces(x, sign)) s |= tgt.lower_set(a[y]);
      if (auto g = greatest_in(tgt, s)) candidates.push_back(static_cast<std::uint32_t>(*g));
      for (std::uint32_t t = 0; t < tgt.size(); ++t) {
        if (tgt.dim_of(t) != src.dim_of(x) || s.test(t)) continue;
        auto below = tgt.lower_set(t);
        below.reset(t);
        if (below == s) candidates.push_back(t);
      }
      std::sort(candidates.begin(), candidates.end());
    }
    for (auto t : candidates) {
      if (++nodes > budget) {
        result.complete = false;
        return true;
      }
      a[x] = t;
      if (!map_condition_at(src, tgt, bsrc, btgt, a, x, nullptr)) continue;
      if (cartesian_only && cartesian_failure_at(src, tgt, a, x)) continue;
      if (descend(i + 1)) return true;
    }
    return false;
  };
  descend(0);
  std::sort(result.maps.begin(), result.maps.end(),
            [](const RdcMap& f, const RdcMap& g) { return f.assignment < g.assignment; });
  return result;
}

// ---------------------------------------------------------------------------

RdcMap coconnection() {
  const auto a = arrow().poset;  // flat: 0⁻, 0⁺, 1
  const auto sq = gray(a, a);
  std::vector<std::uint32_t> assignment(sq.result.size());
  for (std::size_t z = 0; z < assignment.size(); ++z) {
    const auto [x, y] = sq.pair_index[z];
    std::uint32_t t = 0;
    if (x == 1 && y == 1)
      t = 1;
    else if ((x == 2 && y == 1) || (x == 1 && y == 2) || (x == 2 && y == 2))
      t = 2;
    assignment[z] = t;
  }
  return make_map(share(sq.result), share(a), std::move(assignment));
}

}  // namespace odot
