#include "odot/tensor.hpp"

#include "odot/error.hpp"
#include "odot/shapes.hpp"

namespace odot {

GrayProduct gray(const OgPoset& p, const OgPoset& q) {
  GrayProduct g;
  g.right_size = q.size();
  g.index_of.assign(p.size() * q.size(), 0);
  if (p.empty() || q.empty()) return g;

  const auto grades = static_cast<std::size_t>(p.dim() + q.dim() + 1);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> buckets(grades);
  std::vector<std::uint32_t> local(p.size() * q.size());
  for (std::uint32_t x = 0; x < p.size(); ++x)
    for (std::uint32_t y = 0; y < q.size(); ++y) {
      auto& b = buckets[static_cast<std::size_t>(p.dim_of(x) + q.dim_of(y))];
      local[x * q.size() + y] = static_cast<std::uint32_t>(b.size());
      b.emplace_back(x, y);
    }

  std::vector<OgPoset::Grade> out(grades);
  for (std::size_t n = 0; n < grades; ++n) {
    for (auto [x, y] : buckets[n]) {
      ElementFaces e;
      for (auto alpha : {Sign::minus, Sign::plus}) {
        auto& dst = alpha == Sign::minus ? e.input : e.output;
        for (auto fx : p.faces(x, alpha)) dst.push_back(local[fx * q.size() + y]);
        const Sign beta = p.dim_of(x) % 2 == 0 ? alpha : -alpha;
        for (auto fy : q.faces(y, beta)) dst.push_back(local[x * q.size() + fy]);
      }
      out[n].push_back(std::move(e));
    }
  }
  g.result = OgPoset(std::move(out));
  for (std::size_t n = 0; n < grades; ++n)
    for (std::size_t i = 0; i < buckets[n].size(); ++i) {
      const auto [x, y] = buckets[n][i];
      g.pair_index.emplace_back(x, y);
      g.index_of[x * q.size() + y] = static_cast<std::uint32_t>(g.result.offset(n) + i);
    }
  return g;
}

RdcMap gray_map(const RdcMap& f, const RdcMap& g) {
  const auto src = gray(*f.source, *g.source);
  const auto tgt = gray(*f.target, *g.target);
  std::vector<std::uint32_t> a(src.result.size());
  for (std::size_t z = 0; z < a.size(); ++z) {
    const auto [x, y] = src.pair_index[z];
    a[z] = tgt.at(f[x], g[y]);
  }
  return make_map(share(src.result), share(tgt.result), std::move(a));
}

OgPoset augment(const OgPoset& p) {
  std::vector<OgPoset::Grade> out(p.num_grades() + 1);
  out[0].push_back({});
  for (std::size_t n = 0; n < p.num_grades(); ++n) {
    out[n + 1] = p.grades()[n];
    if (n == 0)
      for (auto& e : out[1]) e.output = {0};
  }
  return OgPoset(std::move(out));
}

OgPoset diminish(const OgPoset& p) {
  if (p.empty() || p.grade_size(0) != 1) throw Error(ErrorKind::no_least_element, "grade 0 is not a singleton");
  for (std::size_t x = 0; x < p.size(); ++x)
    if (!p.leq(0, x)) throw Error(ErrorKind::no_least_element, to_string(p.id(x)) + " is not above grade 0");
  std::vector<OgPoset::Grade> out(p.grades().begin() + 1, p.grades().end());
  if (!out.empty())
    for (auto& e : out[0]) e = {};
  return OgPoset(std::move(out));
}

OgPoset join(const OgPoset& p, const OgPoset& q) { return diminish(gray(augment(p), augment(q)).result); }

namespace {

RdcMap augment_map(const RdcMap& f) {
  std::vector<std::uint32_t> a(f.assignment.size() + 1, 0);
  for (std::size_t x = 0; x < f.assignment.size(); ++x) a[x + 1] = f[x] + 1;
  return make_map(share(augment(*f.source)), share(augment(*f.target)), std::move(a));
}

RdcMap diminish_map(const RdcMap& f) {
  if (f.assignment.empty() || f[0] != 0) throw Error(ErrorKind::no_least_element, "map does not preserve bottom");
  std::vector<std::uint32_t> a(f.assignment.size() - 1);
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (f[x + 1] == 0) throw Error(ErrorKind::no_least_element, "map sends an element to the bottom");
    a[x] = f[x + 1] - 1;
  }
  return make_map(share(diminish(*f.source)), share(diminish(*f.target)), std::move(a));
}

}  // namespace

RdcMap join_map(const RdcMap& f, const RdcMap& g) { return diminish_map(gray_map(augment_map(f), augment_map(g))); }

Cylinder cylinder(PosetRef u) {
  const auto a = arrow().poset;
  Cylinder c{gray(a, *u), {}, {}, {}};
  auto cyl = share(c.product.result);
  std::vector<std::uint32_t> im(u->size()), ip(u->size()), s(cyl->size());
  for (std::size_t y = 0; y < u->size(); ++y) {
    im[y] = c.product.at(0, y);
    ip[y] = c.product.at(1, y);
  }
  for (std::size_t z = 0; z < s.size(); ++z) s[z] = c.product.pair_index[z].second;
  c.iota_minus = make_map(u, cyl, std::move(im));
  c.iota_plus = make_map(u, cyl, std::move(ip));
  c.sigma = make_map(cyl, u, std::move(s));
  return c;
}

PushoutProduct pushout_product(const RdcMap& m, const RdcMap& m2) {
  if (!is_injective(m) || !is_injective(m2))
    throw Error(ErrorKind::precondition, "pushout-product of maps that are not inclusions");
  PushoutProduct pp{gray(*m.target, *m2.target), {}, {}};
  const auto left = image(m);
  const auto right = image(m2);
  pp.image = pp.ambient.result.none();
  for (std::size_t z = 0; z < pp.ambient.result.size(); ++z) {
    const auto [y, y2] = pp.ambient.pair_index[z];
    if (left.test(y) || right.test(y2)) pp.image.set(z);
  }
  pp.inclusion = subset_inclusion(share(pp.ambient.result), pp.image);
  return pp;
}

}  // namespace odot
