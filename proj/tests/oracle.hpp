#pragma once

// Brute-force reference implementations. They read only the raw face tables
// of an OgPoset and follow the definitions literally, so they can be used to
// cross-check the library on small inputs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "odot/og_poset.hpp"

namespace oracle {

using Mask = std::vector<char>;

struct Flat {
  std::vector<int> dim;
  std::vector<std::vector<int>> faces[2];  // [sign][x]
  std::vector<Mask> below;                 // below[x][y]: y <= x

  explicit Flat(const odot::OgPoset& p) {
    std::vector<int> offset;
    int n = 0;
    for (const auto& g : p.grades()) {
      offset.push_back(n);
      n += static_cast<int>(g.size());
    }
    for (std::size_t k = 0; k < p.grades().size(); ++k)
      for (const auto& e : p.grades()[k]) {
        dim.push_back(static_cast<int>(k));
        for (int s = 0; s < 2; ++s) {
          std::vector<int> f;
          for (auto i : s == 0 ? e.input : e.output) f.push_back(offset[k - 1] + static_cast<int>(i));
          faces[s].push_back(std::move(f));
        }
      }
    below.assign(dim.size(), Mask(dim.size(), 0));
    for (std::size_t x = 0; x < dim.size(); ++x) {
      std::vector<int> stack{static_cast<int>(x)};
      while (!stack.empty()) {
        const int y = stack.back();
        stack.pop_back();
        if (below[x][static_cast<std::size_t>(y)]) continue;
        below[x][static_cast<std::size_t>(y)] = 1;
        for (int s = 0; s < 2; ++s)
          for (int z : faces[s][static_cast<std::size_t>(y)]) stack.push_back(z);
      }
    }
  }

  std::size_t size() const { return dim.size(); }
  bool leq(int a, int b) const { return below[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]; }
  bool is_face(int a, int b, int sign) const {
    const auto& f = faces[sign][static_cast<std::size_t>(b)];
    return std::find(f.begin(), f.end(), a) != f.end();
  }

  Mask closure(const Mask& seed) const {
    Mask out(size(), 0);
    for (std::size_t x = 0; x < size(); ++x)
      if (seed[x])
        for (std::size_t y = 0; y < size(); ++y)
          if (below[x][y]) out[y] = 1;
    return out;
  }
  Mask lower(int x) const { return below[static_cast<std::size_t>(x)]; }
  Mask all() const { return Mask(size(), 1); }
};

inline int dim_of(const Flat& f, const Mask& u) {
  int d = -1;
  for (std::size_t x = 0; x < f.size(); ++x)
    if (u[x]) d = std::max(d, f.dim[x]);
  return d;
}

/// sign: 0 input, 1 output, 2 both. Boundaries relative to the closed set u.
inline Mask boundary(const Flat& f, const Mask& u, int sign, int n) {
  if (sign == 2) {
    auto a = boundary(f, u, 0, n), b = boundary(f, u, 1, n);
    for (std::size_t x = 0; x < a.size(); ++x) a[x] = a[x] || b[x];
    return a;
  }
  Mask seed(f.size(), 0);
  if (n < 0) return seed;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (!u[x]) continue;
    const int xi = static_cast<int>(x);
    if (f.dim[x] == n) {
      bool opposite = false;
      for (std::size_t y = 0; y < f.size(); ++y)
        if (u[y] && f.is_face(xi, static_cast<int>(y), 1 - sign)) opposite = true;
      if (!opposite) seed[x] = 1;
    } else if (f.dim[x] < n) {
      bool maximal = true;
      for (std::size_t y = 0; y < f.size(); ++y)
        if (u[y] && y != x && f.leq(xi, static_cast<int>(y))) maximal = false;
      if (maximal) seed[x] = 1;
    }
  }
  return f.closure(seed);
}

inline Mask image(const Flat& q, const std::vector<std::uint32_t>& a, const Mask& s) {
  Mask out(q.size(), 0);
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s[x]) out[a[x]] = 1;
  return out;
}

/// Finality of f restricted to s -> t: each {z in s : t' <= f(z)} is nonempty
/// and connected under comparability.
inline bool final_on(const Flat& p, const Flat& q, const std::vector<std::uint32_t>& a, const Mask& s,
                     const Mask& t) {
  for (std::size_t y = 0; y < q.size(); ++y) {
    if (!t[y]) continue;
    std::vector<int> over;
    for (std::size_t z = 0; z < p.size(); ++z)
      if (s[z] && q.leq(static_cast<int>(y), static_cast<int>(a[z]))) over.push_back(static_cast<int>(z));
    if (over.empty()) return false;
    std::vector<int> parent(over.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    for (std::size_t i = 0; i < over.size(); ++i)
      for (std::size_t j = i + 1; j < over.size(); ++j)
        if (p.leq(over[i], over[j]) || p.leq(over[j], over[i]))
          parent[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(static_cast<int>(j));
    for (std::size_t i = 0; i < over.size(); ++i)
      if (find(static_cast<int>(i)) != find(0)) return false;
  }
  return true;
}

inline bool is_map(const Flat& p, const Flat& q, const std::vector<std::uint32_t>& a) {
  for (std::size_t x = 0; x < p.size(); ++x) {
    const int xi = static_cast<int>(x);
    const auto cx = p.lower(xi);
    const auto cfx = q.lower(static_cast<int>(a[x]));
    if (image(q, a, cx) != cfx) return false;
    for (int n = 0; n <= p.dim[x]; ++n)
      for (int s = 0; s < 2; ++s) {
        const auto bs = boundary(p, cx, s, n);
        const auto bt = boundary(q, cfx, s, n);
        if (image(q, a, bs) != bt) return false;
        if (!final_on(p, q, a, bs, bt)) return false;
      }
  }
  return true;
}

inline bool is_cartesian(const Flat& p, const Flat& q, const std::vector<std::uint32_t>& a) {
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < q.size(); ++y) {
      if (!q.leq(static_cast<int>(y), static_cast<int>(a[x]))) continue;
      bool lifted = false;
      for (std::size_t z = 0; z < p.size() && !lifted; ++z) {
        if (!p.leq(static_cast<int>(z), static_cast<int>(x)) || a[z] != y) continue;
        bool greatest = true;
        for (std::size_t w = 0; w < p.size() && greatest; ++w)
          if (p.leq(static_cast<int>(w), static_cast<int>(x)) &&
              q.leq(static_cast<int>(a[w]), static_cast<int>(y)) && !p.leq(static_cast<int>(w), static_cast<int>(z)))
            greatest = false;
        lifted = greatest;
      }
      if (!lifted) return false;
    }
  return true;
}

/// Every map p -> q, found by trying all order-preserving assignments.
inline std::vector<std::vector<std::uint32_t>> all_maps(const odot::OgPoset& pp, const odot::OgPoset& qq,
                                                        bool cartesian_only) {
  const Flat p(pp), q(qq);
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> a(p.size());
  std::function<void(std::size_t)> go = [&](std::size_t x) {
    if (x == p.size()) {
      if (is_map(p, q, a) && (!cartesian_only || is_cartesian(p, q, a))) out.push_back(a);
      return;
    }
    for (std::uint32_t t = 0; t < q.size(); ++t) {
      bool monotone = true;
      for (std::size_t y = 0; y < x && monotone; ++y)
        if (p.leq(static_cast<int>(y), static_cast<int>(x)) && !q.leq(static_cast<int>(a[y]), static_cast<int>(t)))
          monotone = false;
      if (!monotone) continue;
      a[x] = t;
      go(x + 1);
    }
  };
  go(0);
  return out;
}

/// Number of bijections p -> q preserving grades and signed faces.
inline std::size_t count_isomorphisms(const odot::OgPoset& pp, const odot::OgPoset& qq) {
  const Flat p(pp), q(qq);
  if (p.size() != q.size()) return 0;
  std::vector<int> m(p.size(), -1);
  std::vector<char> used(q.size(), 0);
  std::size_t count = 0;
  std::function<void(std::size_t)> go = [&](std::size_t x) {
    if (x == p.size()) {
      for (std::size_t y = 0; y < p.size(); ++y)
        for (int s = 0; s < 2; ++s) {
          std::vector<int> img;
          for (int f : p.faces[s][y]) img.push_back(m[static_cast<std::size_t>(f)]);
          std::sort(img.begin(), img.end());
          auto want = q.faces[s][static_cast<std::size_t>(m[y])];
          std::sort(want.begin(), want.end());
          if (img != want) return;
        }
      ++count;
      return;
    }
    for (std::size_t t = 0; t < q.size(); ++t) {
      if (used[t] || q.dim[t] != p.dim[x]) continue;
      used[t] = 1;
      m[x] = static_cast<int>(t);
      go(x + 1);
      used[t] = 0;
    }
  };
  go(0);
  return count;
}

/// Strict chains of the poset restricted to u, counted by length - 1.
inline std::vector<std::size_t> chain_counts(const Flat& f, const Mask& u) {
  std::vector<std::size_t> counts;
  std::vector<int> chain;
  std::function<void(int)> extend = [&](int last) {
    for (std::size_t y = 0; y < f.size(); ++y) {
      const int yi = static_cast<int>(y);
      if (!u[y] || (last >= 0 && (yi == last || !f.leq(last, yi)))) continue;
      chain.push_back(yi);
      if (counts.size() < chain.size()) counts.resize(chain.size(), 0);
      ++counts[chain.size() - 1];
      extend(yi);
      chain.pop_back();
    }
  };
  extend(-1);
  return counts;
}

/// Reduced Betti numbers over GF(p) of the order complex of u, degrees -1..top.
inline std::vector<long> reduced_betti(const Flat& f, const Mask& u, long prime = 1000003) {
  std::vector<std::vector<std::vector<int>>> chains(1);  // chains[k+1]: k-simplices; chains[0] = {{}}
  chains[0].push_back({});
  std::function<void(std::vector<int>&)> extend = [&](std::vector<int>& c) {
    for (std::size_t y = 0; y < f.size(); ++y) {
      const int yi = static_cast<int>(y);
      if (!u[y] || (!c.empty() && (yi == c.back() || !f.leq(c.back(), yi)))) continue;
      c.push_back(yi);
      if (chains.size() < c.size() + 1) chains.resize(c.size() + 1);
      chains[c.size()].push_back(c);
      extend(c);
      c.pop_back();
    }
  };
  std::vector<int> start;
  extend(start);

  auto mod = [&](long v) { return ((v % prime) + prime) % prime; };
  auto power = [&](long b, long e) {
    long r = 1;
    b = mod(b);
    for (; e > 0; e >>= 1, b = b * b % prime)
      if (e & 1) r = r * b % prime;
    return r;
  };
  // rank of the boundary from chains[k] to chains[k-1]
  auto rank = [&](std::size_t k) -> long {
    if (k == 0 || k >= chains.size()) return 0;
    const auto& rows = chains[k - 1];
    std::vector<std::vector<long>> m(rows.size(), std::vector<long>(chains[k].size(), 0));
    for (std::size_t c = 0; c < chains[k].size(); ++c) {
      const auto& s = chains[k][c];
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto face = s;
        face.erase(face.begin() + static_cast<long>(i));
        const auto r = static_cast<std::size_t>(std::find(rows.begin(), rows.end(), face) - rows.begin());
        m[r][c] = mod(i % 2 == 0 ? 1 : -1);
      }
    }
    long rk = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < chains[k].size() && row < rows.size(); ++col) {
      std::size_t piv = row;
      while (piv < rows.size() && m[piv][col] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(m[piv], m[row]);
      const long inv = power(m[row][col], prime - 2);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == row || m[r][col] == 0) continue;
        const long factor = m[r][col] * inv % prime;
        for (std::size_t c = col; c < chains[k].size(); ++c) m[r][c] = mod(m[r][c] - factor * m[row][c]);
      }
      ++row;
      ++rk;
    }
    return rk;
  };
  std::vector<long> betti;
  for (std::size_t k = 0; k < chains.size(); ++k)
    betti.push_back(static_cast<long>(chains[k].size()) - rank(k) - rank(k + 1));
  return betti;  // betti[k + 1] is degree k
}

}  // namespace oracle
