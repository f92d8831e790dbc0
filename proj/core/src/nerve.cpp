#include "odot/nerve.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "odot/error.hpp"
#include "odot/tensor.hpp"

namespace odot {

using boost::multiprecision::cpp_int;

std::size_t SimplicialSet::total() const {
  std::size_t n = 0;
  for (const auto& s : simplices) n += s.size();
  return n;
}

std::optional<std::size_t> SimplicialSet::find(const Chain& c) const {
  if (c.empty() || c.size() > simplices.size()) return std::nullopt;
  const auto& level = simplices[c.size() - 1];
  auto it = std::lower_bound(level.begin(), level.end(), c);
  if (it == level.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - level.begin());
}

SimplicialSet subdivide(const OgPoset& p, std::size_t budget) { return subdivide(p, p.all(), budget); }

SimplicialSet subdivide(const OgPoset& p, const ElementSet& u, std::size_t budget) {
  SimplicialSet s;
  const auto elems = u.to_vector();
  std::vector<std::uint32_t> vertex_of(p.size(), 0);
  for (std::size_t v = 0; v < elems.size(); ++v) {
    vertex_of[elems[v]] = static_cast<std::uint32_t>(v);
    s.labels.push_back(to_string(p.id(elems[v])));
  }
  std::size_t count = 0;
  Chain chain;
  std::function<void(std::size_t)> extend = [&](std::size_t x) {
    if (++count > budget) throw BudgetExceeded("subdivision exceeds " + std::to_string(budget) + " simplices");
    chain.push_back(vertex_of[x]);
    if (s.simplices.size() < chain.size()) s.simplices.resize(chain.size());
    s.simplices[chain.size() - 1].push_back(chain);
    (p.upper_set(x) & u).for_each([&](std::size_t y) {
      if (y != x) extend(y);
    });
    chain.pop_back();
  };
  for (auto x : elems) extend(x);
  return s;
}

bool is_face_closed(const SimplicialSet& s) {
  for (std::size_t k = 1; k < s.simplices.size(); ++k)
    for (const auto& c : s.simplices[k])
      for (std::size_t i = 0; i < c.size(); ++i) {
        Chain f = c;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        if (!s.find(f)) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------

ChainComplex chain_complex(const SimplicialSet& s) {
  ChainComplex c;
  for (std::size_t k = 0; k < s.simplices.size(); ++k) {
    c.ranks.push_back(s.simplices[k].size());
    std::vector<ChainComplex::Column> cols;
    for (const auto& simplex : s.simplices[k]) {
      ChainComplex::Column col;
      if (k == 0) {
        col.push_back({0, 1});
      } else {
        for (std::size_t i = 0; i < simplex.size(); ++i) {
          Chain f = simplex;
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
          const auto row = s.find(f);
          if (!row) throw Error(ErrorKind::precondition, "simplicial set is not closed under faces");
          col.push_back({static_cast<std::uint32_t>(*row), i % 2 == 0 ? 1 : -1});
        }
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
      }
      cols.push_back(std::move(col));
    }
    c.boundaries.push_back(std::move(cols));
  }
  return c;
}

bool boundary_squares_zero(const ChainComplex& c) {
  for (std::size_t k = 1; k < c.boundaries.size(); ++k) {
    for (const auto& col : c.boundaries[k]) {
      std::map<std::uint32_t, long long> acc;
      for (const auto& e : col)
        for (const auto& f : c.boundaries[k - 1][e.row]) acc[f.row] += static_cast<long long>(e.value) * f.value;
      for (const auto& [row, v] : acc)
        if (v != 0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

std::vector<cpp_int> dense_smith(std::vector<std::vector<cpp_int>> a) {
  std::vector<cpp_int> diag;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // smallest nonzero entry of the remaining block becomes the pivot
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return diag;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const cpp_int q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const cpp_int q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) dirty = true;
      }
      if (dirty) continue;

      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

}  // namespace

std::vector<std::string> smith_invariants(std::size_t rows, const std::vector<ChainComplex::Column>& columns) {
  // Sparse rows; unit pivots are eliminated first since they neither create
  // torsion nor need gcd steps.
  std::vector<std::map<std::uint32_t, cpp_int>> r(rows);
  std::vector<std::set<std::uint32_t>> col_rows(columns.size());
  for (std::uint32_t j = 0; j < columns.size(); ++j)
    for (const auto& e : columns[j]) {
      r[e.row][j] += e.value;
      col_rows[j].insert(e.row);
    }
  for (std::uint32_t i = 0; i < rows; ++i)
    for (auto it = r[i].begin(); it != r[i].end();)
      if (it->second == 0) {
        col_rows[it->first].erase(i);
        it = r[i].erase(it);
      } else {
        ++it;
      }

  std::size_t units = 0;
  std::vector<std::uint32_t> order(rows);
  for (std::uint32_t i = 0; i < rows; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return r[x].size() < r[y].size(); });
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto i : order) {
      if (r[i].empty()) continue;
      std::uint32_t pc = 0;
      bool found = false;
      for (const auto& [j, v] : r[i])
        if (abs(v) == 1 && (!found || col_rows[j].size() < col_rows[pc].size())) {
          pc = j;
          found = true;
        }
      if (!found) continue;
      const cpp_int pivot = r[i][pc];
      const std::vector<std::uint32_t> others(col_rows[pc].begin(), col_rows[pc].end());
      for (auto k : others) {
        if (k == i) continue;
        const cpp_int factor = r[k][pc] * pivot;
        for (const auto& [j, v] : r[i]) {
          auto& target = r[k][j];
          target -= factor * v;
          if (target == 0) {
            r[k].erase(j);
            col_rows[j].erase(k);
          } else {
            col_rows[j].insert(k);
          }
        }
      }
      for (const auto& [j, v] : r[i]) col_rows[j].erase(i);
      r[i].clear();
      ++units;
      progress = true;
    }
  }

  std::vector<std::uint32_t> live_rows, live_cols;
  std::map<std::uint32_t, std::size_t> col_pos;
  for (std::uint32_t i = 0; i < rows; ++i)
    if (!r[i].empty()) {
      live_rows.push_back(i);
      for (const auto& [j, v] : r[i]) col_pos.emplace(j, 0);
    }
  std::size_t next = 0;
  for (auto& [j, pos] : col_pos) pos = next++;
  std::vector<std::vector<cpp_int>> dense(live_rows.size(), std::vector<cpp_int>(col_pos.size()));
  for (std::size_t a = 0; a < live_rows.size(); ++a)
    for (const auto& [j, v] : r[live_rows[a]]) dense[a][col_pos[j]] = v;

  std::vector<std::string> out(units, "1");
  for (const auto& d : dense_smith(std::move(dense))) out.push_back(d.str());
  return out;
}

bool Homology::is_trivial() const {
  for (const auto& g : groups)
    if (g.rank != 0 || !g.torsion.empty()) return false;
  return true;
}

bool Homology::is_sphere(int n) const {
  for (int k = -1; k <= max_dim(); ++k) {
    const auto& g = reduced(k);
    if (!g.torsion.empty() || g.rank != (k == n ? 1U : 0U)) return false;
  }
  return n <= max_dim();
}

std::string Homology::to_string() const {
  std::string out;
  for (int k = -1; k <= max_dim(); ++k) {
    const auto& g = reduced(k);
    out += "H~" + std::to_string(k) + " = ";
    std::string body;
    if (g.rank > 0) body = g.rank == 1 ? "Z" : "Z^" + std::to_string(g.rank);
    for (const auto& t : g.torsion) body += (body.empty() ? "" : " + ") + std::string("Z/") + t;
    out += (body.empty() ? "0" : body) + "\n";
  }
  return out;
}

Homology homology(const SimplicialSet& s, int max_dim, std::size_t budget) {
  if (s.total() > budget) throw BudgetExceeded("homology of " + std::to_string(s.total()) + " simplices");
  const auto c = chain_complex(s);
  auto n = [&](int k) -> std::size_t {
    if (k == -1) return 1;
    if (k < 0 || static_cast<std::size_t>(k) >= c.ranks.size()) return 0;
    return c.ranks[static_cast<std::size_t>(k)];
  };
  // invariants of ∂_k : C_k -> C_{k-1}
  std::vector<std::vector<std::string>> inv(static_cast<std::size_t>(max_dim + 3));
  for (int k = 0; k <= max_dim + 1; ++k)
    if (static_cast<std::size_t>(k) < c.boundaries.size())
      inv[static_cast<std::size_t>(k)] = smith_invariants(n(k - 1), c.boundaries[static_cast<std::size_t>(k)]);

  Homology h;
  for (int k = -1; k <= max_dim; ++k) {
    const std::size_t rank_out = k >= 0 ? inv[static_cast<std::size_t>(k)].size() : 0;
    const auto& in = inv[static_cast<std::size_t>(k + 1)];
    HomologyGroup g;
    g.rank = n(k) - rank_out - in.size();
    for (const auto& d : in)
      if (d != "1") g.torsion.push_back(d);
    h.groups.push_back(std::move(g));
  }
  return h;
}

// ---------------------------------------------------------------------------

ProductComparison compare_product(const OgPoset& u, const OgPoset& v, std::size_t budget) {
  ProductComparison cmp;
  const auto gp = gray(u, v);
  const auto left = subdivide(gp.result, budget);
  const auto su = subdivide(u, budget);
  const auto sv = subdivide(v, budget);
  for (const auto& level : left.simplices) cmp.left_counts.push_back(level.size());

  // Non-degenerate simplices of Sd U × Sd V: pairs of weakly increasing vertex
  // sequences along simplices of each factor, never stalling in both at once.
  auto step_ok = [](const SimplicialSet& s, std::uint32_t a, std::uint32_t b) {
    return a == b || (a < b && s.find(Chain{a, b}).has_value());
  };
  std::vector<std::vector<Chain>> right;
  std::size_t count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seq;
  std::function<void()> extend = [&]() {
    if (++count > budget) throw BudgetExceeded("product nerve exceeds budget");
    Chain mapped;
    for (auto [a, b] : seq) mapped.push_back(gp.at(a, b));
    if (right.size() < seq.size()) right.resize(seq.size());
    right[seq.size() - 1].push_back(std::move(mapped));
    const auto [a, b] = seq.back();
    for (std::uint32_t a2 = a; a2 < u.size(); ++a2) {
      if (!step_ok(su, a, a2)) continue;
      for (std::uint32_t b2 = 0; b2 < v.size(); ++b2) {
        if ((a2 == a && b2 == b) || !step_ok(sv, b, b2)) continue;
        seq.emplace_back(a2, b2);
        extend();
        seq.pop_back();
      }
    }
  };
  for (std::uint32_t a = 0; a < u.size(); ++a)
    for (std::uint32_t b = 0; b < v.size(); ++b) {
      seq.assign(1, {a, b});
      extend();
    }
  for (auto& level : right) {
    std::sort(level.begin(), level.end());
    cmp.right_counts.push_back(level.size());
  }
  if (cmp.left_counts != cmp.right_counts) {
    cmp.detail = "simplex counts differ";
    return cmp;
  }
  for (std::size_t k = 0; k < right.size(); ++k)
    if (right[k] != left.simplices[k]) {
      cmp.detail = "dimension " + std::to_string(k) + ": pair chains do not map onto chains of the product";
      return cmp;
    }
  cmp.isomorphic = true;
  return cmp;
}

}  // namespace odot
