#include "odot/shapes.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

#include "odot/error.hpp"
#include "odot/tensor.hpp"

namespace odot {

namespace {

constexpr std::uint32_t kUnset = ~std::uint32_t{0};

}  // namespace

// ---------------------------------------------------------------------------
// Witnesses

Witness point_witness() {
  static const Witness w = std::make_shared<const WitnessNode>();
  return w;
}

Witness paste_witness(int k, Witness left, Witness right) {
  return std::make_shared<const WitnessNode>(
      WitnessNode{WitnessNode::Kind::paste, k, std::move(left), std::move(right)});
}

Witness cell_witness(Witness lower, Witness upper) {
  return std::make_shared<const WitnessNode>(
      WitnessNode{WitnessNode::Kind::cell, 0, std::move(lower), std::move(upper)});
}

std::string to_string(const Witness& w) {
  if (!w) return "none";
  switch (w->kind) {
    case WitnessNode::Kind::point: return "point";
    case WitnessNode::Kind::paste:
      return "paste(" + std::to_string(w->k) + ", " + to_string(w->left) + ", " + to_string(w->right) + ")";
    case WitnessNode::Kind::cell: return "cell(" + to_string(w->left) + ", " + to_string(w->right) + ")";
  }
  return "none";
}

namespace {

class WitnessParser {
public:
  explicit WitnessParser(std::string_view text) : text_(text) {}

  Witness parse() {
    auto w = node();
    skip();
    if (pos_ != text_.size()) fail("trailing characters");
    return w;
  }

private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse, "witness at offset " + std::to_string(pos_) + ": " + what);
  }
  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string word() {
    skip();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  int number() {
    skip();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }
  Witness node() {
    const auto w = word();
    if (w == "point") return point_witness();
    if (w == "paste") {
      expect('(');
      const int k = number();
      expect(',');
      auto l = node();
      expect(',');
      auto r = node();
      expect(')');
      return paste_witness(k, std::move(l), std::move(r));
    }
    if (w == "cell") {
      expect('(');
      auto l = node();
      expect(',');
      auto r = node();
      expect(')');
      return cell_witness(std::move(l), std::move(r));
    }
    fail("unknown node '" + w + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Witness parse_witness(std::string_view text) { return WitnessParser(text).parse(); }

// ---------------------------------------------------------------------------
// Gluing

namespace {

struct Glued {
  OgPoset poset;
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;
};

/// Disjoint union of u and v with each v-element t for which vmap[t] is set
/// identified with the u-element vmap[t]. u keeps its labels; the remaining
/// elements of v follow in each grade. If `top_dim` >= 0, a greatest element is
/// added above the top-dim elements of u (inputs) and of v (outputs).
Glued glue(const OgPoset& u, const OgPoset& v, const std::vector<std::uint32_t>& vmap, int top_dim = -1) {
  const std::size_t grades = std::max(u.num_grades(), v.num_grades()) + (top_dim >= 0 ? 1 : 0);
  std::vector<OgPoset::Grade> out(grades);
  for (std::size_t n = 0; n < u.num_grades(); ++n) out[n] = u.grades()[n];

  std::vector<std::uint32_t> local(v.size(), 0);
  for (std::size_t t = 0; t < v.size(); ++t) {
    const auto n = static_cast<std::size_t>(v.dim_of(t));
    if (vmap[t] != kUnset) {
      local[t] = static_cast<std::uint32_t>(u.id(vmap[t]).index);
    } else {
      local[t] = static_cast<std::uint32_t>(out[n].size());
      ElementFaces e;
      for (auto y : v.faces(t, Sign::minus)) e.input.push_back(local[y]);
      for (auto y : v.faces(t, Sign::plus)) e.output.push_back(local[y]);
      out[n].push_back(std::move(e));
    }
  }
  if (top_dim >= 0) {
    ElementFaces top;
    const auto n = static_cast<std::size_t>(top_dim);
    for (std::size_t i = 0; i < u.grade_size(n); ++i) top.input.push_back(static_cast<std::uint32_t>(i));
    for (std::size_t t = 0; t < v.size(); ++t)
      if (v.dim_of(t) == top_dim) top.output.push_back(local[t]);
    out[n + 1].push_back(std::move(top));
  }

  Glued g{OgPoset(std::move(out)), {}, {}};
  for (std::size_t x = 0; x < u.size(); ++x) g.left.push_back(static_cast<std::uint32_t>(g.poset.flat(u.id(x))));
  for (std::size_t t = 0; t < v.size(); ++t)
    g.right.push_back(static_cast<std::uint32_t>(g.poset.flat({static_cast<std::size_t>(v.dim_of(t)), local[t]})));
  return g;
}

}  // namespace

Molecule point() {
  OgPosetBuilder b;
  b.add(0, {}, {});
  return {std::move(b).build(), point_witness()};
}

Molecule arrow() { return cell(point(), point()); }

PasteResult paste_with_embeddings(const Molecule& u, const Molecule& v, int k) {
  if (k < 0) throw Error(ErrorKind::precondition, "negative pasting index");
  const auto bu = boundary(u.poset, u.poset.all(), Side::plus, k);
  const auto bv = boundary(v.poset, v.poset.all(), Side::minus, k);
  const auto iso = find_subset_isomorphism(u.poset, bu, v.poset, bv);
  if (!iso) throw Error(ErrorKind::boundary_mismatch, "output " + std::to_string(k) + "-boundary of the first "
                                                       "molecule is not isomorphic to the input boundary of the second");
  std::vector<std::uint32_t> vmap(v.poset.size(), kUnset);
  bu.for_each([&](std::size_t x) { vmap[(*iso)[x]] = static_cast<std::uint32_t>(x); });
  auto g = glue(u.poset, v.poset, vmap);
  return {Molecule{std::move(g.poset), paste_witness(k, u.witness, v.witness)}, std::move(g.left),
          std::move(g.right)};
}

Molecule paste(const Molecule& u, const Molecule& v, int k) { return paste_with_embeddings(u, v, k).molecule; }

Molecule cell(const Molecule& u, const Molecule& v) {
  const int n = u.dim();
  if (n != v.dim())
    throw Error(ErrorKind::dimension_mismatch, "cell of a " + std::to_string(n) + "-molecule and a " +
                                                   std::to_string(v.dim()) + "-molecule");
  if (n < 0) throw Error(ErrorKind::precondition, "cell of empty molecules");
  if (!is_round(u.poset)) throw Error(ErrorKind::not_round, "input molecule is not round");
  if (!is_round(v.poset)) throw Error(ErrorKind::not_round, "output molecule is not round");

  std::vector<std::uint32_t> vmap(v.poset.size(), kUnset);
  std::vector<std::uint32_t> fwd(u.poset.size(), kUnset);
  for (auto side : {Side::minus, Side::plus}) {
    const auto bu = boundary(u.poset, u.poset.all(), side);
    const auto bv = boundary(v.poset, v.poset.all(), side);
    const auto iso = find_subset_isomorphism(u.poset, bu, v.poset, bv);
    if (!iso) throw Error(ErrorKind::boundary_mismatch, "boundaries of the two molecules are not isomorphic");
    bool ok = true;
    bu.for_each([&](std::size_t x) {
      const auto t = (*iso)[x];
      if ((fwd[x] != kUnset && fwd[x] != t) || (vmap[t] != kUnset && vmap[t] != x)) ok = false;
      fwd[x] = t;
      vmap[t] = static_cast<std::uint32_t>(x);
    });
    if (!ok) throw Error(ErrorKind::boundary_mismatch, "input and output boundary isomorphisms disagree");
  }
  auto g = glue(u.poset, v.poset, vmap, n);
  return {std::move(g.poset), cell_witness(u.witness, v.witness)};
}

OgPoset replay(const Witness& w) {
  if (!w) throw Error(ErrorKind::precondition, "empty witness");
  std::function<Molecule(const Witness&)> go = [&](const Witness& node) -> Molecule {
    switch (node->kind) {
      case WitnessNode::Kind::point: return point();
      case WitnessNode::Kind::paste: return paste(go(node->left), go(node->right), node->k);
      case WitnessNode::Kind::cell: return cell(go(node->left), go(node->right));
    }
    throw Error(ErrorKind::precondition, "bad witness");
  };
  return go(w).poset;
}

bool is_round(const Molecule& u) { return is_round(u.poset); }

bool is_atom(const Molecule& u) { return greatest_element(u.poset, u.poset.all()).has_value(); }

// ---------------------------------------------------------------------------
// Splits

namespace {

/// Strongly connected components of a small digraph given by predecessor
/// lists; returned in an order where every component comes after all of its
/// predecessors.
std::vector<std::vector<std::size_t>> condensation_order(const std::vector<std::vector<std::size_t>>& pred) {
  const std::size_t n = pred.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  int counter = 0;
  // Tarjan over predecessor edges emits a component only after every
  // component reachable along predecessor edges, which is the order we want.
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : pred[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> c;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = static_cast<int>(comps.size());
        c.push_back(w);
      } while (w != v);
      std::sort(c.begin(), c.end());
      comps.push_back(std::move(c));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comps;
}

}  // namespace

void for_each_split(const OgPoset& p, const ElementSet& u, const std::function<bool(const Split&)>& fn,
                    std::size_t* nodes, std::size_t budget) {
  const int d = dim_of(p, u);
  const auto maxima = maximal_elements(p, u).to_vector();
  for (int k = d - 1; k >= 0; --k) {
    std::vector<std::size_t> high;
    for (auto x : maxima)
      if (p.dim_of(x) > k) high.push_back(x);
    if (high.size() < 2) continue;

    const auto lower_minus = boundary(p, u, Side::minus, k);
    const auto lower_plus = boundary(p, u, Side::plus, k);

    // y -> x when some k-element is an output k-face of y and an input k-face
    // of x; x on the left forces y on the left.
    std::vector<ElementSet> out_k, in_k;
    ElementSet grade_k = p.none();
    for (std::size_t i = 0; i < p.grade_size(static_cast<std::size_t>(k)); ++i)
      grade_k.set(p.offset(static_cast<std::size_t>(k)) + i);
    for (auto h : high) {
      const auto& cl = p.lower_set(h);
      out_k.push_back(boundary(p, cl, Side::plus, k) & grade_k);
      in_k.push_back(boundary(p, cl, Side::minus, k) & grade_k);
    }
    const std::size_t m = high.size();
    std::vector<std::vector<std::size_t>> pred(m);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        if (x != y && out_k[y].intersects(in_k[x])) pred[x].push_back(y);

    const auto comps = condensation_order(pred);
    std::vector<int> comp_of(m, -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (auto v : comps[c]) comp_of[v] = static_cast<int>(c);
    std::vector<std::vector<std::size_t>> comp_pred(comps.size());
    for (std::size_t x = 0; x < m; ++x)
      for (auto y : pred[x])
        if (comp_of[y] != comp_of[x]) comp_pred[static_cast<std::size_t>(comp_of[x])].push_back(
            static_cast<std::size_t>(comp_of[y]));

    std::vector<bool> chosen(comps.size(), false);
    bool stop = false;
    std::function<void(std::size_t, std::size_t)> descend = [&](std::size_t c, std::size_t count) {
      if (stop) return;
      if (c == comps.size()) {
        if (count == 0 || count == comps.size()) return;
        if (nodes && ++*nodes > budget) throw BudgetExceeded("split search");
        ElementSet left_seed = p.none(), right_seed = p.none();
        for (std::size_t i = 0; i < comps.size(); ++i)
          for (auto v : comps[i]) (chosen[i] ? left_seed : right_seed).set(high[v]);
        Split s{k, closure_of(p, left_seed) | lower_minus, closure_of(p, right_seed) | lower_plus};
        if ((s.left | s.right) != u) return;
        const auto inter = s.left & s.right;
        if (inter != boundary(p, s.left, Side::plus, k)) return;
        if (inter != boundary(p, s.right, Side::minus, k)) return;
        if (fn(s)) stop = true;
        return;
      }
      bool allowed = true;
      for (auto q : comp_pred[c])
        if (!chosen[q]) allowed = false;
      if (allowed) {
        chosen[c] = true;
        descend(c + 1, count + 1);
        chosen[c] = false;
      }
      descend(c + 1, count);
    };
    descend(0, 0);
    if (stop) return;
  }
}

std::vector<Split> enumerate_splits(const OgPoset& p, const ElementSet& u, std::size_t* nodes) {
  std::vector<Split> out;
  for_each_split(p, u, [&](const Split& s) {
    out.push_back(s);
    return false;
  }, nodes);
  return out;
}

// ---------------------------------------------------------------------------
// Recognition

struct Recognizer::Impl {
  Impl(const OgPoset& p, std::size_t budget) : p_(p), budget_(budget) {}

  /// Null when `u` is not a molecule. Throws BudgetExceeded.
  Witness molecule(const ElementSet& u) {
    if (auto it = memo_.find(u); it != memo_.end()) return it->second;
    auto w = decide(u);
    memo_.emplace(u, w);
    return w;
  }

  std::size_t nodes() const { return nodes_; }
  void reset_nodes() { nodes_ = 0; }

  Witness decide(const ElementSet& u) {
    if (++nodes_ > budget_) throw BudgetExceeded("molecule recognition");
    if (u.empty()) return nullptr;
    const auto maxima = maximal_elements(p_, u);
    if (maxima.count() == 1) return atom(maxima.to_vector().front());

    Witness found;
    for_each_split(p_, u, [&](const Split& s) {
      auto l = molecule(s.left);
      if (!l) return false;
      auto r = molecule(s.right);
      if (!r) return false;
      found = paste_witness(s.k, std::move(l), std::move(r));
      return true;
    }, &nodes_, budget_);
    return found;
  }

  Witness atom(std::size_t top) {
    if (p_.dim_of(top) == 0) return point_witness();
    ElementSet a = p_.none(), b = p_.none();
    for (auto y : p_.faces(top, Sign::minus)) a |= p_.lower_set(y);
    for (auto y : p_.faces(top, Sign::plus)) b |= p_.lower_set(y);
    if (a.empty() || b.empty()) return nullptr;
    auto wa = molecule(a);
    if (!wa) return nullptr;
    auto wb = molecule(b);
    if (!wb) return nullptr;
    if (!is_round(p_, a) || !is_round(p_, b)) return nullptr;
    const auto da = boundary(p_, a, Side::minus);
    const auto ea = boundary(p_, a, Side::plus);
    if (da != boundary(p_, b, Side::minus) || ea != boundary(p_, b, Side::plus)) return nullptr;
    if ((a & b) != (da | ea)) return nullptr;
    return cell_witness(std::move(wa), std::move(wb));
  }

  const OgPoset& p_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::unordered_map<ElementSet, Witness, ElementSetHash> memo_;
};

Recognizer::Recognizer(const OgPoset& p, std::size_t budget) : impl_(std::make_unique<Impl>(p, budget)) {}
Recognizer::~Recognizer() = default;
Witness Recognizer::molecule(const ElementSet& u) { return impl_->molecule(u); }
std::size_t Recognizer::nodes() const { return impl_->nodes(); }
void Recognizer::reset_nodes() { impl_->reset_nodes(); }

const char* to_string(Recognition r) {
  switch (r) {
    case Recognition::molecule: return "molecule";
    case Recognition::not_molecule: return "not a molecule";
    case Recognition::unknown: return "unknown";
  }
  return "unknown";
}

RecognitionResult recognize_molecule(const OgPoset& p, const ElementSet& u, std::size_t budget) {
  RecognitionResult result;
  if (!p.well_formed() || !validate(p).ok() || !is_closed(p, u)) {
    result.status = Recognition::not_molecule;
    return result;
  }
  Recognizer r(p, budget);
  try {
    result.witness = r.molecule(u);
    result.status = result.witness ? Recognition::molecule : Recognition::not_molecule;
  } catch (const BudgetExceeded&) {
    result.status = Recognition::unknown;
  }
  result.nodes = r.nodes();
  return result;
}

RecognitionResult recognize_molecule(const OgPoset& p, std::size_t budget) {
  if (!p.well_formed()) return {Recognition::not_molecule, nullptr, 0};
  return recognize_molecule(p, p.all(), budget);
}

std::optional<Molecule> as_molecule(OgPoset p, std::size_t budget) {
  auto r = recognize_molecule(p, budget);
  if (r.status == Recognition::unknown) throw BudgetExceeded("molecule recognition");
  if (r.status == Recognition::not_molecule) return std::nullopt;
  return Molecule{std::move(p), std::move(r.witness)};
}

// ---------------------------------------------------------------------------
// Standard shapes

Molecule globe(int n) {
  if (n < 0) throw Error(ErrorKind::precondition, "negative dimension");
  auto m = point();
  for (int i = 0; i < n; ++i) m = cell(m, m);
  return m;
}

OgPoset simplex(int n) {
  if (n < 0) throw Error(ErrorKind::precondition, "negative dimension");
  OgPoset s = point().poset;
  for (int i = 0; i < n; ++i) s = join(s, point().poset);
  return s;
}

OgPoset cube(int n) {
  if (n < 0) throw Error(ErrorKind::precondition, "negative dimension");
  OgPoset c = point().poset;
  const auto a = arrow().poset;
  for (int i = 0; i < n; ++i) c = gray(c, a).result;
  return c;
}

// ---------------------------------------------------------------------------
// Regularity

RegularityReport check_regular(const OgPoset& p, std::size_t budget) {
  RegularityReport report;
  if (!p.well_formed() || !validate(p).ok()) {
    for (std::size_t x = 0; x < p.size(); ++x) report.failures.push_back(p.id(x));
    return report;
  }
  Recognizer r(p, budget);
  report.certificates.resize(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    r.reset_nodes();
    try {
      auto w = r.molecule(p.lower_set(x));
      if (w)
        report.certificates[x] = std::move(w);
      else
        report.failures.push_back(p.id(x));
    } catch (const BudgetExceeded&) {
      report.exhausted = true;
      report.failures.push_back(p.id(x));
    }
  }
  report.regular = report.failures.empty();
  if (!report.regular) report.certificates.clear();
  return report;
}

}  // namespace odot
