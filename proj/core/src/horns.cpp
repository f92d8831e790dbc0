#include "odot/horns.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "odot/error.hpp"
#include "odot/shapes.hpp"
#include "odot/tensor.hpp"

namespace odot {

Certificate literal_certificate(std::vector<ElementId> generators) {
  std::sort(generators.begin(), generators.end());
  auto node = std::make_shared<CertificateNode>();
  node->literal = std::move(generators);
  return node;
}

Certificate paste_certificate(int k, Certificate left, Certificate right) {
  auto node = std::make_shared<CertificateNode>();
  node->k = k;
  node->left = std::move(left);
  node->right = std::move(right);
  return node;
}

std::string to_string(const Certificate& c) {
  if (!c) return "none";
  if (c->is_literal()) {
    std::string out = "{";
    for (std::size_t i = 0; i < c->literal.size(); ++i) out += (i ? " " : "") + to_string(c->literal[i]);
    return out + "}";
  }
  return "paste(" + std::to_string(c->k) + ", " + to_string(c->left) + ", " + to_string(c->right) + ")";
}

namespace {

class CertificateParser {
public:
  explicit CertificateParser(std::string_view text) : text_(text) {}

  Certificate parse() {
    auto c = node();
    skip();
    if (pos_ != text_.size()) fail("trailing characters");
    return c;
  }

private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse, "certificate at offset " + std::to_string(pos_) + ": " + what);
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::size_t number() {
    skip();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }
  Certificate node() {
    if (peek('{')) {
      ++pos_;
      std::vector<ElementId> ids;
      while (!peek('}')) {
        const auto n = number();
        if (pos_ >= text_.size() || text_[pos_] != '.') fail("expected '.' in element label");
        ++pos_;
        ids.push_back({n, number()});
      }
      ++pos_;
      return literal_certificate(std::move(ids));
    }
    skip();
    if (text_.substr(pos_, 5) != "paste") fail("expected 'paste' or '{'");
    pos_ += 5;
    expect('(');
    const auto k = static_cast<int>(number());
    expect(',');
    auto l = node();
    expect(',');
    auto r = node();
    expect(')');
    return paste_certificate(k, std::move(l), std::move(r));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Certificate parse_certificate(std::string_view text) { return CertificateParser(text).parse(); }

Certificate literal_for(const OgPoset& p, const ElementSet& s) {
  std::vector<ElementId> ids;
  maximal_elements(p, s).for_each([&](std::size_t x) { ids.push_back(p.id(x)); });
  return literal_certificate(std::move(ids));
}

// ---------------------------------------------------------------------------

namespace {

struct NodeCheck {
  ElementSet set;
  std::string error;
};

NodeCheck evaluate(const OgPoset& u, const Certificate& c, Recognizer& rec, const ElementSet& v, bool& v_seen) {
  NodeCheck r;
  if (c->is_literal()) {
    r.set = u.none();
    for (const auto& id : c->literal) {
      if (!u.contains(id)) {
        r.error = "literal element " + to_string(id) + " does not exist";
        return r;
      }
      r.set |= u.lower_set(u.flat(id));
    }
    if (!rec.molecule(r.set)) r.error = "literal " + to_string(c) + " is not a molecule";
  } else {
    auto l = evaluate(u, c->left, rec, v, v_seen);
    if (!l.error.empty()) return l;
    auto rr = evaluate(u, c->right, rec, v, v_seen);
    if (!rr.error.empty()) return rr;
    const auto inter = l.set & rr.set;
    if (inter != boundary(u, l.set, Side::plus, c->k) || inter != boundary(u, rr.set, Side::minus, c->k))
      r.error = "pasting at " + std::to_string(c->k) + " does not meet along matching boundaries";
    r.set = l.set | rr.set;
  }
  if (r.set == v) v_seen = true;
  return r;
}

}  // namespace

CertificateCheck check_certificate(const OgPoset& u, Sign alpha, const ElementSet& v, const Certificate& c,
                                   std::size_t budget) {
  CertificateCheck out;
  if (!c) {
    out.reason = "missing certificate";
    return out;
  }
  Recognizer rec(u, budget);
  bool v_seen = false;
  NodeCheck root;
  try {
    root = evaluate(u, c, rec, v, v_seen);
  } catch (const BudgetExceeded&) {
    out.reason = "budget exhausted while checking molecules";
    return out;
  }
  if (!root.error.empty()) {
    out.reason = root.error;
    return out;
  }
  if (root.set != boundary(u, u.all(), side_of(alpha))) {
    out.reason = "certificate does not decompose the boundary";
    return out;
  }
  if (!v_seen) {
    out.reason = "submolecule is not a node of the certificate";
    return out;
  }
  out.valid = true;
  return out;
}

std::optional<Certificate> find_certificate(const OgPoset& u, Sign alpha, const ElementSet& v, std::size_t budget) {
  const auto root = boundary(u, u.all(), side_of(alpha));
  if (!v.is_subset_of(root)) return std::nullopt;
  Recognizer rec(u, budget);
  std::size_t nodes = 0;
  std::unordered_set<ElementSet, ElementSetHash> failed;

  std::function<Certificate(const ElementSet&)> search = [&](const ElementSet& s) -> Certificate {
    if (s == v) return literal_for(u, s);
    if (failed.count(s)) return nullptr;
    Certificate found;
    for_each_split(u, s, [&](const Split& sp) {
      const bool in_left = v.is_subset_of(sp.left);
      const bool in_right = v.is_subset_of(sp.right);
      if (!in_left && !in_right) return false;
      const auto& inner = in_left ? sp.left : sp.right;
      const auto& other = in_left ? sp.right : sp.left;
      if (!rec.molecule(other) || !rec.molecule(inner)) return false;
      auto sub = search(inner);
      if (!sub) return false;
      found = in_left ? paste_certificate(sp.k, sub, literal_for(u, other))
                      : paste_certificate(sp.k, literal_for(u, other), sub);
      return true;
    }, &nodes, budget);
    if (!found) failed.insert(s);
    return found;
  };
  try {
    if (!rec.molecule(v) || !rec.molecule(root)) return std::nullopt;
    if (auto c = search(root)) return c;
  } catch (const BudgetExceeded&) {
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Horn horn(PosetRef u, Sign alpha, const ElementSet& v, const Certificate& certificate) {
  const auto& p = *u;
  if (!greatest_element(p, p.all())) throw Error(ErrorKind::precondition, "horn of a shape that is not an atom");
  const auto side = boundary(p, p.all(), side_of(alpha));
  if (v.universe() != p.size() || !is_closed(p, v) || !v.is_subset_of(side))
    throw Error(ErrorKind::not_rewritable, "submolecule is not a closed subset of the boundary");
  if (dim_of(p, v) != dim_of(p, side))
    throw Error(ErrorKind::wrong_dimension, "submolecule has dimension " + std::to_string(dim_of(p, v)) +
                                                ", boundary has " + std::to_string(dim_of(p, side)));
  if (!is_round(p, v)) throw Error(ErrorKind::not_round, "submolecule is not round");
  const auto check = check_certificate(p, alpha, v, certificate);
  if (!check.valid) throw Error(ErrorKind::not_rewritable, check.reason);

  Horn h;
  h.atom = u;
  h.sign = alpha;
  h.sub = v;
  h.complex = boundary(p, p.all(), Side::both) - (v - boundary(p, v, Side::both));
  h.inclusion = subset_inclusion(u, h.complex);
  h.certificate = certificate;
  return h;
}

HornEnumeration enumerate_horns(PosetRef u, std::size_t budget) {
  HornEnumeration out;
  const auto& p = *u;
  if (!greatest_element(p, p.all())) throw Error(ErrorKind::precondition, "horns of a shape that is not an atom");
  if (p.dim() <= 0) return out;

  Recognizer rec(p, budget);
  std::size_t nodes = 0;
  for (auto alpha : {Sign::minus, Sign::plus}) {
    const auto root = boundary(p, p.all(), side_of(alpha));
    const int top = dim_of(p, root);
    std::unordered_map<ElementSet, Certificate, ElementSetHash> found;
    std::unordered_set<ElementSet, ElementSetHash> visited;

    // `wrap` rebuilds the certificate of the current node from the root.
    std::function<void(const ElementSet&, const std::function<Certificate(Certificate)>&)> visit =
        [&](const ElementSet& s, const std::function<Certificate(Certificate)>& wrap) {
          if (!visited.insert(s).second) return;
          if (dim_of(p, s) == top && is_round(p, s)) found.emplace(s, wrap(literal_for(p, s)));
          for_each_split(p, s, [&](const Split& sp) {
            if (!rec.molecule(sp.left) || !rec.molecule(sp.right)) return false;
            const auto left_lit = literal_for(p, sp.left);
            const auto right_lit = literal_for(p, sp.right);
            const int k = sp.k;
            visit(sp.left, [&wrap, k, right_lit](Certificate c) { return wrap(paste_certificate(k, c, right_lit)); });
            visit(sp.right, [&wrap, k, left_lit](Certificate c) { return wrap(paste_certificate(k, left_lit, c)); });
            return false;
          }, &nodes, budget);
        };
    try {
      if (rec.molecule(root)) visit(root, [](Certificate c) { return c; });
    } catch (const BudgetExceeded&) {
      out.complete = false;
    }

    std::vector<std::pair<std::vector<std::size_t>, ElementSet>> keys;
    for (const auto& [s, c] : found) keys.emplace_back(s.to_vector(), s);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, s] : keys) out.horns.push_back(horn(u, alpha, s, found.at(s)));
    if (!out.complete) break;
  }
  return out;
}

RdcMap boundary_inclusion(PosetRef u) {
  const auto b = boundary(*u, u->all(), Side::both);
  return subset_inclusion(std::move(u), b);
}

HornIdentityCheck check_horn_gray_identity(const Horn& h, PosetRef u, bool dual, std::size_t budget) {
  HornIdentityCheck out;
  const auto du = boundary_inclusion(u);
  const auto pp = dual ? pushout_product(du, h.inclusion) : pushout_product(h.inclusion, du);
  const auto& amb = pp.ambient;

  ElementSet sub = amb.result.none();
  for (std::size_t z = 0; z < amb.result.size(); ++z) {
    const auto [a, b] = amb.pair_index[z];
    if (h.sub.test(dual ? b : a)) sub.set(z);
  }
  const Sign alpha = dual && u->dim() % 2 != 0 ? -h.sign : h.sign;
  auto ambient = pp.inclusion.target;
  const auto cert = find_certificate(*ambient, alpha, sub, budget);
  if (!cert) {
    out.detail = "no rewritability certificate found for the transported submolecule";
    return out;
  }
  Horn rhs;
  try {
    rhs = horn(ambient, alpha, sub, *cert);
  } catch (const Error& e) {
    out.detail = e.what();
    return out;
  }
  if (rhs.complex != pp.image) {
    out.detail = "image of the pushout-product differs from the horn";
    return out;
  }
  if (!same_map(rhs.inclusion, pp.inclusion)) {
    out.detail = "inclusions differ";
    return out;
  }
  out.holds = true;
  return out;
}

}  // namespace odot
