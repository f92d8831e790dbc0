#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odot/core.hpp"
#include "odot/maps.hpp"

namespace odot {

// ---------------------------------------------------------------------------
// Rewritability certificates

struct CertificateNode;
using Certificate = std::shared_ptr<const CertificateNode>;

/// Either a literal (the closure of the listed elements) or a pasting
/// paste(k, L, R) whose node set is L ∪ R.
struct CertificateNode {
  std::vector<ElementId> literal;
  int k = -1;  // -1 for literals
  Certificate left;
  Certificate right;

  bool is_literal() const { return k < 0; }
};

Certificate literal_certificate(std::vector<ElementId> generators);
Certificate paste_certificate(int k, Certificate left, Certificate right);

/// `paste(k, L, R)` over literals `{n.i n.i ...}`.
std::string to_string(const Certificate& c);
Certificate parse_certificate(std::string_view text);

/// Literal listing the maximal elements of `s`.
Certificate literal_for(const OgPoset& p, const ElementSet& s);

struct CertificateCheck {
  bool valid = false;
  std::string reason;
};

/// Checks that `c` is a decomposition tree of ∂ᵅU into molecules, joined by
/// valid pastings, with `v` among its nodes.
CertificateCheck check_certificate(const OgPoset& u, Sign alpha, const ElementSet& v, const Certificate& c,
                                   std::size_t budget = 200000);

/// Searches the pasting decompositions of ∂ᵅU for one containing `v` as a
/// node. Returns nullopt when none is found within budget.
std::optional<Certificate> find_certificate(const OgPoset& u, Sign alpha, const ElementSet& v,
                                            std::size_t budget = 200000);

// ---------------------------------------------------------------------------
// Horns

struct Horn {
  PosetRef atom;
  Sign sign = Sign::minus;
  ElementSet sub;      // V, a closed subset of ∂ᵅU
  ElementSet complex;  // Λ = ∂U ∖ (V ∖ ∂V)
  RdcMap inclusion;    // Λ -> U
  Certificate certificate;
};

/// Throws not_round, wrong_dimension or not_rewritable.
Horn horn(PosetRef u, Sign alpha, const ElementSet& v, const Certificate& certificate);

struct HornEnumeration {
  std::vector<Horn> horns;  // input side first, then by element set
  bool complete = true;
};

HornEnumeration enumerate_horns(PosetRef u, std::size_t budget = 200000);

/// ∂U -> U.
RdcMap boundary_inclusion(PosetRef u);

struct HornIdentityCheck {
  bool holds = false;
  std::string detail;
};

/// λ^W_V ⊗̂ ∂_U = λ^{W⊗U}_{V⊗U}, or with `dual` set, ∂_U ⊗̂ λ^W_V =
/// λ^{U⊗W}_{U⊗V}. The right-hand horn is certified by search.
HornIdentityCheck check_horn_gray_identity(const Horn& h, PosetRef u, bool dual, std::size_t budget = 200000);

}  // namespace odot
