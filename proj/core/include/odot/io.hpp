#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "odot/maps.hpp"
#include "odot/nerve.hpp"
#include "odot/og_poset.hpp"

namespace odot {

// OGP v1: `ogp 1`, `grades k0 .. kd`, then `face n i - ...` / `face n i + ...`
// for every element of positive grade.
std::string to_ogp(const OgPoset& p);
/// Accepts posets that fail validation (dangling or overlapping faces) so that
/// they can be reported; throws Error(parse) on malformed text.
OgPoset parse_ogp(std::string_view text);

// Closed subsets: `sub` then one `sel n i` per element.
std::string to_sub(const OgPoset& p, const ElementSet& s);
ElementSet parse_sub(std::string_view text, const OgPoset& p);

// OGM v1: `ogm 1`, `source PATH`, `target PATH`, then `send n i -> m j`
// sorted by source element.
struct OgmDocument {
  std::string source;
  std::string target;
  std::vector<std::pair<ElementId, ElementId>> sends;
  friend bool operator==(const OgmDocument&, const OgmDocument&) = default;
};

std::string to_ogm(const OgmDocument& doc);
OgmDocument parse_ogm(std::string_view text);
OgmDocument ogm_for(const RdcMap& f, std::string source_path, std::string target_path);

// SMP v1: `smp 1`, then `simplex k id: e0 .. ek` with vertex labels.
std::string to_smp(const SimplicialSet& s);
SimplicialSet parse_smp(std::string_view text);

/// Covering diagram in Graphviz syntax, edges labelled by orientation.
std::string to_dot(const OgPoset& p);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);
OgPoset read_ogp(const std::filesystem::path& path);
/// Loads the map and both posets, resolving relative paths against the
/// directory of the OGM file.
RdcMap read_ogm(const std::filesystem::path& path);

}  // namespace odot
