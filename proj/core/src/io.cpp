#include "odot/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "odot/error.hpp"

namespace odot {

namespace {

/// Non-empty, non-comment lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] != '#') out.emplace_back(line_no, line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

std::size_t to_index(const std::string& s, std::size_t line) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    parse_fail(line, "expected a natural number, got '" + s + "'");
  try {
    return std::stoul(s);
  } catch (const std::exception&) {
    parse_fail(line, "number out of range: '" + s + "'");
  }
}

void expect_header(const std::vector<std::pair<std::size_t, std::string>>& lines, const std::string& magic) {
  if (lines.empty()) throw Error(ErrorKind::parse, "empty input");
  const auto t = tokens(lines[0].second);
  if (t.size() != 2 || t[0] != magic || t[1] != "1") parse_fail(lines[0].first, "expected '" + magic + " 1'");
}

std::string rest_after(const std::string& line, const std::string& keyword) {
  auto pos = line.find(keyword);
  pos = line.find_first_not_of(" \t", pos + keyword.size());
  if (pos == std::string::npos) return {};
  auto end = line.find_last_not_of(" \t");
  return line.substr(pos, end - pos + 1);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_ogp(const OgPoset& p) {
  std::ostringstream out;
  out << "ogp 1\ngrades";
  for (const auto& g : p.grades()) out << ' ' << g.size();
  out << '\n';
  for (std::size_t n = 1; n < p.num_grades(); ++n)
    for (std::size_t i = 0; i < p.grade_size(n); ++i) {
      const auto& e = p.element({n, i});
      out << "face " << n << ' ' << i << " -";
      for (auto j : e.input) out << ' ' << j;
      out << "\nface " << n << ' ' << i << " +";
      for (auto j : e.output) out << ' ' << j;
      out << '\n';
    }
  return out.str();
}

OgPoset parse_ogp(std::string_view text) {
  const auto lines = content_lines(text);
  expect_header(lines, "ogp");
  if (lines.size() < 2) throw Error(ErrorKind::parse, "missing grades line");
  auto t = tokens(lines[1].second);
  if (t.empty() || t[0] != "grades") parse_fail(lines[1].first, "expected 'grades'");
  std::vector<OgPoset::Grade> grades;
  for (std::size_t k = 1; k < t.size(); ++k) grades.emplace_back(to_index(t[k], lines[1].first));

  std::map<std::pair<std::pair<std::size_t, std::size_t>, char>, bool> seen;
  for (std::size_t l = 2; l < lines.size(); ++l) {
    const auto line = lines[l].first;
    t = tokens(lines[l].second);
    if (t.size() < 4 || t[0] != "face") parse_fail(line, "expected 'face n i +|- ...'");
    const auto n = to_index(t[1], line);
    const auto i = to_index(t[2], line);
    if (n == 0 || n >= grades.size()) parse_fail(line, "grade " + std::to_string(n) + " has no face table");
    if (i >= grades[n].size()) parse_fail(line, "element " + std::to_string(n) + "." + std::to_string(i) +
                                                    " exceeds the declared grade size");
    if (t[3] != "-" && t[3] != "+") parse_fail(line, "expected sign '-' or '+'");
    if (seen[{{n, i}, t[3][0]}]) parse_fail(line, "repeated face line");
    seen[{{n, i}, t[3][0]}] = true;
    auto& dst = t[3] == "-" ? grades[n][i].input : grades[n][i].output;
    for (std::size_t k = 4; k < t.size(); ++k) dst.push_back(static_cast<std::uint32_t>(to_index(t[k], line)));
  }
  return OgPoset(std::move(grades));
}

std::string to_sub(const OgPoset& p, const ElementSet& s) {
  std::string out = "sub\n";
  s.for_each([&](std::size_t x) {
    const auto id = p.id(x);
    out += "sel " + std::to_string(id.grade) + " " + std::to_string(id.index) + "\n";
  });
  return out;
}

ElementSet parse_sub(std::string_view text, const OgPoset& p) {
  const auto lines = content_lines(text);
  if (lines.empty() || tokens(lines[0].second) != std::vector<std::string>{"sub"})
    throw Error(ErrorKind::parse, "expected 'sub' header");
  ElementSet s = p.none();
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto t = tokens(lines[l].second);
    if (t.size() != 3 || t[0] != "sel") parse_fail(lines[l].first, "expected 'sel n i'");
    const ElementId id{to_index(t[1], lines[l].first), to_index(t[2], lines[l].first)};
    if (!p.contains(id)) throw Error(ErrorKind::invalid_element, to_string(id));
    s.set(p.flat(id));
  }
  return s;
}

// ---------------------------------------------------------------------------

std::string to_ogm(const OgmDocument& doc) {
  std::string out = "ogm 1\nsource " + doc.source + "\ntarget " + doc.target + "\n";
  for (const auto& [x, y] : doc.sends) out += "send " + std::to_string(x.grade) + " " + std::to_string(x.index) +
                                             " -> " + std::to_string(y.grade) + " " + std::to_string(y.index) + "\n";
  return out;
}

OgmDocument parse_ogm(std::string_view text) {
  const auto lines = content_lines(text);
  expect_header(lines, "ogm");
  OgmDocument doc;
  bool have_source = false, have_target = false;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& [line, body] = lines[l];
    const auto t = tokens(body);
    if (t[0] == "source") {
      doc.source = rest_after(body, "source");
      have_source = true;
    } else if (t[0] == "target") {
      doc.target = rest_after(body, "target");
      have_target = true;
    } else if (t[0] == "send") {
      if (t.size() != 6 || t[3] != "->") parse_fail(line, "expected 'send n i -> m j'");
      doc.sends.push_back({{to_index(t[1], line), to_index(t[2], line)}, {to_index(t[4], line), to_index(t[5], line)}});
    } else {
      parse_fail(line, "unknown directive '" + t[0] + "'");
    }
  }
  if (!have_source || !have_target) throw Error(ErrorKind::parse, "missing source or target");
  std::stable_sort(doc.sends.begin(), doc.sends.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return doc;
}

OgmDocument ogm_for(const RdcMap& f, std::string source_path, std::string target_path) {
  OgmDocument doc{std::move(source_path), std::move(target_path), {}};
  for (std::size_t x = 0; x < f.assignment.size(); ++x) doc.sends.emplace_back(f.source->id(x), f.target->id(f[x]));
  return doc;
}

// ---------------------------------------------------------------------------

std::string to_smp(const SimplicialSet& s) {
  std::string out = "smp 1\n";
  for (std::size_t k = 0; k < s.simplices.size(); ++k)
    for (std::size_t id = 0; id < s.simplices[k].size(); ++id) {
      out += "simplex " + std::to_string(k) + " " + std::to_string(id) + ":";
      for (auto v : s.simplices[k][id]) out += " " + s.labels[v];
      out += "\n";
    }
  return out;
}

SimplicialSet parse_smp(std::string_view text) {
  const auto lines = content_lines(text);
  expect_header(lines, "smp");
  SimplicialSet s;
  std::map<std::string, std::uint32_t> vertex;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& [line, body] = lines[l];
    const auto t = tokens(body);
    if (t.size() < 4 || t[0] != "simplex" || t[2].empty() || t[2].back() != ':')
      parse_fail(line, "expected 'simplex k id: labels...'");
    const auto k = to_index(t[1], line);
    const auto id = to_index(t[2].substr(0, t[2].size() - 1), line);
    if (t.size() != k + 4) parse_fail(line, "a " + std::to_string(k) + "-simplex needs " + std::to_string(k + 1) +
                                                " vertices");
    if (s.simplices.size() <= k) s.simplices.resize(k + 1);
    if (id != s.simplices[k].size()) parse_fail(line, "simplex ids must be consecutive from 0");
    Chain c;
    for (std::size_t j = 3; j < t.size(); ++j) {
      if (k == 0) {
        if (vertex.count(t[j])) parse_fail(line, "repeated vertex '" + t[j] + "'");
        vertex[t[j]] = static_cast<std::uint32_t>(s.labels.size());
        s.labels.push_back(t[j]);
      }
      auto it = vertex.find(t[j]);
      if (it == vertex.end()) parse_fail(line, "unknown vertex '" + t[j] + "'");
      c.push_back(it->second);
    }
    s.simplices[k].push_back(std::move(c));
  }
  return s;
}

std::string to_dot(const OgPoset& p) {
  std::ostringstream out;
  out << "digraph odot {\n  rankdir=BT;\n";
  for (std::size_t x = 0; x < p.size(); ++x) out << "  \"" << to_string(p.id(x)) << "\";\n";
  for (std::size_t x = 0; x < p.size(); ++x)
    for (auto s : {Sign::minus, Sign::plus})
      for (auto y : p.faces(x, s))
        out << "  \"" << to_string(p.id(y)) << "\" -> \"" << to_string(p.id(x)) << "\" [label=\"" << to_char(s)
            << "\"];\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << text;
}

OgPoset read_ogp(const std::filesystem::path& path) { return parse_ogp(read_text(path)); }

RdcMap read_ogm(const std::filesystem::path& path) {
  const auto doc = parse_ogm(read_text(path));
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path q(p);
    return q.is_absolute() ? q : base / q;
  };
  auto src = share(read_ogp(resolve(doc.source)));
  auto tgt = share(read_ogp(resolve(doc.target)));
  std::vector<std::uint32_t> a(src->size(), 0);
  std::vector<bool> assigned(src->size(), false);
  for (const auto& [x, y] : doc.sends) {
    if (!src->contains(x)) throw Error(ErrorKind::invalid_element, "source element " + to_string(x));
    if (!tgt->contains(y)) throw Error(ErrorKind::invalid_element, "target element " + to_string(y));
    const auto fx = src->flat(x);
    if (assigned[fx]) throw Error(ErrorKind::parse, "element " + to_string(x) + " is sent twice");
    assigned[fx] = true;
    a[fx] = static_cast<std::uint32_t>(tgt->flat(y));
  }
  for (std::size_t x = 0; x < assigned.size(); ++x)
    if (!assigned[x]) throw Error(ErrorKind::parse, "element " + to_string(src->id(x)) + " is not sent anywhere");
  return make_map(std::move(src), std::move(tgt), std::move(a));
}

}  // namespace odot
