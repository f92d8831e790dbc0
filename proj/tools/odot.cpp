#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "odot/core.hpp"
#include "odot/error.hpp"
#include "odot/horns.hpp"
#include "odot/io.hpp"
#include "odot/maps.hpp"
#include "odot/nerve.hpp"
#include "odot/shapes.hpp"
#include "odot/suite.hpp"
#include "odot/tensor.hpp"

namespace fs = std::filesystem;
using namespace odot;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  unsigned threads = 1;
  std::optional<std::size_t> budget;

  std::size_t budget_or(std::size_t fallback) const { return budget.value_or(fallback); }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    write_text(path, text);
}

Molecule load_molecule(const std::string& path, std::size_t budget) {
  auto m = as_molecule(read_ogp(path), budget);
  if (!m) throw Error(ErrorKind::precondition, path + " is not a molecule");
  return *m;
}

std::string map_line(const RdcMap& f) {
  std::string out;
  for (std::size_t x = 0; x < f.assignment.size(); ++x)
    out += (x ? " " : "") + to_string(f.source->id(x)) + "->" + to_string(f.target->id(f[x]));
  return out;
}

/// `path` written relative to the directory `dir`, as OGM files expect.
std::string relative_to(const fs::path& path, const fs::path& dir) {
  return fs::relative(fs::absolute(path), fs::absolute(dir.empty() ? fs::path(".") : dir)).generic_string();
}

/// Writes `f` as an OGM file whose source and target live at the given paths.
void write_map(const RdcMap& f, const fs::path& out, const fs::path& source, const fs::path& target) {
  const auto dir = out.parent_path();
  write_text(out, to_ogm(ogm_for(f, relative_to(source, dir), relative_to(target, dir))));
}

/// Paths of the source and target named in an OGM file, resolved.
std::pair<fs::path, fs::path> ogm_paths(const fs::path& file) {
  const auto doc = parse_ogm(read_text(file));
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : file.parent_path() / p; };
  return {resolve(doc.source), resolve(doc.target)};
}

Sign parse_sign(const std::string& s) {
  if (s == "-" || s == "minus") return Sign::minus;
  if (s == "+" || s == "plus") return Sign::plus;
  throw UsageError("sign must be '-' or '+'");
}

// ---------------------------------------------------------------------------

void add_build(CLI::App& app, int& status) {
  auto* sub = app.add_subcommand("build", "Write a standard shape");
  static std::string kind, out;
  static std::optional<int> n;
  sub->add_option("kind", kind, "point, arrow, globe, simplex or cube")->required();
  sub->add_option("n", n, "Dimension for globe, simplex and cube")->check(CLI::NonNegativeNumber);
  sub->add_option("-o,--output", out, "Output OGP file (default stdout)");
  sub->callback([&status] {
    OgPoset p;
    if (kind == "point" || kind == "arrow") {
      if (n) throw UsageError(kind + " takes no dimension");
      p = kind == "point" ? point().poset : arrow().poset;
    } else if (kind == "globe" || kind == "simplex" || kind == "cube") {
      if (!n) throw UsageError(kind + " needs a dimension");
      p = kind == "globe" ? globe(*n).poset : kind == "simplex" ? simplex(*n) : cube(*n);
    } else {
      throw UsageError("unknown shape '" + kind + "'");
    }
    emit(to_ogp(p), out);
    status = kOk;
  });
}

void add_constructors(CLI::App& app, const Globals& g, int& status) {
  {
    auto* sub = app.add_subcommand("paste", "Paste two molecules along their k-boundaries");
    static std::string a, b, out;
    static int k = 0;
    sub->add_option("A", a)->required()->check(CLI::ExistingFile);
    sub->add_option("B", b)->required()->check(CLI::ExistingFile);
    sub->add_option("--k", k, "Pasting dimension")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("-o,--output", out);
    sub->callback([&] {
      const auto u = load_molecule(a, g.budget_or(kDefaultSearchBudget));
      const auto v = load_molecule(b, g.budget_or(kDefaultSearchBudget));
      emit(to_ogp(paste(u, v, k).poset), out);
      status = kOk;
    });
  }
  {
    auto* sub = app.add_subcommand("cell", "Form the cell A => B of two round molecules");
    static std::string a, b, out;
    sub->add_option("A", a)->required()->check(CLI::ExistingFile);
    sub->add_option("B", b)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", out);
    sub->callback([&] {
      const auto u = load_molecule(a, g.budget_or(kDefaultSearchBudget));
      const auto v = load_molecule(b, g.budget_or(kDefaultSearchBudget));
      emit(to_ogp(cell(u, v).poset), out);
      status = kOk;
    });
  }
  for (const std::string verb : {"gray", "join"}) {
    auto* sub = app.add_subcommand(verb, verb == "gray" ? "Gray product of two shapes" : "Join of two shapes");
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>(), out = std::make_shared<std::string>();
    sub->add_option("A", *a)->required()->check(CLI::ExistingFile);
    sub->add_option("B", *b)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", *out);
    sub->callback([&status, verb, a, b, out] {
      const auto p = read_ogp(*a), q = read_ogp(*b);
      emit(to_ogp(verb == "gray" ? gray(p, q).result : join(p, q)), *out);
      status = kOk;
    });
  }
  {
    auto* sub = app.add_subcommand("cylinder", "Gray product with the arrow, with its structure maps");
    static std::string u, out, maps;
    sub->add_option("U", u)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", out, "Output OGP file (default stdout)");
    sub->add_option("--maps", maps, "Write PREFIX-minus.ogm, PREFIX-plus.ogm and PREFIX-sigma.ogm");
    sub->callback([&] {
      if (!maps.empty() && out.empty()) throw UsageError("--maps needs --output");
      const auto c = cylinder(share(read_ogp(u)));
      emit(to_ogp(c.product.result), out);
      if (!maps.empty()) {
        write_map(c.iota_minus, maps + "-minus.ogm", u, out);
        write_map(c.iota_plus, maps + "-plus.ogm", u, out);
        write_map(c.sigma, maps + "-sigma.ogm", out, u);
      }
      status = kOk;
    });
  }
  {
    auto* sub = app.add_subcommand("pp", "Pushout-product of two inclusions");
    static std::string m1, m2, prefix;
    sub->add_option("M1", m1)->required()->check(CLI::ExistingFile);
    sub->add_option("M2", m2)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", prefix, "Writes PREFIX.ogp, PREFIX-image.ogp and PREFIX.ogm")->required();
    sub->callback([&] {
      const auto r = pushout_product(read_ogm(m1), read_ogm(m2));
      write_text(prefix + ".ogp", to_ogp(r.ambient.result));
      write_text(prefix + "-image.ogp", to_ogp(*r.inclusion.source));
      write_map(r.inclusion, prefix + ".ogm", prefix + "-image.ogp", prefix + ".ogp");
      std::cout << r.image.count() << " of " << r.ambient.result.size() << " elements\n";
      status = kOk;
    });
  }
}

void add_horns(CLI::App& app, const Globals& g, int& status) {
  {
    auto* sub = app.add_subcommand("horn", "Horn of an atom at a rewritable submolecule");
    static std::string u, sign, subfile, certfile, out;
    sub->add_option("U", u)->required()->check(CLI::ExistingFile);
    sub->add_option("--sign", sign, "Boundary side, '-' or '+'")->required();
    sub->add_option("--sub", subfile, "SUB file selecting the submolecule")->required()->check(CLI::ExistingFile);
    sub->add_option("--cert", certfile, "Rewritability certificate (searched for if omitted)")
        ->check(CLI::ExistingFile);
    sub->add_option("-o,--output", out, "Output SUB file for the horn (default stdout)");
    sub->callback([&] {
      const auto alpha = parse_sign(sign);
      const auto p = share(read_ogp(u));
      const auto v = parse_sub(read_text(subfile), *p);
      const auto budget = g.budget_or(kDefaultSearchBudget);
      Certificate c;
      if (!certfile.empty()) {
        c = parse_certificate(read_text(certfile));
      } else if (auto found = find_certificate(*p, alpha, v, budget)) {
        c = *found;
      } else {
        throw Error(ErrorKind::not_rewritable, "no certificate found within the budget");
      }
      const auto h = horn(p, alpha, v, c);
      emit(to_sub(*p, h.complex), out);
      std::cerr << "certificate " << to_string(h.certificate) << "\n";
      status = kOk;
    });
  }
  {
    auto* sub = app.add_subcommand("horns", "Enumerate the horns of an atom");
    static std::string u;
    sub->add_option("U", u)->required()->check(CLI::ExistingFile);
    sub->callback([&] {
      const auto p = share(read_ogp(u));
      const auto e = enumerate_horns(p, g.budget_or(kDefaultSearchBudget));
      for (const auto& h : e.horns)
        std::cout << "horn " << to_char(h.sign) << " " << to_string(literal_for(*p, h.sub)) << " cert "
                  << to_string(h.certificate) << "\n";
      if (!e.complete) {
        std::cerr << "odot: horn enumeration stopped at the budget\n";
        status = kBudget;
        return;
      }
      status = kOk;
    });
  }
}

void add_sd(CLI::App& app, const Globals& g, int& status) {
  auto* sub = app.add_subcommand("sd", "Subdivision: nerve of the underlying poset");
  static std::string u, exportfile;
  static std::optional<int> hdim;
  sub->add_option("U", u)->required()->check(CLI::ExistingFile);
  sub->add_option("--homology", hdim, "Print reduced homology up to degree D")->check(CLI::NonNegativeNumber);
  sub->add_option("--export", exportfile, "Write the simplicial set as SMP");
  sub->callback([&] {
    const auto budget = g.budget_or(kDefaultSimplexBudget);
    const auto s = subdivide(read_ogp(u), budget);
    for (std::size_t k = 0; k < s.simplices.size(); ++k)
      std::cout << "simplices " << k << " " << s.count(k) << "\n";
    if (hdim) std::cout << homology(s, *hdim, budget).to_string();
    if (!exportfile.empty()) write_text(exportfile, to_smp(s));
    status = kOk;
  });
}

void add_map(CLI::App& app, const Globals& g, int& status) {
  auto* map = app.add_subcommand("map", "Maps of regular directed complexes");
  map->require_subcommand(1);
  {
    auto* sub = map->add_subcommand("validate", "Check the map conditions");
    static std::string f;
    sub->add_option("F", f)->required()->check(CLI::ExistingFile);
    sub->callback([&] {
      const auto r = check_map(read_ogm(f));
      if (r.ok()) {
        std::cout << "map\n";
        status = kOk;
        return;
      }
      for (const auto& p : r.problems) std::cout << "not a map: " << p << "\n";
      status = kCheckFailed;
    });
  }
  {
    auto* sub = map->add_subcommand("cartesian", "Check that a map is cartesian");
    static std::string f;
    sub->add_option("F", f)->required()->check(CLI::ExistingFile);
    sub->callback([&] {
      const auto m = read_ogm(f);
      if (auto r = check_map(m); !r.ok()) {
        std::cout << "not a map: " << r.problems.front() << "\n";
        status = kCheckFailed;
        return;
      }
      const auto r = check_cartesian(m);
      if (r.cartesian) {
        std::cout << "cartesian\n";
        status = kOk;
        return;
      }
      std::cout << "not cartesian: no lift of " << to_string(r.counterexample->second) << " under "
                << to_string(r.counterexample->first) << "\n";
      status = kCheckFailed;
    });
  }
  {
    auto* sub = map->add_subcommand("factorize", "Collapse followed by inclusion");
    static std::string f, prefix;
    sub->add_option("F", f)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", prefix, "Writes PREFIX-image.ogp, PREFIX-collapse.ogm, PREFIX-inclusion.ogm")
        ->required();
    sub->callback([&] {
      const auto [src, tgt] = ogm_paths(f);
      const auto fac = factorize(read_ogm(f));
      const auto image_path = prefix + "-image.ogp";
      write_text(image_path, to_ogp(*fac.collapse.target));
      write_map(fac.collapse, prefix + "-collapse.ogm", src, image_path);
      write_map(fac.inclusion, prefix + "-inclusion.ogm", image_path, tgt);
      std::cout << "image " << fac.collapse.target->size() << " elements\n";
      status = kOk;
    });
  }
  {
    auto* sub = map->add_subcommand("sections", "Sections of a collapse of atoms");
    static std::string f, prefix;
    sub->add_option("F", f)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", prefix, "Writes PREFIX-N.ogm per section");
    sub->callback([&] {
      const auto [src, tgt] = ogm_paths(f);
      const auto ss = sections(read_ogm(f));
      for (std::size_t i = 0; i < ss.size(); ++i) {
        std::cout << "section " << i << ": " << map_line(ss[i]) << "\n";
        if (!prefix.empty()) write_map(ss[i], prefix + "-" + std::to_string(i) + ".ogm", tgt, src);
      }
      status = kOk;
    });
  }
  {
    auto* sub = map->add_subcommand("enumerate", "All maps U -> P");
    static std::string u, p;
    static bool cartesian = false;
    sub->add_option("U", u)->required()->check(CLI::ExistingFile);
    sub->add_option("P", p)->required()->check(CLI::ExistingFile);
    sub->add_flag("--cartesian", cartesian, "Only cartesian maps");
    sub->callback([&] {
      const auto e = enumerate_maps(share(read_ogp(u)), share(read_ogp(p)), cartesian, g.budget_or(5000000));
      for (const auto& m : e.maps) std::cout << map_line(m) << "\n";
      if (!e.complete) {
        std::cerr << "odot: map enumeration stopped at the budget\n";
        status = kBudget;
        return;
      }
      status = kOk;
    });
  }
}

void add_recognize(CLI::App& app, const Globals& g, int& status) {
  auto* sub = app.add_subcommand("recognize", "Decide whether a shape is a molecule");
  static std::string file;
  sub->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  sub->callback([&] {
    const auto p = read_ogp(file);
    const auto r = recognize_molecule(p, g.budget_or(kDefaultSearchBudget));
    switch (r.status) {
      case Recognition::molecule:
        std::cout << (greatest_element(p, p.all()) ? "atom " : "molecule ") << to_string(r.witness) << "\n";
        status = kOk;
        break;
      case Recognition::not_molecule:
        std::cout << "not a molecule\n";
        status = kCheckFailed;
        break;
      case Recognition::unknown:
        std::cout << "unknown\n";
        status = kBudget;
        break;
    }
  });
}

void add_render(CLI::App& app, int& status) {
  auto* sub = app.add_subcommand("render", "Draw the covering diagram");
  static std::string file;
  static bool dot = false;
  sub->add_option("U", file)->required()->check(CLI::ExistingFile);
  sub->add_flag("--dot", dot, "Graphviz output")->required();
  sub->callback([&] {
    std::cout << to_dot(read_ogp(file));
    status = kOk;
  });
}

void add_check(CLI::App& app, const Globals& g, int& status) {
  auto* sub = app.add_subcommand("check", "Check a property of a shape");
  static std::string property, file;
  sub->add_option("property", property, "regular, thin, round or globular")
      ->required()
      ->check(CLI::IsMember({"regular", "thin", "round", "globular"}));
  sub->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  sub->callback([&] {
    const auto p = read_ogp(file);
    if (const auto v = validate(p); !v.ok()) {
      std::cout << "not an oriented graded poset: " << v.violations.front().detail << "\n";
      status = kCheckFailed;
      return;
    }
    auto verdict = [&](bool ok, const std::string& yes, const std::string& why) {
      std::cout << (ok ? yes : "not " + yes + (why.empty() ? "" : ": " + why)) << "\n";
      status = ok ? kOk : kCheckFailed;
    };
    if (property == "regular") {
      const auto r = check_regular(p, g.budget_or(kDefaultSearchBudget));
      if (r.exhausted && r.failures.empty()) {
        std::cout << "unknown\n";
        status = kBudget;
        return;
      }
      verdict(r.regular, "regular",
              r.failures.empty() ? "" : "lower set of " + to_string(r.failures.front()) + " is not an atom");
    } else if (property == "thin") {
      const auto r = check_oriented_thinness(p);
      verdict(r.ok(), "oriented thin", r.ok() ? "" : r.violations.front().detail);
    } else if (property == "round") {
      verdict(is_round(p), "round", "");
    } else {
      verdict(is_globular(p), "globular", "");
    }
  });
}

void add_suite(CLI::App& app, const Globals& g, int& status) {
  auto* sub = app.add_subcommand("suite", "Run the invariant suite");
  static SuiteConfig config;
  sub->add_option("--element-budget", config.element_budget, "Largest shape for single-shape checks")
      ->capture_default_str();
  sub->add_option("--dimension-budget", config.dimension_budget)->capture_default_str();
  sub->add_option("--pair-budget", config.pair_budget, "Largest atom in checks over pairs")->capture_default_str();
  sub->add_option("--horn-budget", config.horn_budget, "Largest atom whose horns are enumerated")
      ->capture_default_str();
  sub->add_option("--seed", config.seed, "Seed for random pastings")->capture_default_str();
  sub->add_option("--pastings", config.pastings, "Number of random pastings")->capture_default_str();
  sub->add_option("--corrupt", config.corrupt, "Damage a built-in fixture");
  sub->callback([&] {
    config.threads = g.threads;
    config.search_budget = g.budget_or(config.search_budget);
    const auto report = run_suite(config);
    std::cout << report.to_string();
    for (const auto& r : report.results)
      if (r.verdict == Verdict::fail) std::cerr << "FAIL " << r.id << " " << r.instance << ": " << r.detail << "\n";
    std::cerr << report.count(Verdict::pass) << " passed, " << report.count(Verdict::fail) << " failed, "
              << report.count(Verdict::skip) << " skipped\n";
    status = !report.ok() ? kCheckFailed : report.exhausted ? kBudget : kOk;
  });
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::budget_exhausted: return kBudget;
    case ErrorKind::parse:
    case ErrorKind::io:
    case ErrorKind::invalid_element: return kUsage;
    default: return kCheckFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorics of regular directed complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  int status = kOk;
  app.add_option("--threads", g.threads, "Worker threads for the suite")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "Search budget (default: $ODOT_BUDGET or per command)")
      ->check(CLI::PositiveNumber);

  add_build(app, status);
  add_constructors(app, g, status);
  add_horns(app, g, status);
  add_sd(app, g, status);
  add_map(app, g, status);
  add_recognize(app, g, status);
  add_render(app, status);
  add_check(app, g, status);
  add_suite(app, g, status);

  if (const char* env = std::getenv("ODOT_BUDGET"); env && *env) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos != std::string(env).size() || v == 0) throw std::invalid_argument(env);
      g.budget = v;
    } catch (const std::exception&) {
      std::cerr << "odot: ODOT_BUDGET must be a positive integer\n";
      return kUsage;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "odot: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "odot: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "odot: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "odot: " << e.what() << "\n";
    return kCheckFailed;
  }
  return status;
}
