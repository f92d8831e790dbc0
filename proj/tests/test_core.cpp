#include <doctest.h>

#include <random>

#include "odot/core.hpp"
#include "odot/error.hpp"
#include "odot/gallery.hpp"
#include "odot/shapes.hpp"
#include "support.hpp"

using namespace odot;
using testing::set_of;

TEST_CASE("validate accepts the arrow and flags broken tables") {
  CHECK(validate(arrow().poset).ok());

  const auto d = testing::build({{0, {}, {}}, {0, {}, {}}, {1, {0}, {5}}});
  CHECK_FALSE(d.well_formed());
  const auto r = validate(d);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations.front().kind == "dangling face");

  const auto r2 = validate(testing::build({{0, {}, {}}, {0, {}, {}}, {1, {0}, {0}}}));
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.violations.front().kind == "overlapping signs");
}

TEST_CASE("boundaries of the whisker diagram") {
  const auto m = intro_example();
  const auto& p = m.poset;
  REQUIRE(p.size() == 7);
  CHECK(boundary(p, p.all(), Side::minus, 1) == set_of(p, {"0.0", "0.1", "0.2", "1.0", "1.2"}));
  CHECK(boundary(p, p.all(), Side::plus, 1) == set_of(p, {"0.0", "0.1", "0.2", "1.1", "1.2"}));
  CHECK(boundary(p, p.all(), Side::minus, 0) == set_of(p, {"0.0"}));
  CHECK(boundary(p, p.all(), Side::plus, 0) == set_of(p, {"0.2"}));
  CHECK(boundary(p, p.all(), Side::both, -1).empty());
  CHECK(boundary(p, p.all(), Side::minus, 2) == p.all());
}

TEST_CASE("boundary of the arrow") {
  const auto p = arrow().poset;
  CHECK(boundary(p, p.all(), Side::minus) == set_of(p, {"0.0"}));
  CHECK(boundary(p, p.all(), Side::plus) == set_of(p, {"0.1"}));
  CHECK(boundary(p, p.all(), Side::both) == set_of(p, {"0.0", "0.1"}));
}

TEST_CASE("boundaries agree with the reference on every closed subset") {
  for (const auto& e : testing::gallery(9)) {
    const auto& p = e.molecule.poset;
    const oracle::Flat f(p);
    for (const auto& u : testing::closed_subsets(p))
      for (int n = -1; n <= p.dim(); ++n)
        for (auto [side, s] : {std::pair{Side::minus, 0}, {Side::plus, 1}, {Side::both, 2}}) {
          INFO(e.name << " n=" << n);
          CHECK(testing::to_mask(boundary(p, u, side, n)) == oracle::boundary(f, testing::to_mask(u), s, n));
        }
  }
}

TEST_CASE("closure, closedness and order") {
  const auto p = intro_example().poset;
  const std::vector<ElementId> seed{{2, 0}};
  const auto c = closure(p, seed);
  CHECK(testing::labels_of(p, c.elements()) == std::vector<std::string>{"0.0", "0.1", "1.0", "1.1", "2.0"});
  CHECK(c.dim() == 2);
  CHECK(is_closed(p, c.elements()));
  CHECK_FALSE(is_closed(p, set_of(p, {"1.2"})));
  CHECK(leq(p, {0, 0}, {2, 0}));
  CHECK_FALSE(leq(p, {0, 2}, {2, 0}));
  CHECK(interval(p, {0, 0}, {2, 0}).size() == 4);
  const std::vector<ElementId> bad{{7, 0}};
  CHECK_THROWS_AS(closure(p, bad), Error);
}

TEST_CASE("maximal elements and dimension of subsets") {
  const auto p = intro_example().poset;
  CHECK(testing::labels_of(p, maximal_elements(p, p.all())) == std::vector<std::string>{"1.2", "2.0"});
  CHECK(dim_of(p, p.none()) == -1);
  CHECK(dim_of(p, boundary(p, p.all(), Side::minus, 1)) == 1);
}

TEST_CASE("restriction keeps grade order and embeds back") {
  const auto p = intro_example().poset;
  const auto r = restrict_to(p, boundary(p, p.all(), Side::plus, 1));
  CHECK(r.poset.grade_sizes() == std::vector<std::size_t>{3, 2});
  CHECK(r.embedding == std::vector<std::uint32_t>{0, 1, 2, 4, 5});
}

TEST_CASE("isomorphism counts match the brute-force reference") {
  std::mt19937_64 rng(11);
  for (const auto& e : testing::gallery(9)) {
    const auto& p = e.molecule.poset;
    INFO(e.name);
    CHECK(count_isomorphisms(p, p, 100) == oracle::count_isomorphisms(p, p));
    const auto q = testing::shuffled(p, rng);
    const auto iso = find_isomorphism(p, q);
    REQUIRE(iso);
    CHECK(oracle::count_isomorphisms(p, q) == 1);
  }
  const auto two_points = testing::build({{0, {}, {}}, {0, {}, {}}});
  CHECK(count_isomorphisms(two_points, two_points, 10) == 2);
  CHECK_FALSE(find_isomorphism(arrow().poset, point().poset));
}

TEST_CASE("subset isomorphism between the two sides of a globe") {
  const auto g = globe(2).poset;
  const auto in = boundary(g, g.all(), Side::minus, 1);
  const auto out = boundary(g, g.all(), Side::plus, 1);
  const auto m = find_subset_isomorphism(g, in, g, out);
  REQUIRE(m);
  CHECK((*m)[g.flat({1, 0})] == g.flat({1, 1}));
}

TEST_CASE("globular and round shapes") {
  CHECK(is_round(globe(3).poset));
  CHECK(is_round(simplex(3)));
  const auto whisker = intro_example().poset;
  CHECK(is_globular(whisker));
  CHECK_FALSE(is_round(whisker));
  CHECK(greatest_element(whisker, whisker.all()) == std::nullopt);
  CHECK(greatest_element(simplex(2), simplex(2).all()) == simplex(2).size() - 1);
}

TEST_CASE("every gallery molecule is globular and oriented thin") {
  for (const auto& e : testing::gallery(11)) {
    INFO(e.name);
    CHECK(is_globular(e.molecule.poset));
    CHECK(check_oriented_thinness(e.molecule.poset).ok());
  }
}

TEST_CASE("thinness fails on a bigon whose faces share a sign") {
  // Two edges x -> y and a 2-cell with both edges as inputs.
  const auto p = testing::build({{0, {}, {}}, {0, {}, {}}, {1, {0}, {1}}, {1, {0}, {1}}, {2, {0, 1}, {}}});
  CHECK_FALSE(check_oriented_thinness(p).ok());
}
