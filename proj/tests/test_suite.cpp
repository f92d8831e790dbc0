#include <doctest.h>

#include <set>

#include "odot/error.hpp"
#include "odot/suite.hpp"
#include "support.hpp"

using namespace odot;

namespace {

SuiteConfig small() {
  SuiteConfig c;
  c.element_budget = 7;
  c.pair_budget = 5;
  c.horn_budget = 7;
  c.pastings = 20;
  return c;
}

}  // namespace

TEST_CASE("a small suite run passes and is sorted") {
  const auto r = run_suite(small());
  CHECK(r.ok());
  CHECK_FALSE(r.exhausted);
  CHECK(r.count(Verdict::fail) == 0);
  CHECK(r.count(Verdict::pass) > 0);
  for (std::size_t i = 1; i < r.results.size(); ++i) {
    const auto& a = r.results[i - 1];
    const auto& b = r.results[i];
    CHECK((a.id < b.id || (a.id == b.id && a.instance <= b.instance)));
  }
  std::set<std::string> ids;
  for (const auto& c : r.results) ids.insert(c.id);
  for (const char* id : {"fixture.intro", "fixture.coconnection", "paste.boundaries", "maps.ez", "horns.enumerate",
                         "nerve.atom", "tensor.monoidal"})
    CHECK(ids.count(id) == 1);
  const auto text = r.to_string();
  CHECK(text.find("check fixture.intro ") != std::string::npos);
  CHECK(text.find(" FAIL\n") == std::string::npos);
}

TEST_CASE("tiny budgets skip instead of failing") {
  auto c = small();
  c.element_budget = 3;
  const auto r = run_suite(c);
  CHECK(r.count(Verdict::fail) == 0);
  CHECK(r.count(Verdict::skip) > 0);
}

TEST_CASE("corrupted fixtures are reported by name") {
  for (const std::string name : {"intro", "coconnection", "simplex2"}) {
    auto c = small();
    c.element_budget = 9;
    c.corrupt = name;
    const auto r = run_suite(c);
    INFO(name);
    CHECK_FALSE(r.ok());
    std::size_t named = 0;
    for (const auto& res : r.results)
      if (res.verdict == Verdict::fail) {
        CHECK(res.instance.find(instance_label(name)) != std::string::npos);
        ++named;
      }
    CHECK(named >= 1);
  }
}

TEST_CASE("results do not depend on the thread count") {
  auto c = small();
  const auto one = run_suite(c).to_string();
  c.threads = 3;
  CHECK(run_suite(c).to_string() == one);
}

TEST_CASE("configuration is validated") {
  auto c = small();
  c.element_budget = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = small();
  c.corrupt = "no-such-fixture";
  CHECK_THROWS_AS(run_suite(c), Error);
  c = small();
  c.threads = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("random pastings are seeded and respect the budget") {
  const auto& g = testing::gallery(7);
  const auto a = random_pastings(g, 30, 5, 9);
  const auto b = random_pastings(g, 30, 5, 9);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == 30);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].left == b[i].left);
    CHECK(a[i].right == b[i].right);
    CHECK(a[i].k == b[i].k);
    const auto m = paste(g[a[i].left].molecule, g[a[i].right].molecule, a[i].k);
    CHECK(m.size() <= 9);
    CHECK(check_pasting_boundaries(g[a[i].left].molecule, g[a[i].right].molecule, a[i].k).empty());
  }
}

TEST_CASE("instance labels drop spaces") { CHECK(instance_label("paste(0, point, point)") == "paste(0,point,point)"); }
