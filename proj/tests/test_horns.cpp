#include <doctest.h>

#include <functional>

#include "odot/error.hpp"
#include "odot/horns.hpp"
#include "odot/nerve.hpp"
#include "odot/shapes.hpp"
#include "support.hpp"

using namespace odot;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::precondition;
}

}  // namespace

TEST_CASE("certificates print and parse") {
  const auto c = paste_certificate(0, literal_certificate({{1, 0}}), literal_certificate({{1, 1}, {1, 2}}));
  CHECK(to_string(c) == "paste(0, {1.0}, {1.1 1.2})");
  CHECK(to_string(parse_certificate("paste( 0 ,{1.0},{1.1  1.2} )")) == to_string(c));
  for (const char* bad : {"", "paste(0, {1.0})", "{1.0", "paste(x, {1.0}, {1.1})", "{1.0} extra", "{a.b}"})
    CHECK_THROWS_AS(parse_certificate(bad), Error);
}

TEST_CASE("horns of the arrow and the triangle") {
  const auto a = enumerate_horns(share(arrow().poset));
  REQUIRE(a.complete);
  CHECK(a.horns.size() == 2);

  const auto s = enumerate_horns(share(simplex(2)));
  REQUIRE(s.complete);
  REQUIRE(s.horns.size() == 4);
  std::size_t minus = 0;
  for (const auto& h : s.horns) minus += h.sign == Sign::minus ? 1 : 0;
  CHECK(minus == 1);
  CHECK(s.horns.front().sign == Sign::minus);
}

TEST_CASE("horn complexes match their definition") {
  for (const auto& e : testing::atoms(9)) {
    const auto u = share(e.molecule.poset);
    const oracle::Flat f(*u);
    const int d = u->dim();
    INFO(e.name);
    for (const auto& h : enumerate_horns(u).horns) {
      const auto bu = oracle::boundary(f, testing::to_mask(u->all()), 2, d - 1);
      const auto v = testing::to_mask(h.sub);
      const auto bv = oracle::boundary(f, v, 2, d - 2);
      oracle::Mask want(u->size(), 0);
      for (std::size_t x = 0; x < u->size(); ++x) want[x] = bu[x] && !(v[x] && !bv[x]);
      CHECK(testing::to_mask(h.complex) == want);
      CHECK(check_certificate(*u, h.sign, h.sub, h.certificate).valid);
      CHECK(image(h.inclusion) == h.complex);
      CHECK(check_map(h.inclusion).ok());
    }
  }
}

TEST_CASE("every face of a simplex spans exactly one single-face horn") {
  for (int n = 1; n <= 3; ++n) {
    const auto u = share(simplex(n));
    const auto horns = enumerate_horns(u);
    REQUIRE(horns.complete);
    const std::size_t top = u->size() - 1;
    for (auto alpha : {Sign::minus, Sign::plus})
      for (auto x : u->faces(top, alpha)) {
        std::size_t hits = 0;
        for (const auto& h : horns.horns) hits += h.sub == u->lower_set(x) ? 1 : 0;
        CHECK(hits == 1);
      }
  }
}

TEST_CASE("horn construction rejects bad input") {
  const auto s = share(simplex(2));
  const auto in = boundary(*s, s->all(), Side::minus);
  const auto cert = literal_for(*s, in);
  const auto corner = boundary(*s, in, Side::minus, 0);
  CHECK(kind_of([&] { horn(s, Sign::minus, corner, literal_for(*s, corner)); }) == ErrorKind::wrong_dimension);
  CHECK(kind_of([&] { horn(s, Sign::plus, in, cert); }) == ErrorKind::not_rewritable);
  const auto aa = share(paste(arrow(), arrow(), 0).poset);
  CHECK(kind_of([&] { horn(aa, Sign::minus, aa->none(), cert); }) == ErrorKind::precondition);
  CHECK(horn(s, Sign::minus, in, cert).complex.count() == 5);
}

TEST_CASE("certificates that do not decompose the boundary are rejected") {
  const auto s = simplex(2);
  const auto out = boundary(s, s.all(), Side::plus);
  const auto edges = maximal_elements(s, out);
  std::vector<ElementId> ids;
  edges.for_each([&](std::size_t x) { ids.push_back(s.id(x)); });
  REQUIRE(ids.size() == 2);
  const auto v = s.lower_set(s.flat(ids[0]));
  auto pasted = [&](ElementId l, ElementId r) {
    return check_certificate(s, Sign::plus, v, paste_certificate(0, literal_certificate({l}), literal_certificate({r})))
        .valid;
  };
  CHECK(pasted(ids[0], ids[1]) != pasted(ids[1], ids[0]));
  CHECK_FALSE(check_certificate(s, Sign::plus, v, literal_certificate({ids[0]})).valid);
  CHECK_FALSE(check_certificate(s, Sign::plus, v, literal_certificate({{4, 0}})).valid);
}

TEST_CASE("horn complexes are contractible") {
  for (const auto& e : testing::atoms(9)) {
    const auto u = share(e.molecule.poset);
    for (const auto& h : enumerate_horns(u).horns) {
      const auto sd = subdivide(*u, h.complex);
      CHECK(homology(sd, u->dim()).is_trivial());
    }
  }
}

TEST_CASE("Gray products of horns with boundaries are horns") {
  const auto a = share(arrow().poset);
  const auto s = share(simplex(2));
  for (const auto& w : {a, s})
    for (const auto& h : enumerate_horns(w).horns)
      for (const auto& u : {a, share(point().poset)})
        for (bool dual : {false, true}) {
          const auto r = check_horn_gray_identity(h, u, dual);
          INFO(r.detail);
          CHECK(r.holds);
        }
}
