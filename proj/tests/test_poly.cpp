#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "involkit/poly.hpp"

using namespace involkit;
using involkit::testing::gf;

namespace {
Polynomial P(const Field& f, std::vector<std::int64_t> c) { return Polynomial::from_ints(f, c); }
}  // namespace

TEST_CASE("core arithmetic examples") {
  auto f7 = gf(7);
  CHECK(P(f7, {1, 1}) * P(f7, {2, 1}) == P(f7, {2, 3, 1}));
  auto f2 = gf(2);
  CHECK(gcd(P(f2, {1, 0, 1}), P(f2, {1, 1})) == P(f2, {1, 1}));
  auto f3 = gf(3);
  CHECK(P(f3, {1, 0, 1}).eval(2) == 2);
  CHECK_THROWS_AS(P(f3, {1, 1}).divmod(Polynomial::zero(f3)), ContractError);
  auto [q, r] = P(f7, {2, 3, 1}).divmod(P(f7, {1, 1}));
  CHECK(q == P(f7, {2, 1}));
  CHECK(r.is_zero());
  CHECK(P(f7, {2, 3, 1}).derivative() == P(f7, {3, 2}));
  CHECK(P(f7, {2, 4}).make_monic() == P(f7, {4, 1}));
}

TEST_CASE("reciprocal examples") {
  auto f7 = gf(7);
  CHECK(reciprocal(P(f7, {2, 3, 1})) == P(f7, {4, 5, 1}));
  for (int p : {2, 3, 5, 7}) CHECK(reciprocal(P(gf(p), {1, 0, 1})) == P(gf(p), {1, 0, 1}));
  auto f5 = gf(5);
  auto f = P(f5, {3, 2, 0, 1});
  CHECK(reciprocal(reciprocal(f)) == f);
  CHECK_THROWS_AS(reciprocal(P(f5, {0, 1, 1})), ContractError);
  CHECK_THROWS_AS(reciprocal(P(f5, {1, 2})), ContractError);
}

TEST_CASE("self-reciprocal examples") {
  for (int p : {3, 5, 7})
    for (int a = 0; a < p; ++a) CHECK(is_self_reciprocal(P(gf(p), {1, a, 1})));
  auto f5 = gf(5);
  CHECK(is_self_reciprocal(P(f5, {1, 3, 3, 1})));
  CHECK_FALSE(is_self_reciprocal(P(f5, {1, 2, 3, 1})));
}

TEST_CASE("factor examples") {
  CHECK(is_irreducible(P(gf(2), {1, 1, 1})));
  auto f7 = gf(7);
  auto fac = factor(P(f7, {1, 1, 1}));
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0].first == P(f7, {3, 1}));
  CHECK(fac.factors[1].first == P(f7, {5, 1}));
  auto f3 = gf(3);
  auto cube = factor(P(f3, {0, 0, 0, 1}));
  REQUIRE(cube.factors.size() == 1);
  CHECK(cube.factors[0].first == P(f3, {0, 1}));
  CHECK(cube.factors[0].second == 3);
  CHECK_THROWS_AS(factor(Polynomial::zero(f3)), ContractError);
}

TEST_CASE("power of a self-reciprocal irreducible") {
  CHECK(power_of_self_reciprocal_irreducible(P(gf(5), {1, 3, 3, 1})));
  CHECK_FALSE(power_of_self_reciprocal_irreducible(P(gf(7), {2, 3, 1})));
  // x^2+1 irreducible exactly when -1 is a non-square: p = 3, 7.
  CHECK(power_of_self_reciprocal_irreducible(P(gf(3), {1, 0, 1})));
  CHECK(power_of_self_reciprocal_irreducible(P(gf(7), {1, 0, 1})));
  CHECK_FALSE(power_of_self_reciprocal_irreducible(P(gf(5), {1, 0, 1})));  // (x-2)(x-3)
}

TEST_CASE("irreducible counts match the necklace formula") {
  // Number of monic irreducibles of degree d over GF(q): (1/d) sum mu(d/e) q^e.
  struct Row {
    Field f;
    int d;
    std::size_t count;
  };
  for (const auto& row : {Row{gf(2), 2, 1}, Row{gf(2), 3, 2}, Row{gf(2), 4, 3}, Row{gf(3), 2, 3},
                          Row{gf(5), 2, 10}, Row{gf(7), 3, 112}, Row{gf(2, 2), 2, 6}})
    CHECK(monic_irreducibles(row.f, row.d).size() == row.count);
}

TEST_CASE("reciprocal and factorization properties") {
  std::mt19937_64 rng(11);
  for (const auto& f : involkit::testing::small_fields()) {
    CAPTURE(f->header());
    for (int trial = 0; trial < 25; ++trial) {
      const int deg = 1 + static_cast<int>(rng() % 5);
      auto g = involkit::testing::random_monic_unit(f, deg, rng);
      CHECK(reciprocal(reciprocal(g)) == g);
      CHECK(is_self_reciprocal(g) == (reciprocal(g) == g));
      auto fac = factor(g);
      CHECK(fac.expand(f) == g);
      for (const auto& [h, m] : fac.factors) CHECK(is_irreducible(h));
      for (std::size_t i = 1; i < fac.factors.size(); ++i) CHECK(fac.factors[i - 1].first < fac.factors[i].first);
      for (int k = 1; k <= 4; ++k) CHECK(is_self_reciprocal(g.pow(k)) == is_self_reciprocal(g));
      if (f->size() <= 9) {
        auto gt = reciprocal(g);
        for (Code a = 1; a < f->size(); ++a) CHECK((g.eval(a) == 0) == (gt.eval(f->inv(a)) == 0));
      }
    }
  }
}

TEST_CASE("polynomial text") {
  auto f7 = gf(7);
  auto g = P(f7, {2, 3, 1});
  CHECK(g.to_text() == "poly[2,3,1]");
  CHECK(g.pretty() == "x^2+3x+2");
  CHECK(parse_polynomial(f7, "poly[2,3,1]") == g);
  auto f4 = gf(2, 2);
  auto h = Polynomial(f4, {f4->from_coeffs({1, 1}), 1});
  CHECK(parse_polynomial(f4, h.to_text()) == h);
  CHECK_THROWS_AS(parse_polynomial(f7, "poly[2,3"), ParseError);
}
