#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "involkit/canonical.hpp"

using namespace involkit;
using involkit::testing::gf;

namespace {
Matrix M(const Field& f, std::vector<std::vector<std::int64_t>> rows) { return Matrix::from_ints(f, rows); }
Polynomial P(const Field& f, std::vector<std::int64_t> c) { return Polynomial::from_ints(f, c); }

std::vector<Polynomial> divisor_values(const CanonicalForm& cf) {
  std::vector<Polynomial> out;
  for (const auto& d : cf.divisors()) out.push_back(d.value());
  return out;
}

void check_rcf(const Matrix& a) {
  const auto r = rcf(a);
  CHECK(conjugate(a, r.conjugator) == r.form.assemble());
  CHECK(r.form.product() == charpoly(a));
  CHECK(r.form.lcm() == minpoly(a));
  CHECK(r.form == elementary_divisors(a));
  CHECK(rcf(r.form.assemble()).form == r.form);
}
}  // namespace

TEST_CASE("rcf examples") {
  auto f3 = gf(3);
  auto id = rcf(Matrix::identity(f3, 2));
  CHECK(divisor_values(id.form) == std::vector<Polynomial>{P(f3, {-1, 1}), P(f3, {-1, 1})});

  auto f7 = gf(7);
  auto d = rcf(Matrix::diag(f7, {2, 4}));
  CHECK(divisor_values(d.form) == std::vector<Polynomial>{P(f7, {-4, 1}), P(f7, {-2, 1})});

  auto f2 = gf(2);
  auto j = rcf(M(f2, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}));
  REQUIRE(j.form.divisors().size() == 2);
  CHECK(j.form.divisors()[0].base == P(f2, {1, 1}));
  CHECK(j.form.divisors()[0].multiplicity == 1);
  CHECK(j.form.divisors()[1].multiplicity == 2);
  CHECK(j.form.to_text() == "rcf{poly[1,1]^1, poly[1,1]^2}");
}

TEST_CASE("similarity examples") {
  auto f7 = gf(7);
  std::mt19937_64 rng(9);
  const Matrix a = involkit::testing::random_matrix(f7, 3, rng);
  const Matrix p = involkit::testing::random_invertible(f7, 3, rng);
  CHECK(similar(a, conjugate(a, p)));
  CHECK(similar(Matrix::diag(f7, {2, 4}), companion(P(f7, {-2, 1}) * P(f7, {-4, 1}))));
  // diag(a, 1/a) against (0 -1; 1 a+1/a) at a = 2.
  CHECK(similar(Matrix::diag(f7, {2, 4}), M(f7, {{0, -1}, {1, 6}})));
  CHECK_FALSE(similar(Matrix::unit(f7, 1, 2, 2), Matrix::zero(f7, 2)));
}

TEST_CASE("similar_to_inverse examples") {
  auto f7 = gf(7);
  CHECK(similar_to_inverse(tau(f7, 3)));
  CHECK(similar_to_inverse(Matrix::diag(f7, {1, 6, 6})));
  CHECK(similar_to_inverse(Matrix::diag(f7, {2, 4})));
  CHECK_FALSE(similar_to_inverse(Matrix::diag(f7, {2, 2})));
  CHECK_THROWS_AS(similar_to_inverse(Matrix::zero(f7, 2)), ContractError);
}

TEST_CASE("canonical form text") {
  auto f7 = gf(7);
  auto cf = rcf(Matrix::diag(f7, {2, 2, 4})).form;
  CHECK(cf.to_text() == "rcf{poly[3,1]^1, poly[5,1]^1, poly[5,1]^1}");
  CHECK(parse_canonical_form(f7, cf.to_text()) == cf);
  CHECK_THROWS_AS(parse_canonical_form(f7, "rcf{poly[2,3,1]^1}"), ParseError);
  CHECK_THROWS_AS(parse_canonical_form(f7, "rcf{poly[5,1]^1"), ParseError);
}

TEST_CASE("rcf agrees with brute-force similarity on all 2x2 matrices") {
  for (const auto& f : {gf(2), gf(3)}) {
    CAPTURE(f->header());
    std::vector<Matrix> all, invertible;
    involkit::testing::for_each_matrix(f, 2, [&](const Matrix& m) {
      all.push_back(m);
      if (det(m) != 0) invertible.push_back(m);
    });
    // Orbit label by brute force: smallest index reachable by conjugation.
    auto index_of = [&](const Matrix& m) {
      std::size_t idx = 0;
      const auto q = f->size();
      for (int i = 3; i >= 0; --i) idx = idx * q + m.entries()[i];
      return idx;
    };
    std::vector<std::size_t> orbit(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      std::size_t best = i;
      for (const auto& p : invertible) best = std::min(best, index_of(p * all[i] * inverse(p)));
      orbit[i] = best;
    }
    std::vector<CanonicalForm> forms;
    for (const auto& m : all) {
      check_rcf(m);
      forms.push_back(elementary_divisors(m));
    }
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j) {
        const bool brute = orbit[i] == orbit[j];
        if ((forms[i] == forms[j]) != brute) FAIL_CHECK("mismatch at " << all[i].to_text() << " vs " << all[j].to_text());
        if (brute && i < 8 && j < 8) {
          auto p = conjugator_between(all[i], all[j]);
          REQUIRE(p.has_value());
          CHECK(all[i] == *p * all[j] * inverse(*p));
        }
      }
  }
}

TEST_CASE("rcf is self-verifying on structured and random inputs") {
  std::mt19937_64 rng(21);
  for (const auto& f : involkit::testing::small_fields()) {
    CAPTURE(f->header());
    for (int trial = 0; trial < 15; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 6);
      check_rcf(involkit::testing::random_matrix(f, n, rng));
    }
    // Repeated blocks with mixed multiplicities, disguised by a random conjugation.
    const Polynomial x1 = P(f, {-1, 1});
    const Polynomial x0 = P(f, {0, 1});
    const Matrix blocks = direct_sum({companion(x1.pow(2)), companion(x1), companion(x1.pow(2)), companion(x0.pow(2))});
    const Matrix hidden = conjugate(blocks, involkit::testing::random_invertible(f, blocks.n(), rng));
    check_rcf(hidden);
    CHECK(similar(hidden, blocks));
    for (const auto& g : monic_irreducibles(f, 2)) {
      const Matrix m = direct_sum({companion(g), companion(g.pow(2)), companion(g)});
      check_rcf(conjugate(m, involkit::testing::random_invertible(f, m.n(), rng)));
      break;
    }
  }
}

TEST_CASE("dimension cap") {
  CHECK_THROWS_AS(rcf(Matrix::identity(gf(2), 9)), ContractError);
}
