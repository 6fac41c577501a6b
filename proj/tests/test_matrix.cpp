#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "involkit/matrix.hpp"

using namespace involkit;
using involkit::testing::gf;

namespace {
Matrix M(const Field& f, std::vector<std::vector<std::int64_t>> rows) { return Matrix::from_ints(f, rows); }
Polynomial P(const Field& f, std::vector<std::int64_t> c) { return Polynomial::from_ints(f, c); }

// Laplace expansion along the first row.
Code laplace_det(const Matrix& a) {
  const auto& f = a.field();
  const int n = a.n();
  if (n == 1) return a.at(0, 0);
  Code acc = 0;
  for (int j = 0; j < n; ++j) {
    std::vector<Code> minor;
    for (int r = 1; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (c != j) minor.push_back(a.at(r, c));
    Code term = f->mul(a.at(0, j), laplace_det(Matrix(f, n - 1, minor)));
    acc = (j % 2) ? f->sub(acc, term) : f->add(acc, term);
  }
  return acc;
}
}  // namespace

TEST_CASE("core examples") {
  auto f2 = gf(2);
  CHECK(Matrix::unit(f2, 1, 2, 2) * Matrix::unit(f2, 2, 1, 2) == Matrix::unit(f2, 1, 1, 2));
  CHECK(Matrix::identity(gf(3), 3).trace() == 0);
  auto f7 = gf(7);
  CHECK(det(Matrix::diag(f7, {2, 4})) == 1);
  CHECK(rank(M(f2, {{0, 1}, {0, 0}})) == 1);
  CHECK(det(Matrix::identity(f7, 4)) == 1);
  CHECK_THROWS_AS(Matrix::identity(f7, 2) + Matrix::identity(f7, 3), ContractError);
  CHECK_THROWS_AS(Matrix::identity(f7, 2) * Matrix::identity(gf(5), 2), ContractError);
  CHECK_THROWS_AS(inverse(M(f7, {{1, 2}, {2, 4}})), ContractError);
}

TEST_CASE("companion examples") {
  auto f7 = gf(7);
  CHECK(companion(P(f7, {2, 3, 1})) == M(f7, {{0, 5}, {1, 4}}));
  CHECK(companion(P(f7, {-1, 1})) == M(f7, {{1}}));
  auto f2 = gf(2);
  CHECK(companion(P(f2, {1, 1, 1, 1})) == M(f2, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}}));
  CHECK_THROWS_AS(companion(P(f7, {1, 2})), ContractError);
  CHECK(companion_inverse_formula(P(f7, {2, 3, 1})) == M(f7, {{2, 1}, {3, 0}}));
  CHECK(companion_inverse_formula(P(f7, {-1, 1})) == M(f7, {{1}}));
  CHECK_THROWS_AS(companion_inverse_formula(P(f7, {0, 1, 1})), ContractError);
}

TEST_CASE("charpoly and minpoly examples") {
  auto f3 = gf(3);
  CHECK(minpoly(Matrix::identity(f3, 3)) == P(f3, {-1, 1}));
  auto f5 = gf(5);
  CHECK(charpoly(M(f5, {{0, 1}, {-1, 0}})) == P(f5, {1, 0, 1}));
  CHECK(charpoly(Matrix::zero(f5, 3)) == Polynomial::monomial(f5, 3));
}

TEST_CASE("tau and direct sums") {
  auto f7 = gf(7);
  CHECK(tau(f7, 2) == M(f7, {{0, 1}, {1, 0}}));
  for (int n = 1; n <= 6; ++n) CHECK((tau(f7, n) * tau(f7, n)).is_identity());
  CHECK(direct_sum(M(f7, {{1}}), M(f7, {{-1}})) == Matrix::diag(f7, {1, 6}));
  CHECK_THROWS_AS(conjugate(Matrix::identity(f7, 2), Matrix::zero(f7, 2)), ContractError);
}

TEST_CASE("companion identities on random polynomials") {
  std::mt19937_64 rng(3);
  for (const auto& f : involkit::testing::small_fields()) {
    CAPTURE(f->header());
    for (int trial = 0; trial < 20; ++trial) {
      const int deg = 1 + static_cast<int>(rng() % 5);
      auto g = involkit::testing::random_monic_unit(f, deg, rng);
      const Matrix c = companion(g);
      CHECK(charpoly(c) == g);
      CHECK(minpoly(c) == g);
      CHECK(companion_inverse_formula(g) == inverse(c));
      CHECK((companion_inverse_formula(g) * c).is_identity());
      CHECK(conjugate(inverse(c), tau(f, deg)) == companion(reciprocal(g)));
    }
  }
}

TEST_CASE("determinant and charpoly against independent oracles") {
  std::mt19937_64 rng(5);
  for (const auto& f : involkit::testing::small_fields()) {
    CAPTURE(f->header());
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 4);
      const Matrix a = involkit::testing::random_matrix(f, n, rng);
      const Matrix b = involkit::testing::random_matrix(f, n, rng);
      CHECK(det(a) == laplace_det(a));
      CHECK(det(a * b) == f->mul(det(a), det(b)));
      CHECK(det(a.transpose()) == det(a));
      CHECK(a.transpose().transpose() == a);
      CHECK(rank(a) == n - static_cast<int>(nullspace(a).size()));
      for (const auto& v : nullspace(a)) {
        const auto w = a * v;
        CHECK(std::all_of(w.begin(), w.end(), [](Code c) { return c == 0; }));
      }
      if (is_invertible(a)) {
        CHECK((a * inverse(a)).is_identity());
        CHECK((inverse(a) * a).is_identity());
      }

      PolyMatrix pm(n, std::vector<Polynomial>(n, Polynomial::zero(f)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          pm[i][j] = Polynomial::constant(f, f->neg(a.at(i, j))) + (i == j ? Polynomial::monomial(f, 1) : Polynomial::zero(f));
      const Polynomial cp = charpoly(a);
      CHECK(cp == polynomial_det(pm));
      CHECK(evaluate(cp, a).is_zero());
      const Polynomial mp = minpoly(a);
      CHECK(mp.is_monic());
      CHECK(evaluate(mp, a).is_zero());
      CHECK(mp.divides(cp));

      const Matrix p = involkit::testing::random_invertible(f, n, rng);
      const Matrix c = conjugate(a, p);
      CHECK(charpoly(c) == cp);
      CHECK(minpoly(c) == mp);
    }
  }
}

TEST_CASE("powers") {
  auto f5 = gf(5);
  const Matrix a = M(f5, {{1, 2}, {3, 4}});
  CHECK(a.pow(0).is_identity());
  CHECK(a.pow(3) == a * a * a);
  CHECK(a.pow(-2) == inverse(a * a));
}

TEST_CASE("matrix text round trip") {
  auto f7 = gf(7);
  const Matrix a = M(f7, {{1, 2}, {3, 4}});
  CHECK(a.to_text() == "GF(7):[[1,2],[3,4]]");
  CHECK(parse_matrix(a.to_text()) == a);
  auto f4 = gf(2, 2);
  std::mt19937_64 rng(1);
  const Matrix b = involkit::testing::random_matrix(f4, 3, rng);
  CHECK(parse_matrix(b.to_text()) == b);
  auto custom = FieldSpec::make(3, 2, std::vector<int>{2, 2, 1});
  const Matrix c = involkit::testing::random_matrix(custom, 2, rng);
  CHECK(parse_matrix(c.to_text()) == c);
  CHECK(parse_matrix(c.to_text()).field()->same_as(*custom));
  CHECK_THROWS_AS(parse_matrix("GF(7):[[1,2],[3]]"), ParseError);
  CHECK_THROWS_AS(parse_matrix("GF(7):[[1,2],[3,4]] x"), ParseError);
}
