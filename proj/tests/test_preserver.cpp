#include <doctest.h>
#include <omp.h>

#include <random>

#include "helpers.hpp"
#include "involkit/preserver.hpp"

using namespace involkit;
using involkit::testing::gf;
using involkit::testing::random_invertible;
using involkit::testing::random_matrix;

namespace {

// (A kron B)[(r1 m + r2), (c1 m + c2)] with B of size m, written out by hand.
Matrix kron(const Matrix& a, const Matrix& b) {
  const FieldSpec& F = *a.field();
  const int n = a.n(), m = b.n();
  std::vector<Code> e(static_cast<std::size_t>(n * m) * (n * m));
  for (int r1 = 0; r1 < n; ++r1)
    for (int c1 = 0; c1 < n; ++c1)
      for (int r2 = 0; r2 < m; ++r2)
        for (int c2 = 0; c2 < m; ++c2) e[(r1 * m + r2) * (n * m) + c1 * m + c2] = F.mul(a.at(r1, c1), b.at(r2, c2));
  return {a.field(), n * m, std::move(e)};
}

Matrix commutation(const Field& f, int n) {
  const int nn = n * n;
  std::vector<Code> e(static_cast<std::size_t>(nn) * nn, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e[(j + i * n) * nn + (i + j * n)] = 1;
  return {f, nn, std::move(e)};
}

Matrix lead_one(const Matrix& p) {
  for (Code e : p.entries())
    if (e != 0) return p.scaled(p.field()->inv(e));
  return p;
}

Matrix q0(const Field& f) { return Matrix::from_ints(f, {{0, 1}, {-1, 0}}); }

}  // namespace

TEST_CASE("identity and transpose forms") {
  const auto f = gf(5);
  const auto id = map_from_form(PreserverForm::conjugation(Matrix::identity(f, 3), 1, false));
  CHECK(id == LinearMapOnMatrices::identity(f, 3));
  std::mt19937_64 rng(1);
  const Matrix a = random_matrix(f, 3, rng);
  CHECK(id.apply(a) == a);
  const auto t = map_from_form(PreserverForm::conjugation(Matrix::identity(f, 2), 1, true));
  CHECK(t.apply(Matrix::unit(f, 1, 2, 2)) == Matrix::unit(f, 2, 1, 2));
  CHECK(t == LinearMapOnMatrices::transpose(f, 2));
}

TEST_CASE("action matrices match the Kronecker formula") {
  std::mt19937_64 rng(2);
  for (const auto& f : {gf(2), gf(3), gf(2, 2), gf(5), gf(3, 2)}) {
    for (int n = 1; n <= 3; ++n) {
      for (int t = 0; t < 5; ++t) {
        const Matrix p = random_invertible(f, n, rng);
        const Matrix q = random_invertible(f, n, rng);
        const Matrix plain = kron(q.transpose(), p);
        CHECK(map_from_form(PreserverForm::congruence_pair(p, q, false)).action() == plain);
        CHECK(map_from_form(PreserverForm::congruence_pair(p, q, true)).action() == plain * commutation(f, n));
        const auto m = map_from_form(PreserverForm::congruence_pair(p, q, t % 2 == 1));
        const Matrix x = random_matrix(f, n, rng), y = random_matrix(f, n, rng);
        const Code c = static_cast<Code>(rng() % f->size());
        CHECK(m.apply(x.scaled(c) + y) == m.apply(x).scaled(c) + m.apply(y));
        CHECK(m.is_bijective());
      }
    }
  }
}

TEST_CASE("map_from_form preconditions") {
  const auto f = gf(7);
  const Matrix i2 = Matrix::identity(f, 2);
  const Matrix sing = Matrix::from_ints(f, {{1, 2}, {2, 4}});
  CHECK_THROWS_AS(map_from_form(PreserverForm{FormVariant::congruence_pair, 1, sing, i2, false}), ContractError);
  CHECK_THROWS_AS(map_from_form(PreserverForm{FormVariant::conjugation, 2, i2, i2, false}), ContractError);
  CHECK_THROWS_AS(map_from_form(PreserverForm{FormVariant::conjugation, 1, i2, i2.scaled(3), false}), ContractError);
  CHECK_THROWS_AS(map_from_form(PreserverForm{FormVariant::congruence_pair, 6, i2, i2, false}), ContractError);
  CHECK_NOTHROW(map_from_form(PreserverForm::conjugation(i2, 6, false)));
  CHECK_THROWS_AS(LinearMapOnMatrices::identity(f, 2).apply(Matrix::identity(f, 3)), ContractError);
}

TEST_CASE("transpose conjugation by (0 1; -1 0) is X -> -X + tr(X) I") {
  for (const auto& f : {gf(3), gf(5), gf(7), gf(3, 2)}) {
    const auto m = map_from_form(PreserverForm::conjugation(q0(f), 1, true));
    involkit::testing::for_each_matrix(f, 2, [&](const Matrix& x) {
      CHECK(m.apply(x) == -x + Matrix::scalar(f, 2, x.trace()));
    });
    const auto ex = exceptional_n2_map(f);
    CHECK(ex == m);
    CHECK(ex.is_unital());
    const auto form = recognize_form(ex);
    REQUIRE(form.has_value());
    CHECK(form->variant == FormVariant::conjugation);
    CHECK(form->alpha == 1);
    CHECK(form->transpose);
    CHECK(form->P == q0(f));
  }
  const auto f = gf(5);
  const auto ex = exceptional_n2_map(f);
  for (int a = 0; a < 5; ++a)
    CHECK(ex.apply(Matrix::from_ints(f, {{0, -1}, {1, -a}})) == Matrix::from_ints(f, {{-a, 1}, {-1, 0}}));
  CHECK_THROWS_AS(exceptional_n2_map(gf(2)), ContractError);
  CHECK_THROWS_AS(exceptional_n2_map(gf(2, 2)), ContractError);
}

TEST_CASE("unital maps") {
  const auto f = gf(5);
  std::mt19937_64 rng(3);
  const Matrix p = random_invertible(f, 3, rng);
  CHECK(map_from_form(PreserverForm::conjugation(p, 1, true)).is_unital());
  CHECK_FALSE(map_from_form(PreserverForm::conjugation(p, 4, false)).is_unital());
}

TEST_CASE("preservation checks") {
  omp_set_num_threads(4);
  std::mt19937_64 rng(5);
  const auto f3 = gf(3);
  for (int t = 0; t < 10; ++t) {
    const Matrix p = random_invertible(f3, 2, rng);
    const Code alpha = t % 2 ? 2 : 1;
    const auto m = map_from_form(PreserverForm::conjugation(p, alpha, t % 3 == 0));
    const auto r = preserves_set(m, SetId::B, CheckMode::exhaustive());
    CHECK(r.preserved);
    CHECK(r.checked == 1 + in_B_bfs(f3, 2).size());
  }
  for (int t = 0; t < 10; ++t) {
    const Matrix p = random_invertible(f3, 2, rng);
    Matrix q = random_invertible(f3, 2, rng);
    if (det(p * q) != 1) q = q * Matrix::diag(f3, {2, 1});
    REQUIRE(det(p * q) == 1);
    CHECK(preserves_set(map_from_form(PreserverForm::congruence_pair(p, q, t % 2 == 0)), SetId::D,
                        CheckMode::exhaustive())
              .preserved);
  }

  const auto f7 = gf(7);
  const LinearMapOnMatrices twice(2, Matrix::scalar(f7, 4, 2));
  const auto r = preserves_set(twice, SetId::D, CheckMode::exhaustive());
  CHECK_FALSE(r.preserved);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->is_identity());

  // X -> P X fixes I but leaves B.
  const Matrix p = Matrix::from_ints(f3, {{1, 1}, {0, 1}});
  const auto left = map_from_form(PreserverForm::congruence_pair(p, Matrix::identity(f3, 2), false));
  const auto serial = preserves_set(left, SetId::B, CheckMode::exhaustive(), Exec::serial);
  const auto parallel = preserves_set(left, SetId::B, CheckMode::exhaustive(), Exec::parallel);
  REQUIRE_FALSE(serial.preserved);
  REQUIRE(parallel.counterexample.has_value());
  CHECK(*serial.counterexample == *parallel.counterexample);
  CHECK(serial.checked == parallel.checked);
  CHECK(in_B(*serial.counterexample).yes());
  CHECK(in_B(left.apply(*serial.counterexample)).no());

  CHECK_THROWS_AS(preserves_set(LinearMapOnMatrices::identity(f7, 3), SetId::C, CheckMode::exhaustive()),
                  CapExceeded);
}

TEST_CASE("sampled preservation is reproducible") {
  const auto f = gf(5);
  std::mt19937_64 rng(6);
  const Matrix p = random_invertible(f, 2, rng);
  const auto left = map_from_form(PreserverForm::congruence_pair(p, Matrix::identity(f, 2), false));
  const auto a = preserves_set(left, SetId::B, CheckMode::sample(200, 9));
  const auto b = preserves_set(left, SetId::B, CheckMode::sample(200, 9));
  CHECK(a.preserved == b.preserved);
  CHECK(a.checked == b.checked);
  CHECK(a.counterexample == b.counterexample);
  const auto id = preserves_set(LinearMapOnMatrices::identity(f, 2), SetId::D, CheckMode::sample(50, 1));
  CHECK(id.preserved);
  CHECK(id.checked == 51);
}

TEST_CASE("C_3 over GF(7): conjugations preserve it, other pairs hit a scalar target") {
  const auto f = gf(7);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 4; ++t) {
    const Matrix p = random_invertible(f, 3, rng);
    const auto m = map_from_form(PreserverForm::conjugation(p, t % 2 ? 6 : 1, t >= 2));
    const auto r = preserves_set(m, SetId::C, CheckMode::sample(40, 11 + t));
    CHECK(r.preserved);
    CHECK(r.undecided == 0);
    CHECK(r.checked == 41);
  }
  int tested = 0;
  while (tested < 10) {
    const Matrix p = random_invertible(f, 3, rng);
    const Matrix q = random_invertible(f, 3, rng);
    const Code d = det(p * q);
    const Matrix pq = p * q;
    if ((d != 1 && d != 6) || pq == Matrix::identity(f, 3) || pq == -Matrix::identity(f, 3)) continue;
    ++tested;
    const auto m = map_from_form(PreserverForm::congruence_pair(p, q, false));
    bool found = false;
    for (Code target : {2u, 4u}) {
      const Matrix x = inverse(q * p).scaled(target);
      if (!in_C(x).yes()) continue;
      CHECK(m.apply(x) == Matrix::scalar(f, 3, target));
      CHECK(in_C(m.apply(x)).no());
      found = true;
      break;
    }
    CHECK(found);
  }
}

TEST_CASE("recognition round trip") {
  std::mt19937_64 rng(8);
  const auto f = gf(5);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 3;
    const Matrix p = random_invertible(f, n, rng);
    const Matrix q = random_invertible(f, n, rng);
    const bool tr = (t / 3) % 2;
    const auto m = map_from_form(PreserverForm::congruence_pair(p, q, tr));
    const auto got = recognize_form(m);
    REQUIRE(got.has_value());
    if (n > 1) CHECK(got->transpose == tr);
    CHECK(map_from_form(*got) == m);
    CHECK(got->P == lead_one(p));
  }
  const auto id = recognize_form(LinearMapOnMatrices::identity(f, 3));
  REQUIRE(id.has_value());
  CHECK(id->P.is_identity());
  CHECK(id->Q.is_identity());
  CHECK_FALSE(id->transpose);

  // E(1,1) -> E(1,1) + E(2,2): still bijective, but the image has rank 2.
  const Matrix a = LinearMapOnMatrices::identity(f, 2).action().with(3, 0, 1);
  const LinearMapOnMatrices bad(2, a);
  CHECK(bad.is_bijective());
  CHECK_FALSE(recognize_form(bad).has_value());
}

TEST_CASE("composition of congruence pairs") {
  std::mt19937_64 rng(9);
  for (const auto& f : {gf(3), gf(5), gf(2, 2)}) {
    const Matrix p1 = random_invertible(f, 3, rng), q1 = random_invertible(f, 3, rng);
    const Matrix p2 = random_invertible(f, 3, rng), q2 = random_invertible(f, 3, rng);
    const auto m = map_from_form(PreserverForm::congruence_pair(p1, q1, false))
                       .compose(map_from_form(PreserverForm::congruence_pair(p2, q2, false)));
    const auto got = recognize_form(m);
    REQUIRE(got.has_value());
    CHECK_FALSE(got->transpose);
    CHECK(m == map_from_form(PreserverForm::congruence_pair(p1 * p2, q2 * q1, false)));
    CHECK(map_from_form(*got) == m);
    CHECK(got->P == lead_one(p1 * p2));
  }
}

TEST_CASE("nilpotent pullback") {
  std::mt19937_64 rng(10);
  for (const auto& f : {gf(2), gf(3), gf(5), gf(2, 2)}) {
    const Matrix p = random_invertible(f, 3, rng), q = random_invertible(f, 3, rng);
    CHECK(nilpotent_pullback_check(map_from_form(PreserverForm::congruence_pair(p, q, true))));
    CHECK(nilpotent_pullback_check(map_from_form(PreserverForm::conjugation(p, 1, false))));
    CHECK(nilpotent_pullback_check(LinearMapOnMatrices::identity(f, 3)));
  }
  const auto f = gf(3);
  // X -> X + tr(X) E(1,2).
  std::vector<Code> e = Matrix::identity(f, 4).entries();
  e[2 * 4 + 0] = 1;
  e[2 * 4 + 3] = 1;
  const LinearMapOnMatrices skew(2, Matrix(f, 4, e));
  involkit::testing::for_each_matrix(f, 2, [&](const Matrix& x) {
    CHECK(skew.apply(x) == x + Matrix::unit(f, 1, 2, 2).scaled(x.trace()));
  });
  CHECK_FALSE(nilpotent_pullback_check(skew));
  CHECK_THROWS_AS(nilpotent_pullback_check(LinearMapOnMatrices(2, Matrix::zero(f, 4))), ContractError);
}

TEST_CASE("map and form text") {
  std::mt19937_64 rng(11);
  for (const auto& f : {gf(5), gf(2, 2), FieldSpec::make(3, 2, std::vector<int>{2, 2, 1})}) {
    const Matrix p = random_invertible(f, 2, rng), q = random_invertible(f, 2, rng);
    const auto form = PreserverForm::congruence_pair(p, q, true);
    CHECK(parse_form(form.to_text()) == form);
    const auto m = map_from_form(form);
    CHECK(parse_linmap(m.to_text()) == m);
  }
  const auto f = gf(5);
  CHECK(PreserverForm::conjugation(q0(f), 1, true).to_text() ==
        "form{GF(5), conjugation, alpha=1, P=[[0,1],[4,0]], Q=[[0,4],[1,0]], transpose=true}");
  CHECK(LinearMapOnMatrices::identity(gf(2), 1).to_text() == "linmap{GF(2), 1, action=[[1]]}");
  CHECK_THROWS_AS(parse_linmap("linmap{GF(5), 2, action=[[1,0],[0,1]]}"), ParseError);
  CHECK_THROWS_AS(parse_form("form{GF(5), rotation, alpha=1, P=[[1]], Q=[[1]], transpose=false}"), ParseError);
  CHECK(parse_check_mode("exhaustive", 0).kind == CheckMode::Kind::exhaustive);
  const auto s = parse_check_mode("sample:25", 3);
  CHECK(s.count == 25);
  CHECK(s.seed == 3);
  CHECK(to_string(s) == "sample:25");
  CHECK_THROWS_AS(parse_check_mode("sample:0", 0), ParseError);
  CHECK_THROWS_AS(parse_check_mode("all", 0), ParseError);
}
