#include <doctest.h>
#include <omp.h>

#include <random>
#include <set>
#include <stdexcept>

#include "helpers.hpp"
#include "involkit/census.hpp"

using namespace involkit;
using involkit::testing::gf;

TEST_CASE("packed keys round trip and multiply") {
  std::mt19937_64 rng(4);
  for (const auto& f : {gf(2), gf(3), gf(2, 2), gf(3, 2), gf(7)}) {
    for (int n = 1; n <= 3; ++n) {
      PackedSpace space(f, n);
      for (int t = 0; t < 30; ++t) {
        const Matrix a = involkit::testing::random_matrix(f, n, rng);
        const Matrix b = involkit::testing::random_matrix(f, n, rng);
        const Key ka = space.pack(a);
        CHECK(ka < space.size());
        CHECK(space.unpack(ka) == a);
        std::vector<std::uint8_t> ua(n * n), ub(n * n);
        space.unpack(ka, ua.data());
        space.unpack(space.pack(b), ub.data());
        CHECK(space.pack(ua.data()) == ka);
        CHECK(space.multiply(ua.data(), ub.data()) == space.pack(a * b));
      }
    }
  }
}

TEST_CASE("product closure kernels agree with a direct product set") {
  omp_set_num_threads(4);
  std::mt19937_64 rng(8);
  for (const auto& f : {gf(2), gf(3), gf(2, 2)}) {
    const int n = 2;
    PackedSpace space(f, n);
    std::vector<Key> left, right;
    for (int i = 0; i < 20; ++i) left.push_back(space.pack(involkit::testing::random_matrix(f, n, rng)));
    for (int i = 0; i < 15; ++i) right.push_back(space.pack(involkit::testing::random_matrix(f, n, rng)));
    std::set<Key> direct;
    for (Key l : left)
      for (Key r : right) direct.insert(space.pack(space.unpack(l) * space.unpack(r)));
    const auto serial = kernels::product_closure(space, left, right, Exec::serial);
    const auto parallel = kernels::product_closure(space, left, right, Exec::parallel);
    CHECK(serial == std::vector<Key>(direct.begin(), direct.end()));
    CHECK(parallel == serial);
  }
}

TEST_CASE("left stabilizer kernels agree") {
  omp_set_num_threads(4);
  const auto f = gf(3);
  PackedSpace space(f, 2);
  // Matrices with determinant 1 form a group, so every member stabilizes the set.
  std::vector<Key> sl, mixed;
  involkit::testing::for_each_matrix(f, 2, [&](const Matrix& m) {
    if (det(m) == 1) sl.push_back(space.pack(m));
    if (det(m) != 0 && m.at(0, 1) == 0) mixed.push_back(space.pack(m));
  });
  std::sort(sl.begin(), sl.end());
  std::sort(mixed.begin(), mixed.end());
  CHECK(kernels::left_stabilizer(space, sl, Exec::serial) == sl);
  CHECK(kernels::left_stabilizer(space, sl, Exec::parallel) == sl);
  // Lower triangular invertible matrices are also a group.
  CHECK(kernels::left_stabilizer(space, mixed, Exec::parallel) == mixed);

  std::vector<Key> partial = sl;
  partial.pop_back();
  const auto s = kernels::left_stabilizer(space, partial, Exec::serial);
  CHECK(s == kernels::left_stabilizer(space, partial, Exec::parallel));
  CHECK(s.size() < partial.size());
}

TEST_CASE("first hit returns the smallest index in both modes") {
  omp_set_num_threads(4);
  for (std::size_t target : {0UL, 1UL, 57UL, 999UL}) {
    auto pred = [&](std::size_t i) { return i >= target && i % 3 == target % 3; };
    CHECK(kernels::first_hit(1000, pred, Exec::serial) == target);
    CHECK(kernels::first_hit(1000, pred, Exec::parallel) == target);
  }
  auto never = [](std::size_t) { return false; };
  CHECK_FALSE(kernels::first_hit(500, never, Exec::parallel).has_value());
  auto boom = [](std::size_t i) -> bool {
    if (i == 40) throw std::runtime_error("boom");
    return i == 90;
  };
  CHECK_THROWS_AS(kernels::first_hit(200, boom, Exec::serial), std::runtime_error);
  CHECK_THROWS_AS(kernels::first_hit(200, boom, Exec::parallel), std::runtime_error);
  auto early = [](std::size_t i) -> bool {
    if (i == 40) throw std::runtime_error("boom");
    return i == 10;
  };
  CHECK(kernels::first_hit(200, early, Exec::parallel) == 10);
}

TEST_CASE("matrix sets") {
  const auto f = gf(2);
  PackedSpace space(f, 2);
  std::vector<Key> keys{1, 5, 9};
  MatrixSet s(f, 2, keys);
  CHECK(s.contains(5));
  CHECK_FALSE(s.contains(6));
  CHECK(s.contains(space.unpack(9)));
  CHECK(s.matrices().size() == 3);
  MatrixSet t(f, 2, {1, 5, 9, 12});
  CHECK(s <= t);
  CHECK_FALSE(t <= s);
  CHECK_THROWS_AS(MatrixSet(f, 2, {3, 1}), ContractError);
}

TEST_CASE("census limits") {
  CHECK(space_size(gf(3), 3) == 19683);
  CHECK(enumerable(gf(5), 2));
  CHECK(enumerable(gf(2), 4));
  CHECK_FALSE(enumerable(gf(7), 3));
  CHECK_FALSE(enumerable(gf(13), 2));
  CHECK_THROWS_AS(require_enumerable(gf(2), 5, "test"), CapExceeded);
  const int saved = census_limits().field_cap;
  set_field_cap(13);
  CHECK(enumerable(gf(13), 2));
  set_field_cap(saved);
  CHECK_FALSE(enumerable(gf(13), 2));
}
