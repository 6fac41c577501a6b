#pragma once

#include <random>
#include <vector>

#include "involkit/matrix.hpp"
#include "involkit/poly.hpp"

namespace involkit::testing {

inline Field gf(int p, int k = 1) { return FieldSpec::make(p, k); }

inline std::vector<Field> small_fields() {
  return {gf(2), gf(3), gf(2, 2), gf(5), gf(7), gf(2, 3), gf(3, 2)};
}

inline Matrix random_matrix(const Field& f, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Code> dist(0, f->size() - 1);
  std::vector<Code> e(static_cast<std::size_t>(n) * n);
  for (auto& c : e) c = dist(rng);
  return {f, n, std::move(e)};
}

inline Matrix random_invertible(const Field& f, int n, std::mt19937_64& rng) {
  while (true) {
    Matrix m = random_matrix(f, n, rng);
    if (det(m) != 0) return m;
  }
}

/// Monic of the given degree with nonzero constant term.
inline Polynomial random_monic_unit(const Field& f, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<Code> dist(0, f->size() - 1);
  std::uniform_int_distribution<Code> nonzero(1, f->size() - 1);
  std::vector<Code> c(degree + 1);
  c[0] = nonzero(rng);
  for (int i = 1; i < degree; ++i) c[i] = dist(rng);
  c[degree] = 1;
  return {f, std::move(c)};
}

/// Calls fn for every n x n matrix over f (q^(n^2) of them).
template <class Fn>
void for_each_matrix(const Field& f, int n, Fn&& fn) {
  const Code q = f->size();
  const int nn = n * n;
  std::vector<Code> e(nn, 0);
  while (true) {
    fn(Matrix(f, n, e));
    int i = 0;
    while (i < nn && ++e[i] == q) e[i++] = 0;
    if (i == nn) return;
  }
}

}  // namespace involkit::testing
