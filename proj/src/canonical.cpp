/*
   Copyright 2026 The involkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "involkit/canonical.hpp"

#include <algorithm>
#include <stdexcept>

#include "linalg.hpp"
#include "scan.hpp"

namespace involkit {

CanonicalForm::CanonicalForm(Field field, std::vector<ElementaryDivisor> divisors)
    : field_(std::move(field)), divisors_(std::move(divisors)) {
  for (const auto& d : divisors_) {
    require_same_field(field_, d.base.field(), "canonical form");
    if (d.multiplicity < 1 || !d.base.is_monic() || !is_irreducible(d.base))
      throw ContractError("elementary divisor must be a positive power of a monic irreducible");
  }
  std::sort(divisors_.begin(), divisors_.end());
}

CanonicalForm::CanonicalForm(Field field, std::vector<ElementaryDivisor> divisors, Trusted)
    : field_(std::move(field)), divisors_(std::move(divisors)) {
  std::sort(divisors_.begin(), divisors_.end());
}

int CanonicalForm::dimension() const {
  int n = 0;
  for (const auto& d : divisors_) n += d.degree();
  return n;
}

Matrix CanonicalForm::assemble() const {
  std::vector<Matrix> blocks;
  blocks.reserve(divisors_.size());
  for (const auto& d : divisors_) blocks.push_back(companion(d.value()));
  return direct_sum(blocks);
}

Polynomial CanonicalForm::product() const {
  Polynomial acc = Polynomial::one(field_);
  for (const auto& d : divisors_) acc = acc * d.value();
  return acc;
}

Polynomial CanonicalForm::lcm() const {
  Polynomial acc = Polynomial::one(field_);
  for (const auto& d : divisors_) acc = involkit::lcm(acc, d.value());
  return acc;
}

bool CanonicalForm::operator==(const CanonicalForm& o) const {
  require_same_field(field_, o.field_, "canonical form eq");
  return divisors_ == o.divisors_;
}

std::string CanonicalForm::to_text() const {
  std::string s = "rcf{";
  for (std::size_t i = 0; i < divisors_.size(); ++i)
    s += (i ? ", " : "") + divisors_[i].base.to_text() + "^" + std::to_string(divisors_[i].multiplicity);
  return s + "}";
}

CanonicalForm parse_canonical_form(const Field& f, std::string_view text) {
  detail::Scanner sc(text);
  sc.expect("rcf{");
  std::vector<ElementaryDivisor> divs;
  if (!sc.consume('}')) {
    do {
      sc.skip_ws();
      const std::size_t start = sc.pos();
      sc.expect("poly");
      sc.balanced_token();
      const auto poly_text = text.substr(start, sc.pos() - start);
      sc.expect('^');
      const auto mult = sc.integer();
      divs.push_back({parse_polynomial(f, poly_text), static_cast<int>(mult)});
    } while (sc.consume(','));
    sc.expect('}');
  }
  sc.require_end();
  try {
    return {f, std::move(divs)};
  } catch (const ContractError& e) {
    throw ParseError(e.what());
  }
}

namespace {

void require_canonical_dim(const Matrix& a) {
  if (a.n() > kMaxCanonicalDim) throw ContractError("canonical forms are limited to n <= 8");
}

// Kernel dimensions of p(A)^j for j = 1.. until they reach d*e.
std::vector<int> kernel_dims(const Matrix& pa, int target) {
  std::vector<int> dims{0};
  Matrix power = pa;
  while (dims.back() < target) {
    dims.push_back(pa.n() - rank(power));
    if (dims.back() == dims[dims.size() - 2]) throw std::logic_error("kernel chain stalled");
    power = power * pa;
  }
  return dims;
}

// Multiplicity -> number of blocks, from the kernel chain.
std::vector<int> block_counts(const std::vector<int>& dims, int d) {
  const int top = static_cast<int>(dims.size()) - 1;
  std::vector<int> at_least(top + 2, 0);
  for (int j = 1; j <= top; ++j) at_least[j] = (dims[j] - dims[j - 1]) / d;
  std::vector<int> exactly(top + 1, 0);
  for (int j = 1; j <= top; ++j) exactly[j] = at_least[j] - at_least[j + 1];
  return exactly;
}

}  // namespace

CanonicalForm elementary_divisors(const Matrix& a) {
  require_canonical_dim(a);
  const auto fac = factor(charpoly(a));
  std::vector<ElementaryDivisor> divs;
  for (const auto& [p, e] : fac.factors) {
    if (e == 1) {
      divs.push_back({p, 1});
      continue;
    }
    const auto counts = block_counts(kernel_dims(evaluate(p, a), p.degree() * e), p.degree());
    for (int j = 1; j < static_cast<int>(counts.size()); ++j)
      for (int c = 0; c < counts[j]; ++c) divs.push_back({p, j});
  }
  return {a.field(), std::move(divs), CanonicalForm::Trusted{}};
}

RationalCanonical rcf(const Matrix& a) {
  require_canonical_dim(a);
  const auto& field = a.field();
  const int n = a.n();
  const auto fac = factor(charpoly(a));

  struct Generator {
    ElementaryDivisor divisor;
    Vector vector;
  };
  std::vector<Generator> generators;

  for (const auto& [p, e] : fac.factors) {
    const int d = p.degree();
    const Matrix pa = evaluate(p, a);
    const auto dims = kernel_dims(pa, d * e);
    const auto counts = block_counts(dims, d);
    const int top = static_cast<int>(counts.size()) - 1;

    std::vector<Matrix> pa_pow{Matrix::identity(field, n)};
    for (int j = 1; j <= top; ++j) pa_pow.push_back(pa_pow.back() * pa);

    // Cyclic pieces are chosen from the top exponent down; a candidate is
    // kept when its socle is independent of the socles already chosen.
    detail::SpanBuilder socle(field, n);
    for (int j = top; j >= 1; --j) {
      int needed = counts[j];
      if (needed == 0) continue;
      const auto candidates = nullspace(pa_pow[j]);
      for (const auto& v : candidates) {
        if (needed == 0) break;
        Vector w = pa_pow[j - 1] * v;
        if (std::all_of(w.begin(), w.end(), [](Code c) { return c == 0; })) continue;
        if (socle.contains(w)) continue;
        for (int t = 0; t < d; ++t) {
          socle.add(w);
          w = a * w;
        }
        generators.push_back({{p, j}, v});
        --needed;
      }
      if (needed != 0) throw std::logic_error("cyclic decomposition fell short");
    }
  }

  std::stable_sort(generators.begin(), generators.end(),
                   [](const Generator& x, const Generator& y) { return x.divisor < y.divisor; });

  // Columns: v, Av, A^2 v, ... per block. Then A M = M C, so P = M^{-1}.
  std::vector<Code> m(static_cast<std::size_t>(n) * n, 0);
  int col = 0;
  std::vector<ElementaryDivisor> divs;
  for (const auto& g : generators) {
    Vector v = g.vector;
    for (int t = 0; t < g.divisor.degree(); ++t) {
      for (int i = 0; i < n; ++i) m[i * n + col] = v[i];
      v = a * v;
      ++col;
    }
    divs.push_back(g.divisor);
  }
  if (col != n) throw std::logic_error("cyclic decomposition does not span");
  const Matrix basis(field, n, std::move(m));
  CanonicalForm form(field, std::move(divs), CanonicalForm::Trusted{});
  Matrix p = inverse(basis);
  if (p * a * basis != form.assemble()) throw std::logic_error("rcf conjugator failed verification");
  return {std::move(form), std::move(p)};
}

bool similar(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "similar");
  if (a.n() != b.n()) throw ContractError("similar: dimension mismatch");
  return elementary_divisors(a) == elementary_divisors(b);
}

std::optional<Matrix> conjugator_between(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "conjugator_between");
  if (a.n() != b.n()) throw ContractError("conjugator_between: dimension mismatch");
  auto ra = rcf(a);
  auto rb = rcf(b);
  if (ra.form != rb.form) return std::nullopt;
  // Pa A Pa^{-1} = C = Pb B Pb^{-1}  =>  A = (Pa^{-1} Pb) B (Pa^{-1} Pb)^{-1}
  Matrix p = inverse(ra.conjugator) * rb.conjugator;
  if (p * b * inverse(p) != a) throw std::logic_error("conjugator_between failed verification");
  return p;
}

bool similar_to_inverse(const Matrix& a) {
  if (!is_invertible(a)) throw ContractError("similar_to_inverse: matrix is singular");
  return similar(a, inverse(a));
}

}  // namespace involkit
