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

#include "involkit/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "scan.hpp"

namespace involkit {

namespace {

// Dense polynomials over GF(p) as ascending int vectors; only used while a
// field is being set up.
using Raw = std::vector<int>;

void trim(Raw& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
  int result = 1;
  int base = a % p;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = static_cast<int>(static_cast<std::int64_t>(result) * base % p);
    base = static_cast<int>(static_cast<std::int64_t>(base) * base % p);
  }
  return result;
}

Raw raw_mod(Raw a, const Raw& m, int p) {
  trim(a);
  const int lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const int shift = static_cast<int>(a.size() - m.size());
    const int factor = static_cast<int>(static_cast<std::int64_t>(a.back()) * lead_inv % p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[i + shift] = static_cast<int>((a[i + shift] - static_cast<std::int64_t>(factor) * m[i]) % p);
      if (a[i + shift] < 0) a[i + shift] += p;
    }
    trim(a);
  }
  return a;
}

Raw raw_mulmod(const Raw& a, const Raw& b, const Raw& m, int p) {
  if (a.empty() || b.empty()) return {};
  Raw c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<int>((c[i + j] + static_cast<std::int64_t>(a[i]) * b[j]) % p);
  return raw_mod(std::move(c), m, p);
}

Raw raw_gcd(Raw a, Raw b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Raw r = raw_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree k is irreducible iff gcd(f, x^{p^i} - x) = 1 for
// 1 <= i <= k/2.
bool raw_irreducible(const Raw& f, int p) {
  const int k = static_cast<int>(f.size()) - 1;
  if (k <= 0) return false;
  if (k == 1) return true;
  Raw x_pow = raw_mod(Raw{0, 1}, f, p);
  for (int i = 1; i <= k / 2; ++i) {
    // x_pow <- x_pow^p mod f
    Raw acc{1};
    Raw base = x_pow;
    for (int e = p; e > 0; e >>= 1) {
      if (e & 1) acc = raw_mulmod(acc, base, f, p);
      if (e > 1) base = raw_mulmod(base, base, f, p);
    }
    x_pow = acc;
    Raw diff = x_pow;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] - 1 + p) % p;
    trim(diff);
    Raw g = raw_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<int> prime_divisors(std::uint64_t n) {
  std::vector<int> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<int>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field FieldSpec::make(int p, int k, std::optional<std::vector<int>> modulus) {
  if (!is_prime(p)) throw ContractError("field characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw ContractError("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxFieldSize) throw ContractError("field size exceeds 2^20");
  }

  if (modulus) {
    Raw m = *modulus;
    for (int& c : m) c = ((c % p) + p) % p;
    if (static_cast<int>(m.size()) != k + 1 || m.back() != 1)
      throw ContractError("modulus must be monic of degree " + std::to_string(k));
    if (!raw_irreducible(m, p)) throw ContractError("modulus is reducible");
    bool is_default = false;
    // The k = 1 modulus is fixed to u.
    if (k == 1) {
      if (m[0] != 0) throw ContractError("prime field modulus must be u");
      is_default = true;
    }
    auto spec = std::shared_ptr<FieldSpec>(new FieldSpec(p, k, m, is_default));
    if (k > 1) {
      Field def = make(p, k);
      spec->default_modulus_ = def->modulus() == m;
    }
    return spec;
  }

  // Smallest monic irreducible with c_0 most significant.
  Raw m(k + 1, 0);
  m[k] = 1;
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    std::uint64_t rest = idx;
    for (int j = k - 1; j >= 0; --j) {
      m[j] = static_cast<int>(rest % p);
      rest /= p;
    }
    if (raw_irreducible(m, p)) return std::shared_ptr<FieldSpec>(new FieldSpec(p, k, m, true));
  }
  throw ContractError("no irreducible polynomial found");  // unreachable
}

FieldSpec::FieldSpec(int p, int k, std::vector<int> modulus, bool is_default)
    : p_(p), k_(k), modulus_(std::move(modulus)), default_modulus_(is_default) {
  q_ = 1;
  for (int i = 0; i < k_; ++i) q_ *= static_cast<Code>(p_);

  neg_table_.resize(q_);
  for (Code a = 0; a < q_; ++a) {
    auto c = coeffs(a);
    for (int& x : c) x = (p_ - x) % p_;
    neg_table_[a] = from_coeffs(c);
  }

  // exp/log tables from a generator of the multiplicative group.
  auto raw_of = [&](Code a) {
    Raw r = coeffs(a);
    trim(r);
    return r;
  };
  auto code_of = [&](Raw r) {
    r.resize(k_, 0);
    return from_coeffs(r);
  };
  auto raw_pow = [&](const Raw& a, std::uint64_t e) {
    Raw acc{1};
    Raw base = a;
    for (; e > 0; e >>= 1) {
      if (e & 1) acc = raw_mulmod(acc, base, modulus_, p_);
      if (e > 1) base = raw_mulmod(base, base, modulus_, p_);
    }
    return acc;
  };
  const std::uint64_t order = q_ - 1;
  Code generator = 1;
  if (order > 1) {
    const auto primes = prime_divisors(order);
    for (Code g = 2; g < q_; ++g) {
      bool ok = true;
      for (int l : primes) {
        Raw r = raw_pow(raw_of(g), order / l);
        if (r.size() == 1 && r[0] == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        generator = g;
        break;
      }
    }
  }
  exp_.resize(order);
  log_.assign(q_, 0);
  Raw cur{1};
  const Raw g_raw = raw_of(generator);
  for (std::uint64_t i = 0; i < order; ++i) {
    const Code c = code_of(cur);
    exp_[i] = c;
    log_[c] = static_cast<Code>(i);
    cur = raw_mulmod(cur, g_raw, modulus_, p_);
  }

  if (q_ <= 256) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    mul_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Code a = 0; a < q_; ++a)
      for (Code b = 0; b < q_; ++b) {
        add_table_[a * q_ + b] = add_slow(a, b);
        mul_table_[a * q_ + b] = (a == 0 || b == 0) ? 0 : exp_[(log_[a] + log_[b]) % order];
      }
  }

  lex_order_.resize(q_);
  std::iota(lex_order_.begin(), lex_order_.end(), Code{0});
  std::sort(lex_order_.begin(), lex_order_.end(), [&](Code a, Code b) { return coeffs(a) < coeffs(b); });
  lex_rank_.resize(q_);
  for (Code i = 0; i < q_; ++i) lex_rank_[lex_order_[i]] = i;
}

Code FieldSpec::add_slow(Code a, Code b) const {
  Code result = 0;
  Code place = 1;
  for (int i = 0; i < k_; ++i) {
    const Code da = a % p_;
    const Code db = b % p_;
    result += ((da + db) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return result;
}

Code FieldSpec::inv(Code a) const {
  if (a == 0) throw ContractError("inversion of zero in " + header());
  if (q_ == 2) return 1;
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Code FieldSpec::pow(Code a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = q_ - 1;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (static_cast<std::uint64_t>(e) % order)) % order];
}

Code FieldSpec::from_integer(std::int64_t v) const {
  const std::int64_t r = ((v % p_) + p_) % p_;
  return static_cast<Code>(r);
}

std::vector<int> FieldSpec::coeffs(Code a) const {
  std::vector<int> c(k_);
  for (int i = 0; i < k_; ++i) {
    c[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return c;
}

Code FieldSpec::from_coeffs(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) > k_) throw ContractError("too many coefficients for " + header());
  Code result = 0;
  Code place = 1;
  for (int x : c) {
    result += static_cast<Code>(((x % p_) + p_) % p_) * place;
    place *= p_;
  }
  return result;
}

std::string FieldSpec::header() const {
  std::ostringstream out;
  out << "GF(" << p_;
  if (k_ > 1) out << '^' << k_;
  if (!default_modulus_) {
    out << ";mod=[";
    for (std::size_t i = 0; i < modulus_.size(); ++i) out << (i ? "," : "") << modulus_[i];
    out << ']';
  }
  out << ')';
  return out.str();
}

std::string FieldSpec::element_text(Code a) const {
  if (k_ == 1) return std::to_string(a);
  auto c = coeffs(a);
  std::string s = "[";
  for (int i = 0; i < k_; ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

Code FieldSpec::parse_element(std::string_view text) const {
  detail::Scanner sc(text);
  Code result;
  if (sc.consume('[')) {
    std::vector<int> c;
    if (!sc.consume(']')) {
      do {
        c.push_back(static_cast<int>(sc.integer()));
      } while (sc.consume(','));
      sc.expect(']');
    }
    if (static_cast<int>(c.size()) > k_) sc.fail("element has more than k coefficients");
    for (int x : c)
      if (x < 0 || x >= p_) sc.fail("coefficient out of range [0,p)");
    result = from_coeffs(c);
  } else {
    const auto v = sc.integer();
    if (v < 0 || v >= p_) sc.fail("residue out of range [0,p)");
    result = static_cast<Code>(v);
  }
  sc.require_end();
  return result;
}

bool same_field(const Field& a, const Field& b) { return a && b && a->same_as(*b); }

void require_same_field(const Field& a, const Field& b, const char* where) {
  if (!same_field(a, b))
    throw ContractError(std::string(where) + ": operands over different fields (" + (a ? a->header() : "null") +
                        " vs " + (b ? b->header() : "null") + ")");
}

Field parse_field(std::string_view text) {
  detail::Scanner sc(text);
  sc.expect("GF(");
  const auto base = sc.integer();
  std::int64_t p = base;
  std::int64_t k = 1;
  if (sc.consume('^')) {
    k = sc.integer();
  } else if (!is_prime(base)) {
    // Accept GF(q) for a prime power q.
    p = 0;
    for (std::int64_t d = 2; d <= base; ++d)
      if (base % d == 0) {
        p = d;
        break;
      }
    std::int64_t rest = base;
    k = 0;
    while (p > 1 && rest % p == 0) {
      rest /= p;
      ++k;
    }
    if (p < 2 || rest != 1) sc.fail("field size is not a prime power");
  }
  std::optional<std::vector<int>> modulus;
  if (sc.consume(';')) {
    sc.expect("mod=");
    sc.expect('[');
    std::vector<int> m;
    do {
      m.push_back(static_cast<int>(sc.integer()));
    } while (sc.consume(','));
    sc.expect(']');
    modulus = m;
  }
  sc.expect(')');
  sc.require_end();
  if (p > 1 << 20 || k > 20) sc.fail("field too large");
  try {
    return FieldSpec::make(static_cast<int>(p), static_cast<int>(k), modulus);
  } catch (const ContractError& e) {
    throw ParseError(e.what());
  }
}

FieldElement::FieldElement(Field field, Code code) : field_(std::move(field)), code_(code) {
  if (!field_) throw ContractError("field element without a field");
  if (code_ >= field_->size()) throw ContractError("field element code out of range");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(field_, o.field_, "add");
  return {field_, field_->add(code_, o.code_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(field_, o.field_, "sub");
  return {field_, field_->sub(code_, o.code_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(field_, o.field_, "mul");
  return {field_, field_->mul(code_, o.code_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same_field(field_, o.field_, "div");
  return {field_, field_->div(code_, o.code_)};
}

bool FieldElement::operator==(const FieldElement& o) const {
  require_same_field(field_, o.field_, "eq");
  return code_ == o.code_;
}

std::vector<FieldElement> enumerate_all(const Field& f) {
  std::vector<FieldElement> out;
  out.reserve(f->size());
  for (Code c : f->elements()) out.emplace_back(f, c);
  return out;
}

}  // namespace involkit
