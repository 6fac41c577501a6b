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

#include "involkit/census.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>

namespace involkit {

namespace {

std::mutex limits_mutex;

CensusLimits& limits_storage() {
  static CensusLimits limits = [] {
    CensusLimits l;
    if (const char* env = std::getenv("INVOLKIT_CAP")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) l.field_cap = static_cast<int>(v);
    }
    return l;
  }();
  return limits;
}

using Bitmap = std::vector<std::uint64_t>;

Bitmap make_bitmap(std::uint64_t bits) { return Bitmap((bits + 63) / 64, 0); }
void set_bit(Bitmap& b, Key k) { b[k >> 6] |= std::uint64_t{1} << (k & 63); }
bool test_bit(const Bitmap& b, Key k) { return (b[k >> 6] >> (k & 63)) & 1U; }

std::vector<Key> bitmap_keys(const Bitmap& b) {
  std::vector<Key> out;
  for (std::size_t w = 0; w < b.size(); ++w) {
    std::uint64_t word = b[w];
    while (word) {
      const int bit = __builtin_ctzll(word);
      out.push_back(static_cast<Key>(w) * 64 + bit);
      word &= word - 1;
    }
  }
  return out;
}

std::vector<std::uint8_t> unpack_all(const PackedSpace& space, const std::vector<Key>& keys) {
  const std::size_t nn = static_cast<std::size_t>(space.n()) * space.n();
  std::vector<std::uint8_t> out(keys.size() * nn);
  for (std::size_t i = 0; i < keys.size(); ++i) space.unpack(keys[i], out.data() + i * nn);
  return out;
}

void require_bitmap_space(const PackedSpace& space) {
  if (space.size() > census_limits().space_cap)
    throw CapExceeded("matrix space of size " + std::to_string(space.size()) + " exceeds the census cap");
}

}  // namespace

CensusLimits census_limits() {
  std::lock_guard lock(limits_mutex);
  return limits_storage();
}

void set_field_cap(int cap) {
  if (cap < 2) throw ContractError("field cap must be at least 2");
  std::lock_guard lock(limits_mutex);
  limits_storage().field_cap = cap;
}

std::uint64_t space_size(const Field& f, int n) {
  std::uint64_t s = 1;
  for (int i = 0; i < n * n; ++i) {
    if (s > std::numeric_limits<std::uint64_t>::max() / f->size()) return std::numeric_limits<std::uint64_t>::max();
    s *= f->size();
  }
  return s;
}

bool enumerable(const Field& f, int n) {
  const auto lim = census_limits();
  return static_cast<std::uint64_t>(f->size()) <= static_cast<std::uint64_t>(lim.field_cap) &&
         space_size(f, n) <= lim.space_cap;
}

void require_enumerable(const Field& f, int n, const char* what) {
  const auto lim = census_limits();
  if (f->size() > static_cast<Code>(lim.field_cap))
    throw CapExceeded(std::string(what) + ": field size " + std::to_string(f->size()) + " exceeds the census cap " +
                      std::to_string(lim.field_cap));
  if (space_size(f, n) > lim.space_cap)
    throw CapExceeded(std::string(what) + ": " + f->header() + " with n = " + std::to_string(n) +
                      " exceeds the matrix-space cap");
}

PackedSpace::PackedSpace(Field f, int n) : field_(std::move(f)), n_(n), q_(field_->size()) {
  if (n < 1) throw ContractError("packed space: n must be positive");
  if (q_ > 256) throw ContractError("packed space: field too large");
  size_ = space_size(field_, n);
  if (size_ == std::numeric_limits<std::uint64_t>::max()) throw CapExceeded("packed space: keys overflow");
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  for (Code a = 0; a < q_; ++a)
    for (Code b = 0; b < q_; ++b) {
      add_[a * q_ + b] = static_cast<std::uint8_t>(field_->add(a, b));
      mul_[a * q_ + b] = static_cast<std::uint8_t>(field_->mul(a, b));
    }
  place_.resize(static_cast<std::size_t>(n) * n);
  Key p = 1;
  for (auto& v : place_) {
    v = p;
    p *= q_;
  }
}

Key PackedSpace::pack(const Matrix& a) const {
  require_same_field(field_, a.field(), "pack");
  if (a.n() != n_) throw ContractError("pack: dimension mismatch");
  Key k = 0;
  for (std::size_t i = 0; i < place_.size(); ++i) k += a.entries()[i] * place_[i];
  return k;
}

Key PackedSpace::pack(const std::uint8_t* entries) const {
  Key k = 0;
  for (std::size_t i = 0; i < place_.size(); ++i) k += entries[i] * place_[i];
  return k;
}

void PackedSpace::unpack(Key k, std::uint8_t* out) const {
  for (std::size_t i = 0; i < place_.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(k % q_);
    k /= q_;
  }
}

Matrix PackedSpace::unpack(Key k) const {
  std::vector<std::uint8_t> raw(place_.size());
  unpack(k, raw.data());
  return {field_, n_, std::vector<Code>(raw.begin(), raw.end())};
}

Key PackedSpace::multiply(const std::uint8_t* a, const std::uint8_t* b) const {
  Key k = 0;
  std::size_t pos = 0;
  for (int i = 0; i < n_; ++i) {
    const std::uint8_t* row = a + i * n_;
    for (int j = 0; j < n_; ++j, ++pos) {
      std::uint8_t acc = 0;
      for (int t = 0; t < n_; ++t) acc = add_[acc * q_ + mul_[row[t] * q_ + b[t * n_ + j]]];
      k += acc * place_[pos];
    }
  }
  return k;
}

MatrixSet::MatrixSet(Field f, int n, std::vector<Key> sorted_keys) : space_(std::move(f), n), keys_(std::move(sorted_keys)) {
  if (!std::is_sorted(keys_.begin(), keys_.end())) throw ContractError("matrix set keys must be sorted");
}

bool MatrixSet::contains(Key k) const { return std::binary_search(keys_.begin(), keys_.end(), k); }

bool MatrixSet::contains(const Matrix& a) const { return contains(space_.pack(a)); }

std::vector<Matrix> MatrixSet::matrices() const {
  std::vector<Matrix> out;
  out.reserve(keys_.size());
  for (Key k : keys_) out.push_back(space_.unpack(k));
  return out;
}

bool MatrixSet::operator<=(const MatrixSet& o) const {
  return std::includes(o.keys_.begin(), o.keys_.end(), keys_.begin(), keys_.end());
}

namespace kernels {

std::vector<Key> product_closure(const PackedSpace& space, const std::vector<Key>& left, const std::vector<Key>& right,
                                 Exec exec) {
  require_bitmap_space(space);
  const std::size_t nn = static_cast<std::size_t>(space.n()) * space.n();
  const auto l = unpack_all(space, left);
  const auto r = unpack_all(space, right);
  const auto nl = static_cast<std::int64_t>(left.size());

  if (exec == Exec::serial) {
    Bitmap bits = make_bitmap(space.size());
    for (std::int64_t i = 0; i < nl; ++i)
      for (std::size_t j = 0; j < right.size(); ++j) set_bit(bits, space.multiply(&l[i * nn], &r[j * nn]));
    return bitmap_keys(bits);
  }

  Bitmap merged = make_bitmap(space.size());
#pragma omp parallel
  {
    Bitmap local = make_bitmap(space.size());
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < nl; ++i)
      for (std::size_t j = 0; j < right.size(); ++j) set_bit(local, space.multiply(&l[i * nn], &r[j * nn]));
#pragma omp critical(involkit_closure_merge)
    for (std::size_t w = 0; w < merged.size(); ++w) merged[w] |= local[w];
  }
  return bitmap_keys(merged);
}

std::vector<Key> left_stabilizer(const PackedSpace& space, const std::vector<Key>& set, Exec exec) {
  require_bitmap_space(space);
  const std::size_t nn = static_cast<std::size_t>(space.n()) * space.n();
  Bitmap member = make_bitmap(space.size());
  for (Key k : set) set_bit(member, k);
  const auto unpacked = unpack_all(space, set);
  const auto count = static_cast<std::int64_t>(set.size());
  std::vector<std::uint8_t> keep(set.size(), 0);

  auto stabilizes = [&](std::int64_t i) {
    const std::uint8_t* a = &unpacked[i * nn];
    for (std::size_t j = 0; j < set.size(); ++j)
      if (!test_bit(member, space.multiply(a, &unpacked[j * nn]))) return false;
    return true;
  };

  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < count; ++i) keep[i] = stabilizes(i);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) keep[i] = stabilizes(i);
  }

  std::vector<Key> out;
  for (std::size_t i = 0; i < set.size(); ++i)
    if (keep[i]) out.push_back(set[i]);
  return out;
}

std::optional<std::size_t> first_hit(std::size_t count, const std::function<bool(std::size_t)>& pred, Exec exec) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }

  std::atomic<std::size_t> best{count};
  std::exception_ptr error;
  std::size_t error_at = count;
  std::mutex error_mutex;
  auto lower_best = [&](std::size_t idx) {
    std::size_t cur = best.load();
    while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
    }
  };
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (idx >= best.load(std::memory_order_relaxed)) continue;
    try {
      if (pred(idx)) lower_best(idx);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (idx < error_at) {
        error_at = idx;
        error = std::current_exception();
      }
      lower_best(idx);
    }
  }
  const std::size_t b = best.load();
  if (error && error_at == b) std::rethrow_exception(error);
  if (b == count) return std::nullopt;
  return b;
}

}  // namespace kernels

}  // namespace involkit
