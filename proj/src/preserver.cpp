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

#include "involkit/preserver.hpp"

#include <random>

#include "scan.hpp"

namespace involkit {

namespace {

int vec_index(int i, int j, int n) { return i + j * n; }

std::string rows_text(const Matrix& m) {
  const std::string t = m.to_text();
  return t.substr(t.find("):") + 2);
}

Matrix strip_matrix(const Field& f, std::string_view rows) {
  return parse_matrix(f->header() + ":" + std::string(rows));
}

// Image of the matrix unit E(i, j) (0-based).
Matrix unit_image(const Matrix& action, int n, int i, int j) {
  const int col = vec_index(i, j, n);
  std::vector<Code> e(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) e[a * n + b] = action.at(vec_index(a, b, n), col);
  return {action.field(), n, std::move(e)};
}

// X -> P X Q with M(i, j) = p_i q_j^t for every unit.
std::optional<std::pair<Matrix, Matrix>> rank_one_grid(const Matrix& action, int n) {
  const Field& f = action.field();
  const FieldSpec& F = *f;
  std::vector<Matrix> images;
  images.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) images.push_back(unit_image(action, n, i, j));
  auto img = [&](int i, int j) -> const Matrix& { return images[i * n + j]; };

  const Matrix& m00 = img(0, 0);
  int c = -1;
  for (int b = 0; b < n && c < 0; ++b)
    for (int a = 0; a < n; ++a)
      if (m00.at(a, b) != 0) {
        c = b;
        break;
      }
  if (c < 0) return std::nullopt;

  std::vector<Code> p(static_cast<std::size_t>(n) * n), q(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) p[a * n + i] = img(i, 0).at(a, c);
  int r = 0;
  while (p[r * n] == 0) ++r;
  const Code scale = F.inv(p[r * n]);
  for (int j = 0; j < n; ++j)
    for (int b = 0; b < n; ++b) q[j * n + b] = F.mul(img(0, j).at(r, b), scale);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (img(i, j).at(a, b) != F.mul(p[a * n + i], q[j * n + b])) return std::nullopt;

  Matrix P(f, n, std::move(p)), Q(f, n, std::move(q));
  if (!is_invertible(P) || !is_invertible(Q)) return std::nullopt;
  return std::make_pair(P, Q);
}

PreserverForm normalized_form(Matrix P, Matrix Q, bool transpose) {
  const FieldSpec& F = *P.field();
  Code lead = 0;
  for (Code e : P.entries())
    if (e != 0) {
      lead = e;
      break;
    }
  P = P.scaled(F.inv(lead));
  Q = Q.scaled(lead);
  const Matrix pq = P * Q;
  if (pq.is_scalar()) {
    const Code alpha = pq.at(0, 0);
    if (F.mul(alpha, alpha) == 1) return PreserverForm::conjugation(P, alpha, transpose);
  }
  return PreserverForm::congruence_pair(P, Q, transpose);
}

}  // namespace

Vector vectorize(const Matrix& x) {
  const int n = x.n();
  Vector v(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v[vec_index(i, j, n)] = x.at(i, j);
  return v;
}

Matrix unvectorize(const Field& f, int n, const Vector& v) {
  if (v.size() != static_cast<std::size_t>(n) * n) throw ContractError("unvectorize: length mismatch");
  std::vector<Code> e(v.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e[i * n + j] = v[vec_index(i, j, n)];
  return {f, n, std::move(e)};
}

LinearMapOnMatrices::LinearMapOnMatrices(int n, Matrix action) : n_(n), action_(std::move(action)) {
  if (n < 1 || n > kMaxCanonicalDim) throw ContractError("linear map: dimension out of range");
  if (action_.n() != n * n) throw ContractError("linear map: action must be n^2 x n^2");
}

LinearMapOnMatrices LinearMapOnMatrices::identity(const Field& f, int n) {
  return {n, Matrix::identity(f, n * n)};
}

LinearMapOnMatrices LinearMapOnMatrices::transpose(const Field& f, int n) {
  const int nn = n * n;
  std::vector<Code> e(static_cast<std::size_t>(nn) * nn, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e[vec_index(j, i, n) * nn + vec_index(i, j, n)] = 1;
  return {n, Matrix(f, nn, std::move(e))};
}

Matrix LinearMapOnMatrices::apply(const Matrix& x) const {
  require_same_field(field(), x.field(), "apply");
  if (x.n() != n_) throw ContractError("apply: dimension mismatch");
  return unvectorize(field(), n_, action_ * vectorize(x));
}

bool LinearMapOnMatrices::is_unital() const { return apply(Matrix::identity(field(), n_)).is_identity(); }

LinearMapOnMatrices LinearMapOnMatrices::compose(const LinearMapOnMatrices& other) const {
  require_same_field(field(), other.field(), "compose");
  if (other.n_ != n_) throw ContractError("compose: dimension mismatch");
  return {n_, action_ * other.action_};
}

std::string LinearMapOnMatrices::to_text() const {
  return "linmap{" + field()->header() + ", " + std::to_string(n_) + ", action=" + rows_text(action_) + "}";
}

LinearMapOnMatrices parse_linmap(std::string_view text) {
  detail::Scanner sc(text);
  sc.expect("linmap{");
  sc.skip_ws();
  const std::size_t start = sc.pos();
  const std::size_t close = text.find(')', start);
  if (close == std::string_view::npos) throw ParseError("linmap: expected field header");
  const Field f = parse_field(text.substr(start, close + 1 - start));
  detail::Scanner rest(text.substr(close + 1));
  rest.expect(',');
  const auto n = rest.integer();
  rest.expect(',');
  rest.expect("action=");
  const Matrix action = strip_matrix(f, rest.balanced_token());
  rest.expect('}');
  rest.require_end();
  if (n < 1 || n > kMaxCanonicalDim || action.n() != n * n) throw ParseError("linmap: action must be n^2 x n^2");
  return {static_cast<int>(n), action};
}

std::string to_string(FormVariant v) {
  return v == FormVariant::conjugation ? "conjugation" : "congruence-pair";
}

PreserverForm PreserverForm::conjugation(const Matrix& p, Code alpha, bool transpose) {
  return {FormVariant::conjugation, alpha, p, inverse(p), transpose};
}

PreserverForm PreserverForm::congruence_pair(const Matrix& p, const Matrix& q, bool transpose) {
  return {FormVariant::congruence_pair, 1, p, q, transpose};
}

Matrix PreserverForm::evaluate(const Matrix& x) const {
  const Matrix y = transpose ? x.transpose() : x;
  return (P * y * Q).scaled(alpha);
}

std::string PreserverForm::to_text() const {
  return "form{" + field()->header() + ", " + to_string(variant) + ", alpha=" + field()->element_text(alpha) +
         ", P=" + rows_text(P) + ", Q=" + rows_text(Q) + ", transpose=" + (transpose ? "true" : "false") + "}";
}

PreserverForm parse_form(std::string_view text) {
  detail::Scanner sc(text);
  sc.expect("form{");
  sc.skip_ws();
  const std::size_t start = sc.pos();
  const std::size_t close = text.find(')', start);
  if (close == std::string_view::npos) throw ParseError("form: expected field header");
  const Field f = parse_field(text.substr(start, close + 1 - start));
  detail::Scanner rest(text.substr(close + 1));
  rest.expect(',');
  FormVariant variant = FormVariant::conjugation;
  if (rest.consume("conjugation"))
    variant = FormVariant::conjugation;
  else if (rest.consume("congruence-pair"))
    variant = FormVariant::congruence_pair;
  else
    rest.fail("expected 'conjugation' or 'congruence-pair'");
  rest.expect(',');
  rest.expect("alpha=");
  const Code alpha = f->parse_element(rest.balanced_token());
  rest.expect(',');
  rest.expect("P=");
  Matrix p = strip_matrix(f, rest.balanced_token());
  rest.expect(',');
  rest.expect("Q=");
  Matrix q = strip_matrix(f, rest.balanced_token());
  rest.expect(',');
  rest.expect("transpose=");
  bool transpose = false;
  if (rest.consume("true"))
    transpose = true;
  else if (!rest.consume("false"))
    rest.fail("expected 'true' or 'false'");
  rest.expect('}');
  rest.require_end();
  if (p.n() != q.n()) throw ParseError("form: P and Q differ in size");
  return {variant, alpha, std::move(p), std::move(q), transpose};
}

LinearMapOnMatrices map_from_form(const PreserverForm& form) {
  const Field& f = form.field();
  const FieldSpec& F = *f;
  const int n = form.n();
  require_same_field(f, form.Q.field(), "map_from_form");
  if (form.Q.n() != n) throw ContractError("map_from_form: P and Q differ in size");
  if (!is_invertible(form.P) || !is_invertible(form.Q)) throw ContractError("map_from_form: singular P or Q");
  if (form.alpha >= F.size() || F.mul(form.alpha, form.alpha) != 1)
    throw ContractError("map_from_form: alpha^2 != 1");
  if (form.variant == FormVariant::conjugation && !(form.P * form.Q).is_identity())
    throw ContractError("map_from_form: conjugation needs Q = P^{-1}");
  if (form.variant == FormVariant::congruence_pair && form.alpha != 1)
    throw ContractError("map_from_form: congruence pair carries alpha = 1");

  const int nn = n * n;
  std::vector<Code> e(static_cast<std::size_t>(nn) * nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Matrix image = form.evaluate(Matrix::unit(f, i + 1, j + 1, n));
      const int col = vec_index(i, j, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) e[vec_index(a, b, n) * nn + col] = image.at(a, b);
    }
  return {n, Matrix(f, nn, std::move(e))};
}

CheckMode parse_check_mode(std::string_view text, std::uint64_t seed) {
  if (text == "exhaustive") return CheckMode::exhaustive();
  if (text.substr(0, 7) == "sample:") {
    detail::Scanner sc(text.substr(7));
    const auto count = sc.integer();
    sc.require_end();
    if (count < 1) throw ParseError("sample count must be positive");
    return CheckMode::sample(static_cast<std::size_t>(count), seed);
  }
  throw ParseError("mode must be 'exhaustive' or 'sample:N', got '" + std::string(text) + "'");
}

std::string to_string(const CheckMode& mode) {
  if (mode.kind == CheckMode::Kind::exhaustive) return "exhaustive";
  return "sample:" + std::to_string(mode.count);
}

PreservationResult preserves_set(const LinearMapOnMatrices& map, SetId s, const CheckMode& mode, Exec exec) {
  const Field& f = map.field();
  const int n = map.n();
  PreservationResult result;

  const Matrix id = Matrix::identity(f, n);
  const Matrix id_image = map.apply(id);
  ++result.checked;
  const auto first = membership(s, id_image, exec);
  if (first.no()) {
    result.preserved = false;
    result.counterexample = id;
    return result;
  }
  if (first.member == Membership::unknown) ++result.undecided;

  if (mode.kind == CheckMode::Kind::exhaustive) {
    const MatrixSet& set = bfs_set(s, f, n, exec);
    const PackedSpace& space = set.space();
    const FieldSpec& F = *f;
    const int nn = n * n;
    const Matrix& action = map.action();
    const auto& keys = set.keys();
    auto fails = [&](std::size_t idx) {
      thread_local std::vector<std::uint8_t> x, y;
      x.resize(nn);
      y.resize(nn);
      space.unpack(keys[idx], x.data());
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const int row = vec_index(a, b, n);
          Code acc = 0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              const Code xv = x[i * n + j];
              if (xv != 0) acc = F.add(acc, F.mul(action.at(row, vec_index(i, j, n)), xv));
            }
          y[a * n + b] = static_cast<std::uint8_t>(acc);
        }
      return !set.contains(space.pack(y.data()));
    };
    const auto hit = kernels::first_hit(keys.size(), fails, exec);
    if (hit) {
      result.preserved = false;
      result.counterexample = space.unpack(keys[*hit]);
      result.checked += *hit + 1;
    } else {
      result.checked += keys.size();
    }
    return result;
  }

  std::mt19937_64 rng(mode.seed);
  std::uniform_int_distribution<Code> dist(0, f->size() - 1);
  const std::size_t max_draws = std::max<std::size_t>(mode.count, 1) * 1000;
  std::size_t found = 0;
  for (std::size_t draw = 0; draw < max_draws && found < mode.count; ++draw) {
    std::vector<Code> e(static_cast<std::size_t>(n) * n);
    for (auto& c : e) c = dist(rng);
    const Matrix x(f, n, std::move(e));
    if (!membership(s, x, exec).yes()) continue;
    ++found;
    ++result.checked;
    const auto v = membership(s, map.apply(x), exec);
    if (v.no()) {
      result.preserved = false;
      result.counterexample = x;
      return result;
    }
    if (v.member == Membership::unknown) ++result.undecided;
  }
  return result;
}

std::optional<PreserverForm> recognize_form(const LinearMapOnMatrices& map) {
  const int n = map.n();
  if (auto pq = rank_one_grid(map.action(), n)) return normalized_form(pq->first, pq->second, false);
  const auto flipped = map.compose(LinearMapOnMatrices::transpose(map.field(), n));
  if (auto pq = rank_one_grid(flipped.action(), n)) return normalized_form(pq->first, pq->second, true);
  return std::nullopt;
}

bool nilpotent_pullback_check(const LinearMapOnMatrices& map, std::size_t samples, std::uint64_t seed) {
  const Field& f = map.field();
  const FieldSpec& F = *f;
  const int n = map.n();
  const Matrix t_id = map.apply(Matrix::identity(f, n));
  if (!is_invertible(t_id)) throw ContractError("nilpotent_pullback_check: T(I) is singular");
  const Matrix pull = inverse(t_id);
  auto ok = [&](const Matrix& nil) { return is_nilpotent(pull * map.apply(nil)); };

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && !ok(Matrix::unit(f, i, j, n))) return false;
  for (int i = 1; i < n; ++i) {
    const Matrix d = Matrix::unit(f, i, i, n) - Matrix::unit(f, i + 1, i + 1, n) + Matrix::unit(f, i, i + 1, n) -
                     Matrix::unit(f, i + 1, i, n);
    if (!ok(d)) return false;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Code> dist(0, F.size() - 1);
  for (std::size_t t = 0; t < samples; ++t) {
    std::vector<Code> u(static_cast<std::size_t>(n) * n, 0), s(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) u[i * n + j] = dist(rng);
    do {
      for (auto& c : s) c = dist(rng);
    } while (det(Matrix(f, n, s)) == 0);
    if (!ok(conjugate(Matrix(f, n, std::move(u)), Matrix(f, n, s)))) return false;
  }
  return true;
}

LinearMapOnMatrices exceptional_n2_map(const Field& f) {
  if (f->is_char_two()) throw ContractError("exceptional_n2_map: characteristic 2");
  const int n = 2;
  const int nn = n * n;
  std::vector<Code> e(static_cast<std::size_t>(nn) * nn, 0);
  const Code minus_one = f->neg(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int col = vec_index(i, j, n);
      e[col * nn + col] = minus_one;
      if (i == j)
        for (int d = 0; d < n; ++d) {
          const int row = vec_index(d, d, n);
          e[row * nn + col] = f->add(e[row * nn + col], 1);
        }
    }
  return {n, Matrix(f, nn, std::move(e))};
}

}  // namespace involkit
