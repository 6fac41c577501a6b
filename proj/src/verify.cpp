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

#include "involkit/verify.hpp"

#include <chrono>
#include <functional>
#include <random>

#include "involkit/canonical.hpp"
#include "involkit/involution.hpp"
#include "involkit/preserver.hpp"

namespace involkit {

namespace {

struct Outcome {
  bool ok = true;
  std::string evidence;
  std::optional<std::string> counterexample;

  void fail(std::string what, std::string example) {
    if (!ok) return;
    ok = false;
    evidence = std::move(what);
    counterexample = std::move(example);
  }
};

Field gf(int p, int k = 1) { return FieldSpec::make(p, k); }

bool det_pm1(const Matrix& a) {
  const Code d = det(a);
  return d == 1 || d == a.field()->neg(1);
}

template <class Fn>
void for_each_key(const PackedSpace& space, Fn&& fn) {
  for (Key k = 0; k < space.size(); ++k) fn(k);
}

std::vector<Key> keys_where(const Field& f, int n, const std::function<bool(const Matrix&)>& pred) {
  PackedSpace space(f, n);
  std::vector<Key> out;
  for_each_key(space, [&](Key k) {
    if (pred(space.unpack(k))) out.push_back(k);
  });
  return out;
}

// First key in exactly one of the two sorted lists.
std::optional<Key> first_difference(const std::vector<Key>& a, const std::vector<Key>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i;
      ++j;
    } else {
      return std::min(a[i], b[j]);
    }
  }
  if (i < a.size()) return a[i];
  if (j < b.size()) return b[j];
  return std::nullopt;
}

std::string label(const Field& f, int n) { return f->header() + " n=" + std::to_string(n); }

Matrix random_invertible(const Field& f, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Code> dist(0, f->size() - 1);
  while (true) {
    std::vector<Code> e(static_cast<std::size_t>(n) * n);
    for (auto& c : e) c = dist(rng);
    Matrix m(f, n, std::move(e));
    if (det(m) != 0) return m;
  }
}

bool certificate_ok(const InvolutionFactorization& fac, const Matrix& a, std::size_t k) {
  if (fac.factors.size() != k) return false;
  Matrix prod = Matrix::identity(a.field(), a.n());
  for (const auto& j : fac.factors) {
    if (!(j * j).is_identity()) return false;
    prod = prod * j;
  }
  return prod == a;
}

std::vector<Polynomial> unit_monics(const Field& f, int degree) {
  const auto& elems = f->elements();
  const Code q = f->size();
  std::vector<Polynomial> out;
  std::vector<Code> digit(degree, 0);
  while (true) {
    if (digit[0] != 0) {
      std::vector<Code> c(degree + 1, 1);
      for (int i = 0; i < degree; ++i) c[i] = elems[digit[i]];
      out.emplace_back(f, std::move(c));
    }
    int i = degree - 1;
    while (i >= 0 && ++digit[i] == q) digit[i--] = 0;
    if (i < 0) return out;
  }
}

Outcome char2_collapse(const VerifyOptions& opt) {
  Outcome out;
  for (const auto& f : {gf(2), gf(2, 2)}) {
    const auto det_set = keys_where(f, 2, det_pm1);
    const auto& b = bfs_set(SetId::B, f, 2, opt.exec);
    const auto& c = bfs_set(SetId::C, f, 2, opt.exec);
    const auto& d = bfs_set(SetId::D, f, 2, opt.exec);
    for (const auto* s : {&b, &c, &d})
      if (auto k = first_difference(s->keys(), det_set))
        out.fail(label(f, 2) + ": product set differs from det^2=1", b.space().unpack(*k).to_text());
    out.evidence += (out.evidence.empty() ? "" : "; ") + f->header() + ": |B|=|C|=|D|=|det^2=1|=" +
                    std::to_string(det_set.size());
  }
  return out;
}

Outcome c_equals_d_cases(const VerifyOptions& opt) {
  Outcome out;
  const std::vector<std::pair<Field, int>> cases{{gf(2), 2}, {gf(2), 3}, {gf(2), 4},
                                                 {gf(3), 2}, {gf(3), 3}, {gf(5), 2}};
  std::string ev;
  for (const auto& [f, n] : cases) {
    const auto& c = bfs_set(SetId::C, f, n, opt.exec);
    const auto& d = bfs_set(SetId::D, f, n, opt.exec);
    if (auto k = first_difference(c.keys(), d.keys()))
      out.fail(label(f, n) + ": C != D", c.space().unpack(*k).to_text());
    if (!c_equals_d(f, n)) out.fail(label(f, n) + ": classification says C != D", label(f, n));
    ev += (ev.empty() ? "" : "; ") + label(f, n) + " |C|=|D|=" + std::to_string(c.size());
  }
  if (out.ok) out.evidence = ev;
  return out;
}

Outcome b3_char2_classes(const VerifyOptions& opt) {
  Outcome out;
  const auto f = gf(2);
  std::vector<Matrix> reps{Matrix::identity(f, 3), Matrix::from_ints(f, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}})};
  for (Code a : f->elements()) reps.push_back(Matrix(f, 3, {0, 0, 1, 1, 0, a, 0, 1, a}));
  const auto characterized = keys_where(f, 3, [](const Matrix& m) { return is_invertible(m) && in_B(m).yes(); });
  const auto classes = keys_where(f, 3, [&](const Matrix& m) {
    if (!is_invertible(m)) return false;
    for (const auto& r : reps)
      if (similar(m, r)) return true;
    return false;
  });
  const auto& bfs = bfs_set(SetId::B, f, 3, opt.exec);
  PackedSpace space(f, 3);
  if (auto k = first_difference(characterized, classes))
    out.fail("pairing test and listed classes disagree", space.unpack(*k).to_text());
  if (auto k = first_difference(characterized, bfs.keys()))
    out.fail("pairing test and two-involution products disagree", space.unpack(*k).to_text());
  const Matrix m = Matrix::from_ints(f, {{0, 0, 1}, {1, 0, 0}, {0, 1, 1}});
  if (in_B(m).yes() || bfs.contains(m)) out.fail("(0 0 1; 1 0 0; 0 1 1) lies in B_3", m.to_text());
  if (!bfs_set(SetId::C, f, 3, opt.exec).contains(m)) out.fail("(0 0 1; 1 0 0; 0 1 1) not in C_3", m.to_text());
  if (out.ok)
    out.evidence = "|B_3|=" + std::to_string(bfs.size()) + " = union of 4 classes; (0 0 1;1 0 0;0 1 1) in C_3 \\ B_3";
  return out;
}

Outcome b_membership_agreement(const VerifyOptions& opt) {
  Outcome out;
  std::string ev;
  for (const auto& f : {gf(2), gf(3)})
    for (int n = 2; n <= 3; ++n) {
      const auto& bfs = bfs_set(SetId::B, f, n, opt.exec);
      PackedSpace space(f, n);
      std::size_t invertible = 0, members = 0;
      for_each_key(space, [&](Key k) {
        const Matrix a = space.unpack(k);
        if (!is_invertible(a)) return;
        ++invertible;
        const bool pairing = reciprocal_pairing(elementary_divisors(a));
        const bool inverse_similar = similar_to_inverse(a);
        const bool oracle = bfs.contains(k);
        if (pairing != inverse_similar || pairing != oracle)
          out.fail(label(f, n) + ": pairing/similar-to-inverse/product-set disagree", a.to_text());
        members += oracle;
      });
      ev += (ev.empty() ? "" : "; ") + label(f, n) + " " + std::to_string(members) + "/" + std::to_string(invertible);
    }
  if (out.ok) out.evidence = ev;
  return out;
}

Outcome two_involution_soundness(const VerifyOptions& opt) {
  Outcome out;
  std::size_t total = 0;
  for (const auto& f : {gf(2), gf(3)})
    for (int n = 1; n <= 3; ++n) {
      const auto& b = bfs_set(SetId::B, f, n, opt.exec);
      for (Key k : b.keys()) {
        const Matrix a = b.space().unpack(k);
        ++total;
        try {
          if (!certificate_ok(two_involutions(a), a, 2)) out.fail(label(f, n) + ": bad factorization", a.to_text());
        } catch (const std::exception& e) {
          out.fail(label(f, n) + ": " + e.what(), a.to_text());
        }
      }
    }
  if (out.ok) out.evidence = std::to_string(total) + " factorizations verified over GF(2), GF(3), n<=3";
  return out;
}

Outcome determinant_criterion(const VerifyOptions& opt) {
  Outcome out;
  const auto f = gf(3);
  PackedSpace space(f, 2);
  std::size_t with = 0, without = 0;
  for_each_key(space, [&](Key k) {
    const Matrix a = space.unpack(k);
    const auto cert = k_involutions_search(a, 4, opt.exec);
    if (det_pm1(a)) {
      if (!cert || !certificate_ok(*cert, a, 4)) out.fail("det +-1 without a verified certificate", a.to_text());
      ++with;
    } else {
      if (cert) out.fail("certificate for det outside +-1", a.to_text());
      ++without;
    }
  });
  if (out.ok)
    out.evidence = "GF(3) n=2: " + std::to_string(with) + " certified, " + std::to_string(without) + " without";
  return out;
}

Outcome scalar_c3_exclusion(const VerifyOptions& opt) {
  Outcome out;
  const auto f = gf(7);
  const Code alpha = 2;
  const Matrix a = Matrix::scalar(f, 3, alpha);
  if (f->add(f->add(f->mul(alpha, alpha), alpha), 1) != 0) out.fail("2^2+2+1 != 0 in GF(7)", a.to_text());
  if (!in_D(a).yes()) out.fail("2I not in D_3", a.to_text());
  const auto cert = k_involutions_search(a, 3, opt.exec);
  if (cert) out.fail("three-involution certificate found for 2I", cert->to_text());
  if (out.ok)
    out.evidence = "GF(7): 2I in D_3; none of " + std::to_string(enumerate_involutions(f, 3).size()) +
                   " involutions J gives J(2I) in B_3";
  return out;
}

Outcome witness_sweeps(const VerifyOptions&) {
  Outcome out;
  std::size_t two = 0, three = 0, type1 = 0, type2 = 0, fallback = 0;
  auto in_b = [](const Matrix& m) { return is_invertible(m) && in_B(m).yes(); };
  auto strictly_upper = [](const Matrix& m) {
    for (int i = 0; i < m.n(); ++i)
      for (int j = 0; j <= i; ++j)
        if (m.at(i, j) != 0) return false;
    return true;
  };
  for (const auto& f : {gf(5), gf(7)}) {
    const Code minus_one = f->neg(1);
    for (Code a1 : f->elements())
      for (Code r = 1; r < f->size(); ++r) {
        try {
          const Matrix a = two_base(f, a1);
          const Matrix x = witness_two(f, a1, r);
          if (x.trace() != 0 || !in_b(x) || in_b(a.scaled(r) * x))
            out.fail(label(f, 2) + " two-block witness failed", x.to_text());
          ++two;
          for (Code alpha : {Code{1}, minus_one}) {
            const Matrix a3 = three_base(f, a1, alpha);
            const Matrix x3 = witness_three(f, a1, alpha, r);
            if (x3.trace() != 0 || !in_b(x3) || in_b(a3.scaled(r) * x3))
              out.fail(label(f, 3) + " three-block witness failed", x3.to_text());
            ++three;
          }
        } catch (const std::exception& e) {
          out.fail(f->header() + " a1=" + f->element_text(a1) + " r=" + f->element_text(r) + ": " + e.what(),
                   two_base(f, a1).to_text());
        }
      }
    for (int degree = 2; degree <= 3; ++degree)
      for (const auto& g : unit_monics(f, degree)) {
        try {
          if (power_of_self_reciprocal_irreducible(g)) {
            if (degree < 3) continue;
            const Matrix n = witness_type1(g);
            const Matrix c = companion(g);
            if (!strictly_upper(n) || !in_b(c) || in_b(c * (Matrix::identity(f, degree) + n)))
              out.fail("power-of-self-reciprocal witness failed for " + g.to_text(), n.to_text());
            ++type1;
          } else {
            const auto w = witness_type2(g);
            const Matrix base = type2_base(g);
            if (!strictly_upper(w.N) || !in_b(base) || in_b(base * (Matrix::identity(f, 2 * degree) + w.N)))
              out.fail("paired witness failed for " + g.to_text(), w.N.to_text());
            ++type2;
            fallback += !w.from_construction;
          }
        } catch (const std::exception& e) {
          out.fail(g.to_text() + ": " + e.what(), g.to_text());
        }
      }
  }
  if (out.ok)
    out.evidence = "two-block " + std::to_string(two) + ", three-block " + std::to_string(three) +
                   ", self-reciprocal powers " + std::to_string(type1) + ", paired " + std::to_string(type2) +
                   " (searched past E(1,n) for " + std::to_string(fallback) + ")";
  return out;
}

Outcome nilpotency_criterion(const VerifyOptions&) {
  Outcome out;
  std::string ev;
  for (const auto& f : {gf(2), gf(3)})
    for (int n = 2; n <= 3; ++n) {
      PackedSpace space(f, n);
      const Polynomial one = Polynomial::monomial(f, 0);
      std::size_t nil = 0;
      for_each_key(space, [&](Key k) {
        const Matrix a = space.unpack(k);
        const bool by_charpoly = is_nilpotent(a);
        const bool by_power = a.pow(n).is_zero();
        const bool by_pencil = pencil_det(a) == one;
        if (by_charpoly != by_power || by_charpoly != by_pencil)
          out.fail(label(f, n) + ": nilpotency tests disagree", a.to_text());
        nil += by_power;
      });
      ev += (ev.empty() ? "" : "; ") + label(f, n) + " " + std::to_string(nil) + " nilpotent";
    }
  if (out.ok) out.evidence = ev;
  return out;
}

Outcome preserver_sufficiency(const VerifyOptions& opt) {
  Outcome out;
  std::mt19937_64 rng(opt.seed * 1000003 + 10);
  const std::vector<std::pair<Field, int>> cases{{gf(3), 2}, {gf(3), 3}, {gf(2), 2}, {gf(2), 3}, {gf(2, 2), 2}};
  const int per_variant = 100;
  std::size_t passed = 0;
  for (const auto& [f, n] : cases) {
    const Code minus_one = f->neg(1);
    for (int t = 0; t < per_variant; ++t) {
      const bool tr = rng() & 1;
      const Code alpha = (rng() & 1) ? minus_one : Code{1};
      const Matrix p = random_invertible(f, n, rng);
      Matrix q = random_invertible(f, n, rng);
      const Code target = (f->is_char_two() || (rng() & 1)) ? Code{1} : minus_one;
      q = Matrix::diag(f, [&] {
            std::vector<Code> d(n, 1);
            d[0] = f->div(target, det(p * q));
            return d;
          }()) * q;
      const std::vector<std::pair<SetId, PreserverForm>> forms{
          {SetId::B, PreserverForm::conjugation(p, alpha, tr)},
          {SetId::C, PreserverForm::conjugation(p, 1, tr)},
          {SetId::D, PreserverForm::congruence_pair(p, q, tr)}};
      for (const auto& [s, form] : forms) {
        const auto r = preserves_set(map_from_form(form), s, CheckMode::exhaustive(), opt.exec);
        if (!r.preserved)
          out.fail(label(f, n) + " " + to_string(s) + " not preserved by " + form.to_text() + " at " +
                       r.counterexample->to_text(),
                   form.to_text());
        else
          ++passed;
      }
    }
  }
  if (out.ok)
    out.evidence = std::to_string(passed) +
                   " exhaustive checks: 100 forms per set over GF(3) n=2,3, GF(2) n=2,3, GF(4) n=2";
  return out;
}

Outcome exceptional_map(const VerifyOptions& opt) {
  Outcome out;
  for (const auto& f : {gf(3), gf(5)}) {
    const auto map = exceptional_n2_map(f);
    if (!map.is_unital()) out.fail(f->header() + ": not unital", map.to_text());
    PackedSpace space(f, 2);
    for_each_key(space, [&](Key k) {
      const Matrix x = space.unpack(k);
      if (det(map.apply(x)) != det(x)) out.fail(f->header() + ": determinant changed", x.to_text());
    });
    for (SetId s : {SetId::B, SetId::C, SetId::D}) {
      const auto r = preserves_set(map, s, CheckMode::exhaustive(), opt.exec);
      if (!r.preserved) out.fail(f->header() + ": " + to_string(s) + " not preserved", r.counterexample->to_text());
    }
    const auto form = recognize_form(map);
    const Matrix q0 = Matrix::from_ints(f, {{0, 1}, {-1, 0}});
    if (!form || form->variant != FormVariant::conjugation || form->alpha != 1 || !form->transpose || form->P != q0)
      out.fail(f->header() + ": not recognized as X -> Q0 X^t Q0^{-1}", form ? form->to_text() : "none");
  }
  if (out.ok)
    out.evidence = "GF(3), GF(5): unital, det-preserving, preserves B/C/D, recognized as transpose conjugation by "
                   "(0 1; -1 0)";
  return out;
}

Outcome lambda_structure(const VerifyOptions& opt) {
  Outcome out;
  std::string ev;
  for (const auto& f : {gf(3), gf(2)}) {
    const auto& lam = lambda_census(f, 3, opt.exec);
    const auto& d = bfs_set(SetId::D, f, 3, opt.exec);
    if (auto k = first_difference(lam.keys(), d.keys()))
      out.fail(label(f, 3) + ": Lambda differs from D", d.space().unpack(*k).to_text());
    for (Key k : lam.keys()) {
      const Matrix a = lam.space().unpack(k);
      if (!lam.contains(-a) || !lam.contains(inverse(a)))
        out.fail(label(f, 3) + ": Lambda not closed under -A, A^{-1}", a.to_text());
    }
    ev += (ev.empty() ? "" : "; ") + label(f, 3) + " |Lambda|=|D|=" + std::to_string(lam.size());
  }
  if (out.ok) out.evidence = ev + "; closed under -A and A^{-1}";
  return out;
}

Outcome recognition_round_trip(const VerifyOptions& opt) {
  Outcome out;
  std::mt19937_64 rng(opt.seed * 1000003 + 13);
  const auto f = gf(5);
  const int total = 500;
  for (int t = 0; t < total; ++t) {
    const int n = 1 + t % 3;
    const Matrix p = random_invertible(f, n, rng);
    const Matrix q = random_invertible(f, n, rng);
    const auto form = PreserverForm::congruence_pair(p, q, rng() & 1);
    const auto map = map_from_form(form);
    const auto got = recognize_form(map);
    if (!got || map_from_form(*got) != map) out.fail("recognition lost the map", form.to_text());
  }
  if (out.ok) out.evidence = std::to_string(total) + " forms over GF(5), n=1..3, action reproduced exactly";
  return out;
}

struct Entry {
  ClaimInfo info;
  std::function<Outcome(const VerifyOptions&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{"char2-n2-collapse", "B_2 = C_2 = D_2 = {det^2 = 1} over GF(2), GF(4)"}, char2_collapse},
      {{"c-equals-d", "C_n = D_n in the classified small cases"}, c_equals_d_cases},
      {{"b3-char2-classes", "B_3 over GF(2) is the union of the listed similarity classes"}, b3_char2_classes},
      {{"b-membership-agreement", "pairing test = similar to inverse = two-involution products"},
       b_membership_agreement},
      {{"two-involution-soundness", "two_involutions certificates verify on every member of B"},
       two_involution_soundness},
      {{"determinant-criterion", "four involutions exactly when det = +-1, GF(3) n=2"}, determinant_criterion},
      {{"scalar-c3-exclusion", "2I in D_3 but not C_3 over GF(7)"}, scalar_c3_exclusion},
      {{"witness-sweeps", "witness constructions over GF(5), GF(7)"}, witness_sweeps},
      {{"nilpotency-criterion", "charpoly x^n = N^n = 0 = det(I + tN) = 1"}, nilpotency_criterion},
      {{"preserver-sufficiency", "standard forms preserve B, C, D"}, preserver_sufficiency},
      {{"exceptional-n2-map", "X -> -X + tr(X) I"}, exceptional_map},
      {{"lambda-structure", "Lambda_3 = D_3 over GF(2), GF(3) and closure"}, lambda_structure},
      {{"recognition-round-trip", "recognize_form inverts map_from_form"}, recognition_round_trip},
      {{"necessity-out-of-reach", "necessity over all bijective linear maps", false}, nullptr},
  };
  return entries;
}

}  // namespace

const std::vector<ClaimInfo>& claims() {
  static const std::vector<ClaimInfo> out = [] {
    std::vector<ClaimInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return out;
}

CheckResult run_claim(std::string_view id, const VerifyOptions& options) {
  for (const auto& e : registry()) {
    if (e.info.id != id) continue;
    CheckResult r;
    r.claim = e.info.id;
    if (!e.info.checkable) {
      r.status = CheckStatus::not_applicable;
      r.evidence = "quantifies over every bijective linear map on M_n(F); covered by sufficiency, recognition and "
                   "targeted counterexamples";
      return r;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = e.run(options);
      r.status = o.ok ? CheckStatus::pass : CheckStatus::fail;
      r.evidence = std::move(o.evidence);
      r.counterexample = std::move(o.counterexample);
    } catch (const std::exception& ex) {
      r.status = CheckStatus::fail;
      r.evidence = std::string("exception: ") + ex.what();
      r.counterexample = std::string(id);
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw ContractError("unknown claim id '" + std::string(id) + "'");
}

Report run_suite(std::string_view which, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Report report("verify");
  report.input("suite", std::string(which));
  report.input("seed", std::to_string(options.seed));
  if (which == "all") {
    for (const auto& c : claims()) report.check(run_claim(c.id, options));
  } else {
    report.check(run_claim(which, options));
  }
  report.set_elapsed(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  return report;
}

}  // namespace involkit
