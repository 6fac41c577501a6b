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

// involkit command-line front end. Every command prints a line-delimited
// report; see README.md for the record format and exit codes.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "involkit/canonical.hpp"
#include "involkit/census.hpp"
#include "involkit/involution.hpp"
#include "involkit/preserver.hpp"
#include "involkit/report.hpp"
#include "involkit/verify.hpp"

using namespace involkit;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kCap = 3 };

struct Globals {
  std::string field;
  std::string modulus;
  int n = 0;
  std::uint64_t seed = 1;
  int cap = 0;
  std::string mode = "exhaustive";
  bool serial = false;
  bool no_timing = false;
};

Exec exec_of(const Globals& g) { return g.serial ? Exec::serial : Exec::parallel; }

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  for (char c : text) {
    if (c == '[' || c == ']' || c == ' ') continue;
    if (c == ',') {
      out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::stoi(cur));
  return out;
}

Field resolve_field(const Globals& g, const std::string& positional) {
  const std::string text = positional.empty() ? g.field : positional;
  if (text.empty()) throw ParseError("no field given; pass one or use --field");
  Field f = parse_field(text);
  if (g.modulus.empty()) return f;
  std::vector<int> mod;
  try {
    mod = parse_int_list(g.modulus);
  } catch (const std::exception&) {
    throw ParseError("--mod expects [c0,...,ck]");
  }
  return FieldSpec::make(f->characteristic(), f->degree(), mod);
}

int resolve_n(const Globals& g, int positional) {
  const int n = positional > 0 ? positional : g.n;
  if (n < 1) throw ParseError("no dimension given; pass one or use --n");
  return n;
}

LinearMapOnMatrices parse_map_or_form(const std::string& text) {
  if (text.rfind("form{", 0) == 0) return map_from_form(parse_form(text));
  return parse_linmap(text);
}

CheckResult certificate_check(const std::string& claim, bool ok, const std::string& evidence,
                              const std::string& example) {
  CheckResult c;
  c.claim = claim;
  c.status = ok ? CheckStatus::pass : CheckStatus::fail;
  c.evidence = evidence;
  if (!ok) c.counterexample = example;
  return c;
}

void add_factorization(Report& rep, const InvolutionFactorization& fac) {
  auto& r = rep.result("factorization");
  r.add("k", std::to_string(fac.factors.size())).add("factors", fac.to_text());
  rep.check(certificate_check("factorization-verified", fac.verify(), "each factor squares to I, product matches",
                              fac.to_text()));
}

Report cmd_rcf(const std::string& text) {
  Report rep("rcf");
  const Matrix a = parse_matrix(text);
  rep.input("matrix", a.to_text());
  const auto r = rcf(a);
  for (const auto& d : r.form.divisors())
    rep.result("divisor").add("base", d.base.to_text()).add("multiplicity", std::to_string(d.multiplicity));
  rep.result("rcf").add("form", r.form.to_text()).add("conjugator", r.conjugator.to_text());
  const Matrix assembled = r.form.assemble();
  rep.check(certificate_check("conjugation", conjugate(a, r.conjugator) == assembled,
                              "P A P^{-1} equals the assembled form", r.conjugator.to_text()));
  return rep;
}

Report cmd_member(const std::string& set, const std::string& text, const Globals& g) {
  Report rep("member");
  const SetId s = parse_set_id(set);
  const Matrix a = parse_matrix(text);
  rep.input("set", to_string(s));
  rep.input("matrix", a.to_text());
  const auto v = membership(s, a, exec_of(g));
  auto& r = rep.result("membership");
  r.add("member", to_string(v.member)).add("method", to_string(v.method));
  const std::string cert = v.certificate_text();
  if (!cert.empty()) r.add("certificate", cert);
  if (v.factorization) add_factorization(rep, *v.factorization);
  return rep;
}

Report cmd_decompose(int k, const std::string& text, const Globals& g) {
  Report rep("decompose");
  const Matrix a = parse_matrix(text);
  rep.input("k", std::to_string(k));
  rep.input("matrix", a.to_text());
  std::optional<InvolutionFactorization> fac;
  if (k == 2) {
    if (is_invertible(a) && in_B(a).yes()) fac = two_involutions(a);
  } else if (k == 3 || k == 4) {
    fac = k_involutions_search(a, k, exec_of(g));
  } else {
    throw ParseError("k must be 2, 3 or 4");
  }
  rep.result("decomposition").add("found", fac ? "true" : "false");
  if (fac) add_factorization(rep, *fac);
  return rep;
}

Code element_arg(const Field& f, const std::string& text, const char* name) {
  if (text.empty()) throw ParseError(std::string("missing --") + name);
  return f->parse_element(text);
}

Report cmd_witness(const std::string& kind, const Globals& g, const std::string& poly, const std::string& a1_text,
                   const std::string& alpha_text, const std::string& r_text) {
  Report rep("witness");
  const Field f = resolve_field(g, "");
  rep.input("kind", kind);
  rep.input("field", f->header());
  auto in_b = [](const Matrix& m) { return is_invertible(m) && in_B(m).yes(); };
  if (kind == "type1" || kind == "type2") {
    if (poly.empty()) throw ParseError("missing --poly");
    const Polynomial p = parse_polynomial(f, poly);
    rep.input("poly", p.to_text());
    Matrix base = kind == "type1" ? companion(p) : type2_base(p);
    Matrix n = kind == "type1" ? witness_type1(p) : Matrix::zero(f, 1);
    auto& r = rep.result("witness");
    if (kind == "type2") {
      const auto w = witness_type2(p);
      n = w.N;
      r.add("from_construction", w.from_construction ? "true" : "false");
    }
    r.add("base", base.to_text()).add("N", n.to_text());
    const Matrix product = base * (Matrix::identity(f, base.n()) + n);
    rep.check(certificate_check("base-in-B", in_b(base), "base matrix is a product of two involutions",
                                base.to_text()));
    rep.check(certificate_check("perturbed-outside-B", !in_b(product), "base (I + N) is not in B",
                                product.to_text()));
    return rep;
  }
  if (kind != "two" && kind != "three") throw ParseError("witness kind must be type1, type2, two or three");
  const Code a1 = element_arg(f, a1_text, "a1");
  const Code r = element_arg(f, r_text, "r");
  rep.input("a1", f->element_text(a1));
  Matrix a = two_base(f, a1);
  Matrix x = Matrix::zero(f, 1);
  if (kind == "two") {
    x = witness_two(f, a1, r);
  } else {
    const Code alpha = element_arg(f, alpha_text, "alpha");
    rep.input("alpha", f->element_text(alpha));
    a = three_base(f, a1, alpha);
    x = witness_three(f, a1, alpha, r);
  }
  rep.input("r", f->element_text(r));
  rep.result("witness").add("A", a.to_text()).add("X", x.to_text());
  rep.check(certificate_check("trace-zero", x.trace() == 0, "tr(X) = 0", x.to_text()));
  rep.check(certificate_check("X-in-B", in_b(x), "X is a product of two involutions", x.to_text()));
  const Matrix rax = a.scaled(r) * x;
  rep.check(certificate_check("rAX-outside-B", !in_b(rax), "r A X is not in B", rax.to_text()));
  return rep;
}

Report cmd_enumerate(const std::string& which, const std::string& field_text, int n_pos, const Globals& g) {
  Report rep("enumerate");
  const Field f = resolve_field(g, field_text);
  const int n = resolve_n(g, n_pos);
  rep.input("set", which);
  rep.input("field", f->header());
  rep.input("n", std::to_string(n));
  require_enumerable(f, n, "enumerate");
  std::vector<SetId> sets;
  if (which == "all")
    sets = {SetId::B, SetId::C, SetId::D};
  else
    sets = {parse_set_id(which)};
  for (SetId s : sets)
    rep.result("set").add("name", to_string(s)).add("size", std::to_string(bfs_set(s, f, n, exec_of(g)).size()));
  rep.result("involutions").add("count", std::to_string(involution_set(f, n).size()));
  if (sets.size() == 3) {
    const auto& b = bfs_set(SetId::B, f, n, exec_of(g));
    const auto& c = bfs_set(SetId::C, f, n, exec_of(g));
    const auto& d = bfs_set(SetId::D, f, n, exec_of(g));
    auto rel = [](const MatrixSet& x, const MatrixSet& y) {
      if (x == y) return std::string("equal");
      return std::string(x <= y ? "proper-subset" : "not-subset");
    };
    rep.result("relation").add("B_vs_C", rel(b, c)).add("C_vs_D", rel(c, d)).add(
        "C_equals_D", c == d ? "true" : "false");
    rep.check(certificate_check("chain", b <= c && c <= d, "B within C within D", f->header()));
  }
  return rep;
}

Report cmd_preserver_check(const std::string& text, const std::string& set, const Globals& g) {
  Report rep("preserver-check");
  const auto map = parse_map_or_form(text);
  const SetId s = parse_set_id(set);
  const CheckMode mode = parse_check_mode(g.mode, g.seed);
  rep.input("map", map.to_text());
  rep.input("set", to_string(s));
  rep.input("mode", to_string(mode));
  if (mode.kind == CheckMode::Kind::sample) rep.input("seed", std::to_string(g.seed));
  const auto r = preserves_set(map, s, mode, exec_of(g));
  auto& rec = rep.result("preservation");
  rec.add("preserved", r.preserved ? "true" : "false")
      .add("checked", std::to_string(r.checked))
      .add("undecided", std::to_string(r.undecided));
  std::string example;
  if (r.counterexample) {
    example = r.counterexample->to_text();
    rec.add("counterexample", example).add("image", map.apply(*r.counterexample).to_text());
  }
  rep.check(certificate_check("preserves-" + to_string(s), r.preserved, "T(X) in S for every tested X in S", example));
  return rep;
}

Report cmd_preserver_recognize(const std::string& text) {
  Report rep("preserver-recognize");
  const auto map = parse_map_or_form(text);
  rep.input("map", map.to_text());
  const auto form = recognize_form(map);
  auto& r = rep.result("recognition");
  r.add("form", form ? form->to_text() : "none");
  if (form) {
    r.add("unital", map.is_unital() ? "true" : "false");
    rep.check(certificate_check("round-trip", map_from_form(*form) == map, "form reproduces the action matrix",
                                form->to_text()));
  }
  return rep;
}

Report cmd_lambda(const std::string& field_text, int n_pos, const std::vector<std::string>& matrices,
                  const Globals& g) {
  Report rep("lambda");
  if (!matrices.empty()) {
    for (const auto& text : matrices) {
      const Matrix a = parse_matrix(text);
      rep.input("matrix", a.to_text());
      rep.result("lambda-member").add("matrix", a.to_text()).add("member", to_string(lambda_member(a, exec_of(g))));
    }
    return rep;
  }
  const Field f = resolve_field(g, field_text);
  const int n = resolve_n(g, n_pos);
  rep.input("field", f->header());
  rep.input("n", std::to_string(n));
  const auto& lam = lambda_census(f, n, exec_of(g));
  const auto& c = bfs_set(SetId::C, f, n, exec_of(g));
  const auto& d = bfs_set(SetId::D, f, n, exec_of(g));
  rep.result("census")
      .add("size", std::to_string(lam.size()))
      .add("equals_C", lam == c ? "true" : "false")
      .add("equals_D", lam == d ? "true" : "false");
  if (lam.size() <= 8) {
    std::string list;
    for (const auto& m : lam.matrices()) list += (list.empty() ? "" : "; ") + m.to_text();
    rep.result("elements").add("matrices", list);
  }
  return rep;
}

int emit(const Report& rep, const Globals& g) {
  std::cout << rep.to_text(!g.no_timing);
  return rep.ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"involkit: products of involutions and their linear preservers over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--field", g.field, "field, e.g. GF(7), GF(3^2)");
  app.add_option("--mod", g.modulus, "modulus coefficients [c0,...,ck] for --field");
  app.add_option("--n", g.n, "matrix dimension");
  app.add_option("--seed", g.seed, "seed for sampled checks");
  app.add_option("--cap", g.cap, "largest field size admitted to exhaustive enumeration");
  app.add_option("--mode", g.mode, "exhaustive or sample:N");
  app.add_flag("--serial", g.serial, "run scan kernels on one thread");
  app.add_flag("--no-timing", g.no_timing, "omit elapsed times from the report");

  std::string matrix, set, which, field_pos, kind, poly, a1, alpha, r, map_text, suite = "all";
  int k = 0, n_pos = 0;
  std::vector<std::string> lambda_matrices;

  auto* rcf_cmd = app.add_subcommand("rcf", "rational canonical form with a verified conjugator");
  rcf_cmd->add_option("matrix", matrix, "matrix text GF(q):[[...],...]")->required();

  auto* member = app.add_subcommand("member", "membership in B, C or D");
  member->add_option("set", set, "B, C or D")->required();
  member->add_option("matrix", matrix)->required();

  auto* decompose = app.add_subcommand("decompose", "factor into k involutions");
  decompose->add_option("k", k, "2, 3 or 4")->required();
  decompose->add_option("matrix", matrix)->required();

  auto* witness = app.add_subcommand("witness", "witness constructions");
  witness->add_option("kind", kind, "type1, type2, two or three")->required();
  witness->add_option("--poly", poly, "polynomial poly[c0,...,1] for type1/type2");
  witness->add_option("--a1", a1);
  witness->add_option("--alpha", alpha);
  witness->add_option("--r", r);

  auto* enumerate = app.add_subcommand("enumerate", "exact product-closure sets");
  enumerate->add_option("set", which, "B, C, D or all")->required();
  enumerate->add_option("field", field_pos);
  enumerate->add_option("n", n_pos);

  auto* preserver = app.add_subcommand("preserver", "linear preservers");
  preserver->require_subcommand(1);
  preserver->fallthrough();
  auto* check = preserver->add_subcommand("check", "does the map preserve a set");
  check->add_option("map", map_text, "linmap{...} or form{...}")->required();
  check->add_option("set", set, "B, C or D")->required();
  check->add_option("mode", g.mode, "exhaustive or sample:N");
  auto* recognize = preserver->add_subcommand("recognize", "recover (P, Q, transpose) from a map");
  recognize->add_option("map", map_text)->required();

  auto* lambda = app.add_subcommand("lambda", "left-multiplier stabilizer of C");
  lambda->add_option("field", field_pos);
  lambda->add_option("n", n_pos);
  lambda->add_option("--matrix", lambda_matrices, "test membership of these matrices instead");

  auto* verify = app.add_subcommand("verify", "acceptance suite");
  verify->add_option("suite", suite, "all or a claim id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (g.cap > 0) set_field_cap(g.cap);
    std::optional<Report> rep;
    if (*rcf_cmd) rep = cmd_rcf(matrix);
    if (*member) rep = cmd_member(set, matrix, g);
    if (*decompose) rep = cmd_decompose(k, matrix, g);
    if (*witness) rep = cmd_witness(kind, g, poly, a1, alpha, r);
    if (*enumerate) rep = cmd_enumerate(which, field_pos, n_pos, g);
    if (*check) rep = cmd_preserver_check(map_text, set, g);
    if (*recognize) rep = cmd_preserver_recognize(map_text);
    if (*lambda) rep = cmd_lambda(field_pos, n_pos, lambda_matrices, g);
    if (*verify) {
      if (suite != "all") {
        bool known = false;
        for (const auto& c : claims()) known |= c.id == suite;
        if (!known) throw ParseError("unknown claim id '" + suite + "'");
      }
      rep = run_suite(suite, {g.seed, exec_of(g)});
    }
    if (!*verify) rep->set_elapsed(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    return emit(*rep, g);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  }
}
