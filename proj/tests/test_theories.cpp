#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <utility>

#include "relcalc/axioms.hpp"
#include "relcalc/derived.hpp"
#include "relcalc/semantics.hpp"
#include "relcalc/theories.hpp"
#include "support.hpp"

using namespace relcalc;
using testsupport::all_interps;

namespace {

std::pair<Tuple, Tuple> pr(Tuple a, Tuple b) { return {std::move(a), std::move(b)}; }

bool is_point(const Relation& r) {
  return r.in == 0 && r.out == 0 && r.pairs.count(pr({}, {})) == 1;
}

}  // namespace

TEST_CASE("satisfaction checks every axiom") {
  Theory thy;
  thy.signature.symbols["R"] = {1, 1};
  Signature sig = thy.signature;
  thy.axioms.push_back({parse_term("R+", sig), parse_term("R+ ;+ R+", sig)});

  FiniteInterpretation I;
  I.domain_size = 2;
  I.relations["R"] = {1, 1, {pr({0}, {0})}};
  CHECK(theory_satisfied(thy, I));
  I.relations["R"].pairs = {pr({0}, {1})};
  CHECK_FALSE(theory_satisfied(thy, I));
}

TEST_CASE("inclusion probes evaluate to the point exactly on inclusion") {
  Signature sig;
  sig.symbols["R"] = {1, 1};
  TermPtr r = parse_term("R+", sig);
  TermPtr rr = parse_term("R+ ;+ R+", sig);
  TermPtr probe = inclusion_probe(r, rr, sig);
  CHECK(typecheck(probe, sig) == Type{0, 0});

  for (const auto& I : all_interps(sig, {0, 1, 2})) {
    bool leq = semantic_leq(r, rr, I, sig);
    CHECK(is_point(eval(probe, I, sig)) == leq);
  }

  SUBCASE("wider interfaces") {
    Signature sg2;
    sg2.symbols["S"] = {2, 1};
    TermPtr s = parse_term("S+", sg2);
    TermPtr probe2 = inclusion_probe(s, top_term({2, 1}), sg2);
    CHECK(typecheck(probe2, sg2) == Type{0, 0});
    for (const auto& I : all_interps(sg2, {0, 2})) {
      CHECK(is_point(eval(probe2, I, sg2)));
    }
  }
}

TEST_CASE("closing a theory preserves its models") {
  Theory thy;
  thy.signature.symbols["R"] = {1, 1};
  Signature sig = thy.signature;
  thy.axioms.push_back({parse_term("R+", sig), parse_term("R+ ;+ R+", sig)});
  thy.axioms.push_back({parse_term("id+", sig), parse_term("R+", sig)});

  Theory closed = close_theory(thy);
  CHECK(closed.axioms.size() == thy.axioms.size());
  for (const auto& [lhs, rhs] : closed.axioms) {
    CHECK(term_eq(lhs, id0(Color::White)));
    CHECK(typecheck(rhs, sig) == Type{0, 0});
  }
  for (const auto& I : all_interps(sig, {0, 1, 2})) {
    CHECK(theory_satisfied(closed, I) == theory_satisfied(thy, I));
  }
}

TEST_CASE("function axioms say total and single valued") {
  Signature sig;
  sig.symbols["f"] = {1, 1};
  auto pairs = function_axioms("f", sig);
  CHECK(pairs.size() == 2);

  Theory thy;
  thy.signature = sig;
  thy.axioms = pairs;
  for (const auto& I : all_interps(sig, {0, 1, 2})) {
    const Relation& rho = I.relations.at("f");
    bool functional = true;
    for (const auto& x : all_tuples(I.domain_size, 1)) {
      int images = 0;
      for (const auto& [a, b] : rho.pairs)
        if (a == x) ++images;
      if (images != 1) functional = false;
    }
    CHECK(theory_satisfied(thy, I) == functional);
  }

  SUBCASE("constants") {
    Signature sc;
    sc.symbols["k"] = {0, 1};
    Theory tk;
    tk.signature = sc;
    tk.axioms = function_axioms("k", sc);
    for (const auto& I : all_interps(sc, {0, 1, 2})) {
      CHECK(theory_satisfied(tk, I) == (I.relations.at("k").pairs.size() == 1));
    }
  }

  SUBCASE("only single output symbols qualify") {
    Signature bad;
    bad.symbols["g"] = {1, 2};
    CHECK_THROWS_AS(function_axioms("g", bad), BadCoarity);
    CHECK_THROWS_AS(function_axioms("missing", bad), TermError);
  }
}

TEST_CASE("witness axioms pick a satisfying point when one exists") {
  Signature sig;
  sig.symbols["k"] = {0, 1};
  sig.symbols["P"] = {1, 0};
  TermPtr c = parse_term("P+", sig);
  auto pairs = witness_axioms("k", c, sig);
  CHECK(pairs.size() == 3);

  Theory thy;
  thy.signature = sig;
  thy.axioms = pairs;
  for (const auto& I : all_interps(sig, {0, 1, 2})) {
    const Relation& k = I.relations.at("k");
    const Relation& p = I.relations.at("P");
    bool expected = k.pairs.size() == 1;
    if (expected && !p.pairs.empty()) {
      Tuple v = k.pairs.begin()->second;
      expected = p.pairs.count(pr(v, {})) == 1;
    }
    CHECK(theory_satisfied(thy, I) == expected);
  }

  SUBCASE("type requirements") {
    CHECK_THROWS_AS(witness_axioms("P", c, sig), BadType);
    CHECK_THROWS_AS(witness_axioms("k", parse_term("k+", sig), sig), BadType);
  }
}

TEST_CASE("erasing a constant routes its value through a fresh wire") {
  Signature base;
  base.symbols["R"] = {1, 1};
  Signature with_k = base;
  with_k.symbols["k"] = {0, 1};

  testsupport::TermGen g(with_k, 8u);
  int erased_with_k = 0;
  for (int i = 0; i < 60; ++i) {
    TermPtr t = g.term(3);
    Type ty = typecheck(t, with_k);
    TermPtr erased = erase_constant("k", t, with_k);
    CHECK(typecheck(erased, base) == Type{1 + ty.in, ty.out});

    std::set<std::string> syms;
    collect_symbols(erased, syms);
    CHECK(syms.count("k") == 0);
    if (print_term(t).find("k") != std::string::npos) ++erased_with_k;

    for (const auto& I : all_interps(base, {2})) {
      FiniteInterpretation J = I;
      Relation e = eval(erased, I, base);
      for (int v = 0; v < 2; ++v) {
        J.relations["k"] = {0, 1, {pr({}, {v})}};
        Relation orig = eval(t, J, with_k);
        for (const auto& x : all_tuples(2, ty.in))
          for (const auto& y : all_tuples(2, ty.out)) {
            Tuple vx = {v};
            vx.insert(vx.end(), x.begin(), x.end());
            CHECK(e.pairs.count(pr(vx, y)) == orig.pairs.count(pr(x, y)));
          }
      }
    }
  }
  CHECK(erased_with_k > 0);
}

TEST_CASE("model classification") {
  Signature empty;

  SUBCASE("no axioms") {
    Theory thy;
    ClassifyResult res = classify(thy, {0, 1, 2}, 1000);
    CHECK(res.model_class == ModelClass::ModelNonEmpty);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->domain_size > 0);
  }

  SUBCASE("nonempty domains only") {
    Theory thy;
    thy.axioms.push_back(
        {parse_term("id0+", empty), parse_term("cd+ ;+ dc+", empty)});
    ClassifyResult res = classify(thy, {0, 1, 2}, 1000);
    CHECK(res.model_class == ModelClass::ModelNonEmpty);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->domain_size == 1);
  }

  SUBCASE("empty domain only") {
    Theory thy;
    thy.axioms.push_back({parse_term("cd+", empty), parse_term("cd-", empty)});
    ClassifyResult res = classify(thy, {0, 1, 2}, 1000);
    CHECK(res.model_class == ModelClass::ModelEmptyOnly);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->domain_size == 0);
    CHECK_FALSE(res.budget_exceeded);
  }

  SUBCASE("no model at all") {
    Theory thy;
    thy.axioms.push_back({parse_term("id0+", empty), parse_term("id0-", empty)});
    ClassifyResult res = classify(thy, {0, 1, 2}, 1000);
    CHECK(res.model_class == ModelClass::NoModelUpToBound);
    CHECK_FALSE(res.witness.has_value());
    CHECK_FALSE(res.budget_exceeded);
  }

  SUBCASE("budget exhaustion is reported") {
    Theory thy;
    thy.signature.symbols["R"] = {1, 1};
    Signature sig = thy.signature;
    thy.axioms.push_back({parse_term("id+", sig), parse_term("R+ ;+ R+", sig)});
    ClassifyResult res = classify(thy, {2}, 2);
    CHECK(res.budget_exceeded);
  }
}
