#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "relcalc/derived.hpp"
#include "relcalc/json_io.hpp"
#include "relcalc/proofs.hpp"
#include "relcalc/theories.hpp"
#include "support.hpp"

using namespace relcalc;

namespace {

std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

Theory r20_theory() {
  Theory thy;
  thy.signature.symbols["R"] = {2, 0};
  return thy;
}

}  // namespace

TEST_CASE("path navigation") {
  Signature sig = r20_theory().signature;
  TermPtr t = parse_term("cd+ ;+ ((id- *- cd-) ;- R+)", sig);

  CHECK(path_to_string({}) == "(root)");
  CHECK(path_to_string({PathSeg::SeqRight, PathSeg::SeqLeft, PathSeg::TensorRight}) ==
        "SR.SL.TR");

  auto sub = subterm_at(t, {PathSeg::SeqRight, PathSeg::SeqLeft});
  REQUIRE(sub.has_value());
  CHECK(print_term(*sub) == "id- *- cd-");
  CHECK_FALSE(subterm_at(t, {PathSeg::TensorLeft}).has_value());
  CHECK_FALSE(subterm_at(t, {PathSeg::SeqLeft, PathSeg::SeqLeft}).has_value());

  auto rep = replace_at(t, {PathSeg::SeqLeft}, id0(Color::White));
  REQUIRE(rep.has_value());
  CHECK(print_term(*rep) == "id0+ ;+ ((id- *- cd-) ;- R+)");
  CHECK_FALSE(replace_at(t, {PathSeg::SeqLeft, PathSeg::TensorLeft}, t).has_value());
}

TEST_CASE("worked derivation replays") {
  Theory thy = r20_theory();
  std::string text = read_text_file(data_path("worked_proof.json"));
  Derivation d = derivation_from_json(text, thy.signature);
  REQUIRE(d.steps.size() == 18);

  CheckResult res = check_derivation(thy, d);
  INFO(res.reason);
  CHECK(res.ok);
  CHECK(res.chain.size() == 19);
  CHECK(term_eq(res.chain.front(), d.start));
  CHECK(term_eq(res.chain.back(), d.end));
}

TEST_CASE("derivation failure reporting") {
  Theory thy = r20_theory();
  Signature sig = thy.signature;

  SUBCASE("schema redex mismatch names the step") {
    Derivation d;
    d.start = parse_term("cp+", sig);
    d.end = parse_term("cp+", sig);
    RewriteStep st;
    st.kind = RewriteStep::Kind::Schema;
    st.axiom_id = "gamma_discard_minus";
    st.bind.nats["n"] = 1;
    d.steps.push_back(st);
    CheckResult res = check_derivation(thy, d);
    CHECK_FALSE(res.ok);
    CHECK(res.step_index == 0);
    CHECK_FALSE(res.reason.empty());
  }

  SUBCASE("inequality schemas refuse backward use") {
    Derivation d;
    d.start = parse_term("dc+ ;+ cd+", sig);
    d.end = parse_term("id+", sig);
    RewriteStep st;
    st.kind = RewriteStep::Kind::Schema;
    st.axiom_id = "eta_discard_plus";
    st.bind.nats["n"] = 1;
    st.forward = false;
    d.steps.push_back(st);
    CheckResult res = check_derivation(thy, d);
    CHECK_FALSE(res.ok);
    CHECK(res.step_index == 0);
  }

  SUBCASE("endpoint mismatch is flagged past the last step") {
    Derivation d;
    d.start = parse_term("cp+", sig);
    d.end = parse_term("cc+", sig);
    CheckResult res = check_derivation(thy, d);
    CHECK_FALSE(res.ok);
    CHECK(res.step_index == 0);
  }

  SUBCASE("theory axioms apply left to right only") {
    Theory t2 = r20_theory();
    t2.axioms.push_back({parse_term("id0+", sig), parse_term("cd+ ;+ dc+", sig)});
    Derivation fwd;
    fwd.start = parse_term("id0+", sig);
    fwd.end = parse_term("cd+ ;+ dc+", sig);
    RewriteStep st;
    st.kind = RewriteStep::Kind::TheoryAxiom;
    st.theory_index = 0;
    fwd.steps.push_back(st);
    CHECK(check_derivation(t2, fwd).ok);

    Derivation bwd;
    bwd.start = parse_term("cd+ ;+ dc+", sig);
    bwd.end = parse_term("id0+", sig);
    bwd.steps.push_back(st);
    CHECK_FALSE(check_derivation(t2, bwd).ok);
  }

  SUBCASE("normalization with a target checks reachability") {
    Derivation d;
    d.start = parse_term("id+ ;+ cp+", sig);
    d.end = parse_term("cc+", sig);
    RewriteStep st;
    st.kind = RewriteStep::Kind::Normalize;
    st.to = parse_term("cc+", sig);
    d.steps.push_back(st);
    CheckResult res = check_derivation(thy, d);
    CHECK_FALSE(res.ok);
    CHECK(res.step_index == 0);
  }
}

TEST_CASE("builder verifies before recording") {
  Signature sig = r20_theory().signature;

  DerivationBuilder b(sig, parse_term("id+", sig));
  Bindings n1;
  n1.nats["n"] = 1;
  b.schema("eta_discard_plus", {}, n1);
  CHECK(print_term(b.current()) == "dc+ ;+ cd+");
  b.normalize_to(parse_term("dc+ ;+ (id+ ;+ cd+)", sig));
  CHECK(print_term(b.current()) == "dc+ ;+ (id+ ;+ cd+)");

  Derivation d = b.finish();
  CHECK(term_eq(d.start, parse_term("id+", sig)));
  CHECK(term_eq(d.end, parse_term("dc+ ;+ (id+ ;+ cd+)", sig)));
  CHECK(check_derivation(r20_theory(), d).ok);

  SUBCASE("bad schema application throws") {
    DerivationBuilder c(sig, parse_term("cp+", sig));
    CHECK_THROWS_AS(c.schema("eta_discard_plus", {}, n1), TermError);
    CHECK(print_term(c.current()) == "cp+");
  }

  SUBCASE("unreachable normalization target throws") {
    DerivationBuilder c(sig, parse_term("cp+", sig));
    CHECK_THROWS_AS(c.normalize_to(parse_term("cc+", sig)), TermError);
  }
}

TEST_CASE("splicing lifts an inner derivation") {
  Signature sig = r20_theory().signature;

  DerivationBuilder inner(sig, parse_term("id+", sig));
  Bindings n1;
  n1.nats["n"] = 1;
  inner.schema("eta_discard_plus", {}, n1);
  Derivation small = inner.finish();

  TermPtr host = parse_term("cd+ ;+ (id+ ;+ dc+)", sig);
  DerivationBuilder outer(sig, host);
  outer.splice(small, {PathSeg::SeqRight, PathSeg::SeqLeft});
  CHECK(print_term(outer.current()) == "cd+ ;+ ((dc+ ;+ cd+) ;+ dc+)");
  Derivation lifted = outer.finish();
  CHECK(lifted.steps.size() == small.steps.size());
  CHECK(check_derivation(r20_theory(), lifted).ok);

  SUBCASE("start mismatch throws") {
    DerivationBuilder bad(sig, host);
    CHECK_THROWS_AS(bad.splice(small, {PathSeg::SeqLeft}), TermError);
  }
}

TEST_CASE("reverse adjunction derivations") {
  Signature sig;
  sig.symbols["R"] = {1, 1};
  sig.symbols["S"] = {2, 0};
  Theory thy;
  thy.signature = sig;

  testsupport::TermGen g(sig, 42u);
  for (int i = 0; i < 30; ++i) {
    TermPtr c = g.term(3);
    Type ty = typecheck(c, sig);
    AdjunctionPair pair = adjunction_derivation(c, sig);

    CHECK(term_eq(pair.unit.start, id_n(Color::White, ty.in)));
    CHECK(term_eq(pair.unit.end, seq(Color::Black, c, linear_adjoint(c))));
    CHECK(term_eq(pair.counit.start, seq(Color::White, linear_adjoint(c), c)));
    CHECK(term_eq(pair.counit.end, id_n(Color::Black, ty.out)));

    CheckResult u = check_derivation(thy, pair.unit);
    INFO("unit of " << print_term(c) << ": " << u.reason);
    CHECK(u.ok);
    CheckResult v = check_derivation(thy, pair.counit);
    INFO("counit of " << print_term(c) << ": " << v.reason);
    CHECK(v.ok);
  }
}

TEST_CASE("internalizing an added axiom") {
  Theory base = r20_theory();
  Signature sig = base.signature;
  TermPtr c0 = parse_term("cd+ ;+ dc+", sig);

  SUBCASE("axiom-using derivation") {
    Theory ext = base;
    ext.axioms.push_back({id0(Color::White), c0});
    Derivation d;
    d.start = parse_term("id0+", sig);
    d.end = c0;
    RewriteStep st;
    st.kind = RewriteStep::Kind::TheoryAxiom;
    st.theory_index = 0;
    d.steps.push_back(st);
    REQUIRE(check_derivation(ext, d).ok);

    Derivation out = deduction_transform(base, c0, d);
    CHECK(term_eq(out.start, tensor(Color::White, c0, id_n(Color::White, 0))));
    CHECK(term_eq(out.end, seq(Color::Black, d.end, linear_adjoint(d.start))));
    CheckResult res = check_derivation(base, out);
    INFO(res.reason);
    CHECK(res.ok);
  }

  SUBCASE("axiom-free derivation with wider endpoints") {
    Derivation d;
    d.start = parse_term("cp+", sig);
    d.end = parse_term("cp+", sig);
    Derivation out = deduction_transform(base, c0, d);
    CHECK(term_eq(out.start, tensor(Color::White, c0, id_n(Color::White, 1))));
    CHECK(term_eq(out.end,
                  seq(Color::Black, d.end, linear_adjoint(d.start))));
    CheckResult res = check_derivation(base, out);
    INFO(res.reason);
    CHECK(res.ok);
  }

  SUBCASE("the added term must be a closed loop") {
    Derivation d;
    d.start = parse_term("cp+", sig);
    d.end = parse_term("cp+", sig);
    CHECK_THROWS_AS(deduction_transform(base, parse_term("cd+", sig), d), InvalidInput);
  }

  SUBCASE("the derivation must hold in the extended theory") {
    Derivation d;
    d.start = parse_term("cp+", sig);
    d.end = parse_term("cc+", sig);
    CHECK_THROWS_AS(deduction_transform(base, c0, d), InvalidInput);
  }
}
