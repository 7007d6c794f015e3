#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <utility>

#include "relcalc/json_io.hpp"
#include "relcalc/proofs.hpp"
#include "relcalc/theories.hpp"
#include "support.hpp"

using namespace relcalc;

namespace {

std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

std::pair<Tuple, Tuple> pr(Tuple a, Tuple b) { return {std::move(a), std::move(b)}; }

}  // namespace

TEST_CASE("signatures") {
  Signature sig = signature_from_json(R"({"symbols": {"R": {"ar": 2, "coar": 0}}})");
  CHECK(sig.symbols.size() == 1);
  CHECK(sig.symbols.at("R") == Type{2, 0});

  Signature back = signature_from_json(signature_to_json(sig));
  CHECK(back.symbols == sig.symbols);

  CHECK_THROWS_AS(signature_from_json("nonsense"), ParseError);
  CHECK_THROWS_AS(signature_from_json(R"({"symbols": {"R": {"ar": 2}}})"), ParseError);
  CHECK_THROWS_AS(signature_from_json(R"({"symbols": {"R": {"ar": -1, "coar": 0}}})"),
                  ParseError);
}

TEST_CASE("interpretations") {
  std::string text = R"({"domain": 2, "relations": {"R": [[[0], [1]], [[1], [1]]]}})";
  FiniteInterpretation I = interpretation_from_json(text);
  CHECK(I.domain_size == 2);
  CHECK(I.relations.at("R").in == 1);
  CHECK(I.relations.at("R").out == 1);
  CHECK(I.relations.at("R").pairs == PairSet{pr({0}, {1}), pr({1}, {1})});

  FiniteInterpretation back = interpretation_from_json(interpretation_to_json(I));
  CHECK(back.domain_size == I.domain_size);
  CHECK(back.relations.at("R").pairs == I.relations.at("R").pairs);

  SUBCASE("a signature fixes empty relation shapes") {
    Signature sig;
    sig.symbols["R"] = {2, 1};
    FiniteInterpretation J =
        interpretation_from_json(R"({"domain": 1, "relations": {"R": []}})", &sig);
    CHECK(J.relations.at("R").in == 2);
    CHECK(J.relations.at("R").out == 1);
  }

  SUBCASE("shape problems are rejected") {
    CHECK_THROWS_AS(interpretation_from_json(
                        R"({"domain": 2, "relations": {"R": [[[0], [1]], [[0, 0], [1]]]}})"),
                    TermError);
    CHECK_THROWS_AS(
        interpretation_from_json(R"({"domain": 1, "relations": {"R": [[[4], [0]]]}})"),
        TermError);
    Signature sig;
    sig.symbols["R"] = {2, 1};
    std::string mism = R"({"domain": 1, "relations": {"R": [[[0], [0]]]}})";
    CHECK_THROWS_AS(interpretation_from_json(mism, &sig), TermError);
  }
}

TEST_CASE("theories") {
  std::string text = read_text_file(data_path("thy_nonempty_sets.json"));
  Theory thy = theory_from_json(text);
  CHECK(thy.signature.symbols.empty());
  REQUIRE(thy.axioms.size() == 1);
  CHECK(print_term(thy.axioms[0].first) == "id0+");
  CHECK(print_term(thy.axioms[0].second) == "cd+ ;+ dc+");

  Theory back = theory_from_json(theory_to_json(thy));
  CHECK(back.axioms.size() == 1);
  CHECK(term_eq(back.axioms[0].second, thy.axioms[0].second));

  CHECK_THROWS_AS(
      theory_from_json(
          R"({"signature": {"symbols": {}}, "axioms": [{"lhs": "id0+", "rhs": "cd+"}]})"),
      TermError);
  CHECK_THROWS_AS(
      theory_from_json(R"({"signature": {"symbols": {}}, "axioms": [{"lhs": "R+"}]})"),
      TermError);
}

TEST_CASE("derivations") {
  Signature sig;
  sig.symbols["R"] = {2, 0};
  std::string text = read_text_file(data_path("worked_proof.json"));

  CHECK(derivation_theory_path(text) == std::optional<std::string>{"worked_proof_theory.json"});

  Derivation d = derivation_from_json(text, sig);
  CHECK(d.steps.size() == 18);
  CHECK(print_term(d.start) == "cd+ ;+ ((id- *- cd-) ;- R+)");
  CHECK(print_term(d.end) == "cd- ;- ((cd+ *+ id+) ;+ R+)");
  CHECK(d.steps[0].kind == RewriteStep::Kind::Normalize);
  CHECK(d.steps[0].to != nullptr);
  CHECK(d.steps[1].kind == RewriteStep::Kind::Schema);
  CHECK(d.steps[1].axiom_id == "eta_codiscard_minus");
  CHECK(d.steps[1].path == Path{PathSeg::SeqLeft});
  CHECK(d.steps[1].bind.nats.at("n") == 1);
  CHECK(d.steps[1].forward);
  CHECK(d.steps[11].forward == false);

  Derivation back = derivation_from_json(derivation_to_json(d), sig);
  REQUIRE(back.steps.size() == d.steps.size());
  CHECK(term_eq(back.start, d.start));
  CHECK(term_eq(back.end, d.end));
  for (size_t i = 0; i < d.steps.size(); ++i) {
    CHECK(back.steps[i].kind == d.steps[i].kind);
    CHECK(back.steps[i].path == d.steps[i].path);
    CHECK(back.steps[i].axiom_id == d.steps[i].axiom_id);
    CHECK(back.steps[i].forward == d.steps[i].forward);
  }

  SUBCASE("step shapes are validated") {
    CHECK_THROWS_AS(derivation_from_json(R"({"start": "id0+"})", sig), ParseError);
    CHECK_THROWS_AS(
        derivation_from_json(
            R"({"start": "id0+", "end": "id0+", "steps": [{"dir": "fwd"}]})", sig),
        ParseError);
    CHECK_THROWS_AS(
        derivation_from_json(
            R"({"start": "id0+", "end": "id0+", "steps": [{"axiom": "x", "dir": "up"}]})",
            sig),
        ParseError);
    CHECK_THROWS_AS(
        derivation_from_json(
            R"({"start": "id0+", "end": "id0+", "steps": [{"path": ["XX"], "axiom": "x"}]})",
            sig),
        ParseError);
  }

  SUBCASE("plain scripts have no theory path") {
    CHECK(derivation_theory_path(R"({"start": "id0+", "end": "id0+"})") ==
          std::nullopt);
  }
}

TEST_CASE("relations serialize sorted") {
  Relation r{1, 1, {pr({1}, {0}), pr({0}, {1})}};
  CHECK(relation_to_json(r) == "[[[0],[1]],[[1],[0]]]");
  Relation unit{0, 0, {pr({}, {})}};
  CHECK(relation_to_json(unit) == "[[[],[]]]");
  CHECK(relation_to_json(Relation{2, 0, {}}) == "[]");
}

TEST_CASE("missing files are reported") {
  CHECK_THROWS_AS(read_text_file(data_path("no_such_file.json")), TermError);
}
