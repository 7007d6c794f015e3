#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "relcalc/axioms.hpp"
#include "relcalc/semantics.hpp"
#include "relcalc/term.hpp"
#include "support.hpp"

using namespace relcalc;

TEST_CASE("catalogue shape") {
  const auto& schemas = axiom_schemas();
  CHECK(schemas.size() == 82);

  std::set<std::string> ids;
  for (const auto& s : schemas) ids.insert(s.id);
  CHECK(ids.size() == schemas.size());

  CHECK(find_schema("delta_l") != nullptr);
  CHECK(find_schema("smc_interchange_plus") != nullptr);
  CHECK(find_schema("gamma_codiscard_minus") != nullptr);
  CHECK(find_schema("no_such_schema") == nullptr);

  CHECK(find_schema("smc_seq_assoc_plus")->side == SchemaSide::Eq);
  CHECK(find_schema("delta_l")->side == SchemaSide::Leq);
  CHECK(find_schema("eta_copier_plus")->side == SchemaSide::Leq);
}

TEST_CASE("instantiation") {
  Signature sig;
  sig.symbols["R"] = {1, 1};

  SUBCASE("ordered schema instance") {
    Bindings b;
    b.terms["a"] = codiscard(Color::White);
    b.terms["b"] = discard(Color::Black);
    b.terms["c"] = id0(Color::Black);
    AxiomInstance inst = instantiate(*find_schema("delta_l"), b, sig);
    CHECK(inst.side == SchemaSide::Leq);
    CHECK(print_term(inst.lhs) == "cd+ ;+ (dc- ;- id0-)");
    CHECK(print_term(inst.rhs) == "(cd+ ;+ dc-) ;- id0-");
  }

  SUBCASE("wire count instance") {
    Bindings b;
    b.nats["n"] = 1;
    AxiomInstance inst = instantiate(*find_schema("eta_discard_plus"), b, sig);
    CHECK(print_term(inst.lhs) == "id+");
    CHECK(print_term(inst.rhs) == "dc+ ;+ cd+");
  }

  SUBCASE("missing bindings are reported") {
    CHECK_THROWS_AS(instantiate(*find_schema("delta_l"), Bindings{}, sig), MissingBinding);
    Bindings only_a;
    only_a.terms["a"] = id1(Color::White);
    CHECK_THROWS_AS(instantiate(*find_schema("delta_l"), only_a, sig), MissingBinding);
  }

  SUBCASE("ill typed combinations are rejected") {
    Bindings b;
    b.terms["a"] = copier(Color::White);
    b.terms["b"] = copier(Color::White);
    b.terms["c"] = copier(Color::White);
    CHECK_THROWS_AS(instantiate(*find_schema("smc_seq_assoc_plus"), b, sig), IllTyped);
  }

  SUBCASE("negative wire counts are rejected") {
    Bindings b;
    b.nats["n"] = -1;
    CHECK_THROWS_AS(instantiate(*find_schema("eta_discard_plus"), b, sig), IllTyped);
  }

  SUBCASE("generator metavariables only accept white symbols") {
    Bindings b;
    b.terms["R"] = copier(Color::White);
    CHECK_THROWS_AS(instantiate(*find_schema("tau_R_plus"), b, sig), IllTyped);
    b.terms["R"] = gen("R", Color::White);
    CHECK_NOTHROW(instantiate(*find_schema("tau_R_plus"), b, sig));
  }

  SUBCASE("both sides always share a type") {
    Bindings b;
    b.nats["n"] = 2;
    for (const char* id : {"copier_assoc_plus", "frobenius_minus", "special_plus",
                           "eps_cocopier_minus", "tau_copier_plus", "gamma_copier_minus",
                           "frobenius_wb", "frobenius_bw2"}) {
      AxiomInstance inst = instantiate(*find_schema(id), b, sig);
      CHECK(typecheck(inst.lhs, sig) == typecheck(inst.rhs, sig));
    }
  }
}

TEST_CASE("soundness checking") {
  Signature empty;

  SUBCASE("structural rows hold on small domains") {
    std::vector<TermPtr> pool = {id1(Color::White), copier(Color::White),
                                 id1(Color::Black)};
    for (const char* id : {"special_plus", "frobenius_minus", "copier_comm_plus",
                           "smc_sym_invol_minus", "eta_copier_plus", "delta_r",
                           "tau_discard_minus", "frobenius_wb"}) {
      SoundnessReport rep =
          check_axiom_soundness(*find_schema(id), empty, pool, {0, 1, 2}, {0, 1, 2}, 100000);
      INFO(id);
      CHECK(rep.instances > 0);
      CHECK(rep.failures.empty());
      CHECK_FALSE(rep.budget_exceeded);
    }
  }

  SUBCASE("a wrong ordering is caught") {
    AxiomSchema corrupt{
        "corrupt_discard_order",
        SchemaSide::Leq,
        {{"n", MetaKind::NatVar}},
        [](const Bindings& b, const Signature&)
            -> std::optional<std::pair<TermPtr, TermPtr>> {
          int n = b.nats.at("n");
          return std::pair<TermPtr, TermPtr>{
              seq(Color::White, discard_n(Color::White, n), codiscard_n(Color::White, n)),
              id_n(Color::White, n)};
        }};
    SoundnessReport rep = check_axiom_soundness(corrupt, empty, {}, {1}, {2}, 1000);
    CHECK(rep.instances == 1);
    CHECK_FALSE(rep.failures.empty());
    CHECK(rep.failures.front().schema_id == "corrupt_discard_order");
  }

  SUBCASE("budget is respected") {
    std::vector<TermPtr> pool = {id1(Color::White), copier(Color::White)};
    SoundnessReport rep = check_axiom_soundness(*find_schema("smc_seq_assoc_plus"), empty,
                                                pool, {}, {0, 1, 2}, 3);
    CHECK(rep.budget_exceeded);
    CHECK(rep.checks <= 3);
  }
}

TEST_CASE("symbol collection") {
  Signature sig;
  sig.symbols["R"] = {1, 1};
  sig.symbols["S"] = {2, 0};
  TermPtr t = parse_term("(R+ *+ R+) ;+ (S+ ;- S-)", sig);
  std::set<std::string> out;
  collect_symbols(t, out);
  CHECK(out == std::set<std::string>{"R", "S"});
  out.clear();
  collect_symbols(id0(Color::White), out);
  CHECK(out.empty());
}
