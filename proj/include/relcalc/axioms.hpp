#pragma once

#include <functional>
#include <optional>

#include "relcalc/semantics.hpp"
#include "relcalc/term.hpp"

namespace relcalc {

enum class SchemaSide { Leq, Eq };
enum class MetaKind { TermVar, NatVar };

struct Bindings {
  std::map<std::string, TermPtr> terms;
  std::map<std::string, int> nats;
};

struct MissingBinding : TermError {
  explicit MissingBinding(const std::string& name)
      : TermError("missing binding for metavariable " + name) {}
};

struct IllTyped : TermError {
  explicit IllTyped(const std::string& why) : TermError("ill-typed instance: " + why) {}
};

struct AxiomInstance {
  TermPtr lhs, rhs;
  SchemaSide side;
};

// A schema is a family of ordered (or equal) pairs of terms indexed by
// term and wire-count metavariables. build returns nothing when the
// requested combination does not exist (for example a generator
// metavariable bound to a non-generator).
struct AxiomSchema {
  std::string id;
  SchemaSide side;
  std::vector<std::pair<std::string, MetaKind>> metavars;
  std::function<std::optional<std::pair<TermPtr, TermPtr>>(const Bindings&,
                                                           const Signature&)>
      build;
};

// The full catalogue, fixed order, unique ids.
const std::vector<AxiomSchema>& axiom_schemas();
const AxiomSchema* find_schema(const std::string& id);

// Throws MissingBinding or IllTyped. A successful result has both
// sides type checked with one common type.
AxiomInstance instantiate(const AxiomSchema& schema, const Bindings& b,
                          const Signature& sig);

struct SoundnessFailure {
  std::string schema_id;
  Bindings bindings;
  FiniteInterpretation interpretation;
};

struct SoundnessReport {
  long instances = 0;
  long checks = 0;
  std::vector<SoundnessFailure> failures;
  bool budget_exceeded = false;
};

// Instantiates the schema over every combination of candidate bindings
// (terms drawn from the pool, wire counts from nats, generator
// metavariables from the signature's symbols) and verifies the ordering
// semantically on every interpretation of the mentioned symbols over
// the given domain sizes. budget caps the number of semantic checks.
SoundnessReport check_axiom_soundness(const AxiomSchema& schema, const Signature& sig,
                                      const std::vector<TermPtr>& pool,
                                      const std::vector<int>& nats,
                                      const std::vector<int>& sizes, long budget);

// Symbols a term mentions.
void collect_symbols(const TermPtr& t, std::set<std::string>& out);

}  // namespace relcalc
