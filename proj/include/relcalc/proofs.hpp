#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relcalc/axioms.hpp"
#include "relcalc/term.hpp"

namespace relcalc {

enum class PathSeg { SeqLeft, SeqRight, TensorLeft, TensorRight };
using Path = std::vector<PathSeg>;

std::string path_to_string(const Path& p);

// Both return nullopt when the path walks off the term's shape.
std::optional<TermPtr> subterm_at(const TermPtr& t, const Path& p);
std::optional<TermPtr> replace_at(const TermPtr& t, const Path& p, const TermPtr& sub);

struct Theory;  // theories.hpp

struct RewriteStep {
  enum class Kind { Schema, Normalize, TheoryAxiom };
  Kind kind = Kind::Schema;
  Path path;             // Schema, TheoryAxiom
  std::string axiom_id;  // Schema
  Bindings bind;         // Schema
  bool forward = true;   // Schema; inequational schemas admit forward only
  size_t theory_index = 0;  // TheoryAxiom
  TermPtr to;               // Normalize: optional expected result
};

struct Derivation {
  TermPtr start;
  TermPtr end;
  std::vector<RewriteStep> steps;
};

struct CheckResult {
  bool ok = false;
  size_t step_index = 0;  // first failing step, or steps.size() on endpoint mismatch
  std::string reason;
  std::vector<TermPtr> chain;  // start, then the term after each checked step
};

// Replays a derivation step by step against the catalogue and the theory's
// own axioms (theory axioms rewrite left to right only).
CheckResult check_derivation(const Theory& thy, const Derivation& d);

// Incrementally builds a derivation that is correct by construction; every
// operation verifies the claimed rewrite before extending the step list.
class DerivationBuilder {
 public:
  DerivationBuilder(const Signature& sig, TermPtr start);

  const TermPtr& current() const { return current_; }

  void schema(const std::string& id, const Path& at, const Bindings& bind,
              bool forward = true);
  void theory_axiom(const Theory& thy, size_t index, const Path& at);
  // Asserts that `to` and the current term share an associativity normal form,
  // then moves to `to`.
  void normalize_to(const TermPtr& to);
  // Replays another derivation whose start matches the subterm at `at`;
  // `thy` resolves any theory-axiom steps the inner derivation cites.
  void splice(const Derivation& inner, const Path& at, const Theory* thy = nullptr);

  Derivation finish() const;

 private:
  const Signature* sig_;
  TermPtr start_;
  TermPtr current_;
  std::vector<RewriteStep> steps_;
};

// For c : n -> m, returns the pair of derivations exhibiting the recolored
// reverse of c as its linear adjoint:
//   unit:   id+ n  ==>  c ;- rev(c)
//   counit: rev(c) ;+ c  ==>  id- m
struct AdjunctionPair {
  Derivation unit;
  Derivation counit;
};
AdjunctionPair adjunction_derivation(const TermPtr& c, const Signature& sig);

// Internalizes one use of an extra axiom (id+ 0, c0): from a derivation d over
// the theory extended with that axiom, builds a derivation in the base theory
//   c0 *+ id+ n  ==>  end(d) ;- rev(start(d))
// where n is the input width of d's endpoints.
Derivation deduction_transform(const Theory& base, const TermPtr& c0,
                               const Derivation& d);

}  // namespace relcalc
