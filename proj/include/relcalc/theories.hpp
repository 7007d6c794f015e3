#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relcalc/semantics.hpp"
#include "relcalc/term.hpp"

namespace relcalc {

// Ordered rewrite pairs (lhs, rhs), each read as lhs <= rhs.
struct Theory {
  Signature signature;
  std::vector<std::pair<TermPtr, TermPtr>> axioms;
};

struct BadCoarity : TermError {
  explicit BadCoarity(const std::string& symbol)
      : TermError("symbol must have exactly one output wire: " + symbol) {}
};

struct BadType : TermError {
  explicit BadType(const std::string& what) : TermError(what) {}
};

struct InvalidInput : TermError {
  explicit InvalidInput(const std::string& what) : TermError(what) {}
};

// Checks every axiom pair semantically in one interpretation.
bool theory_satisfied(const Theory& thy, const FiniteInterpretation& I);

// Replaces each axiom (c, d) by (id+ 0, K) where K is a closed loop that
// evaluates to the full point relation exactly when eval(c) is contained in
// eval(d); the resulting axioms all have type 0 -> 0.
TermPtr inclusion_probe(const TermPtr& c, const TermPtr& d, const Signature& sig);
Theory close_theory(const Theory& thy);

// The two inequalities forcing the symbol's relation to be a total function.
std::vector<std::pair<TermPtr, TermPtr>> function_axioms(const std::string& f,
                                                         const Signature& sig);

// function_axioms(k) plus one pair forcing k to pick a point satisfying c
// whenever any point satisfies c; k : 0 -> 1 and c : 1 -> 0.
std::vector<std::pair<TermPtr, TermPtr>> witness_axioms(const std::string& k,
                                                        const TermPtr& c,
                                                        const Signature& sig);

// Removes every occurrence of the constant k : 0 -> 1 from t by feeding its
// value in on one extra input wire; maps t : n -> m to a term 1+n -> m over
// the signature without k.
TermPtr erase_constant(const std::string& k, const TermPtr& t, const Signature& sig);

enum class ModelClass { ModelNonEmpty, ModelEmptyOnly, NoModelUpToBound };

struct ClassifyResult {
  ModelClass model_class = ModelClass::NoModelUpToBound;
  std::optional<FiniteInterpretation> witness;
  bool budget_exceeded = false;
  long checked = 0;
};

// Searches enumerated interpretations for models; the result is evidence up
// to the given domain sizes and budget, not a theorem.
ClassifyResult classify(const Theory& thy, const std::vector<int>& sizes, long budget);

}  // namespace relcalc
