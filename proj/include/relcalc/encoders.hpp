#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relcalc/semantics.hpp"
#include "relcalc/term.hpp"

namespace relcalc {

// Binary relation expressions over symbols with one input and one output
// wire. Concrete grammar (whitespace insensitive):
//   expr   ::= meet ("|" meet)*            union, left associative
//   meet   ::= sq ("&" sq)*                intersection, left associative
//   sq     ::= unary ((";+" | ";-") unary)*   the two compositions
//   unary  ::= "~" unary | "^" unary | atom   complement, transpose
//   atom   ::= "id+" | "id-" | "top" | "bot" | NAME | "(" expr ")"
namespace cr {

enum class Kind {
  Symbol,
  IdP,
  IdM,
  SeqP,
  SeqM,
  Converse,
  Top,
  Meet,
  Bot,
  Join,
  Complement
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Kind kind;
  std::string name;  // Symbol
  ExprPtr left, right;
};

ExprPtr parse(const std::string& text);
std::string print(const ExprPtr& e);
TermPtr encode(const ExprPtr& e, const Signature& sig);
// Set-level semantics computed without the diagram calculus.
Relation eval(const ExprPtr& e, const FiniteInterpretation& I);

}  // namespace cr

// First-order formulas over a numbered variable context x1..xn where
// quantifiers always bind the next variable. Concrete grammar:
//   form   ::= disj
//   disj   ::= conj ("\/" conj)*
//   conj   ::= unary ("/\" unary)*
//   unary  ::= "!" unary | "exists" VAR "." disj | "forall" VAR "." disj | atom
//   atom   ::= "top" | "bot" | term "=" term | NAME ["(" term,* ")"] | "(" form ")"
//   term   ::= VAR | NAME "(" term,* ")"
//   VAR    ::= "x" digits
// The context size is the largest free variable index; each quantifier
// must bind the variable one past its enclosing context.
namespace fol {

struct Tm {
  int var = 0;  // > 0: variable index; 0: function application
  std::string fn;
  std::vector<Tm> args;
};

enum class Kind { Top, Bot, Eq, Pred, And, Or, Not, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Kind kind;
  Tm t1, t2;              // Eq
  std::string name;       // Pred
  std::vector<Tm> args;   // Pred
  FormulaPtr left, right; // And, Or; Not, Exists, Forall use left
  std::string var;        // display name of the bound variable
};

struct ScopeError : TermError {
  explicit ScopeError(const std::string& what) : TermError(what) {}
};

std::pair<FormulaPtr, int> parse(const std::string& text);
std::string print(const FormulaPtr& f, int inputs, int outputs);

struct EncodeResult {
  TermPtr term;
  // Assumed function axioms, one pair list entry per inequality.
  std::vector<std::pair<TermPtr, TermPtr>> obligations;
};
// Formula at the given context size to a term context -> 0.
EncodeResult encode(const FormulaPtr& f, int context, const Signature& sig);

// Tarski semantics; the result collects every context tuple satisfying f.
// Function symbols must denote total functions in I.
std::set<Tuple> eval(const FormulaPtr& f, int context, const FiniteInterpretation& I);

// Reads any term back as a formula over inputs x1..xn and outputs y1..ym;
// bound variables introduced by compositions print as z<depth>_<index>.
struct Decoded {
  FormulaPtr formula;
  int inputs = 0;
  int outputs = 0;
};
Decoded decode(const TermPtr& t, const Signature& sig);

}  // namespace fol

// Predicate-functor expressions. Concrete grammar (prefix operators bind
// tighter than the infix "&"):
//   pred   ::= unary ("&" unary)*
//   unary  ::= ("p" | "P" | "[" | "]" | "!") unary | "I" | NAME | "(" pred ")"
// "p" swaps the first two coordinates, "P" the first and last, "[" pads
// with a fresh first coordinate, "]" projects the first coordinate out,
// "!" complements. "p", "P" and "I" are reserved words.
namespace pfl {

enum class Kind { Atom, Ident, SwapHead, SwapEnds, Pad, Proj, And, Not };

struct Pred;
using PredPtr = std::shared_ptr<const Pred>;

struct Pred {
  Kind kind;
  std::string name;  // Atom
  PredPtr a, b;
};

struct PFLTypeError : TermError {
  explicit PFLTypeError(const std::string& what) : TermError(what) {}
};

PredPtr parse(const std::string& text);
std::string print(const PredPtr& p);
int arity(const PredPtr& p, const Signature& sig);

struct EncodeResult {
  TermPtr term;  // arity -> 0
  int arity = 0;
};
EncodeResult encode(const PredPtr& p, const Signature& sig);

// Finite-prefix semantics over tuples of the predicate's arity.
std::set<Tuple> eval(const PredPtr& p, const FiniteInterpretation& I);

}  // namespace pfl

// Propositional formulas whose atoms are symbols with no wires.
// Concrete grammar: disjunction "|" over conjunction "&" over atoms
// "top" | "bot" | NAME | "!" NAME | parentheses.
namespace prop {

enum class Kind { Top, Bot, Atom, NegAtom, And, Or };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Kind kind;
  std::string name;
  FormulaPtr left, right;
};

FormulaPtr parse(const std::string& text);
std::string print(const FormulaPtr& f);
TermPtr encode(const FormulaPtr& f, const Signature& sig);

}  // namespace prop

}  // namespace relcalc
