#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace relcalc {

// Every constructor carries one of the two colors. White nodes compose
// relations existentially and tensor them conjunctively; black nodes are
// their De Morgan duals.
enum class Color { White, Black };

inline Color other(Color c) { return c == Color::White ? Color::Black : Color::White; }
inline char color_sign(Color c) { return c == Color::White ? '+' : '-'; }

enum class NodeKind {
  Gen,        // declared symbol; black generators denote converse complements
  Id0,        // empty interface
  Id1,        // single wire
  Sym,        // swap of two wires
  Copier,     // 1 -> 2
  Discard,    // 1 -> 0
  Cocopier,   // 2 -> 1
  Codiscard,  // 0 -> 1
  Seq,        // sequential composition
  Tensor      // parallel composition
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable; shared subterms are fine because nothing mutates a node
// after construction. Equality is structural.
struct Term {
  NodeKind kind;
  Color color;
  std::string name;  // Gen only
  TermPtr left;      // Seq / Tensor only
  TermPtr right;
};

TermPtr gen(const std::string& name, Color c);
TermPtr id0(Color c);
TermPtr id1(Color c);
TermPtr sym(Color c);
TermPtr copier(Color c);
TermPtr discard(Color c);
TermPtr cocopier(Color c);
TermPtr codiscard(Color c);
TermPtr seq(Color c, TermPtr l, TermPtr r);
TermPtr tensor(Color c, TermPtr l, TermPtr r);

bool term_eq(const TermPtr& a, const TermPtr& b);

struct Type {
  int in = 0;
  int out = 0;
  bool operator==(const Type&) const = default;
};

struct Signature {
  // symbol name -> (in wires, out wires) of its white generator
  std::map<std::string, Type> symbols;
};

struct TermError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownSymbol : TermError {
  explicit UnknownSymbol(const std::string& n)
      : TermError("unknown symbol: " + n), symbol(n) {}
  std::string symbol;
};

struct TypeMismatch : TermError {
  TypeMismatch(const std::string& position, const std::string& expected,
               const std::string& found)
      : TermError("type mismatch at " + position + ": expected " + expected +
                  ", found " + found) {}
};

struct ParseError : TermError {
  ParseError(size_t pos, const std::string& message)
      : TermError("parse error at offset " + std::to_string(pos) + ": " + message),
        position(pos) {}
  size_t position;
};

// Throws UnknownSymbol or TypeMismatch.
Type typecheck(const TermPtr& t, const Signature& sig);

// Wire-count-indexed families, one per color, built by the standard
// recursion on the count. Width 0 is always the empty interface.
TermPtr id_n(Color c, int n);
TermPtr sym_mn(Color c, int m, int n);
TermPtr copier_n(Color c, int n);
TermPtr discard_n(Color c, int n);
TermPtr cocopier_n(Color c, int n);
TermPtr codiscard_n(Color c, int n);

enum class SugarKind { Id, Sym, Copier, Discard, Cocopier, Codiscard };

// Keyword dispatch over the families above. Sym uses both m and n;
// the rest ignore m.
TermPtr sugar(SugarKind k, Color c, int n, int m = 0);

// Concrete syntax. Round trip: parse_term(print_term(t), sig) == t.
std::string print_term(const TermPtr& t);
TermPtr parse_term(const std::string& text, const Signature& sig);

// Rebuilds every same-color composition chain right-nested, dropping
// sequential factors that are identities of the chain's color and
// parallel factors that are empty interfaces of the chain's color.
// Idempotent; preserves type and finite-model meaning.
TermPtr assoc_normalize(const TermPtr& t);

// True when t is built only from Id0/Id1/Seq/Tensor of the given color.
bool is_identity_term(const TermPtr& t, Color c);

}  // namespace relcalc
