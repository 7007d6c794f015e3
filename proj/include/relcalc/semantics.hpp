#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "relcalc/term.hpp"

namespace relcalc {

using Tuple = std::vector<int>;
using PairSet = std::set<std::pair<Tuple, Tuple>>;

struct Relation {
  int in = 0;
  int out = 0;
  PairSet pairs;
};

// Domain is the canonical set {0, ..., domain_size - 1}; size 0 is the
// empty domain, over which only width-0 tuples exist.
struct FiniteInterpretation {
  int domain_size = 0;
  std::map<std::string, Relation> relations;

  Signature signature() const;
};

// All tuples of the given width over {0..size-1}, in lexicographic order.
std::vector<Tuple> all_tuples(int size, int width);

// Throws UnknownSymbol when the term mentions a symbol the
// interpretation lacks, TypeMismatch when shapes disagree.
void validate_interpretation(const FiniteInterpretation& I, const Signature& sig);

Relation eval(const TermPtr& t, const FiniteInterpretation& I, const Signature& sig);
Relation eval(const TermPtr& t, const FiniteInterpretation& I);

// Variant sharing one cache across many evaluations of terms with common
// subterm structure; keyed by node identity, valid for a single interpretation.
Relation eval_cached(const TermPtr& t, const FiniteInterpretation& I, const Signature& sig,
                     std::map<const Term*, Relation>& cache);

// Subset of pair sets; both terms must have the same type.
bool semantic_leq(const TermPtr& c, const TermPtr& d, const FiniteInterpretation& I,
                  const Signature& sig);

// Streams every interpretation of sig over the listed domain sizes.
// For each size, relation contents step through subset bitmasks of the
// lexicographically sorted pair list, counter style: the alphabetically
// last symbol varies fastest, and within a symbol bit 0 is the first
// pair. next() returns nothing once exhausted or once the budget (in
// yielded interpretations) is spent; the two cases are told apart by
// budget_exceeded().
class InterpretationStream {
 public:
  InterpretationStream(const Signature& sig, std::vector<int> sizes, long budget);

  std::optional<FiniteInterpretation> next();
  bool budget_exceeded() const { return exceeded_; }
  long yielded() const { return yielded_; }

 private:
  bool start_size();
  bool advance();

  Signature sig_;
  std::vector<int> sizes_;
  size_t size_index_ = 0;
  bool size_started_ = false;
  bool done_ = false;
  long budget_ = 0;
  long yielded_ = 0;
  bool exceeded_ = false;

  struct SymbolState {
    std::string name;
    int in, out;
    std::vector<std::pair<Tuple, Tuple>> pair_list;  // sorted
    std::vector<bool> mask;
  };
  std::vector<SymbolState> symbols_;
};

struct SearchResult {
  std::optional<FiniteInterpretation> countermodel;
  bool budget_exceeded = false;
  long checked = 0;
};

// First enumerated interpretation where c's relation is not contained
// in d's.
SearchResult countermodel_search(const TermPtr& c, const TermPtr& d, const Signature& sig,
                                 const std::vector<int>& sizes, long budget);

}  // namespace relcalc
