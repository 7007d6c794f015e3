#include "relcalc/theories.hpp"

#include <algorithm>

#include "relcalc/derived.hpp"

namespace relcalc {

bool theory_satisfied(const Theory& thy, const FiniteInterpretation& I) {
  for (const auto& [lhs, rhs] : thy.axioms) {
    Relation a = eval(lhs, I, thy.signature);
    Relation b = eval(rhs, I, thy.signature);
    if (!std::includes(b.pairs.begin(), b.pairs.end(), a.pairs.begin(), a.pairs.end()))
      return false;
  }
  return true;
}

TermPtr inclusion_probe(const TermPtr& c, const TermPtr& d, const Signature& sig) {
  const Color B = Color::Black;
  Type tc = typecheck(c, sig);
  Type td = typecheck(d, sig);
  if (!(tc == td))
    throw BadType("inclusion probe needs terms of one type, got " +
                  print_term(c) + " and " + print_term(d));
  int m = tc.out;
  return seq(B, cup_term(B, m),
             seq(B, tensor(B, seq(B, linear_adjoint(c), d), id_n(B, m)),
                 cap_term(B, m)));
}

Theory close_theory(const Theory& thy) {
  Theory out;
  out.signature = thy.signature;
  for (const auto& [lhs, rhs] : thy.axioms)
    out.axioms.emplace_back(id0(Color::White),
                            inclusion_probe(lhs, rhs, thy.signature));
  return out;
}

std::vector<std::pair<TermPtr, TermPtr>> function_axioms(const std::string& f,
                                                         const Signature& sig) {
  const Color W = Color::White;
  auto it = sig.symbols.find(f);
  if (it == sig.symbols.end()) throw UnknownSymbol(f);
  if (it->second.out != 1) throw BadCoarity(f);
  int n = it->second.in;
  TermPtr fw = gen(f, W);
  std::vector<std::pair<TermPtr, TermPtr>> out;
  out.emplace_back(
      assoc_normalize(seq(W, copier_n(W, n), tensor(W, fw, fw))),
      assoc_normalize(seq(W, fw, copier(W))));
  out.emplace_back(assoc_normalize(discard_n(W, n)),
                   assoc_normalize(seq(W, fw, discard(W))));
  return out;
}

std::vector<std::pair<TermPtr, TermPtr>> witness_axioms(const std::string& k,
                                                        const TermPtr& c,
                                                        const Signature& sig) {
  const Color W = Color::White;
  auto it = sig.symbols.find(k);
  if (it == sig.symbols.end()) throw UnknownSymbol(k);
  if (it->second.in != 0 || it->second.out != 1)
    throw BadType("witness constant must have type 0 -> 1: " + k);
  Type tc = typecheck(c, sig);
  if (tc.in != 1 || tc.out != 0)
    throw BadType("witnessed predicate must have type 1 -> 0: " + print_term(c));

  auto out = function_axioms(k, sig);
  TermPtr some = seq(W, codiscard(W), c);          // something satisfies c
  TermPtr at_k = seq(W, gen(k, W), c);             // k's value satisfies c
  out.emplace_back(id0(W), join_term(negate_term(some, sig), at_k, sig));
  return out;
}

TermPtr erase_constant(const std::string& k, const TermPtr& t, const Signature& sig) {
  auto it = sig.symbols.find(k);
  if (it == sig.symbols.end()) throw UnknownSymbol(k);
  if (it->second.in != 0 || it->second.out != 1)
    throw BadType("erased constant must have type 0 -> 1: " + k);

  Color col = t->color;
  switch (t->kind) {
    case NodeKind::Gen:
      if (t->name == k) return id1(col);
      [[fallthrough]];
    case NodeKind::Id0:
    case NodeKind::Id1:
    case NodeKind::Sym:
    case NodeKind::Copier:
    case NodeKind::Discard:
    case NodeKind::Cocopier:
    case NodeKind::Codiscard:
      return tensor(col, discard(col), t);
    case NodeKind::Seq: {
      int n = typecheck(t->left, sig).in;
      return seq(col, tensor(col, copier(col), id_n(col, n)),
                 seq(col, tensor(col, id1(col), erase_constant(k, t->left, sig)),
                     erase_constant(k, t->right, sig)));
    }
    case NodeKind::Tensor: {
      Type tl = typecheck(t->left, sig);
      int p = typecheck(t->right, sig).in;
      int n = tl.in;
      return seq(col, tensor(col, copier(col), id_n(col, n + p)),
                 seq(col,
                     tensor(col, id1(col),
                            tensor(col, sym_mn(col, 1, n), id_n(col, p))),
                     tensor(col, erase_constant(k, t->left, sig),
                            erase_constant(k, t->right, sig))));
    }
  }
  throw TermError("corrupt term node");
}

ClassifyResult classify(const Theory& thy, const std::vector<int>& sizes, long budget) {
  ClassifyResult res;
  InterpretationStream stream(thy.signature, sizes, budget);
  std::optional<FiniteInterpretation> empty_model;
  while (auto I = stream.next()) {
    ++res.checked;
    if (!theory_satisfied(thy, *I)) continue;
    if (I->domain_size > 0) {
      res.model_class = ModelClass::ModelNonEmpty;
      res.witness = std::move(*I);
      return res;
    }
    if (!empty_model) empty_model = std::move(*I);
  }
  res.budget_exceeded = stream.budget_exceeded();
  if (empty_model) {
    res.model_class = ModelClass::ModelEmptyOnly;
    res.witness = std::move(empty_model);
  }
  return res;
}

}  // namespace relcalc
