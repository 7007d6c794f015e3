#include "relcalc/derived.hpp"

namespace relcalc {

TermPtr cup_term(Color c, int n) {
  return seq(c, codiscard_n(c, n), copier_n(c, n));
}

TermPtr cap_term(Color c, int n) {
  return seq(c, cocopier_n(c, n), discard_n(c, n));
}

TermPtr linear_adjoint(const TermPtr& t) {
  Color oc = other(t->color);
  switch (t->kind) {
    case NodeKind::Gen: return gen(t->name, oc);
    case NodeKind::Id0: return id0(oc);
    case NodeKind::Id1: return id1(oc);
    case NodeKind::Sym: return sym(oc);
    case NodeKind::Copier: return cocopier(oc);
    case NodeKind::Cocopier: return copier(oc);
    case NodeKind::Discard: return codiscard(oc);
    case NodeKind::Codiscard: return discard(oc);
    case NodeKind::Seq:
      return seq(oc, linear_adjoint(t->right), linear_adjoint(t->left));
    case NodeKind::Tensor:
      return tensor(oc, linear_adjoint(t->left), linear_adjoint(t->right));
  }
  throw TermError("corrupt term node");
}

TermPtr converse_term(const TermPtr& t, const Signature& sig) {
  Type ty = typecheck(t, sig);
  const Color W = Color::White;
  int n = ty.in, m = ty.out;
  TermPtr bend_in = tensor(W, cup_term(W, n), id_n(W, m));
  TermPtr middle = tensor(W, id_n(W, n), tensor(W, t, id_n(W, m)));
  TermPtr bend_out = tensor(W, id_n(W, n), cap_term(W, m));
  return seq(W, bend_in, seq(W, middle, bend_out));
}

TermPtr negate_term(const TermPtr& t, const Signature& sig) {
  return converse_term(linear_adjoint(t), sig);
}

namespace {

Type common_type(const TermPtr& a, const TermPtr& b, const Signature& sig) {
  Type ta = typecheck(a, sig);
  Type tb = typecheck(b, sig);
  if (!(ta == tb))
    throw TypeMismatch("lattice operands",
                       std::to_string(ta.in) + " -> " + std::to_string(ta.out),
                       std::to_string(tb.in) + " -> " + std::to_string(tb.out));
  return ta;
}

}  // namespace

TermPtr meet_term(const TermPtr& a, const TermPtr& b, const Signature& sig) {
  Type ty = common_type(a, b, sig);
  const Color W = Color::White;
  return seq(W, copier_n(W, ty.in),
             seq(W, tensor(W, a, b), cocopier_n(W, ty.out)));
}

TermPtr join_term(const TermPtr& a, const TermPtr& b, const Signature& sig) {
  Type ty = common_type(a, b, sig);
  const Color B = Color::Black;
  return seq(B, copier_n(B, ty.in),
             seq(B, tensor(B, a, b), cocopier_n(B, ty.out)));
}

TermPtr top_term(Type ty) {
  const Color W = Color::White;
  return seq(W, discard_n(W, ty.in), codiscard_n(W, ty.out));
}

TermPtr bottom_term(Type ty) {
  const Color B = Color::Black;
  return seq(B, discard_n(B, ty.in), codiscard_n(B, ty.out));
}

}  // namespace relcalc
