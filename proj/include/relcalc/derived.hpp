#pragma once

#include "relcalc/term.hpp"

namespace relcalc {

// Closed curve of 2n wires: the co-unit discharging interface followed
// by a copier (cup), and its mirror image (cap).
TermPtr cup_term(Color c, int n);  // 0 -> 2n
TermPtr cap_term(Color c, int n);  // 2n -> 0

// Color-swapping involution; reverses the type and complements the
// transpose of the denoted relation.
TermPtr linear_adjoint(const TermPtr& t);

// Transpose of the denoted relation, built with white cups and caps.
TermPtr converse_term(const TermPtr& t, const Signature& sig);

// Complement of the denoted relation: converse of the linear adjoint.
TermPtr negate_term(const TermPtr& t, const Signature& sig);

// Intersection and union of two parallel terms; greatest and least
// relation at a type. Both arguments of meet/join must share one type,
// else TypeMismatch.
TermPtr meet_term(const TermPtr& a, const TermPtr& b, const Signature& sig);
TermPtr join_term(const TermPtr& a, const TermPtr& b, const Signature& sig);
TermPtr top_term(Type ty);
TermPtr bottom_term(Type ty);

}  // namespace relcalc
