#pragma once

#include <optional>
#include <string>

#include "relcalc/proofs.hpp"
#include "relcalc/semantics.hpp"
#include "relcalc/theories.hpp"

namespace relcalc {

// Loaders throw ParseError for malformed JSON or shapes, UnknownSymbol /
// TypeMismatch for term-level problems inside the payload.

// {"symbols": {"R": {"ar": 2, "coar": 0}, ...}}
Signature signature_from_json(const std::string& text);
std::string signature_to_json(const Signature& sig);

// {"domain": 2, "relations": {"R": [[[0],[1]], [[1],[1]]], ...}}
// Tuples are arrays of domain elements; the width-0 tuple is [].
// Shapes are read off the pairs; a signature, when supplied, fixes the
// shape of empty relations and is validated against.
FiniteInterpretation interpretation_from_json(const std::string& text,
                                              const Signature* sig = nullptr);
std::string interpretation_to_json(const FiniteInterpretation& I);

// {"signature": {...}, "axioms": [{"lhs": "<term>", "rhs": "<term>"}, ...]}
Theory theory_from_json(const std::string& text);
std::string theory_to_json(const Theory& thy);

// Proof scripts:
//   {"theory": "path"?, "start": "<term>", "end": "<term>", "steps": [...]}
// with steps one of
//   {"path": ["SL","TR",...], "axiom": "<id>", "bind": {"a": "<term>", "n": 1},
//    "dir": "fwd" | "bwd"}
//   {"assoc": true, "to": "<term>"?}
//   {"thyAxiom": 0, "path": [...]}
std::optional<std::string> derivation_theory_path(const std::string& text);
Derivation derivation_from_json(const std::string& text, const Signature& sig);
std::string derivation_to_json(const Derivation& d);

// Sorted [[in-tuple, out-tuple], ...] array.
std::string relation_to_json(const Relation& r);

std::string read_text_file(const std::string& path);

}  // namespace relcalc
