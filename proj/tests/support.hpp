#pragma once

// Shared helpers for the test binaries: interpretation sweeps, relation
// algebra on the semantic side, and a seeded generator of well-typed terms.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "relcalc/semantics.hpp"
#include "relcalc/term.hpp"

namespace testsupport {

using namespace relcalc;

inline std::vector<FiniteInterpretation> all_interps(const Signature& sig,
                                                     std::vector<int> sizes) {
  InterpretationStream stream(sig, std::move(sizes), 1000000000L);
  std::vector<FiniteInterpretation> out;
  while (auto I = stream.next()) out.push_back(std::move(*I));
  return out;
}

inline Relation transpose(const Relation& r) {
  Relation t{r.out, r.in, {}};
  for (const auto& [x, y] : r.pairs) t.pairs.insert({y, x});
  return t;
}

inline Relation complement(const Relation& r, int domain_size) {
  Relation c{r.in, r.out, {}};
  for (const auto& x : all_tuples(domain_size, r.in))
    for (const auto& y : all_tuples(domain_size, r.out))
      if (!r.pairs.count({x, y})) c.pairs.insert({x, y});
  return c;
}

// Seeded generator of well-typed terms. Composite shapes keep the
// requested input arity; atoms are drawn from the structural constants
// whose input arity fits plus matching signature symbols.
class TermGen {
 public:
  TermGen(Signature sig, std::uint32_t seed) : sig_(std::move(sig)), rng_(seed) {}

  // Rejects candidates with any subterm wider than max_width wires in
  // total; dense black relations over wide interfaces get expensive fast.
  TermPtr term(int depth, int max_width = 10) {
    for (int tries = 0; tries < 64; ++tries) {
      TermPtr t = with_input(pick(0, 3), depth);
      if (widest(t) <= max_width) return t;
    }
    return id_n(Color::White, 1);
  }

  TermPtr with_input(int n, int depth) {
    if (depth <= 0) return atom(n);
    switch (pick(0, 3)) {
      case 0:
        return atom(n);
      case 1: {
        TermPtr a = with_input(n, depth - 1);
        TermPtr b = with_input(typecheck(a, sig_).out, depth - 1);
        return seq(color(), a, b);
      }
      case 2: {
        int k = pick(0, n);
        return tensor(color(), with_input(k, depth - 1), with_input(n - k, depth - 1));
      }
      default: {
        TermPtr a = with_input(n, depth - 1);
        return seq(color(), a, atom(typecheck(a, sig_).out));
      }
    }
  }

 private:
  int widest(const TermPtr& t) {
    Type ty = typecheck(t, sig_);
    int w = ty.in + ty.out;
    if (t->left) w = std::max(w, widest(t->left));
    if (t->right) w = std::max(w, widest(t->right));
    return w;
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Color color() { return pick(0, 1) ? Color::Black : Color::White; }

  TermPtr atom(int n) {
    std::vector<TermPtr> pool;
    Color c = color();
    pool.push_back(id_n(c, n));
    pool.push_back(discard_n(c, n));
    pool.push_back(copier_n(c, n));
    if (n % 2 == 0 && n > 0) pool.push_back(cocopier_n(c, n / 2));
    if (n == 0) pool.push_back(codiscard_n(c, pick(0, 2)));
    if (n == 2) pool.push_back(sym(c));
    for (const auto& [name, ty] : sig_.symbols) {
      if (ty.in == n) pool.push_back(gen(name, Color::White));
      if (ty.out == n) pool.push_back(gen(name, Color::Black));
    }
    return pool[static_cast<size_t>(pick(0, static_cast<int>(pool.size()) - 1))];
  }

  Signature sig_;
  std::mt19937 rng_;
};

}  // namespace testsupport
