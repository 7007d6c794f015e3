#include "relcalc/axioms.hpp"

#include <algorithm>

namespace relcalc {

namespace {

using Pair = std::pair<TermPtr, TermPtr>;
using MaybePair = std::optional<Pair>;

std::optional<Type> try_type(const TermPtr& t, const Signature& sig) {
  try {
    return typecheck(t, sig);
  } catch (const TermError&) {
    return std::nullopt;
  }
}

std::optional<std::pair<std::string, Type>> white_generator(const Bindings& b,
                                                            const Signature& sig) {
  auto t = b.terms.at("R");
  if (t->kind != NodeKind::Gen || t->color != Color::White) return std::nullopt;
  auto it = sig.symbols.find(t->name);
  if (it == sig.symbols.end()) return std::nullopt;
  return std::make_pair(t->name, it->second);
}

std::vector<AxiomSchema> build_catalogue() {
  std::vector<AxiomSchema> v;
  const MetaKind TV = MetaKind::TermVar, NV = MetaKind::NatVar;
  auto add = [&](std::string id, SchemaSide side,
                 std::vector<std::pair<std::string, MetaKind>> mv,
                 std::function<MaybePair(const Bindings&, const Signature&)> fn) {
    v.push_back({std::move(id), side, std::move(mv), std::move(fn)});
  };

  const Color W = Color::White, B = Color::Black;

  // One copy of each structural row per color.
  for (Color col : {W, B}) {
    std::string s = col == W ? "_plus" : "_minus";

    add("smc_seq_assoc" + s, SchemaSide::Eq, {{"a", TV}, {"b", TV}, {"c", TV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          auto ta = b.terms.at("a"), tb = b.terms.at("b"), tc = b.terms.at("c");
          return Pair{seq(col, ta, seq(col, tb, tc)), seq(col, seq(col, ta, tb), tc)};
        });
    add("smc_seq_unit_left" + s, SchemaSide::Eq, {{"c", TV}, {"n", NV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          auto tc = b.terms.at("c");
          return Pair{seq(col, id_n(col, b.nats.at("n")), tc), tc};
        });
    add("smc_seq_unit_right" + s, SchemaSide::Eq, {{"c", TV}, {"n", NV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          auto tc = b.terms.at("c");
          return Pair{seq(col, tc, id_n(col, b.nats.at("n"))), tc};
        });
    add("smc_tensor_assoc" + s, SchemaSide::Eq, {{"a", TV}, {"b", TV}, {"c", TV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          auto ta = b.terms.at("a"), tb = b.terms.at("b"), tc = b.terms.at("c");
          return Pair{tensor(col, ta, tensor(col, tb, tc)),
                      tensor(col, tensor(col, ta, tb), tc)};
        });
    add("smc_tensor_unit_left" + s, SchemaSide::Eq, {{"c", TV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          auto tc = b.terms.at("c");
          return Pair{tensor(col, id0(col), tc), tc};
        });
    add("smc_tensor_unit_right" + s, SchemaSide::Eq, {{"c", TV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          auto tc = b.terms.at("c");
          return Pair{tensor(col, tc, id0(col)), tc};
        });
    add("smc_interchange" + s, SchemaSide::Eq,
        {{"a", TV}, {"b", TV}, {"c", TV}, {"d", TV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          auto ta = b.terms.at("a"), tb = b.terms.at("b");
          auto tc = b.terms.at("c"), td = b.terms.at("d");
          return Pair{seq(col, tensor(col, ta, tb), tensor(col, tc, td)),
                      tensor(col, seq(col, ta, tc), seq(col, tb, td))};
        });
    add("smc_sym_nat" + s, SchemaSide::Eq, {{"c", TV}, {"n", NV}},
        [col](const Bindings& b, const Signature& sig) -> MaybePair {
          auto tc = b.terms.at("c");
          int o = b.nats.at("n");
          auto ty = try_type(tc, sig);
          if (!ty) return std::nullopt;
          return Pair{seq(col, tensor(col, tc, id_n(col, o)), sym_mn(col, ty->out, o)),
                      seq(col, sym_mn(col, ty->in, o), tensor(col, id_n(col, o), tc))};
        });
    add("smc_sym_invol" + s, SchemaSide::Eq, {},
        [col](const Bindings&, const Signature&) -> MaybePair {
          return Pair{seq(col, sym(col), sym(col)), id_n(col, 2)};
        });

    add("copier_assoc" + s, SchemaSide::Eq, {{"n", NV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          int n = b.nats.at("n");
          return Pair{seq(col, copier_n(col, n), tensor(col, id_n(col, n), copier_n(col, n))),
                      seq(col, copier_n(col, n), tensor(col, copier_n(col, n), id_n(col, n)))};
        });
    add("copier_unit" + s, SchemaSide::Eq, {{"n", NV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          int n = b.nats.at("n");
          return Pair{seq(col, copier_n(col, n), tensor(col, id_n(col, n), discard_n(col, n))),
                      id_n(col, n)};
        });
    add("copier_comm" + s, SchemaSide::Eq, {{"n", NV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          int n = b.nats.at("n");
          return Pair{seq(col, copier_n(col, n), sym_mn(col, n, n)), copier_n(col, n)};
        });
    add("cocopier_assoc" + s, SchemaSide::Eq, {{"n", NV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          int n = b.nats.at("n");
          return Pair{seq(col, tensor(col, id_n(col, n), cocopier_n(col, n)), cocopier_n(col, n)),
                      seq(col, tensor(col, cocopier_n(col, n), id_n(col, n)), cocopier_n(col, n))};
        });
    add("cocopier_unit" + s, SchemaSide::Eq, {{"n", NV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          int n = b.nats.at("n");
          return Pair{seq(col, tensor(col, id_n(col, n), codiscard_n(col, n)), cocopier_n(col, n)),
                      id_n(col, n)};
        });
    add("cocopier_comm" + s, SchemaSide::Eq, {{"n", NV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          int n = b.nats.at("n");
          return Pair{seq(col, sym_mn(col, n, n), cocopier_n(col, n)), cocopier_n(col, n)};
        });
    add("frobenius" + s, SchemaSide::Eq, {{"n", NV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          int n = b.nats.at("n");
          return Pair{seq(col, tensor(col, copier_n(col, n), id_n(col, n)),
                          tensor(col, id_n(col, n), cocopier_n(col, n))),
                      seq(col, tensor(col, id_n(col, n), copier_n(col, n)),
                          tensor(col, cocopier_n(col, n), id_n(col, n)))};
        });
    add("special" + s, SchemaSide::Eq, {{"n", NV}},
        [col](const Bindings& b, const Signature&) -> MaybePair {
          int n = b.nats.at("n");
          return Pair{seq(col, copier_n(col, n), cocopier_n(col, n)), id_n(col, n)};
        });
  }

  // White maps have right adjoints; black comaps have left ones.
  add("eta_copier_plus", SchemaSide::Leq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        return Pair{id_n(Color::White, n),
                    seq(Color::White, copier_n(Color::White, n), cocopier_n(Color::White, n))};
      });
  add("eps_copier_plus", SchemaSide::Leq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        return Pair{seq(Color::White, cocopier_n(Color::White, n), copier_n(Color::White, n)),
                    id_n(Color::White, 2 * n)};
      });
  add("eta_discard_plus", SchemaSide::Leq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        return Pair{id_n(Color::White, n),
                    seq(Color::White, discard_n(Color::White, n), codiscard_n(Color::White, n))};
      });
  add("eps_discard_plus", SchemaSide::Leq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        return Pair{seq(Color::White, codiscard_n(Color::White, n), discard_n(Color::White, n)),
                    id0(Color::White)};
      });
  add("eta_cocopier_minus", SchemaSide::Leq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        return Pair{id_n(Color::Black, 2 * n),
                    seq(Color::Black, cocopier_n(Color::Black, n), copier_n(Color::Black, n))};
      });
  add("eps_cocopier_minus", SchemaSide::Leq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        return Pair{seq(Color::Black, copier_n(Color::Black, n), cocopier_n(Color::Black, n)),
                    id_n(Color::Black, n)};
      });
  add("eta_codiscard_minus", SchemaSide::Leq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        return Pair{id0(Color::Black),
                    seq(Color::Black, codiscard_n(Color::Black, n), discard_n(Color::Black, n))};
      });
  add("eps_codiscard_minus", SchemaSide::Leq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        return Pair{seq(Color::Black, discard_n(Color::Black, n), codiscard_n(Color::Black, n)),
                    id_n(Color::Black, n)};
      });

  // Copying and discarding are lax natural in one direction per color.
  add("copier_lax_plus", SchemaSide::Leq, {{"c", TV}},
      [](const Bindings& b, const Signature& sig) -> MaybePair {
        auto tc = b.terms.at("c");
        auto ty = try_type(tc, sig);
        if (!ty) return std::nullopt;
        const Color W = Color::White;
        return Pair{seq(W, tc, copier_n(W, ty->out)),
                    seq(W, copier_n(W, ty->in), tensor(W, tc, tc))};
      });
  add("discard_lax_plus", SchemaSide::Leq, {{"c", TV}},
      [](const Bindings& b, const Signature& sig) -> MaybePair {
        auto tc = b.terms.at("c");
        auto ty = try_type(tc, sig);
        if (!ty) return std::nullopt;
        const Color W = Color::White;
        return Pair{seq(W, tc, discard_n(W, ty->out)), discard_n(W, ty->in)};
      });
  add("copier_lax_minus", SchemaSide::Leq, {{"c", TV}},
      [](const Bindings& b, const Signature& sig) -> MaybePair {
        auto tc = b.terms.at("c");
        auto ty = try_type(tc, sig);
        if (!ty) return std::nullopt;
        const Color B = Color::Black;
        return Pair{seq(B, copier_n(B, ty->in), tensor(B, tc, tc)),
                    seq(B, tc, copier_n(B, ty->out))};
      });
  add("discard_lax_minus", SchemaSide::Leq, {{"c", TV}},
      [](const Bindings& b, const Signature& sig) -> MaybePair {
        auto tc = b.terms.at("c");
        auto ty = try_type(tc, sig);
        if (!ty) return std::nullopt;
        const Color B = Color::Black;
        return Pair{discard_n(B, ty->in), seq(B, tc, discard_n(B, ty->out))};
      });

  // The two compositions and two tensors interact linearly.
  add("delta_l", SchemaSide::Leq, {{"a", TV}, {"b", TV}, {"c", TV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        auto ta = b.terms.at("a"), tb = b.terms.at("b"), tc = b.terms.at("c");
        return Pair{seq(Color::White, ta, seq(Color::Black, tb, tc)),
                    seq(Color::Black, seq(Color::White, ta, tb), tc)};
      });
  add("delta_r", SchemaSide::Leq, {{"a", TV}, {"b", TV}, {"c", TV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        auto ta = b.terms.at("a"), tb = b.terms.at("b"), tc = b.terms.at("c");
        return Pair{seq(Color::White, seq(Color::Black, ta, tb), tc),
                    seq(Color::Black, ta, seq(Color::White, tb, tc))};
      });
  add("nu_circ_l", SchemaSide::Leq, {{"a", TV}, {"b", TV}, {"c", TV}, {"d", TV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        auto ta = b.terms.at("a"), tb = b.terms.at("b");
        auto tc = b.terms.at("c"), td = b.terms.at("d");
        return Pair{tensor(Color::White, seq(Color::Black, ta, tb), seq(Color::Black, tc, td)),
                    seq(Color::Black, tensor(Color::White, ta, tc),
                        tensor(Color::Black, tb, td))};
      });
  add("nu_circ_r", SchemaSide::Leq, {{"a", TV}, {"b", TV}, {"c", TV}, {"d", TV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        auto ta = b.terms.at("a"), tb = b.terms.at("b");
        auto tc = b.terms.at("c"), td = b.terms.at("d");
        return Pair{tensor(Color::White, seq(Color::Black, ta, tb), seq(Color::Black, tc, td)),
                    seq(Color::Black, tensor(Color::Black, ta, tc),
                        tensor(Color::White, tb, td))};
      });
  add("nu_bullet_l", SchemaSide::Leq, {{"a", TV}, {"b", TV}, {"c", TV}, {"d", TV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        auto ta = b.terms.at("a"), tb = b.terms.at("b");
        auto tc = b.terms.at("c"), td = b.terms.at("d");
        return Pair{seq(Color::White, tensor(Color::Black, ta, tc),
                        tensor(Color::White, tb, td)),
                    tensor(Color::Black, seq(Color::White, ta, tb),
                           seq(Color::White, tc, td))};
      });
  add("nu_bullet_r", SchemaSide::Leq, {{"a", TV}, {"b", TV}, {"c", TV}, {"d", TV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        auto ta = b.terms.at("a"), tb = b.terms.at("b");
        auto tc = b.terms.at("c"), td = b.terms.at("d");
        return Pair{seq(Color::White, tensor(Color::White, ta, tc),
                        tensor(Color::Black, tb, td)),
                    tensor(Color::Black, seq(Color::White, ta, tb),
                           seq(Color::White, tc, td))};
      });
  add("tensor_minus_id_plus", SchemaSide::Leq, {{"n", NV}, {"m", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n"), m = b.nats.at("m");
        return Pair{id_n(Color::White, n + m),
                    tensor(Color::Black, id_n(Color::White, n), id_n(Color::White, m))};
      });
  add("tensor_plus_id_minus", SchemaSide::Leq, {{"n", NV}, {"m", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n"), m = b.nats.at("m");
        return Pair{tensor(Color::White, id_n(Color::Black, n), id_n(Color::Black, m)),
                    id_n(Color::Black, n + m)};
      });

  // Each wire swap is linearly adjoint to its recolored reverse.
  add("tau_sym_plus", SchemaSide::Leq, {{"n", NV}, {"m", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n"), m = b.nats.at("m");
        return Pair{id_n(Color::White, n + m),
                    seq(Color::Black, sym_mn(Color::White, n, m), sym_mn(Color::Black, m, n))};
      });
  add("gamma_sym_plus", SchemaSide::Leq, {{"n", NV}, {"m", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n"), m = b.nats.at("m");
        return Pair{seq(Color::White, sym_mn(Color::Black, n, m), sym_mn(Color::White, m, n)),
                    id_n(Color::Black, n + m)};
      });
  add("tau_sym_minus", SchemaSide::Leq, {{"n", NV}, {"m", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n"), m = b.nats.at("m");
        return Pair{id_n(Color::White, n + m),
                    seq(Color::Black, sym_mn(Color::Black, n, m), sym_mn(Color::White, m, n))};
      });
  add("gamma_sym_minus", SchemaSide::Leq, {{"n", NV}, {"m", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n"), m = b.nats.at("m");
        return Pair{seq(Color::White, sym_mn(Color::White, n, m), sym_mn(Color::Black, m, n)),
                    id_n(Color::Black, n + m)};
      });

  // Each generator is linearly adjoint to its recolored mirror.
  add("tau_R_plus", SchemaSide::Leq, {{"R", TV}},
      [](const Bindings& b, const Signature& sig) -> MaybePair {
        auto g = white_generator(b, sig);
        if (!g) return std::nullopt;
        return Pair{id_n(Color::White, g->second.in),
                    seq(Color::Black, gen(g->first, Color::White), gen(g->first, Color::Black))};
      });
  add("gamma_R_plus", SchemaSide::Leq, {{"R", TV}},
      [](const Bindings& b, const Signature& sig) -> MaybePair {
        auto g = white_generator(b, sig);
        if (!g) return std::nullopt;
        return Pair{seq(Color::White, gen(g->first, Color::Black), gen(g->first, Color::White)),
                    id_n(Color::Black, g->second.out)};
      });
  add("tau_R_minus", SchemaSide::Leq, {{"R", TV}},
      [](const Bindings& b, const Signature& sig) -> MaybePair {
        auto g = white_generator(b, sig);
        if (!g) return std::nullopt;
        return Pair{id_n(Color::White, g->second.out),
                    seq(Color::Black, gen(g->first, Color::Black), gen(g->first, Color::White))};
      });
  add("gamma_R_minus", SchemaSide::Leq, {{"R", TV}},
      [](const Bindings& b, const Signature& sig) -> MaybePair {
        auto g = white_generator(b, sig);
        if (!g) return std::nullopt;
        return Pair{seq(Color::White, gen(g->first, Color::White), gen(g->first, Color::Black)),
                    id_n(Color::Black, g->second.in)};
      });

  // Each structural family is linearly adjoint to its recolored mirror.
  struct MonoidRow {
    const char* base;
    TermPtr (*fwd)(Color, int);
    TermPtr (*bwd)(Color, int);
    int lhs_mult;  // wire multiplier for the white unit on the left
    int rhs_mult;  // wire multiplier for the black unit on the right
  };
  const MonoidRow rows[] = {
      {"copier", copier_n, cocopier_n, 1, 2},
      {"discard", discard_n, codiscard_n, 1, 0},
      {"cocopier", cocopier_n, copier_n, 2, 1},
      {"codiscard", codiscard_n, discard_n, 0, 1},
  };
  for (const auto& row : rows) {
    for (Color col : {W, B}) {
      std::string s = col == W ? "_plus" : "_minus";
      auto fwd = row.fwd;
      auto bwd = row.bwd;
      int lm = row.lhs_mult, rm = row.rhs_mult;
      add(std::string("tau_") + row.base + s, SchemaSide::Leq, {{"n", NV}},
          [col, fwd, bwd, lm](const Bindings& b, const Signature&) -> MaybePair {
            int n = b.nats.at("n");
            return Pair{id_n(Color::White, lm * n),
                        seq(Color::Black, fwd(col, n), bwd(other(col), n))};
          });
      add(std::string("gamma_") + row.base + s, SchemaSide::Leq, {{"n", NV}},
          [col, fwd, bwd, rm](const Bindings& b, const Signature&) -> MaybePair {
            int n = b.nats.at("n");
            return Pair{seq(Color::White, bwd(other(col), n), fwd(col, n)),
                        id_n(Color::Black, rm * n)};
          });
    }
  }

  // Copying interacts with co-copying of the opposite color as well.
  add("frobenius_bw", SchemaSide::Eq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        const Color W = Color::White, B = Color::Black;
        return Pair{seq(W, tensor(W, copier_n(B, n), id_n(W, n)),
                        tensor(W, id_n(W, n), cocopier_n(W, n))),
                    seq(W, tensor(W, id_n(W, n), copier_n(W, n)),
                        tensor(W, cocopier_n(B, n), id_n(W, n)))};
      });
  add("frobenius_bw2", SchemaSide::Eq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        const Color W = Color::White, B = Color::Black;
        return Pair{seq(W, tensor(W, copier_n(W, n), id_n(W, n)),
                        tensor(W, id_n(W, n), cocopier_n(B, n))),
                    seq(W, tensor(W, id_n(W, n), copier_n(B, n)),
                        tensor(W, cocopier_n(W, n), id_n(W, n)))};
      });
  add("frobenius_wb", SchemaSide::Eq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        const Color W = Color::White, B = Color::Black;
        return Pair{seq(B, tensor(B, copier_n(W, n), id_n(B, n)),
                        tensor(B, id_n(B, n), cocopier_n(B, n))),
                    seq(B, tensor(B, id_n(B, n), copier_n(B, n)),
                        tensor(B, cocopier_n(W, n), id_n(B, n)))};
      });
  add("frobenius_wb2", SchemaSide::Eq, {{"n", NV}},
      [](const Bindings& b, const Signature&) -> MaybePair {
        int n = b.nats.at("n");
        const Color W = Color::White, B = Color::Black;
        return Pair{seq(B, tensor(B, copier_n(B, n), id_n(B, n)),
                        tensor(B, id_n(B, n), cocopier_n(W, n))),
                    seq(B, tensor(B, id_n(B, n), copier_n(W, n)),
                        tensor(B, cocopier_n(B, n), id_n(B, n)))};
      });

  return v;
}

}  // namespace

const std::vector<AxiomSchema>& axiom_schemas() {
  static const std::vector<AxiomSchema> catalogue = build_catalogue();
  return catalogue;
}

const AxiomSchema* find_schema(const std::string& id) {
  for (const auto& s : axiom_schemas())
    if (s.id == id) return &s;
  return nullptr;
}

AxiomInstance instantiate(const AxiomSchema& schema, const Bindings& b,
                          const Signature& sig) {
  for (const auto& [name, kind] : schema.metavars) {
    if (kind == MetaKind::TermVar && !b.terms.count(name)) throw MissingBinding(name);
    if (kind == MetaKind::NatVar) {
      auto it = b.nats.find(name);
      if (it == b.nats.end()) throw MissingBinding(name);
      if (it->second < 0) throw IllTyped(schema.id + ": negative wire count");
    }
  }
  auto built = schema.build(b, sig);
  if (!built) throw IllTyped(schema.id + ": no instance at these bindings");
  try {
    Type tl = typecheck(built->first, sig);
    Type tr = typecheck(built->second, sig);
    if (!(tl == tr)) throw IllTyped(schema.id + ": sides differ in type");
  } catch (const IllTyped&) {
    throw;
  } catch (const TermError& e) {
    throw IllTyped(schema.id + ": " + std::string(e.what()));
  }
  return {built->first, built->second, schema.side};
}

void collect_symbols(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == NodeKind::Gen) out.insert(t->name);
  if (t->left) collect_symbols(t->left, out);
  if (t->right) collect_symbols(t->right, out);
}

SoundnessReport check_axiom_soundness(const AxiomSchema& schema, const Signature& sig,
                                      const std::vector<TermPtr>& pool,
                                      const std::vector<int>& nats,
                                      const std::vector<int>& sizes, long budget) {
  SoundnessReport report;

  std::vector<std::string> term_vars, nat_vars;
  for (const auto& [name, kind] : schema.metavars)
    (kind == MetaKind::TermVar ? term_vars : nat_vars).push_back(name);

  std::vector<size_t> tidx(term_vars.size(), 0), nidx(nat_vars.size(), 0);
  bool more = true;
  while (more) {
    Bindings b;
    for (size_t i = 0; i < term_vars.size(); ++i) b.terms[term_vars[i]] = pool[tidx[i]];
    for (size_t i = 0; i < nat_vars.size(); ++i) b.nats[nat_vars[i]] = nats[nidx[i]];

    std::optional<AxiomInstance> inst;
    try {
      inst = instantiate(schema, b, sig);
    } catch (const IllTyped&) {
      inst = std::nullopt;
    }
    if (inst) {
      ++report.instances;
      std::set<std::string> used;
      collect_symbols(inst->lhs, used);
      collect_symbols(inst->rhs, used);
      Signature sub;
      for (const auto& name : used) sub.symbols[name] = sig.symbols.at(name);

      InterpretationStream stream(sub, sizes, budget);
      while (auto I = stream.next()) {
        if (++report.checks > budget) {
          report.budget_exceeded = true;
          return report;
        }
        Relation rl = eval(inst->lhs, *I, sub);
        Relation rr = eval(inst->rhs, *I, sub);
        bool ok = std::includes(rr.pairs.begin(), rr.pairs.end(), rl.pairs.begin(),
                                rl.pairs.end());
        if (ok && schema.side == SchemaSide::Eq) ok = rl.pairs == rr.pairs;
        if (!ok) report.failures.push_back({schema.id, b, *I});
      }
      if (stream.budget_exceeded()) report.budget_exceeded = true;
    }

    // Odometer over candidate bindings, term variables fastest.
    more = false;
    for (size_t i = 0; i < tidx.size(); ++i) {
      if (++tidx[i] < pool.size()) {
        more = true;
        break;
      }
      tidx[i] = 0;
    }
    if (!more)
      for (size_t i = 0; i < nidx.size(); ++i) {
        if (++nidx[i] < nats.size()) {
          more = true;
          break;
        }
        nidx[i] = 0;
      }
    if (term_vars.empty() && nat_vars.empty()) break;
  }
  return report;
}

}  // namespace relcalc
