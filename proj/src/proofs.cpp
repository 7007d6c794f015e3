#include "relcalc/proofs.hpp"

#include "relcalc/derived.hpp"
#include "relcalc/theories.hpp"

namespace relcalc {

namespace {

constexpr PathSeg SL = PathSeg::SeqLeft;
constexpr PathSeg SR = PathSeg::SeqRight;
constexpr PathSeg TL = PathSeg::TensorLeft;
constexpr PathSeg TR = PathSeg::TensorRight;

const char* seg_name(PathSeg s) {
  switch (s) {
    case PathSeg::SeqLeft: return "SL";
    case PathSeg::SeqRight: return "SR";
    case PathSeg::TensorLeft: return "TL";
    case PathSeg::TensorRight: return "TR";
  }
  return "?";
}

struct Bind {
  Bindings b;
  Bind& t(const char* k, const TermPtr& v) {
    b.terms[k] = v;
    return *this;
  }
  Bind& n(const char* k, int v) {
    b.nats[k] = v;
    return *this;
  }
};

Path cat(PathSeg head, const Path& tail) {
  Path p{head};
  p.insert(p.end(), tail.begin(), tail.end());
  return p;
}

}  // namespace

std::string path_to_string(const Path& p) {
  if (p.empty()) return "(root)";
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += seg_name(p[i]);
  }
  return out;
}

std::optional<TermPtr> subterm_at(const TermPtr& t, const Path& p) {
  TermPtr cur = t;
  for (PathSeg s : p) {
    bool want_seq = s == SL || s == SR;
    bool is_seq = cur->kind == NodeKind::Seq;
    if (want_seq != is_seq || (!is_seq && cur->kind != NodeKind::Tensor))
      return std::nullopt;
    cur = (s == SL || s == TL) ? cur->left : cur->right;
  }
  return cur;
}

namespace {

std::optional<TermPtr> replace_rec(const TermPtr& t, const Path& p, size_t i,
                                   const TermPtr& sub) {
  if (i == p.size()) return sub;
  PathSeg s = p[i];
  bool want_seq = s == SL || s == SR;
  bool is_seq = t->kind == NodeKind::Seq;
  if (want_seq != is_seq || (!is_seq && t->kind != NodeKind::Tensor))
    return std::nullopt;
  bool left = s == SL || s == TL;
  auto child = replace_rec(left ? t->left : t->right, p, i + 1, sub);
  if (!child) return std::nullopt;
  if (is_seq)
    return seq(t->color, left ? *child : t->left, left ? t->right : *child);
  return tensor(t->color, left ? *child : t->left, left ? t->right : *child);
}

}  // namespace

std::optional<TermPtr> replace_at(const TermPtr& t, const Path& p, const TermPtr& sub) {
  return replace_rec(t, p, 0, sub);
}

CheckResult check_derivation(const Theory& thy, const Derivation& d) {
  CheckResult res;
  const Signature& sig = thy.signature;
  auto fail = [&](size_t i, std::string reason) {
    res.ok = false;
    res.step_index = i;
    res.reason = std::move(reason);
    return res;
  };

  Type ts{}, te{};
  try {
    ts = typecheck(d.start, sig);
    te = typecheck(d.end, sig);
  } catch (const TermError& e) {
    return fail(d.steps.size(), std::string("endpoint does not typecheck: ") + e.what());
  }
  if (!(ts == te)) return fail(d.steps.size(), "endpoints have different types");

  TermPtr cur = d.start;
  res.chain.push_back(cur);
  for (size_t i = 0; i < d.steps.size(); ++i) {
    const RewriteStep& st = d.steps[i];
    switch (st.kind) {
      case RewriteStep::Kind::Schema: {
        const AxiomSchema* sc = find_schema(st.axiom_id);
        if (!sc) return fail(i, "unknown schema: " + st.axiom_id);
        if (!st.forward && sc->side == SchemaSide::Leq)
          return fail(i, "inequality schema applied right to left: " + st.axiom_id);
        AxiomInstance inst;
        try {
          inst = instantiate(*sc, st.bind, sig);
        } catch (const TermError& e) {
          return fail(i, st.axiom_id + ": " + e.what());
        }
        const TermPtr& from = st.forward ? inst.lhs : inst.rhs;
        const TermPtr& to = st.forward ? inst.rhs : inst.lhs;
        auto redex = subterm_at(cur, st.path);
        if (!redex) return fail(i, "path " + path_to_string(st.path) + " leaves the term");
        if (!term_eq(*redex, from))
          return fail(i, "subterm at " + path_to_string(st.path) + " does not match " +
                             st.axiom_id);
        cur = *replace_at(cur, st.path, to);
        break;
      }
      case RewriteStep::Kind::TheoryAxiom: {
        if (st.theory_index >= thy.axioms.size())
          return fail(i, "theory axiom index out of range");
        const auto& ax = thy.axioms[st.theory_index];
        auto redex = subterm_at(cur, st.path);
        if (!redex) return fail(i, "path " + path_to_string(st.path) + " leaves the term");
        if (!term_eq(*redex, ax.first))
          return fail(i, "subterm at " + path_to_string(st.path) +
                             " does not match theory axiom " +
                             std::to_string(st.theory_index));
        cur = *replace_at(cur, st.path, ax.second);
        break;
      }
      case RewriteStep::Kind::Normalize: {
        if (st.to) {
          if (!term_eq(assoc_normalize(cur), assoc_normalize(st.to)))
            return fail(i, "stated normalization target is not reachable");
          cur = st.to;
        } else {
          cur = assoc_normalize(cur);
        }
        break;
      }
    }
    try {
      typecheck(cur, sig);
    } catch (const TermError& e) {
      return fail(i, std::string("step breaks typing: ") + e.what());
    }
    res.chain.push_back(cur);
  }
  if (!term_eq(cur, d.end))
    return fail(d.steps.size(), "final term differs from the stated end");
  res.ok = true;
  res.step_index = d.steps.size();
  return res;
}

DerivationBuilder::DerivationBuilder(const Signature& sig, TermPtr start)
    : sig_(&sig), start_(start), current_(std::move(start)) {
  typecheck(current_, *sig_);
}

void DerivationBuilder::schema(const std::string& id, const Path& at,
                               const Bindings& bind, bool forward) {
  const AxiomSchema* sc = find_schema(id);
  if (!sc) throw TermError("unknown schema: " + id);
  if (!forward && sc->side == SchemaSide::Leq)
    throw TermError("inequality schema applied right to left: " + id);
  AxiomInstance inst = instantiate(*sc, bind, *sig_);
  const TermPtr& from = forward ? inst.lhs : inst.rhs;
  const TermPtr& to = forward ? inst.rhs : inst.lhs;
  auto redex = subterm_at(current_, at);
  if (!redex || !term_eq(*redex, from))
    throw TermError(id + " does not match at " + path_to_string(at));
  current_ = *replace_at(current_, at, to);
  typecheck(current_, *sig_);
  RewriteStep st;
  st.kind = RewriteStep::Kind::Schema;
  st.path = at;
  st.axiom_id = id;
  st.bind = bind;
  st.forward = forward;
  steps_.push_back(std::move(st));
}

void DerivationBuilder::theory_axiom(const Theory& thy, size_t index, const Path& at) {
  if (index >= thy.axioms.size()) throw TermError("theory axiom index out of range");
  const auto& ax = thy.axioms[index];
  auto redex = subterm_at(current_, at);
  if (!redex || !term_eq(*redex, ax.first))
    throw TermError("theory axiom " + std::to_string(index) + " does not match at " +
                    path_to_string(at));
  current_ = *replace_at(current_, at, ax.second);
  typecheck(current_, *sig_);
  RewriteStep st;
  st.kind = RewriteStep::Kind::TheoryAxiom;
  st.path = at;
  st.theory_index = index;
  steps_.push_back(std::move(st));
}

void DerivationBuilder::normalize_to(const TermPtr& to) {
  if (!term_eq(assoc_normalize(current_), assoc_normalize(to)))
    throw TermError("normalization target is not reachable from " +
                    print_term(current_));
  typecheck(to, *sig_);
  current_ = to;
  RewriteStep st;
  st.kind = RewriteStep::Kind::Normalize;
  st.to = to;
  steps_.push_back(std::move(st));
}

void DerivationBuilder::splice(const Derivation& inner, const Path& at,
                               const Theory* thy) {
  auto sub = subterm_at(current_, at);
  if (!sub || !term_eq(*sub, inner.start))
    throw TermError("spliced derivation does not start at the subterm " +
                    path_to_string(at));
  for (const RewriteStep& st : inner.steps) {
    switch (st.kind) {
      case RewriteStep::Kind::Schema: {
        Path lifted = at;
        lifted.insert(lifted.end(), st.path.begin(), st.path.end());
        schema(st.axiom_id, lifted, st.bind, st.forward);
        break;
      }
      case RewriteStep::Kind::TheoryAxiom: {
        if (!thy)
          throw TermError("cannot splice a theory-axiom step without a theory");
        Path lifted = at;
        lifted.insert(lifted.end(), st.path.begin(), st.path.end());
        theory_axiom(*thy, st.theory_index, lifted);
        break;
      }
      case RewriteStep::Kind::Normalize: {
        if (!st.to) throw TermError("cannot splice a normalization without a target");
        auto lifted = replace_at(current_, at, st.to);
        if (!lifted) throw TermError("splice path became invalid");
        normalize_to(*lifted);
        break;
      }
    }
  }
  auto done = subterm_at(current_, at);
  if (!done || !term_eq(*done, inner.end))
    throw TermError("spliced derivation did not land on its stated end");
}

Derivation DerivationBuilder::finish() const { return {start_, current_, steps_}; }

namespace {

// Commutes a closed loop c0 : 0 -> 0 across a parallel term:
//   c0 *+ l  ==>  l *+ c0
Derivation commute_loop(const TermPtr& c0, const TermPtr& l, const Signature& sig) {
  const Color W = Color::White;
  int nl = typecheck(l, sig).in;
  DerivationBuilder db(sig, tensor(W, c0, l));
  db.normalize_to(tensor(W, seq(W, c0, id0(W)), seq(W, id_n(W, nl), l)));
  db.schema("smc_interchange_plus", {},
            Bind().t("a", c0).t("b", id_n(W, nl)).t("c", id0(W)).t("d", l).b, false);
  db.normalize_to(seq(W, seq(W, tensor(W, c0, id_n(W, nl)), sym_mn(W, 0, nl)),
                      tensor(W, id0(W), l)));
  db.schema("smc_sym_nat_plus", {SL}, Bind().t("c", c0).n("n", nl).b);
  db.normalize_to(seq(W, tensor(W, id_n(W, nl), c0), tensor(W, l, id0(W))));
  db.schema("smc_interchange_plus", {},
            Bind().t("a", id_n(W, nl)).t("b", c0).t("c", l).t("d", id0(W)).b);
  db.normalize_to(tensor(W, l, c0));
  return db.finish();
}

// Moves a closed loop c0 : 0 -> 0 from outside a term to the position q:
//   c0 *+ t  ==>  t[q <- c0 *+ t|q]
Derivation push_loop(const TermPtr& c0, const TermPtr& t, const Path& q,
                     const Signature& sig) {
  const Color W = Color::White, B = Color::Black;
  DerivationBuilder db(sig, tensor(W, c0, t));
  if (q.empty()) return db.finish();
  PathSeg seg = q.front();
  Path rest(q.begin() + 1, q.end());
  const TermPtr& l = t->left;
  const TermPtr& r = t->right;
  bool want_seq = seg == SL || seg == SR;
  if ((t->kind == NodeKind::Seq) != want_seq ||
      (t->kind != NodeKind::Seq && t->kind != NodeKind::Tensor))
    throw TermError("push path does not match the term's shape");

  if (t->kind == NodeKind::Seq && t->color == W) {
    if (seg == SL) {
      db.normalize_to(tensor(W, seq(W, c0, id0(W)), t));
      db.schema("smc_interchange_plus", {},
                Bind().t("a", c0).t("b", l).t("c", id0(W)).t("d", r).b, false);
      db.normalize_to(seq(W, tensor(W, c0, l), r));
      db.splice(push_loop(c0, l, rest, sig), {SL});
    } else {
      db.normalize_to(tensor(W, seq(W, id0(W), c0), t));
      db.schema("smc_interchange_plus", {},
                Bind().t("a", id0(W)).t("b", l).t("c", c0).t("d", r).b, false);
      db.normalize_to(seq(W, l, tensor(W, c0, r)));
      db.splice(push_loop(c0, r, rest, sig), {SR});
    }
  } else if (t->kind == NodeKind::Seq) {
    if (seg == SL) {
      db.normalize_to(tensor(W, seq(B, c0, id0(B)), t));
      db.schema("nu_circ_l", {},
                Bind().t("a", c0).t("b", id0(B)).t("c", l).t("d", r).b);
      db.normalize_to(seq(B, tensor(W, c0, l), r));
      db.splice(push_loop(c0, l, rest, sig), {SL});
    } else {
      db.normalize_to(tensor(W, seq(B, id0(B), c0), t));
      db.schema("nu_circ_r", {},
                Bind().t("a", id0(B)).t("b", c0).t("c", l).t("d", r).b);
      db.normalize_to(seq(B, l, tensor(W, c0, r)));
      db.splice(push_loop(c0, r, rest, sig), {SR});
    }
  } else if (t->color == W) {
    if (seg == TL) {
      db.normalize_to(tensor(W, tensor(W, c0, l), r));
      db.splice(push_loop(c0, l, rest, sig), {TL});
    } else {
      db.normalize_to(tensor(W, tensor(W, c0, l), r));
      db.splice(commute_loop(c0, l, sig), {TL});
      db.normalize_to(tensor(W, l, tensor(W, c0, r)));
      db.splice(push_loop(c0, r, rest, sig), {TR});
    }
  } else {
    int nl = typecheck(l, sig).in;
    int nr = typecheck(r, sig).in;
    db.normalize_to(tensor(W, seq(W, c0, id0(W)), seq(W, id_n(W, nl + nr), t)));
    db.schema("smc_interchange_plus", {},
              Bind().t("a", c0).t("b", id_n(W, nl + nr)).t("c", id0(W)).t("d", t).b,
              false);
    db.normalize_to(seq(W, tensor(W, tensor(W, c0, id_n(W, nl)), id_n(W, nr)), t));
    if (seg == TL) {
      db.schema("nu_bullet_r", {},
                Bind()
                    .t("a", tensor(W, c0, id_n(W, nl)))
                    .t("b", l)
                    .t("c", id_n(W, nr))
                    .t("d", r)
                    .b);
      db.normalize_to(tensor(B, seq(W, tensor(W, c0, id_n(W, nl)),
                                    tensor(W, id0(W), l)),
                             r));
      db.schema("smc_interchange_plus", {TL},
                Bind().t("a", c0).t("b", id_n(W, nl)).t("c", id0(W)).t("d", l).b);
      db.normalize_to(tensor(B, tensor(W, c0, l), r));
      db.splice(push_loop(c0, l, rest, sig), {TL});
    } else {
      db.splice(commute_loop(c0, id_n(W, nl), sig), {SL, TL});
      db.normalize_to(seq(W, tensor(W, id_n(W, nl), tensor(W, c0, id_n(W, nr))), t));
      db.schema("nu_bullet_r", {},
                Bind()
                    .t("a", id_n(W, nl))
                    .t("b", l)
                    .t("c", tensor(W, c0, id_n(W, nr)))
                    .t("d", r)
                    .b);
      db.normalize_to(tensor(B, l, seq(W, tensor(W, c0, id_n(W, nr)),
                                       tensor(W, id0(W), r))));
      db.schema("smc_interchange_plus", {TR},
                Bind().t("a", c0).t("b", id_n(W, nr)).t("c", id0(W)).t("d", r).b);
      db.normalize_to(tensor(B, l, tensor(W, c0, r)));
      db.splice(push_loop(c0, r, rest, sig), {TR});
    }
  }
  return db.finish();
}

const char* structural_base(NodeKind k) {
  switch (k) {
    case NodeKind::Copier: return "copier";
    case NodeKind::Discard: return "discard";
    case NodeKind::Cocopier: return "cocopier";
    case NodeKind::Codiscard: return "codiscard";
    default: return nullptr;
  }
}

}  // namespace

AdjunctionPair adjunction_derivation(const TermPtr& c, const Signature& sig) {
  const Color W = Color::White, B = Color::Black;
  Type ty = typecheck(c, sig);
  TermPtr ac = linear_adjoint(c);
  DerivationBuilder unit(sig, id_n(W, ty.in));
  DerivationBuilder counit(sig, seq(W, ac, c));
  bool white = c->color == W;
  std::string suffix = white ? "_plus" : "_minus";

  switch (c->kind) {
    case NodeKind::Gen: {
      Bindings b = Bind().t("R", gen(c->name, W)).b;
      unit.schema("tau_R" + suffix, {}, b);
      counit.schema("gamma_R" + suffix, {}, b);
      break;
    }
    case NodeKind::Id0:
    case NodeKind::Id1:
      unit.normalize_to(seq(B, c, ac));
      counit.normalize_to(id_n(B, ty.out));
      break;
    case NodeKind::Sym: {
      Bindings b = Bind().n("n", 1).n("m", 1).b;
      unit.schema("tau_sym" + suffix, {}, b);
      counit.schema("gamma_sym" + suffix, {}, b);
      break;
    }
    case NodeKind::Copier:
    case NodeKind::Discard:
    case NodeKind::Cocopier:
    case NodeKind::Codiscard: {
      std::string base = structural_base(c->kind);
      Bindings b = Bind().n("n", 1).b;
      unit.schema("tau_" + base + suffix, {}, b);
      counit.schema("gamma_" + base + suffix, {}, b);
      break;
    }
    case NodeKind::Seq: {
      const TermPtr& a = c->left;
      const TermPtr& b = c->right;
      TermPtr aa = linear_adjoint(a), ab = linear_adjoint(b);
      int k = typecheck(a, sig).out;
      AdjunctionPair pa = adjunction_derivation(a, sig);
      AdjunctionPair pb = adjunction_derivation(b, sig);
      if (white) {
        unit.splice(pa.unit, {});
        unit.normalize_to(seq(B, seq(W, a, id_n(W, k)), aa));
        unit.splice(pb.unit, {SL, SR});
        unit.schema("delta_l", {SL}, Bind().t("a", a).t("b", b).t("c", ab).b);
        unit.normalize_to(seq(B, c, ac));

        counit.normalize_to(seq(W, seq(W, ac, a), b));
        counit.schema("delta_r", {SL}, Bind().t("a", ab).t("b", aa).t("c", a).b);
        counit.splice(pa.counit, {SL, SR});
        counit.normalize_to(seq(W, ab, b));
        counit.splice(pb.counit, {});
      } else {
        unit.splice(pa.unit, {});
        unit.normalize_to(seq(B, a, seq(W, id_n(W, k), aa)));
        unit.splice(pb.unit, {SR, SL});
        unit.schema("delta_r", {SR}, Bind().t("a", b).t("b", ab).t("c", aa).b);
        unit.normalize_to(seq(B, c, ac));

        counit.normalize_to(seq(W, ab, seq(W, aa, c)));
        counit.schema("delta_l", {SR}, Bind().t("a", aa).t("b", a).t("c", b).b);
        counit.splice(pa.counit, {SR, SL});
        counit.normalize_to(seq(W, ab, b));
        counit.splice(pb.counit, {});
      }
      break;
    }
    case NodeKind::Tensor: {
      const TermPtr& a = c->left;
      const TermPtr& b = c->right;
      TermPtr aa = linear_adjoint(a), ab = linear_adjoint(b);
      Type tya = typecheck(a, sig), tyb = typecheck(b, sig);
      AdjunctionPair pa = adjunction_derivation(a, sig);
      AdjunctionPair pb = adjunction_derivation(b, sig);
      unit.normalize_to(tensor(W, id_n(W, tya.in), id_n(W, tyb.in)));
      unit.splice(pa.unit, {TL});
      unit.splice(pb.unit, {TR});
      unit.schema(white ? "nu_circ_l" : "nu_circ_r", {},
                  Bind().t("a", a).t("b", aa).t("c", b).t("d", ab).b);

      counit.schema(white ? "nu_bullet_l" : "nu_bullet_r", {},
                    Bind().t("a", aa).t("b", a).t("c", ab).t("d", b).b);
      counit.splice(pa.counit, {TL});
      counit.splice(pb.counit, {TR});
      counit.normalize_to(id_n(B, tya.out + tyb.out));
      break;
    }
  }
  return {unit.finish(), counit.finish()};
}

Derivation deduction_transform(const Theory& base, const TermPtr& c0,
                               const Derivation& d) {
  const Color W = Color::White, B = Color::Black;
  const Signature& sig = base.signature;
  Type t0{};
  try {
    t0 = typecheck(c0, sig);
  } catch (const TermError& e) {
    throw InvalidInput(std::string("added axiom term does not typecheck: ") + e.what());
  }
  if (t0.in != 0 || t0.out != 0)
    throw InvalidInput("added axiom term must be a closed loop of type 0 -> 0");

  Theory ext = base;
  ext.axioms.emplace_back(id0(W), c0);
  CheckResult chk = check_derivation(ext, d);
  if (!chk.ok)
    throw InvalidInput("derivation fails in the extended theory at step " +
                       std::to_string(chk.step_index) + ": " + chk.reason);

  const TermPtr& a = d.start;
  int n = typecheck(a, sig).in;
  TermPtr aa = linear_adjoint(a);
  AdjunctionPair adj = adjunction_derivation(a, sig);

  DerivationBuilder db(sig, tensor(W, c0, id_n(W, n)));
  db.normalize_to(tensor(W, seq(W, c0, id0(W)), id_n(W, n)));
  db.schema("discard_lax_plus", {TL}, Bind().t("c", c0).b);
  db.normalize_to(id_n(W, n));
  db.splice(adj.unit, {});

  for (size_t i = 0; i < d.steps.size(); ++i) {
    const RewriteStep& st = d.steps[i];
    bool added = st.kind == RewriteStep::Kind::TheoryAxiom &&
                 st.theory_index == base.axioms.size();
    if (!added) {
      switch (st.kind) {
        case RewriteStep::Kind::Schema:
          db.schema(st.axiom_id, cat(SL, st.path), st.bind, st.forward);
          break;
        case RewriteStep::Kind::TheoryAxiom:
          db.theory_axiom(base, st.theory_index, cat(SL, st.path));
          break;
        case RewriteStep::Kind::Normalize:
          db.normalize_to(seq(B, chk.chain[i + 1], aa));
          break;
      }
      continue;
    }
    // One use of the added axiom: duplicate the loop, keep one copy for the
    // derivation built so far, and push the other to the rewrite position.
    Derivation prev = db.finish();
    DerivationBuilder nb(sig, tensor(W, c0, id_n(W, n)));
    nb.normalize_to(tensor(W, seq(W, c0, id0(W)), id_n(W, n)));
    nb.schema("copier_lax_plus", {TL}, Bind().t("c", c0).b);
    nb.normalize_to(tensor(W, c0, tensor(W, c0, id_n(W, n))));
    nb.splice(prev, {TR}, &base);
    nb.splice(push_loop(c0, seq(B, chk.chain[i], aa), cat(SL, st.path), sig), {});
    nb.normalize_to(seq(B, chk.chain[i + 1], aa));
    db = std::move(nb);
  }
  return db.finish();
}

}  // namespace relcalc
